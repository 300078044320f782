"""Election systems: baselines, the adversarial random table, and the six
puzzle-carrying constructions with their hardness instances."""
from elecmanip.bd import BdSet
from elecmanip.systems.basic import (
    AliceSystem,
    PluralitySystem,
    RandomTableSystem,
    eval_alice,
    eval_plurality,
    eval_random_table,
)
from elecmanip.systems.constructed import (
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    eval_e1,
    eval_e2,
    eval_e3,
    eval_e4,
    eval_e5,
    eval_e6,
)
from elecmanip.systems.hardness import (
    HardnessError,
    Target,
    build_hardness_instance,
    default_bset,
    extract_assignment,
    hardness_system,
    instance_formula,
)

SELECTORS = ("e1", "e2", "e3", "e4", "e5", "e6", "alice", "plurality", "random:<seed>")

_CONSTRUCTED = {"e1": E1, "e2": E2, "e3": E3, "e4": E4, "e5": E5, "e6": E6}


def make_system(selector: str, bset: BdSet = None):
    """System for a selector string ``e1..e6 | alice | plurality | random:<seed>``."""
    sel = selector.strip().lower()
    if sel in _CONSTRUCTED:
        cls = _CONSTRUCTED[sel]
        return cls(bset) if bset is not None else cls()
    if sel == "alice":
        return AliceSystem()
    if sel == "plurality":
        return PluralitySystem()
    if sel.startswith("random:"):
        try:
            return RandomTableSystem(int(sel[7:]))
        except ValueError:
            pass
    raise ValueError(f"unknown system {selector!r}; expected one of {', '.join(SELECTORS)}")


def system_name(system) -> str:
    return getattr(system, "name", type(system).__name__)
