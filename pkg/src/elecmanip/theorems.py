"""Exhaustive consistency sweeps for destructive candidate-partition control.

For every system, destructive control by run-off partition and by plain
partition of candidates (ties promote) coincide with "some subset ``C'``
containing ``p`` has ``p`` losing".  Under ties eliminate the run-off and
plain variants also coincide with their unique-winner counterparts.  Under
ties promote with the unique-winner goal the two variants can differ; a
three-candidate election witnesses this.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import asdict, dataclass, field

from elecmanip.actions import DESTRUCTIVE, NONUNIQUE, UNIQUE, PartitionInstance
from elecmanip.bd import formula
from elecmanip.bruteforce import DEFAULT_BUDGET, BudgetExceeded, SearchBudget, bf_decide
from elecmanip.core import (
    Election,
    PartitionKind,
    TieRule,
    Voter,
    canonical_encode,
    evaluate,
    sorted_candidates,
)
from elecmanip.systems import E4, E5, E6, AliceSystem, RandomTableSystem, system_name
from elecmanip.systems.hardness import Target, build_hardness_instance

ALICE, BOB, CAROL = "0", "10", "11"


@dataclass
class VerificationReport:
    systems_checked: int = 0
    instances_checked: int = 0
    discrepancies: list = field(default_factory=list)
    values: list = field(default_factory=list)

    @property
    def verified(self) -> bool:
        return not self.discrepancies

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        return VerificationReport(
            self.systems_checked + other.systems_checked,
            self.instances_checked + other.instances_checked,
            self.discrepancies + other.discrepancies,
            self.values + other.values,
        )

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verified"] = self.verified
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def describe(e: Election, p: str) -> dict:
    return {
        "candidates": list(sorted_candidates(e.candidates)),
        "voters": [{"name": v.name, "prefs": list(v.pref)} for v in e.voters],
        "p": p,
    }


def characterization_decide(system, e: Election, p: str, rule: TieRule, budget: SearchBudget = None) -> bool:
    """Whether some ``C'`` with ``p`` in ``C' ⊆ C`` has ``p`` not winning
    (ties promote) or not winning uniquely (ties eliminate)."""
    budget = budget or DEFAULT_BUDGET
    if p not in e.candidates:
        raise ValueError(f"{p!r} is not a candidate")
    if len(e.candidates) > budget.max_candidates:
        raise BudgetExceeded(f"{len(e.candidates)} candidates exceed the enumeration bound {budget.max_candidates}")
    others = [c for c in sorted_candidates(e.candidates) if c != p]
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            w = evaluate(system, e.restricted(frozenset((p, *extra))))
            if rule is TieRule.TP:
                if p not in w:
                    return True
            elif w != frozenset((p,)):
                return True
    return False


def dc_instance(e, p, kind, rule, goal=NONUNIQUE) -> PartitionInstance:
    return PartitionInstance(e, p, kind, rule, DESTRUCTIVE, goal)


def collapse_values(system, e: Election, p: str, budget: SearchBudget = None) -> dict:
    RPC, PC, TP, TE = PartitionKind.RPC, PartitionKind.PC, TieRule.TP, TieRule.TE
    bf = lambda kind, rule, goal=NONUNIQUE: bf_decide(dc_instance(e, p, kind, rule, goal), system, budget)  # noqa: E731
    return {
        "dc_rpc_tp": bf(RPC, TP),
        "dc_pc_tp": bf(PC, TP),
        "char_tp": characterization_decide(system, e, p, TP, budget),
        "dc_rpc_te": bf(RPC, TE),
        "dc_pc_te": bf(PC, TE),
        "dc_rpc_te_unique": bf(RPC, TE, UNIQUE),
        "dc_pc_te_unique": bf(PC, TE, UNIQUE),
        "char_te": characterization_decide(system, e, p, TE, budget),
    }


_TP_KEYS = ("dc_rpc_tp", "dc_pc_tp", "char_tp")
_TE_KEYS = ("dc_rpc_te", "dc_pc_te", "dc_rpc_te_unique", "dc_pc_te_unique", "char_te")


def election_space(universe=(ALICE, BOB, CAROL), max_voters: int = 2):
    """Every election over a nonempty subset of ``universe`` with at most
    ``max_voters`` voters drawn from all strict orders, up to voter names."""
    universe = sorted_candidates(frozenset(universe))
    seen = set()
    for r in range(1, len(universe) + 1):
        for cands in itertools.combinations(universe, r):
            orders = list(itertools.permutations(cands))
            for n in range(max_voters + 1):
                for ballots in itertools.combinations_with_replacement(orders, n):
                    voters = tuple(Voter(f"v{j + 1}", b) for j, b in enumerate(ballots))
                    e = Election(frozenset(cands), voters)
                    key = canonical_encode(e)
                    if key not in seen:
                        seen.add(key)
                        yield e


def hardness_subelections():
    """Candidate subsets of the smallest hardness instances of the three
    candidate-partition systems (their rules ignore voters)."""
    out = []
    for target, cls in ((Target.E4_PC_TP, E4), (Target.E5_PC_TE, E5), (Target.E6_RPC, E6)):
        for F in (formula(1, [1]), formula(1, [-1])):
            C = sorted_candidates(build_hardness_instance(target, F).election.candidates)
            elections = [
                Election(frozenset(sub))
                for r in range(1, len(C) + 1)
                for sub in itertools.combinations(C, r)
            ]
            out.append((cls(), elections))
    return out


def verify_collapse(systems, elections=None, budget: SearchBudget = None) -> VerificationReport:
    """Check the run-off/plain/characterization equalities on every
    (system, election, p).  ``systems`` may pair each system with its own
    list of elections: ``[(system, elections), ...]``."""
    report = VerificationReport()
    space = list(elections) if elections is not None else None
    for item in systems:
        system, own = item if isinstance(item, tuple) else (item, None)
        pool = own if own is not None else (space if space is not None else list(election_space()))
        report.systems_checked += 1
        name = system_name(system)
        for e in pool:
            for p in sorted_candidates(e.candidates):
                vals = collapse_values(system, e, p, budget)
                report.instances_checked += 1
                for keys in (_TP_KEYS, _TE_KEYS):
                    for k in keys[1:]:
                        if vals[k] != vals[keys[0]]:
                            report.discrepancies.append(
                                {"system": name, "instance": describe(e, p), "left": [keys[0], vals[keys[0]]], "right": [k, vals[k]]}
                            )
    return report


def default_collapse_systems(n_random: int = 100, seed0: int = 0):
    from elecmanip.systems import E1, E2, E3, PluralitySystem

    named = [AliceSystem(), PluralitySystem(), E1(), E2(), E3(), E4(), E5(), E6()]
    return [RandomTableSystem(seed0 + s) for s in range(n_random)] + named + hardness_subelections()


def separation_instances():
    e = Election(frozenset((ALICE, BOB, CAROL)))
    return (
        dc_instance(e, ALICE, PartitionKind.PC, TieRule.TP, UNIQUE),
        dc_instance(e, ALICE, PartitionKind.RPC, TieRule.TP, UNIQUE),
    )


def verify_separation() -> VerificationReport:
    """Reproduce the witness where run-off and plain partition differ."""
    system = AliceSystem()
    report = VerificationReport(systems_checked=1)
    pc, rpc = separation_instances()
    got = (bf_decide(pc, system), bf_decide(rpc, system))
    report.instances_checked += 1
    report.values.append({"instance": describe(pc.election, ALICE), "dc_pc_tp_unique": got[0], "dc_rpc_tp_unique": got[1]})
    if got != (True, False):
        report.discrepancies.append({"system": "alice", "instance": describe(pc.election, ALICE), "left": ["expected", [True, False]], "right": ["observed", list(got)]})

    # nonunique goal on the same election: no separation
    nu = (
        bf_decide(dc_instance(pc.election, ALICE, PartitionKind.PC, TieRule.TP), system),
        bf_decide(dc_instance(pc.election, ALICE, PartitionKind.RPC, TieRule.TP), system),
    )
    report.instances_checked += 1
    report.values.append({"instance": describe(pc.election, ALICE), "dc_pc_tp": nu[0], "dc_rpc_tp": nu[1]})
    if nu[0] != nu[1]:
        report.discrepancies.append({"system": "alice", "instance": describe(pc.election, ALICE), "left": ["dc_pc_tp", nu[0]], "right": ["dc_rpc_tp", nu[1]]})

    # two-candidate elections: the unique-winner variants agree
    for pair in itertools.combinations((ALICE, BOB, CAROL), 2):
        e = Election(frozenset(pair))
        for p in pair:
            a = bf_decide(dc_instance(e, p, PartitionKind.PC, TieRule.TP, UNIQUE), system)
            b = bf_decide(dc_instance(e, p, PartitionKind.RPC, TieRule.TP, UNIQUE), system)
            report.instances_checked += 1
            if a != b:
                report.discrepancies.append({"system": "alice", "instance": describe(e, p), "left": ["dc_pc_tp_unique", a], "right": ["dc_rpc_tp_unique", b]})
    return report
