"""Polynomial-time decision procedures for the constructed systems, and the
exhaustive-SAT search that produces matching witnesses.

Each ``*_decide`` function only covers the action/goal combination its
system was built for and raises :class:`UnsupportedCase` otherwise.
"""
from __future__ import annotations

import time
from collections import defaultdict
from dataclasses import dataclass
from typing import Optional

from elecmanip.actions import (
    IMPOSSIBLE,
    Bribe,
    BriberyInstance,
    Direction,
    GoalMode,
    ManipulationInstance,
    ManipVotes,
    Partition,
    PartitionInstance,
    is_successful,
    validate_instance,
)
from elecmanip.bd import (
    BdSet,
    assignment_to_bits,
    complement,
    craft_vote,
    find_satisfying,
    puzzle,
    region_length,
    satisfies,
)
from elecmanip.core import Election, PartitionKind, TieRule, evaluate, shortlex_key, sorted_candidates
from elecmanip.systems import names
from elecmanip.systems.constructed import (
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    parse_pair_grammar,
    top_choice_assignment,
)
from elecmanip.bruteforce import bf_decide, bf_search
from elecmanip.systems.hardness import (
    Target,
    build_hardness_instance,
    default_bset,
    extract_assignment,
    hardness_system,
)


class UnsupportedCase(ValueError):
    """The procedure does not cover this action, direction, goal or tie rule."""


def _require(cond, msg):
    if not cond:
        raise UnsupportedCase(msg)


def _bset(bset, target):
    return bset if bset is not None else default_bset(target)


# -- manipulation and bribery ---------------------------------------------

def _can_change_a_vote(inst) -> bool:
    if isinstance(inst, ManipulationInstance):
        return bool(inst.manipulators)
    return inst.budget >= 1 and bool(inst.election.voters)


def _current(inst) -> Election:
    if isinstance(inst, ManipulationInstance):
        return Election(inst.candidates, inst.fixed_voters)
    return inst.election


def _check_vote_action(inst, direction):
    _require(isinstance(inst, (ManipulationInstance, BriberyInstance)), "needs a manipulation or bribery instance")
    _require(inst.direction is direction, f"covers {direction.value} instances only")
    _require(inst.goal is GoalMode.NONUNIQUE, "covers the nonunique-winner goal only")
    validate_instance(inst)


def e1_decide(inst, bset: BdSet = None) -> bool:
    """Constructive manipulation/bribery: a single changeable vote can always
    solve the puzzle with ``p`` on top."""
    _check_vote_action(inst, Direction.CONSTRUCTIVE)
    bset = _bset(bset, Target.E1_MANIP)
    e = _current(inst)
    if puzzle(e.candidates) not in bset:
        return False
    if _can_change_a_vote(inst):
        return True
    return inst.p in evaluate(E1(bset), e)


def e2_decide(inst, bset: BdSet = None) -> bool:
    """Destructive manipulation/bribery: one solving vote empties the winner set."""
    _check_vote_action(inst, Direction.DESTRUCTIVE)
    bset = _bset(bset, Target.E2_MANIP)
    e = _current(inst)
    if puzzle(e.candidates) not in bset:
        return True
    if _can_change_a_vote(inst):
        return True
    return inst.p not in evaluate(E2(bset), e)


# -- partition of voters ---------------------------------------------------

def _e3_constructive(e: Election, q: str, bset: BdSet) -> bool:
    cands = sorted_candidates(e.candidates)
    if len(cands) <= 2:
        return q == cands[-1]
    if q == cands[-1]:
        return bool(e.voters)
    if q != cands[0]:
        return False
    tops = [v.pref[0] for v in e.voters]
    if not tops or len(set(tops)) < len(tops):
        return True
    f = bset.formula(puzzle(e.candidates))
    if f is None:
        return False
    a = top_choice_assignment(cands, set(tops), f.d)
    if a is not None and (satisfies(f, a) or satisfies(f, complement(a))):
        return True
    return len(cands) >= 2 * f.d and set(tops) == set(cands[:2 * f.d])


def _check_e3(inst, bset):
    _require(isinstance(inst, PartitionInstance) and inst.kind is PartitionKind.PV, "needs a voter-partition instance")
    _require(inst.goal is GoalMode.NONUNIQUE, "covers the nonunique-winner goal only")
    _require(bset.min_vars >= 2, "relies on every puzzle having at least two variables")
    validate_instance(inst)


def e3_pv_decide(inst, bset: BdSet = None) -> bool:
    """Voter partition under either tie rule (the system always has exactly one winner)."""
    bset = _bset(bset, Target.E3_PV)
    _check_e3(inst, bset)
    e = inst.election
    if inst.direction is Direction.CONSTRUCTIVE:
        return _e3_constructive(e, inst.p, bset)
    return any(_e3_constructive(e, q, bset) for q in e.candidates if q != inst.p)


# -- partition of candidates ----------------------------------------------

def _check_candidate_partition(inst, kind, rule=None):
    _require(isinstance(inst, PartitionInstance) and inst.kind is kind, f"needs a {kind.value} instance")
    _require(rule is None or inst.rule is rule, f"covers the {rule.value if rule else ''} tie rule only")
    _require(inst.direction is Direction.CONSTRUCTIVE, "covers constructive instances only")
    _require(inst.goal is GoalMode.NONUNIQUE, "covers the nonunique-winner goal only")
    validate_instance(inst)


def e4_decide(inst, bset: BdSet = None) -> bool:
    _check_candidate_partition(inst, PartitionKind.PC, TieRule.TP)
    bset = _bset(bset, Target.E4_PC_TP)
    g = parse_pair_grammar(inst.election.candidates, bset)
    if g is None:
        return True  # everybody wins when all candidates get a bye
    core, _, f, entries = g
    if inst.p != core:
        return True  # core alone in round one has no winners; the rest all win the final
    if names.covers_all_pairs(entries, f.d):
        return True
    a = names.one_per_variable(entries, f.d)
    return a is not None and (satisfies(f, a) or satisfies(f, complement(a)))


def _pair_groups(cands, bset):
    """Pair-style candidates grouped by puzzle (only puzzles in B), plus the
    list of names that are not pair candidates of a puzzle in B."""
    groups = defaultdict(list)
    junk = []
    for c in cands:
        parsed = names.parse_pair(c)
        if parsed is None or bset.formula(parsed[0]) is None:
            junk.append(c)
        else:
            groups[parsed[0]].append((c, parsed[1], parsed[2]))
    return groups, junk


def _covering_assignment(cands, bset):
    """Names of one full assignment (value 0 preferred) for some puzzle in B
    found among ``cands``, or ``None``."""
    groups, _ = _pair_groups(cands, bset)
    for puz in sorted(groups, key=shortlex_key):
        d = bset.formula(puz).d
        chosen = {}
        for c, i, a in sorted(groups[puz], key=lambda t: (t[1], t[2])):
            if i <= d and i not in chosen:
                chosen[i] = c
        if len(chosen) == d:
            return frozenset(chosen.values())
    return None


def _e5_a_plan(C, bset):
    """How ``a`` can be made a winner: ``None`` when impossible, else a tuple
    describing the partition (see :func:`_e5_search`)."""
    a, b, c = names.A_NAME, names.B_NAME, names.C_NAME
    has_b, has_c = b in C, c in C
    if not has_b and not has_c:
        return None
    if has_b != has_c:
        y = b if has_b else c
        R = _covering_assignment(C - {a, y}, bset)
        return None if R is None else ("dispose", C - {a, y} - R)
    groups, junk = _pair_groups(C - {a, b, c}, bset)
    if junk:
        return None
    assignments = []
    for puz, entries in groups.items():
        f = bset.formula(puz)
        alpha = names.one_per_variable([(i, v) for _, i, v in entries], f.d)
        if alpha is not None:
            assignments.append((puz, f, alpha, frozenset(n for n, _, _ in entries)))
        elif len(groups) == 1 and names.covers_all_pairs([(i, v) for _, i, v in entries], f.d):
            return ("split", puz, f, entries)
        else:
            return None
    if len(assignments) == 1:
        return ("drop_b",)
    if len(assignments) == 2:
        for puz, f, alpha, members in sorted(assignments, key=lambda t: shortlex_key(t[0])):
            if satisfies(f, alpha):
                return ("with_ab", members)
    return None


def e5_decide(inst, bset: BdSet = None) -> bool:
    _check_candidate_partition(inst, PartitionKind.PC, TieRule.TE)
    bset = _bset(bset, Target.E5_PC_TE)
    C, p = inst.election.candidates, inst.p
    a, b, c = names.A_NAME, names.B_NAME, names.C_NAME
    if p in (b, c):
        return any(x != a and x != p for x in C)
    if p != a:
        return False
    return _e5_a_plan(C, bset) is not None


def _x0_parts(C, bset):
    """``(x, formula)`` if C is exactly ``{x0, x1}`` plus all bare
    assignment candidates of ``x`` in B, else ``None``."""
    cands = sorted_candidates(C)
    if not cands or not cands[0].endswith("0"):
        return None
    x = cands[0][:-1]
    f = bset.formula(x)
    if f is None:
        return None
    bare = names.bare_set(len(x), f.d)
    ok = len(C) == len(bare) + 2 and x + "1" in C and bare <= C
    return (x, f) if ok else None


def e6_decide(inst, bset: BdSet = None) -> bool:
    """Run-off candidate partition under either tie rule (never more than one winner)."""
    _check_candidate_partition(inst, PartitionKind.RPC)
    bset = _bset(bset, Target.E6_RPC)
    parts = _x0_parts(inst.election.candidates, bset)
    return parts is not None and inst.p == parts[0] + "0"


# -- dispatch --------------------------------------------------------------

def target_for(system, inst):
    """The constructed-system case ``inst`` falls under, or ``None``."""
    goal_ok = getattr(inst, "goal", None) is GoalMode.NONUNIQUE
    if not goal_ok:
        return None
    vote = isinstance(inst, (ManipulationInstance, BriberyInstance))
    manip = isinstance(inst, ManipulationInstance)
    part = isinstance(inst, PartitionInstance)
    constructive = inst.direction is Direction.CONSTRUCTIVE
    if isinstance(system, E1) and vote and constructive:
        return Target.E1_MANIP if manip else Target.E1_BRIBERY
    if isinstance(system, E2) and vote and not constructive:
        return Target.E2_MANIP if manip else Target.E2_BRIBERY
    if isinstance(system, E3) and part and inst.kind is PartitionKind.PV and system.bset.min_vars >= 2:
        return Target.E3_PV
    if not part or not constructive:
        return None
    if isinstance(system, E4) and inst.kind is PartitionKind.PC and inst.rule is TieRule.TP:
        return Target.E4_PC_TP
    if isinstance(system, E5) and inst.kind is PartitionKind.PC and inst.rule is TieRule.TE:
        return Target.E5_PC_TE
    if isinstance(system, E6) and inst.kind is PartitionKind.RPC:
        return Target.E6_RPC
    return None


_DECIDERS = {
    Target.E1_MANIP: e1_decide,
    Target.E1_BRIBERY: e1_decide,
    Target.E2_MANIP: e2_decide,
    Target.E2_BRIBERY: e2_decide,
    Target.E3_PV: e3_pv_decide,
    Target.E4_PC_TP: e4_decide,
    Target.E5_PC_TE: e5_decide,
    Target.E6_RPC: e6_decide,
}


def fast_decide_target(target, inst, bset: BdSet = None) -> bool:
    return _DECIDERS[Target(target)](inst, bset)


def fast_decide(system, inst):
    """Polynomial decision when ``system``/``inst`` match a covered case, else ``None``."""
    target = target_for(system, inst)
    if target is None:
        return None
    return _DECIDERS[target](inst, system.bset)


# -- slow search -----------------------------------------------------------

def slow_search(target, inst, bset: BdSet = None):
    """Witness for a covered instance, built from an exhaustively found
    satisfying assignment where the construction demands one."""
    target = Target(target)
    bset = _bset(bset, target)
    if not _DECIDERS[target](inst, bset):
        return IMPOSSIBLE
    return _BUILDERS[target](inst, bset)


def _vote_search(inst, bset):
    e = _current(inst)
    C = e.candidates
    if not _can_change_a_vote(inst):
        return ManipVotes({}) if isinstance(inst, ManipulationInstance) else Bribe({})
    f = bset.formula(puzzle(C))
    if f is None:
        vote = sorted_candidates(C)  # no winners whatever is cast
        vote = (inst.p, *(x for x in vote if x != inst.p))
    else:
        alpha = find_satisfying(f, bset.d_max)
        target_bits = assignment_to_bits(alpha).ljust(region_length(len(C)), "0")
        vote = craft_vote(C, inst.p, target_bits)
    if isinstance(inst, ManipulationInstance):
        return ManipVotes({m: vote for m in inst.manipulators})
    first = min((v.name for v in e.voters), key=shortlex_key)
    return Bribe({first: vote})


def _e3_partition_for(e: Election, q: str, bset: BdSet) -> Partition:
    cands = sorted_candidates(e.candidates)
    everyone = e.voter_names
    if len(cands) <= 2:
        return Partition(everyone, frozenset())
    if q == cands[-1]:
        v = min(everyone, key=shortlex_key)
        return Partition(frozenset((v,)), everyone - {v})
    tops = [v.pref[0] for v in e.voters]
    f = bset.formula(puzzle(e.candidates))
    if not tops or len(set(tops)) < len(tops) or f is None or top_choice_assignment(cands, set(tops), f.d):
        return Partition(everyone, frozenset())
    alpha = find_satisfying(f, bset.d_max)
    chosen = {cands[2 * i + int(bit)] for i, bit in enumerate(alpha)}
    side = frozenset(v.name for v in e.voters if v.pref[0] in chosen)
    return Partition(side, everyone - side)


def _e3_search(inst, bset):
    e = inst.election
    if inst.direction is Direction.CONSTRUCTIVE:
        return _e3_partition_for(e, inst.p, bset)
    for q in sorted_candidates(e.candidates):
        if q != inst.p and _e3_constructive(e, q, bset):
            return _e3_partition_for(e, q, bset)
    raise AssertionError("decision said yes but no candidate can be made the winner")


def _e4_search(inst, bset):
    C = inst.election.candidates
    g = parse_pair_grammar(C, bset)
    if g is None:
        return Partition(frozenset(), C)
    core, puz, f, entries = g
    if inst.p != core:
        return Partition(frozenset((core,)), C - {core})
    if not names.covers_all_pairs(entries, f.d):
        return Partition(frozenset(), C)  # already exactly one (complement-)satisfying assignment
    alpha = find_satisfying(f, bset.d_max)
    side = frozenset([core, *(names.pair_name(puz, i + 1, int(v)) for i, v in enumerate(alpha))])
    return Partition(side, C - side)


def _e5_search(inst, bset):
    C, p = inst.election.candidates, inst.p
    a, b, c = names.A_NAME, names.B_NAME, names.C_NAME
    if p != a:
        side = frozenset((a,)) & C  # a alone has no winners and drops out
        return Partition(side, C - side)
    plan = _e5_a_plan(C, bset)
    kind = plan[0]
    if kind == "dispose":
        return Partition(plan[1], C - plan[1])
    if kind == "drop_b":
        return Partition(frozenset((b,)), C - {b})
    if kind == "with_ab":
        side = frozenset((a, b)) | plan[1]
        return Partition(side, C - side)
    _, puz, f, _ = plan
    alpha = find_satisfying(f, bset.d_max)
    side = frozenset([a, b, *(names.pair_name(puz, i + 1, int(v)) for i, v in enumerate(alpha))])
    return Partition(side, C - side)


def _e6_search(inst, bset):
    C = inst.election.candidates
    x, f = _x0_parts(C, bset)
    alpha = find_satisfying(f, bset.d_max)
    side = frozenset([x + "0", *(names.bare_name(len(x), i + 1, int(v)) for i, v in enumerate(alpha))])
    return Partition(side, C - side)


_BUILDERS = {
    Target.E1_MANIP: _vote_search,
    Target.E1_BRIBERY: _vote_search,
    Target.E2_MANIP: _vote_search,
    Target.E2_BRIBERY: _vote_search,
    Target.E3_PV: _e3_search,
    Target.E4_PC_TP: _e4_search,
    Target.E5_PC_TE: _e5_search,
    Target.E6_RPC: _e6_search,
}


# -- front doors -----------------------------------------------------------

def decide(system, inst, budget=None):
    """``(answer, method)``: the polynomial procedure when one covers the
    case, else exhaustive search."""
    ans = fast_decide(system, inst)
    if ans is not None:
        return ans, "fastpath"
    return bf_decide(inst, system, budget), "bruteforce"


def search(system, inst, budget=None):
    """``(solution, method)``, routed like :func:`decide`."""
    target = target_for(system, inst)
    if target is not None:
        return slow_search(target, inst, system.bset), "slow_search"
    return bf_search(inst, system, budget), "bruteforce"


@dataclass
class GapDemo:
    target: str
    d: int
    m: int
    candidates: int
    decision: bool
    decide_seconds: float
    search_seconds: float
    witness_ok: bool
    assignment: Optional[tuple]
    solution: object = None


def gap_demo(target, F, bset: BdSet = None, *, direction=None, rule=TieRule.TP) -> GapDemo:
    """Build the hardness instance of ``F`` and time the polynomial decision
    against the exhaustive-SAT search on a fresh (cold) BdSet."""
    target = Target(target)
    bset = bset if bset is not None else default_bset(target)
    inst = build_hardness_instance(target, F, bset, direction=direction, rule=rule)
    system = hardness_system(target, bset)

    bset.clear()
    t0 = time.perf_counter()
    verdict = fast_decide_target(target, inst, bset)
    t1 = time.perf_counter()
    bset.clear()
    t2 = time.perf_counter()
    sol = slow_search(target, inst, bset)
    t3 = time.perf_counter()

    ok = sol is not IMPOSSIBLE and is_successful(inst, sol, system)
    alpha = extract_assignment(target, inst, sol, bset) if ok else None
    return GapDemo(
        target.value, F.d, F.m, len(_current_candidates(inst)), verdict,
        t1 - t0, t3 - t2, ok, alpha, sol,
    )


def _current_candidates(inst):
    return inst.candidates if isinstance(inst, ManipulationInstance) else inst.election.candidates


__all__ = [
    "GapDemo",
    "UnsupportedCase",
    "decide",
    "e1_decide",
    "e2_decide",
    "e3_pv_decide",
    "e4_decide",
    "e5_decide",
    "e6_decide",
    "fast_decide",
    "fast_decide_target",
    "gap_demo",
    "search",
    "slow_search",
    "target_for",
]
