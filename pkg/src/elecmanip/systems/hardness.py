"""Hard instances for the constructed systems and assignment extraction.

Each builder turns a formula ``F`` from B into an action instance whose
every successful solution spells out a satisfying assignment of ``F``;
:func:`extract_assignment` reads that assignment back off a solution.
"""
from __future__ import annotations

import enum

from elecmanip.actions import (
    BriberyInstance,
    DESTRUCTIVE,
    CONSTRUCTIVE,
    InvalidSolution,
    ManipulationInstance,
    PartitionInstance,
    apply_solution,
    instance_goal_met,
    post_action_election,
)
from elecmanip.bd import BdSet, CnfFormula, complement, encode_formula, puzzle, satisfies
from elecmanip.core import Election, PartitionKind, TieRule, Voter, sorted_candidates
from elecmanip.systems import names
from elecmanip.systems.constructed import (
    E1,
    E2,
    E3,
    E4,
    E5,
    E6,
    top_choice_assignment,
    voter_assignment,
)


class Target(enum.Enum):
    E1_MANIP = "e1-manip"
    E1_BRIBERY = "e1-bribery"
    E2_MANIP = "e2-manip"
    E2_BRIBERY = "e2-bribery"
    E3_PV = "e3-pv"
    E4_PC_TP = "e4-pc-tp"
    E5_PC_TE = "e5-pc-te"
    E6_RPC = "e6-rpc"


class HardnessError(ValueError):
    pass


_SYSTEMS = {
    Target.E1_MANIP: E1,
    Target.E1_BRIBERY: E1,
    Target.E2_MANIP: E2,
    Target.E2_BRIBERY: E2,
    Target.E3_PV: E3,
    Target.E4_PC_TP: E4,
    Target.E5_PC_TE: E5,
    Target.E6_RPC: E6,
}


def default_bset(target: Target) -> BdSet:
    return BdSet(min_vars=2) if target is Target.E3_PV else BdSet()


def hardness_system(target: Target, bset: BdSet = None):
    return _SYSTEMS[Target(target)](bset if bset is not None else default_bset(Target(target)))


def build_hardness_instance(target, F: CnfFormula, bset: BdSet = None, *, direction=None, rule=TieRule.TP):
    """The action instance whose solutions encode satisfying assignments of ``F``.

    ``direction`` only matters for the voter-partition target (default
    constructive); ``rule`` for the voter-partition and run-off targets.
    """
    target = Target(target)
    bset = bset if bset is not None else default_bset(target)
    x = encode_formula(F)
    if x not in bset:
        raise HardnessError(f"formula is not in {bset!r}")

    if target in (Target.E1_MANIP, Target.E2_MANIP, Target.E1_BRIBERY, Target.E2_BRIBERY):
        cand_list = names.index_names(x)
        C = frozenset(cand_list)
        p = cand_list[0]
        d = CONSTRUCTIVE if target in (Target.E1_MANIP, Target.E1_BRIBERY) else DESTRUCTIVE
        if target in (Target.E1_MANIP, Target.E2_MANIP):
            return ManipulationInstance(C, (), ("m1",), p, d)
        e = Election(C, (Voter("v1", tuple(cand_list)),))
        return BriberyInstance(e, p, 1, d)

    if target is Target.E3_PV:
        cand_list = names.index_names(x)
        C = frozenset(cand_list)
        voters = []
        for j in range(2 * F.d):
            top = cand_list[j]
            voters.append(Voter(f"v{j + 1}", (top, *(c for c in cand_list if c != top))))
        direction = direction or CONSTRUCTIVE
        p = cand_list[0] if direction is CONSTRUCTIVE else cand_list[-1]
        return PartitionInstance(Election(C, tuple(voters)), p, PartitionKind.PV, rule, direction)

    if target is Target.E4_PC_TP:
        core = names.core_name(x)
        C = frozenset([core, *names.all_pairs(x, F.d)])
        return PartitionInstance(Election(C), core, PartitionKind.PC, TieRule.TP)

    if target is Target.E5_PC_TE:
        C = frozenset([*names.SPECIALS, *names.all_pairs(x, F.d)])
        return PartitionInstance(Election(C), names.A_NAME, PartitionKind.PC, TieRule.TE)

    x0 = names.tagged_name(x, "0")
    C = frozenset([x0, names.tagged_name(x, "1"), *names.all_bare(len(x), F.d)])
    return PartitionInstance(Election(C), x0, PartitionKind.RPC, rule)


def instance_formula(target, instance, bset: BdSet = None) -> CnfFormula:
    """The puzzle formula carried by a hardness instance's candidates."""
    target = Target(target)
    bset = bset if bset is not None else default_bset(target)
    if isinstance(instance, ManipulationInstance):
        C = instance.candidates
    else:
        C = instance.election.candidates
    if target in (Target.E4_PC_TP, Target.E5_PC_TE):
        puzzles = {parsed[0] for parsed in map(names.parse_pair, C) if parsed}
        x = min(puzzles) if len(puzzles) == 1 else None
    elif target is Target.E6_RPC:
        x = sorted_candidates(C)[0][:-1]
    else:
        x = puzzle(C)
    f = bset.formula(x) if x is not None else None
    if f is None:
        raise HardnessError("instance candidates do not carry a puzzle from B")
    return f


def _pick(f: CnfFormula, a):
    if a is None:
        return None
    if satisfies(f, a):
        return a
    if satisfies(f, complement(a)):
        return complement(a)
    return None


def extract_assignment(target, instance, sol, bset: BdSet = None):
    """Satisfying assignment of the instance's puzzle read off a successful solution."""
    target = Target(target)
    bset = bset if bset is not None else default_bset(target)
    system = hardness_system(target, bset)
    if not instance_goal_met(instance, apply_solution(instance, sol, system)):
        raise InvalidSolution("solution does not reach the goal")
    f = instance_formula(target, instance, bset)

    if target in (Target.E1_MANIP, Target.E1_BRIBERY, Target.E2_MANIP, Target.E2_BRIBERY):
        e = post_action_election(instance, sol)
        for v in e.voters:
            a = voter_assignment(e.candidates, v.pref, f.d)
            if a is not None and satisfies(f, a):
                return a
        raise HardnessError("no vote spells a satisfying assignment")

    e = instance.election
    if target is Target.E3_PV:
        cands = sorted_candidates(e.candidates)
        for side in sol.pair:
            if side:
                tops = {v.pref[0] for v in e.voters if v.name in side}
                a = _pick(f, top_choice_assignment(cands, tops, f.d))
                if a is not None:
                    return a
        raise HardnessError("neither side of the partition spells an assignment")

    if target is Target.E4_PC_TP:
        anchor = names.core_name(encode_formula(f))
        parse = _pair_entries
    elif target is Target.E5_PC_TE:
        anchor = names.A_NAME
        parse = _pair_entries
    else:
        anchor = sorted_candidates(e.candidates)[0]
        k = len(anchor) - 1
        parse = lambda side: [p for p in (names.parse_bare(c, k) for c in side) if p]  # noqa: E731
    sides = sorted(sol.pair, key=lambda s: anchor not in s)
    for side in sides:
        a = _pick(f, names.one_per_variable(parse(side), f.d))
        if a is not None:
            return a
    raise HardnessError("no side of the partition spells an assignment")


def _pair_entries(side):
    return [p[1:] for p in (names.parse_pair(c) for c in side) if p]
