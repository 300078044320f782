"""Exhaustive decision and search oracles for every manipulative action.

The enumeration order is fixed: subsets by increasing size, then in
shortlex order of their members; preferences as permutations of the
shortlex-sorted candidates.  ``bf_search`` therefore returns a
deterministic first witness.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

from elecmanip.actions import (
    IMPOSSIBLE,
    AddCandidatesInstance,
    AddedSet,
    AddVotersInstance,
    Bribe,
    BriberyInstance,
    DeleteCandidatesInstance,
    DeletedSet,
    DeleteVotersInstance,
    ManipulationInstance,
    ManipVotes,
    Partition,
    PartitionInstance,
    instance_goal_met,
    validate_instance,
)
from elecmanip.core import (
    Election,
    PartitionKind,
    Voter,
    apply_tie_rule,
    evaluate,
    shortlex_key,
    sorted_candidates,
)


class BudgetExceeded(RuntimeError):
    """The instance is larger than the configured enumeration bounds.

    Never a statement about whether a successful action exists.
    """


@dataclass(frozen=True)
class SearchBudget:
    max_candidates: int = 5
    max_voters: int = 5
    max_pool: int = 4
    max_steps: Optional[int] = None  # cap on solutions tried, None = unbounded

    def __post_init__(self):
        for name in ("max_candidates", "max_voters", "max_pool"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")
        if self.max_steps is not None and self.max_steps < 1:
            raise ValueError("max_steps must be positive")


DEFAULT_BUDGET = SearchBudget()


def _bound(n, limit, what):
    if n > limit:
        raise BudgetExceeded(f"{n} {what} exceed the enumeration bound {limit}")


def enumerate_preferences(candidates, budget: SearchBudget = DEFAULT_BUDGET) -> Iterator[tuple]:
    """All strict orders over ``candidates``, each exactly once."""
    cands = sorted_candidates(frozenset(candidates))
    _bound(len(cands), budget.max_candidates, "candidates")
    return itertools.permutations(cands)


def subsets_by_size(items, max_size=None) -> Iterator[frozenset]:
    """Subsets of the (already ordered) ``items``, smallest first."""
    items = list(items)
    top = len(items) if max_size is None else min(max_size, len(items))
    for r in range(top + 1):
        for combo in itertools.combinations(items, r):
            yield frozenset(combo)


def _names_sorted(voters):
    return sorted((v.name for v in voters), key=shortlex_key)


def _pref_tuples(candidates, r, budget):
    """Tuples of ``r`` preferences; lazy for ``r == 1`` so huge candidate
    sets can still be scanned under a step cap."""
    if r == 1:
        return ((p,) for p in enumerate_preferences(candidates, budget))
    return itertools.product(list(enumerate_preferences(candidates, budget)), repeat=r)


# -- per-action enumerators: yield (solution, winners-thunk) -------------

def _manipulation(inst: ManipulationInstance, system, budget):
    C, fixed, manip = inst.candidates, inst.fixed_voters, inst.manipulators
    if not manip:
        yield ManipVotes({}), lambda: evaluate(system, Election(C, fixed))
        return
    _bound(len(manip), budget.max_voters, "manipulators")
    for combo in _pref_tuples(C, len(manip), budget):
        cast = tuple(Voter(n, p) for n, p in zip(manip, combo))
        e = Election(C, fixed + cast)
        yield ManipVotes(dict(zip(manip, combo))), (lambda e=e: evaluate(system, e))


def _bribery(inst: BriberyInstance, system, budget):
    e = inst.election
    yield Bribe({}), lambda: evaluate(system, e)
    if inst.budget == 0 or not e.voters:
        return
    _bound(len(e.voters), budget.max_voters, "voters")
    names = _names_sorted(e.voters)
    for group in subsets_by_size(names, inst.budget):
        if not group:
            continue
        chosen = [n for n in names if n in group]
        for combo in _pref_tuples(e.candidates, len(chosen), budget):
            new = dict(zip(chosen, combo))
            e2 = e.with_voters(Voter(v.name, new[v.name]) if v.name in new else v for v in e.voters)
            yield Bribe(new), (lambda e2=e2: evaluate(system, e2))


def _add_voters(inst: AddVotersInstance, system, budget):
    if inst.limit > 0:
        _bound(len(inst.pool), budget.max_pool, "pool voters")
    names = _names_sorted(inst.pool)
    for group in subsets_by_size(names, inst.limit):
        e = Election(inst.candidates, inst.registered + tuple(v for v in inst.pool if v.name in group))
        yield AddedSet(group), (lambda e=e: evaluate(system, e))


def _delete_voters(inst: DeleteVotersInstance, system, budget):
    e = inst.election
    if inst.limit > 0:
        _bound(len(e.voters), budget.max_voters, "voters")
    for group in subsets_by_size(_names_sorted(e.voters), inst.limit):
        e2 = e.with_voters(v for v in e.voters if v.name not in group)
        yield DeletedSet(group), (lambda e2=e2: evaluate(system, e2))


def _add_candidates(inst: AddCandidatesInstance, system, budget):
    if inst.limit is None or inst.limit > 0:
        _bound(len(inst.pool), budget.max_pool, "pool candidates")
    full = Election(inst.candidates | inst.pool, inst.voters)
    for group in subsets_by_size(sorted_candidates(inst.pool), inst.limit):
        e = full.restricted(inst.candidates | group)
        yield AddedSet(group), (lambda e=e: evaluate(system, e))


def _delete_candidates(inst: DeleteCandidatesInstance, system, budget):
    e = inst.election
    if inst.limit > 0:
        _bound(len(e.candidates), budget.max_candidates, "candidates")
    others = [c for c in sorted_candidates(e.candidates) if c != inst.p]
    for group in subsets_by_size(others, inst.limit):
        e2 = e.restricted(e.candidates - group)
        yield DeletedSet(group), (lambda e2=e2: evaluate(system, e2))


def _partition(inst: PartitionInstance, system, budget):
    e, rule = inst.election, inst.rule
    if inst.kind is PartitionKind.PV:
        _bound(len(e.voters), budget.max_voters, "voters")
        universe = frozenset(e.voter_names)
        order = _names_sorted(e.voters)
    else:
        _bound(len(e.candidates), budget.max_candidates, "candidates")
        universe = e.candidates
        order = sorted_candidates(e.candidates)
    memo = {}

    def stage(key, build):
        # subelection winners after the tie rule, shared across partitions
        if key not in memo:
            memo[key] = apply_tie_rule(evaluate(system, build()), rule)
        return memo[key]

    for first in subsets_by_size(order):
        second = universe - first
        if inst.kind is PartitionKind.PV:
            def thunk(first=first, second=second):
                w1 = stage(first, lambda: e.with_voters(v for v in e.voters if v.name in first))
                w2 = stage(second, lambda: e.with_voters(v for v in e.voters if v.name in second))
                return evaluate(system, e.restricted(w1 | w2))
        elif inst.kind is PartitionKind.RPC:
            def thunk(first=first, second=second):
                w = stage(first, lambda: e.restricted(first)) | stage(second, lambda: e.restricted(second))
                return evaluate(system, e.restricted(w))
        else:
            def thunk(first=first, second=second):
                return evaluate(system, e.restricted(stage(first, lambda: e.restricted(first)) | second))
        yield Partition(first, second), thunk


_ENUMERATORS = {
    ManipulationInstance: _manipulation,
    BriberyInstance: _bribery,
    AddVotersInstance: _add_voters,
    DeleteVotersInstance: _delete_voters,
    AddCandidatesInstance: _add_candidates,
    DeleteCandidatesInstance: _delete_candidates,
    PartitionInstance: _partition,
}


def enumerate_solutions(instance, system, budget: SearchBudget = DEFAULT_BUDGET):
    """Every well-formed solution of ``instance`` in canonical order, paired
    with a thunk computing its final winner set."""
    try:
        gen = _ENUMERATORS[type(instance)]
    except KeyError:
        raise TypeError(f"not an action instance: {type(instance).__name__}") from None
    return gen(instance, system, budget)


def bf_search(instance, system, budget: SearchBudget = None):
    """First successful solution in canonical order, or ``IMPOSSIBLE``."""
    budget = budget or DEFAULT_BUDGET
    validate_instance(instance)
    steps = 0
    for sol, winners in enumerate_solutions(instance, system, budget):
        steps += 1
        if budget.max_steps is not None and steps > budget.max_steps:
            raise BudgetExceeded(f"gave up after {budget.max_steps} candidate solutions")
        if instance_goal_met(instance, winners()):
            return sol
    return IMPOSSIBLE


def bf_decide(instance, system, budget: SearchBudget = None) -> bool:
    return bf_search(instance, system, budget) is not IMPOSSIBLE
