"""Search-to-decision reductions for control by adding/deleting voters or
candidates and for destructive partition of candidates.

Every reducer talks to the election only through a :class:`DecisionOracle`
and makes a linear number of oracle calls.  They work for any election
system because they never evaluate one.
"""
from __future__ import annotations

from dataclasses import replace
from typing import Callable, Optional

from elecmanip.actions import (
    IMPOSSIBLE,
    AddCandidatesInstance,
    AddedSet,
    AddVotersInstance,
    DeleteCandidatesInstance,
    DeletedSet,
    DeleteVotersInstance,
    Direction,
    GoalMode,
    Partition,
    PartitionInstance,
)
from elecmanip.bruteforce import SearchBudget, bf_decide
from elecmanip.core import PartitionKind, TieRule, Voter, restrict_vote, shortlex_key, sorted_candidates


class UnsupportedAction(ValueError):
    """No general search-to-decision reduction exists for this action."""


class OracleMismatch(ValueError):
    pass


class DecisionOracle:
    """Wraps a yes/no function on action instances and counts calls.

    ``action`` and ``direction`` optionally pin what the oracle answers;
    a reducer handing it anything else is an error.
    """

    def __init__(self, answer: Callable, action: Optional[str] = None, direction: Optional[Direction] = None):
        self._answer = answer
        self.action = action
        self.direction = direction
        self.calls = 0

    def __call__(self, instance) -> bool:
        if self.action is not None and instance.action != self.action:
            raise OracleMismatch(f"oracle answers {self.action}, got {instance.action}")
        if self.direction is not None and instance.direction is not self.direction:
            raise OracleMismatch(f"oracle answers {self.direction.value}, got {instance.direction.value}")
        self.calls += 1
        return bool(self._answer(instance))


def brute_force_oracle(system, budget: SearchBudget = None, **pins) -> DecisionOracle:
    return DecisionOracle(lambda inst: bf_decide(inst, system, budget), **pins)


def _check_oracle(oracle, instance):
    if oracle.action is not None and oracle.action != instance.action:
        raise OracleMismatch(f"oracle answers {oracle.action}, instance is {instance.action}")
    if oracle.direction is not None and oracle.direction is not instance.direction:
        raise OracleMismatch(f"oracle answers {oracle.direction.value}, instance is {instance.direction.value}")


def reduce_add_voters(instance: AddVotersInstance, oracle: DecisionOracle):
    _check_oracle(oracle, instance)
    if not oracle(instance):
        return IMPOSSIBLE
    cur = instance
    chosen = []
    for w in sorted(instance.pool, key=lambda v: shortlex_key(v.name)):
        if cur.limit == 0:
            break
        rest = tuple(v for v in cur.pool if v.name != w.name)
        trial = replace(cur, registered=cur.registered + (w,), pool=rest, limit=cur.limit - 1)
        if oracle(trial):
            cur = trial
            chosen.append(w.name)
        else:
            cur = replace(cur, pool=rest)
    return AddedSet(frozenset(chosen))


def reduce_delete_voters(instance: DeleteVotersInstance, oracle: DecisionOracle):
    _check_oracle(oracle, instance)
    if not oracle(instance):
        return IMPOSSIBLE
    cur = instance
    chosen = []
    for v in sorted(instance.election.voters, key=lambda v: shortlex_key(v.name)):
        if cur.limit == 0:
            break
        e = cur.election.with_voters(u for u in cur.election.voters if u.name != v.name)
        trial = replace(cur, election=e, limit=cur.limit - 1)
        if oracle(trial):
            cur = trial
            chosen.append(v.name)
    return DeletedSet(frozenset(chosen))


def reduce_add_candidates(instance: AddCandidatesInstance, oracle: DecisionOracle):
    """Handles both the bounded and the unlimited (``limit=None``) variant."""
    _check_oracle(oracle, instance)
    if not oracle(instance):
        return IMPOSSIBLE
    unlimited = instance.limit is None
    cur = instance
    chosen = []
    for a in sorted_candidates(instance.pool):
        if not unlimited and cur.limit == 0:
            break
        rest = cur.pool - {a}
        trial = replace(
            cur,
            candidates=cur.candidates | {a},
            pool=rest,
            limit=None if unlimited else cur.limit - 1,
        )
        if oracle(trial):
            cur = trial
            chosen.append(a)
        else:
            # a is gone for good: drop it from the pool and from every vote
            kept = cur.candidates | rest
            cur = replace(cur, pool=rest, voters=_restrict_voters(cur.voters, kept))
    return AddedSet(frozenset(chosen))


def _restrict_voters(voters, kept):
    return tuple(Voter(v.name, restrict_vote(v.pref, kept)) for v in voters)


def reduce_delete_candidates(instance: DeleteCandidatesInstance, oracle: DecisionOracle):
    _check_oracle(oracle, instance)
    if not oracle(instance):
        return IMPOSSIBLE
    cur = instance
    chosen = []
    for c in sorted_candidates(instance.election.candidates):
        if cur.limit == 0:
            break
        if c == instance.p:
            continue
        trial = replace(cur, election=cur.election.restricted(cur.election.candidates - {c}), limit=cur.limit - 1)
        if oracle(trial):
            cur = trial
            chosen.append(c)
    return DeletedSet(frozenset(chosen))


def check_destructive_partition(instance):
    """Raise UnsupportedAction unless a reduction exists for ``instance``."""
    if not isinstance(instance, PartitionInstance):
        raise UnsupportedAction(f"no search-to-decision reduction for {instance.action}")
    if instance.direction is not Direction.DESTRUCTIVE:
        raise UnsupportedAction("constructive partition control has no general search-to-decision reduction")
    if instance.kind is PartitionKind.PV:
        raise UnsupportedAction("voter partition has no general search-to-decision reduction")
    if instance.rule is TieRule.TP and instance.goal is GoalMode.UNIQUE:
        raise UnsupportedAction(
            "destructive candidate partition with ties promoting and the unique-winner goal"
            " is not covered (run-off and plain partition differ there)"
        )


def reduce_destructive_partition(instance: PartitionInstance, oracle: DecisionOracle):
    """Shrink the candidate set to an inclusion-minimal ``C'`` containing
    ``p`` on which the oracle still says yes, then put ``C'`` in round one.

    The oracle is monotone in the candidate set, so one pass over the
    candidates other than ``p`` reaches a minimal set.
    """
    check_destructive_partition(instance)
    _check_oracle(oracle, instance)
    if not oracle(instance):
        return IMPOSSIBLE
    cur = instance
    for c in sorted_candidates(instance.election.candidates):
        if c == instance.p:
            continue
        e = cur.election.restricted(cur.election.candidates - {c})
        trial = replace(cur, election=e)
        if oracle(trial):
            cur = trial
    first = cur.election.candidates
    return Partition(first, instance.election.candidates - first)


def minimality_holds(instance: PartitionInstance, sol: Partition, oracle: DecisionOracle) -> bool:
    """Post-hoc check: the oracle rejects ``C' - {c}`` for every ``c`` in ``C' - {p}``."""
    for c in sol.first:
        if c == instance.p:
            continue
        e = instance.election.restricted(sol.first - {c})
        if oracle(replace(instance, election=e)):
            return False
    return True


REDUCERS = {
    "add_voters": reduce_add_voters,
    "delete_voters": reduce_delete_voters,
    "add_candidates": reduce_add_candidates,
    "add_candidates_unlimited": reduce_add_candidates,
    "delete_candidates": reduce_delete_candidates,
    "partition": reduce_destructive_partition,
}


def reduce_search(instance, oracle: DecisionOracle):
    """Dispatch to the reducer for ``instance``'s action."""
    fn = REDUCERS.get(instance.action)
    if fn is None:
        raise UnsupportedAction(
            f"{instance.action} has no general search-to-decision reduction:"
            " deciding it can be easy while finding a solution is as hard as SAT solving"
        )
    return fn(instance, oracle)
