"""Manipulative-action instances, solution witnesses, goal evaluation and
solution replay.

Replaying a witness with :func:`apply_solution` and checking the result with
:func:`goal_met` is the one definition of a *successful* action used
throughout the package.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from typing import Optional, Union

from elecmanip.core import (
    Election,
    ElectionError,
    PartitionKind,
    TieRule,
    Voter,
    check_preference,
    evaluate,
    is_bitstring,
    run_two_stage,
    validate_election,
)


class Direction(enum.Enum):
    CONSTRUCTIVE = "constructive"
    DESTRUCTIVE = "destructive"


class GoalMode(enum.Enum):
    NONUNIQUE = "nonunique"
    UNIQUE = "unique"


class InvalidInstance(ElectionError):
    pass


class InvalidSolution(ElectionError):
    pass


CONSTRUCTIVE = Direction.CONSTRUCTIVE
DESTRUCTIVE = Direction.DESTRUCTIVE
NONUNIQUE = GoalMode.NONUNIQUE
UNIQUE = GoalMode.UNIQUE


# -- instances -------------------------------------------------------------

@dataclass(frozen=True)
class ManipulationInstance:
    candidates: frozenset
    fixed_voters: tuple
    manipulators: tuple
    p: str
    direction: Direction = CONSTRUCTIVE
    goal: GoalMode = NONUNIQUE
    action = "manipulation"


@dataclass(frozen=True)
class BriberyInstance:
    election: Election
    p: str
    budget: int
    direction: Direction = CONSTRUCTIVE
    goal: GoalMode = NONUNIQUE
    action = "bribery"


@dataclass(frozen=True)
class AddVotersInstance:
    candidates: frozenset
    registered: tuple
    pool: tuple
    p: str
    limit: int
    direction: Direction = CONSTRUCTIVE
    goal: GoalMode = NONUNIQUE
    action = "add_voters"


@dataclass(frozen=True)
class DeleteVotersInstance:
    election: Election
    p: str
    limit: int
    direction: Direction = CONSTRUCTIVE
    goal: GoalMode = NONUNIQUE
    action = "delete_voters"


@dataclass(frozen=True)
class AddCandidatesInstance:
    """``limit=None`` is the unlimited variant."""

    candidates: frozenset
    pool: frozenset
    voters: tuple
    p: str
    limit: Optional[int]
    direction: Direction = CONSTRUCTIVE
    goal: GoalMode = NONUNIQUE

    @property
    def action(self):
        return "add_candidates_unlimited" if self.limit is None else "add_candidates"

    @property
    def unlimited(self) -> bool:
        return self.limit is None


@dataclass(frozen=True)
class DeleteCandidatesInstance:
    election: Election
    p: str
    limit: int
    direction: Direction = CONSTRUCTIVE
    goal: GoalMode = NONUNIQUE
    action = "delete_candidates"


@dataclass(frozen=True)
class PartitionInstance:
    election: Election
    p: str
    kind: PartitionKind
    rule: TieRule
    direction: Direction = CONSTRUCTIVE
    goal: GoalMode = NONUNIQUE
    action = "partition"


ActionInstance = Union[
    ManipulationInstance,
    BriberyInstance,
    AddVotersInstance,
    DeleteVotersInstance,
    AddCandidatesInstance,
    DeleteCandidatesInstance,
    PartitionInstance,
]

ACTIONS = (
    "manipulation",
    "bribery",
    "add_voters",
    "delete_voters",
    "add_candidates",
    "delete_candidates",
    "add_candidates_unlimited",
    "partition",
)


# -- solutions -------------------------------------------------------------

@dataclass(frozen=True)
class ManipVotes:
    votes: dict = field(hash=False)


@dataclass(frozen=True)
class Bribe:
    votes: dict = field(hash=False)


@dataclass(frozen=True)
class AddedSet:
    names: frozenset


@dataclass(frozen=True)
class DeletedSet:
    names: frozenset


@dataclass(frozen=True)
class Partition:
    first: frozenset
    second: frozenset

    @property
    def pair(self):
        return (self.first, self.second)


@dataclass(frozen=True)
class Impossible:
    """No successful action exists."""


IMPOSSIBLE = Impossible()

ActionSolution = Union[ManipVotes, Bribe, AddedSet, DeletedSet, Partition, Impossible]


# -- goals -----------------------------------------------------------------

def goal_met(winners, p: str, direction: Direction, goal: GoalMode) -> bool:
    if goal is GoalMode.NONUNIQUE:
        hit = p in winners
    else:
        hit = len(winners) == 1 and p in winners
    return hit if direction is Direction.CONSTRUCTIVE else not hit


def instance_goal_met(instance, winners) -> bool:
    return goal_met(winners, instance.p, instance.direction, instance.goal)


# -- replay ----------------------------------------------------------------

def post_action_election(instance, sol) -> Election:
    """The election a (non-partition) solution produces; raises on malformed witnesses."""
    if isinstance(instance, ManipulationInstance):
        if not isinstance(sol, ManipVotes):
            raise InvalidSolution("manipulation needs a ManipVotes witness")
        if set(sol.votes) != set(instance.manipulators):
            raise InvalidSolution("votes must be given for exactly the manipulators")
        for pref in sol.votes.values():
            _check_pref(pref, instance.candidates)
        cast = tuple(Voter(n, tuple(sol.votes[n])) for n in instance.manipulators)
        return Election(instance.candidates, instance.fixed_voters + cast)

    if isinstance(instance, BriberyInstance):
        if not isinstance(sol, Bribe):
            raise InvalidSolution("bribery needs a Bribe witness")
        e = instance.election
        if len(sol.votes) > instance.budget:
            raise InvalidSolution(f"bribe touches {len(sol.votes)} voters, budget is {instance.budget}")
        unknown = set(sol.votes) - e.voter_names
        if unknown:
            raise InvalidSolution(f"unknown voters {sorted(unknown)!r}")
        for pref in sol.votes.values():
            _check_pref(pref, e.candidates)
        return e.with_voters(
            Voter(v.name, tuple(sol.votes[v.name])) if v.name in sol.votes else v for v in e.voters
        )

    if isinstance(instance, AddVotersInstance):
        if not isinstance(sol, AddedSet):
            raise InvalidSolution("adding voters needs an AddedSet witness")
        _check_limit(sol.names, instance.limit)
        pool = {v.name for v in instance.pool}
        _check_subset(sol.names, pool, "pool voters")
        added = tuple(v for v in instance.pool if v.name in sol.names)
        return Election(instance.candidates, instance.registered + added)

    if isinstance(instance, DeleteVotersInstance):
        if not isinstance(sol, DeletedSet):
            raise InvalidSolution("deleting voters needs a DeletedSet witness")
        _check_limit(sol.names, instance.limit)
        e = instance.election
        _check_subset(sol.names, e.voter_names, "voters")
        return e.with_voters(v for v in e.voters if v.name not in sol.names)

    if isinstance(instance, AddCandidatesInstance):
        if not isinstance(sol, AddedSet):
            raise InvalidSolution("adding candidates needs an AddedSet witness")
        if instance.limit is not None:
            _check_limit(sol.names, instance.limit)
        _check_subset(sol.names, instance.pool, "pool candidates")
        full = Election(instance.candidates | instance.pool, instance.voters)
        return full.restricted(instance.candidates | sol.names)

    if isinstance(instance, DeleteCandidatesInstance):
        if not isinstance(sol, DeletedSet):
            raise InvalidSolution("deleting candidates needs a DeletedSet witness")
        _check_limit(sol.names, instance.limit)
        e = instance.election
        _check_subset(sol.names, e.candidates, "candidates")
        if instance.p in sol.names:
            raise InvalidSolution("the distinguished candidate cannot be deleted")
        return e.restricted(e.candidates - sol.names)

    raise TypeError(f"not an action instance: {type(instance).__name__}")


def apply_solution(instance, sol, system) -> frozenset:
    """Final winner set after carrying out ``sol`` on ``instance``."""
    if isinstance(sol, Impossible):
        raise InvalidSolution("Impossible has nothing to replay")
    if isinstance(instance, PartitionInstance):
        if not isinstance(sol, Partition):
            raise InvalidSolution("partition control needs a Partition witness")
        try:
            return run_two_stage(system, instance.election, instance.kind, sol.pair, instance.rule)
        except ElectionError as exc:
            raise InvalidSolution(str(exc)) from exc
    return evaluate(system, post_action_election(instance, sol))


def is_successful(instance, sol, system) -> bool:
    if isinstance(sol, Impossible):
        return False
    return instance_goal_met(instance, apply_solution(instance, sol, system))


def _check_pref(pref, candidates):
    try:
        check_preference(tuple(pref), candidates)
    except ElectionError as exc:
        raise InvalidSolution(str(exc)) from exc


def _check_limit(names, limit):
    if len(names) > limit:
        raise InvalidSolution(f"{len(names)} changes exceed the limit {limit}")


def _check_subset(names, universe, what):
    unknown = set(names) - set(universe)
    if unknown:
        raise InvalidSolution(f"unknown {what} {sorted(unknown)!r}")


# -- validation ------------------------------------------------------------

def validate_instance(instance):
    """Return ``instance`` unchanged if every invariant holds, else raise InvalidInstance."""
    try:
        _validate(instance)
    except InvalidInstance:
        raise
    except ElectionError as exc:
        raise InvalidInstance(str(exc)) from exc
    return instance


def _nonneg(value, what):
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise InvalidInstance(f"{what} must be a nonnegative integer, got {value!r}")


def _p_in(p, candidates):
    if p not in candidates:
        raise InvalidInstance(f"distinguished candidate {p!r} is not in the candidate set")


def _validate(inst):
    if not isinstance(getattr(inst, "direction", None), Direction):
        raise InvalidInstance("direction must be a Direction")
    if not isinstance(getattr(inst, "goal", None), GoalMode):
        raise InvalidInstance("goal must be a GoalMode")

    if isinstance(inst, ManipulationInstance):
        validate_election(Election(inst.candidates, inst.fixed_voters))
        _p_in(inst.p, inst.candidates)
        if len(set(inst.manipulators)) != len(inst.manipulators):
            raise InvalidInstance("duplicate manipulator names")
        clash = set(inst.manipulators) & {v.name for v in inst.fixed_voters}
        if clash:
            raise InvalidInstance(f"manipulator names {sorted(clash)!r} also name fixed voters")
    elif isinstance(inst, (BriberyInstance, DeleteVotersInstance, DeleteCandidatesInstance, PartitionInstance)):
        validate_election(inst.election)
        _p_in(inst.p, inst.election.candidates)
        if isinstance(inst, BriberyInstance):
            _nonneg(inst.budget, "bribery budget b")
        elif isinstance(inst, PartitionInstance):
            if not isinstance(inst.kind, PartitionKind) or not isinstance(inst.rule, TieRule):
                raise InvalidInstance("partition needs a PartitionKind and a TieRule")
        else:
            _nonneg(inst.limit, "limit K")
    elif isinstance(inst, AddVotersInstance):
        validate_election(Election(inst.candidates, inst.registered))
        validate_election(Election(inst.candidates, inst.pool))
        _p_in(inst.p, inst.candidates)
        clash = {v.name for v in inst.registered} & {v.name for v in inst.pool}
        if clash:
            raise InvalidInstance(f"voters {sorted(clash)!r} are both registered and in the pool")
        _nonneg(inst.limit, "limit K")
    elif isinstance(inst, AddCandidatesInstance):
        overlap = inst.candidates & inst.pool
        if overlap:
            raise InvalidInstance(f"candidates {sorted(overlap)!r} are in both C and the pool A")
        validate_election(Election(inst.candidates | inst.pool, inst.voters))
        _p_in(inst.p, inst.candidates)
        if inst.limit is not None:
            _nonneg(inst.limit, "limit K")
    else:
        raise InvalidInstance(f"not an action instance: {type(inst).__name__}")
    if not is_bitstring(inst.p):
        raise InvalidInstance(f"distinguished candidate {inst.p!r} is not a bitstring")


def with_limit(instance, limit):
    return replace(instance, limit=limit)
