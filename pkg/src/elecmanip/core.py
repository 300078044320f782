"""Election data model, candidate ordering, vote restriction and the
two-stage (partition) election evaluator.

Candidate names are bitstrings held as ``str`` over ``'0'``/``'1'``; the
empty string is a legal name.  Preferences are tuples, most preferred first.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

Preference = tuple  # tuple[str, ...]


class ElectionError(ValueError):
    """Base class for malformed elections, votes and partitions."""


class InvalidRestriction(ElectionError):
    pass


class InvalidPartition(ElectionError):
    pass


class TieRule(enum.Enum):
    TP = "TP"  # ties promote
    TE = "TE"  # ties eliminate


class PartitionKind(enum.Enum):
    PV = "PV"
    RPC = "RPC"
    PC = "PC"


def shortlex_key(name: str):
    return (len(name), name)


def shortlex_compare(a: str, b: str) -> int:
    """Three-way compare: shorter names first, equal lengths bitwise."""
    ka, kb = shortlex_key(a), shortlex_key(b)
    return (ka > kb) - (ka < kb)


def shortlex_sorted(names: Iterable[str]) -> list:
    return sorted(names, key=shortlex_key)


@lru_cache(maxsize=8192)
def sorted_candidates(candidates: frozenset) -> tuple:
    """Shortlex-sorted tuple of a candidate set (memoized per set)."""
    return tuple(sorted(candidates, key=shortlex_key))


def is_bitstring(name) -> bool:
    return isinstance(name, str) and _bits_only(name)


@lru_cache(maxsize=65536)
def _bits_only(name: str) -> bool:
    return name.count("0") + name.count("1") == len(name)


@dataclass(frozen=True)
class Voter:
    name: str
    pref: tuple


@dataclass(frozen=True)
class Election:
    candidates: frozenset
    voters: tuple = ()

    @classmethod
    def build(cls, candidates, voters=()) -> "Election":
        """Construct and validate from plain iterables.

        ``voters`` may hold :class:`Voter` objects or ``(name, prefs)`` pairs.
        """
        cands = list(candidates)
        cset = frozenset(cands)
        if len(cset) != len(cands):
            dup = _first_duplicate(cands)
            raise ElectionError(f"duplicate candidate name {dup!r}")
        vs = []
        for v in voters:
            if not isinstance(v, Voter):
                name, pref = v
                v = Voter(name, tuple(pref))
            vs.append(v)
        e = cls(cset, tuple(vs))
        validate_election(e)
        return e

    @property
    def voter_names(self) -> frozenset:
        return frozenset(v.name for v in self.voters)

    def restricted(self, subset) -> "Election":
        """The election on ``subset`` with every vote masked to it."""
        sub = frozenset(subset)
        if sub == self.candidates:
            return self
        return Election(sub, tuple(Voter(v.name, restrict_vote(v.pref, sub)) for v in self.voters))

    def with_voters(self, voters) -> "Election":
        return Election(self.candidates, tuple(voters))


def _first_duplicate(items):
    seen = set()
    for x in items:
        if x in seen:
            return x
        seen.add(x)
    return None


def check_preference(pref: Sequence[str], candidates: frozenset) -> None:
    if len(pref) != len(candidates) or frozenset(pref) != candidates:
        missing = candidates - set(pref)
        extra = set(pref) - candidates
        if len(set(pref)) != len(pref):
            raise ElectionError(f"preference {list(pref)!r} repeats {_first_duplicate(pref)!r}")
        raise ElectionError(
            f"preference {list(pref)!r} is not an order over the candidates"
            f" (missing {sorted(missing)!r}, unknown {sorted(extra)!r})"
        )


def validate_election(e: Election) -> None:
    for c in e.candidates:
        if not is_bitstring(c):
            raise ElectionError(f"candidate name {c!r} is not a bitstring")
    seen = set()
    for v in e.voters:
        if not isinstance(v.name, str):
            raise ElectionError(f"voter name {v.name!r} is not text")
        if v.name in seen:
            raise ElectionError(f"duplicate voter name {v.name!r}")
        seen.add(v.name)
        check_preference(v.pref, e.candidates)


def restrict_vote(pref: Sequence[str], subset) -> tuple:
    """Subsequence of ``pref`` containing exactly ``subset``."""
    out = tuple(c for c in pref if c in subset)
    if len(out) != len(subset):
        absent = set(subset) - set(pref)
        raise InvalidRestriction(f"candidates {sorted(absent)!r} do not appear in the vote")
    return out


def apply_tie_rule(winners, rule: TieRule) -> frozenset:
    winners = frozenset(winners)
    if rule is TieRule.TP or len(winners) == 1:
        return winners
    return frozenset()


def evaluate(system, e: Election) -> frozenset:
    """Winner set of ``e``; an election without candidates has none."""
    if not e.candidates:
        return frozenset()
    return frozenset(system(e))


def _check_split(first, second, universe, what):
    first, second = frozenset(first), frozenset(second)
    if first & second:
        raise InvalidPartition(f"{what} {sorted(first & second)!r} appear on both sides")
    if first | second != universe:
        missing = universe - (first | second)
        extra = (first | second) - universe
        raise InvalidPartition(f"not a partition of the {what}: missing {sorted(missing)!r}, unknown {sorted(extra)!r}")
    return first, second


def run_two_stage(system, e: Election, kind: PartitionKind, part, rule: TieRule) -> frozenset:
    """Final winner set of a partition election.

    ``part`` is an ordered pair.  For PV it splits voter names; for RPC and
    PC it splits candidates.  Under PC the first component plays round one
    and the second component gets the bye.
    """
    first, second = part
    if kind is PartitionKind.PV:
        v1, v2 = _check_split(first, second, e.voter_names, "voters")
        w1 = evaluate(system, e.with_voters(v for v in e.voters if v.name in v1))
        w2 = evaluate(system, e.with_voters(v for v in e.voters if v.name in v2))
        finalists = apply_tie_rule(w1, rule) | apply_tie_rule(w2, rule)
    else:
        c1, c2 = _check_split(first, second, e.candidates, "candidates")
        w1 = apply_tie_rule(evaluate(system, e.restricted(c1)), rule)
        if kind is PartitionKind.RPC:
            finalists = w1 | apply_tie_rule(evaluate(system, e.restricted(c2)), rule)
        else:
            finalists = w1 | c2
    return evaluate(system, e.restricted(finalists))


_EMPTY_SENTINEL = b"C:|V:"


def canonical_encode(e: Election) -> bytes:
    """Byte key of ``e`` that ignores voter names and ballot order."""
    if not e.candidates and not e.voters:
        return _EMPTY_SENTINEL
    cands = sorted_candidates(e.candidates)
    votes = sorted("".join(c + "." for c in v.pref) for v in e.voters)
    text = "C:" + "".join(c + "." for c in cands) + "|V:" + "".join(v + ";" for v in votes)
    return text.encode("ascii")
