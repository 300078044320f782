"""Baseline and adversarial election systems."""
from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass

from elecmanip.core import Election, canonical_encode, sorted_candidates


@dataclass(frozen=True)
class AliceSystem:
    """One candidate wins alone; of two, only Alice wins; of three with
    Alice, Alice and the shortlex-smaller other one win; otherwise nobody."""

    alice: str = "0"

    @property
    def name(self):
        return "alice" if self.alice == "0" else f"alice:{self.alice}"

    def __call__(self, e: Election) -> frozenset:
        return eval_alice(e, self.alice)


def eval_alice(e: Election, alice: str = "0") -> frozenset:
    C = e.candidates
    n = len(C)
    if n == 1:
        return C
    if n == 2:
        return frozenset((alice,)) if alice in C else frozenset()
    if n == 3 and alice in C:
        other = sorted_candidates(C - {alice})[0]
        return frozenset((alice, other))
    return frozenset()


@dataclass(frozen=True)
class PluralitySystem:
    name = "plurality"

    def __call__(self, e: Election) -> frozenset:
        return eval_plurality(e)


def eval_plurality(e: Election) -> frozenset:
    if not e.candidates:
        return frozenset()
    if not e.voters:
        return e.candidates
    tally = Counter(v.pref[0] for v in e.voters)
    top = max(tally.values())
    return frozenset(c for c, n in tally.items() if n == top)


@dataclass(frozen=True)
class RandomTableSystem:
    """Winners drawn from a keyed hash of the anonymized election.

    Each call hashes ``(seed, canonical_encode(e))`` into a ``|C|``-bit mask
    over the shortlex-sorted candidates, so the system is an arbitrary but
    fixed function of the election.
    """

    seed: int

    @property
    def name(self):
        return f"random:{self.seed}"

    def __call__(self, e: Election) -> frozenset:
        return eval_random_table(e, self.seed)


def eval_random_table(e: Election, seed: int) -> frozenset:
    cands = sorted_candidates(e.candidates)
    if not cands:
        return frozenset()
    h = hashlib.shake_256(b"%d:" % seed + canonical_encode(e))
    mask = int.from_bytes(h.digest((len(cands) + 7) // 8), "little")
    return frozenset(c for j, c in enumerate(cands) if mask >> j & 1)
