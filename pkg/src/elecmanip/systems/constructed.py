"""The six puzzle-carrying election systems.

Every rule here runs in polynomial time given membership in the puzzle set
B; what makes their manipulation search problems hard is that a successful
action has to spell out a satisfying assignment of the puzzle formula.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from elecmanip.bd import BdSet, candidate_bits, complement, puzzle, region_length, satisfies
from elecmanip.core import Election, sorted_candidates
from elecmanip.systems import names

EMPTY = frozenset()


def voter_assignment(candidates: frozenset, pref, d: int):
    """First ``d`` vote bits of ``pref`` as an assignment, or ``None`` when
    the vote carries fewer than ``d`` bits."""
    if region_length(len(candidates)) < d:
        return None
    bits = candidate_bits(candidates)
    return tuple(bits[pref[-1 - j]] == "1" for j in range(d))


def _solvers(e: Election, f):
    C = e.candidates
    for v in e.voters:
        a = voter_assignment(C, v.pref, f.d)
        if a is not None and satisfies(f, a):
            yield v


def eval_e1(e: Election, bset: BdSet) -> frozenset:
    f = bset.formula(puzzle(e.candidates))
    if f is None:
        return EMPTY
    return frozenset(v.pref[0] for v in _solvers(e, f))


def eval_e2(e: Election, bset: BdSet) -> frozenset:
    f = bset.formula(puzzle(e.candidates))
    if f is None:
        return EMPTY
    for _ in _solvers(e, f):
        return EMPTY
    return e.candidates


def top_choice_assignment(cands: tuple, tops, d: int):
    """Assignment spelled by a set of top choices over the first ``2d``
    shortlex candidates (``c_{2i-1+alpha_i}``), or ``None``."""
    if len(cands) < 2 * d:
        return None
    rank = {c: r for r, c in enumerate(cands[:2 * d])}
    entries = []
    for t in tops:
        r = rank.get(t)
        if r is None:
            return None
        entries.append((r // 2 + 1, r % 2))
    return names.one_per_variable(entries, d)


def eval_e3(e: Election, bset: BdSet) -> frozenset:
    cands = sorted_candidates(e.candidates)
    if not cands:
        return EMPTY
    first, last = frozenset((cands[0],)), frozenset((cands[-1],))
    if len(cands) <= 2:
        return last
    tops = [v.pref[0] for v in e.voters]
    if not tops or len(set(tops)) < len(tops):
        return first
    f = bset.formula(puzzle(e.candidates))
    if f is not None:
        a = top_choice_assignment(cands, set(tops), f.d)
        if a is not None and (satisfies(f, a) or satisfies(f, complement(a))):
            return first
    return last


def parse_pair_grammar(C: frozenset, bset: BdSet):
    """For ``C = {0puz0} ∪ S`` with ``puz`` in B and ``S`` a set of pair
    candidates of ``puz``: ``(core, puz, formula, entries)``; else ``None``."""
    cores = [c for c in C if c.startswith("0")]
    if len(cores) != 1:
        return None
    core = cores[0]
    puz = names.parse_core(core)
    if puz is None:
        return None
    f = bset.formula(puz)
    if f is None:
        return None
    entries = []
    for c in C:
        if c == core:
            continue
        parsed = names.parse_pair(c)
        if parsed is None or parsed[0] != puz or parsed[1] > f.d:
            return None
        entries.append(parsed[1:])
    return core, puz, f, entries


def eval_e4(e: Election, bset: BdSet) -> frozenset:
    C = e.candidates
    g = parse_pair_grammar(C, bset)
    if g is None:
        return C
    core, _, f, entries = g
    a = names.one_per_variable(entries, f.d)
    if a is not None and (satisfies(f, a) or satisfies(f, complement(a))):
        return frozenset((core,))
    return C - {core}


def pair_assignment(rest, bset: BdSet):
    """``(formula, assignment)`` when ``rest`` is exactly one value per
    variable of a single puzzle in B, in pair-style names; else ``None``."""
    puz = None
    entries = []
    for c in rest:
        parsed = names.parse_pair(c)
        if parsed is None or (puz is not None and parsed[0] != puz):
            return None
        puz = parsed[0]
        entries.append(parsed[1:])
    if puz is None:
        return None
    f = bset.formula(puz)
    if f is None:
        return None
    a = names.one_per_variable(entries, f.d)
    return None if a is None else (f, a)


def eval_e5(e: Election, bset: BdSet) -> frozenset:
    C = e.candidates
    a, b, c = names.A_NAME, names.B_NAME, names.C_NAME
    has_a, has_b, has_c = a in C, b in C, c in C
    if has_b and has_c:
        return frozenset((b, c))
    if has_a and (has_b or has_c):
        y = b if has_b else c
        fa = pair_assignment(C - {a, y}, bset)
        if fa is None:
            return EMPTY
        if satisfies(*fa):
            return frozenset((a,))
        return frozenset((a, y))
    if has_a:
        return EMPTY
    if has_b and len(C) >= 2:
        return frozenset((b,))
    if has_c and len(C) >= 2:
        return frozenset((c,))
    return EMPTY


def eval_e6(e: Election, bset: BdSet) -> frozenset:
    cands = sorted_candidates(e.candidates)
    if not cands:
        return EMPTY
    s = cands[0]
    x, tag = s[:-1], s[-1:]
    f = bset.formula(x) if tag else None
    if f is None:
        return EMPTY
    rest = cands[1:]
    if tag == "0" and rest == (x + "1",):
        return frozenset((s,))
    k = len(x)
    entries = []
    for c in rest:
        parsed = names.parse_bare(c, k)
        if parsed is None:
            return EMPTY
        entries.append(parsed)
    a = names.one_per_variable(entries, f.d)
    if a is None:
        return EMPTY
    if tag == "1" or satisfies(f, a):
        return frozenset((s,))
    return EMPTY


@dataclass(frozen=True)
class _Constructed:
    bset: BdSet = field(default_factory=BdSet)

    def __call__(self, e: Election) -> frozenset:
        return self._rule(e, self.bset)


class E1(_Constructed):
    name = "e1"
    _rule = staticmethod(eval_e1)


class E2(_Constructed):
    name = "e2"
    _rule = staticmethod(eval_e2)


@dataclass(frozen=True)
class E3(_Constructed):
    bset: BdSet = field(default_factory=lambda: BdSet(min_vars=2))
    name = "e3"
    _rule = staticmethod(eval_e3)


class E4(_Constructed):
    name = "e4"
    _rule = staticmethod(eval_e4)


class E5(_Constructed):
    name = "e5"
    _rule = staticmethod(eval_e5)


class E6(_Constructed):
    name = "e6"
    _rule = staticmethod(eval_e6)
