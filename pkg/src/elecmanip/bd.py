"""CNF formulas, the formula/bitstring codec, the puzzle set B and the
candidate-bit codecs used by the constructed election systems.

Assignments are tuples of bools, ``a[i-1]`` being the value of variable
``i``.  Internally an assignment over ``d`` variables is also an int with
variable ``i`` at bit ``d - i``, so counting upward walks assignments in
ascending bitstring order.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from elecmanip import kernels
from elecmanip.core import ElectionError, sorted_candidates

D_MAX = 16
KERNEL_LIMIT = 62


class FormulaError(ValueError):
    pass


class BoundExceeded(ValueError):
    pass


def _canonical_clause(clause) -> tuple:
    return tuple(sorted(set(clause), key=lambda lit: (abs(lit), lit)))


@dataclass(frozen=True)
class CnfFormula:
    """A CNF over variables ``1..d``; clauses are stored canonically
    (literals ordered and deduplicated, clauses sorted and deduplicated)."""

    d: int
    clauses: tuple

    def __post_init__(self):
        d = self.d
        if isinstance(d, bool) or not isinstance(d, int) or d < 1:
            raise FormulaError(f"variable count must be a positive integer, got {d!r}")
        canon = set()
        seen = set()
        for clause in self.clauses:
            clause = tuple(clause)
            if not clause:
                raise FormulaError("empty clause")
            for lit in clause:
                if isinstance(lit, bool) or not isinstance(lit, int) or lit == 0 or abs(lit) > d:
                    raise FormulaError(f"literal {lit!r} out of range for d={d}")
                seen.add(abs(lit))
            canon.add(_canonical_clause(clause))
        if len(seen) != d:
            missing = sorted(set(range(1, d + 1)) - seen)
            raise FormulaError(f"variables {missing} never occur")
        object.__setattr__(self, "clauses", tuple(sorted(canon)))

    @property
    def m(self) -> int:
        return len(self.clauses)

    def masks(self):
        """(pos, neg) bit-mask lists for the kernels."""
        d = self.d
        pos, neg = [], []
        for clause in self.clauses:
            p = n = 0
            for lit in clause:
                bit = 1 << (d - abs(lit))
                if lit > 0:
                    p |= bit
                else:
                    n |= bit
            pos.append(p)
            neg.append(n)
        return pos, neg

    def to_dimacs(self) -> str:
        lines = [f"p cnf {self.d} {self.m}"]
        lines += [" ".join(str(lit) for lit in c) + " 0" for c in self.clauses]
        return "\n".join(lines)

    def __str__(self):
        return " & ".join("(" + " | ".join(_lit_text(l) for l in c) + ")" for c in self.clauses)


def _lit_text(lit):
    return f"v{lit}" if lit > 0 else f"~v{-lit}"


def formula(d: int, *clauses) -> CnfFormula:
    return CnfFormula(d, tuple(tuple(c) for c in clauses))


# -- DIMACS text ----------------------------------------------------------

def parse_dimacs(text: str) -> CnfFormula:
    """Lenient DIMACS reader: ``c`` comment lines, free whitespace, clauses
    may span lines.  Raises FormulaError on malformed input."""
    header = None
    tokens = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise FormulaError("second problem line")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise FormulaError(f"bad problem line {line!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError as exc:
                raise FormulaError(f"bad problem line {line!r}") from exc
            continue
        if header is None:
            raise FormulaError("clause before the problem line")
        tokens.extend(line.split())
    if header is None:
        raise FormulaError("missing problem line")
    clauses, cur = [], []
    for tok in tokens:
        try:
            lit = int(tok)
        except ValueError as exc:
            raise FormulaError(f"bad literal {tok!r}") from exc
        if lit == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            cur.append(lit)
    if cur:
        raise FormulaError("last clause is not terminated by 0")
    d, m = header
    if m != len(clauses):
        raise FormulaError(f"header announces {m} clauses, found {len(clauses)}")
    return CnfFormula(d, tuple(clauses))


# -- bitstring codec ------------------------------------------------------

def encode_formula(f: CnfFormula) -> str:
    """8 bits per character of the canonical DIMACS text, big-endian."""
    if not isinstance(f, CnfFormula):
        raise FormulaError("not a CnfFormula")
    return "".join(format(b, "08b") for b in f.to_dimacs().encode("ascii"))


@lru_cache(maxsize=65536)
def decode_formula(x: str) -> Optional[CnfFormula]:
    """Inverse of :func:`encode_formula`; ``None`` for anything outside its range."""
    if not x or len(x) % 8:
        return None
    try:
        data = bytes(int(x[i:i + 8], 2) for i in range(0, len(x), 8))
        text = data.decode("ascii")
        f = parse_dimacs(text)
    except (ValueError, UnicodeDecodeError):
        return None
    if f.to_dimacs() != text:
        return None
    return f


# -- satisfaction ---------------------------------------------------------

def assignment_to_int(a) -> int:
    v = 0
    for bit in a:
        v = (v << 1) | (1 if bit else 0)
    return v


def int_to_assignment(v: int, d: int) -> tuple:
    return tuple(bool((v >> (d - i)) & 1) for i in range(1, d + 1))


def bits_to_assignment(bits: str) -> tuple:
    return tuple(ch == "1" for ch in bits)


def assignment_to_bits(a) -> str:
    return "".join("1" if b else "0" for b in a)


def complement(a) -> tuple:
    return tuple(not b for b in a)


def satisfies(f: CnfFormula, a) -> bool:
    a = tuple(a)
    if len(a) != f.d:
        raise FormulaError(f"assignment has {len(a)} values, formula has {f.d} variables")
    for clause in f.clauses:
        if not any(a[abs(l) - 1] == (l > 0) for l in clause):
            return False
    return True


def find_satisfying(f: CnfFormula, d_max: int = D_MAX):
    """First satisfying assignment in ascending order, or ``None``.

    Deliberately exhaustive: up to ``2**d`` assignments are tried.
    """
    if f.d > min(d_max, KERNEL_LIMIT):
        raise BoundExceeded(f"d={f.d} exceeds the enumeration bound {min(d_max, KERNEL_LIMIT)}")
    pos, neg = f.masks()
    v = kernels.first_satisfying(pos, neg, f.d)
    return None if v < 0 else int_to_assignment(v, f.d)


def count_satisfying(f: CnfFormula, d_max: int = D_MAX) -> int:
    if f.d > min(d_max, KERNEL_LIMIT):
        raise BoundExceeded(f"d={f.d} exceeds the enumeration bound {min(d_max, KERNEL_LIMIT)}")
    pos, neg = f.masks()
    return kernels.count_satisfying(pos, neg, f.d)


# -- the puzzle set -------------------------------------------------------

class BdSet:
    """Satisfiable decoded formulas with ``min_vars <= d <= d_max``.

    Membership is decided by exhaustive search and memoized per instance.
    """

    def __init__(self, min_vars: int = 1, d_max: int = D_MAX):
        if min_vars < 1 or d_max < min_vars or d_max > KERNEL_LIMIT:
            raise ValueError(f"bad bounds min_vars={min_vars} d_max={d_max}")
        self.min_vars = min_vars
        self.d_max = d_max
        self._memo = {}

    def formula(self, x: str) -> Optional[CnfFormula]:
        """The decoded formula when ``x`` is a member, else ``None``."""
        try:
            return self._memo[x]
        except KeyError:
            pass
        f = decode_formula(x)
        if f is not None and not (self.min_vars <= f.d <= self.d_max and find_satisfying(f, self.d_max) is not None):
            f = None
        self._memo[x] = f
        return f

    def __contains__(self, x) -> bool:
        return isinstance(x, str) and self.formula(x) is not None

    def clear(self):
        self._memo.clear()

    def __eq__(self, other):
        return isinstance(other, BdSet) and (self.min_vars, self.d_max) == (other.min_vars, other.d_max)

    def __hash__(self):
        return hash((BdSet, self.min_vars, self.d_max))

    def __repr__(self):
        return f"BdSet(min_vars={self.min_vars}, d_max={self.d_max})"


def bd_member(x: str, bset: BdSet) -> bool:
    return x in bset


# -- candidate-name codecs ------------------------------------------------

@lru_cache(maxsize=8192)
def puzzle(candidates: frozenset) -> str:
    """Final bits of the non-empty names, in shortlex order."""
    return "".join(c[-1] for c in sorted_candidates(frozenset(candidates)) if c)


@lru_cache(maxsize=8192)
def candidate_bits(candidates: frozenset) -> dict:
    """Name -> bit, 1 for odd 1-based shortlex rank."""
    return {c: "1" if r % 2 == 0 else "0" for r, c in enumerate(sorted_candidates(candidates))}


def candidate_bit(candidates, c: str) -> str:
    bits = candidate_bits(frozenset(candidates))
    if c not in bits:
        raise ElectionError(f"{c!r} is not a candidate")
    return bits[c]


def region_length(k: int) -> int:
    return max(0, k // 2 - 1)


def vote_bits(candidates, pref) -> str:
    """Bits of the least-preferred candidates, read from the bottom upward."""
    cands = frozenset(candidates)
    bits = candidate_bits(cands)
    n = region_length(len(cands))
    return "".join(bits[pref[-1 - j]] for j in range(n))


def craft_vote(candidates, favorite: str, target: str) -> tuple:
    """A preference with ``favorite`` on top whose vote bits equal ``target``."""
    cands = frozenset(candidates)
    if favorite not in cands:
        raise ElectionError(f"favorite {favorite!r} is not a candidate")
    if len(target) != region_length(len(cands)) or not all(ch in "01" for ch in target):
        raise ElectionError(f"target must be {region_length(len(cands))} bits, got {target!r}")
    bits = candidate_bits(cands)
    free = [c for c in sorted_candidates(cands) if c != favorite]
    tail = []
    for want in target:
        for j, c in enumerate(free):
            if bits[c] == want:
                tail.append(free.pop(j))
                break
        else:  # cannot happen: each bit value has at least region_length candidates left
            raise ElectionError("not enough candidates to encode the target")
    return (favorite, *free, *reversed(tail))
