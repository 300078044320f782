"""Candidate-name grammars of the constructed systems.

Assignment candidates carry a counter ``2i + alpha`` written big-endian in
``5k`` bits, ``k`` being the puzzle length.  The pair-style family prefixes
the counter with ``"10" + puz + "01"`` (so ``k`` can be recovered from the
name length, which is ``4 + 6k``); the bare family is the counter alone.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Optional

# special candidates of the three-special-candidate system
A_NAME = "0"
B_NAME = "01"
C_NAME = "10"
SPECIALS = frozenset((A_NAME, B_NAME, C_NAME))


def counter(k: int, i: int, alpha: int) -> str:
    width = 5 * k
    v = 2 * i + alpha
    if k < 1 or i < 1 or alpha not in (0, 1) or v >= 1 << width:
        raise ValueError(f"counter 2*{i}+{alpha} does not fit {width} bits")
    return format(v, f"0{width}b")


def core_name(puz: str) -> str:
    return "0" + puz + "0"


def parse_core(name: str) -> Optional[str]:
    if len(name) >= 2 and name[0] == "0" and name[-1] == "0":
        return name[1:-1]
    return None


def pair_name(puz: str, i: int, alpha: int) -> str:
    return "10" + puz + "01" + counter(len(puz), i, alpha)


def parse_pair(name: str):
    """``(puz, i, alpha)`` for a pair-style assignment name, else ``None``."""
    L = len(name)
    if L < 10 or (L - 4) % 6:
        return None
    k = (L - 4) // 6
    if name[:2] != "10" or name[2 + k:4 + k] != "01":
        return None
    v = int(name[4 + k:], 2)
    if v < 2:
        return None
    return name[2:2 + k], v >> 1, v & 1


def bare_name(k: int, i: int, alpha: int) -> str:
    return counter(k, i, alpha)


def parse_bare(name: str, k: int):
    """``(i, alpha)`` for a bare counter name of puzzle length ``k``, else ``None``."""
    if k < 1 or len(name) != 5 * k:
        return None
    v = int(name, 2)
    if v < 2:
        return None
    return v >> 1, v & 1


def tagged_name(x: str, bit: str) -> str:
    return x + bit


def all_pairs(puz: str, d: int) -> list:
    return [pair_name(puz, i, a) for i in range(1, d + 1) for a in (0, 1)]


def all_bare(k: int, d: int) -> list:
    return [bare_name(k, i, a) for i in range(1, d + 1) for a in (0, 1)]


@lru_cache(maxsize=1024)
def bare_set(k: int, d: int) -> frozenset:
    return frozenset(all_bare(k, d))


def one_per_variable(entries: Iterable, d: int) -> Optional[tuple]:
    """The assignment fixed by ``(i, alpha)`` entries when they name every
    variable ``1..d`` exactly once, else ``None``."""
    alpha = [None] * d
    n = 0
    for i, a in entries:
        if not 1 <= i <= d or alpha[i - 1] is not None:
            return None
        alpha[i - 1] = bool(a)
        n += 1
    if n != d:
        return None
    return tuple(alpha)


def covers_all_pairs(entries: Iterable, d: int) -> bool:
    """True when the ``(i, alpha)`` entries are exactly all ``2d`` pairs."""
    seen = set()
    for i, a in entries:
        if not 1 <= i <= d or (i, a) in seen:
            return False
        seen.add((i, a))
    return len(seen) == 2 * d


def index_names(x: str) -> list:
    """Equal-length names whose final bits spell ``x`` in shortlex order:
    fixed-width binary index followed by the bit."""
    n = len(x)
    width = max(1, (n - 1).bit_length())
    return [format(j, f"0{width}b") + x[j] for j in range(n)]
