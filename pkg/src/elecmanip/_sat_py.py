"""Pure-Python twin of the compiled ``_sat`` kernel (same contract)."""


def first_satisfying(pos, neg, nvars):
    """Smallest assignment (as an int) satisfying every clause, or -1."""
    if nvars < 0 or nvars > 62:
        raise ValueError("nvars out of kernel range")
    clauses = list(zip(pos, neg))
    full = (1 << nvars) - 1
    for a in range(1 << nvars):
        na = ~a & full
        for p, n in clauses:
            if not (a & p or na & n):
                break
        else:
            return a
    return -1


def count_satisfying(pos, neg, nvars):
    if nvars < 0 or nvars > 62:
        raise ValueError("nvars out of kernel range")
    clauses = list(zip(pos, neg))
    full = (1 << nvars) - 1
    total = 0
    for a in range(1 << nvars):
        na = ~a & full
        for p, n in clauses:
            if not (a & p or na & n):
                break
        else:
            total += 1
    return total


def check(pos, neg, a):
    for p, n in zip(pos, neg):
        if not (a & p or ~a & n):
            return False
    return True
