# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled exhaustive-assignment kernels.

Clauses arrive as two parallel lists of bit masks (positive and negated
literals).  Variable ``i`` of ``d`` lives at bit ``d - i`` so that counting
upward visits assignments in ascending bitstring order.
"""
from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free


cdef int _load(object pos, object neg, uint64_t **p_out, uint64_t **n_out) except -1:
    cdef Py_ssize_t m = len(pos), j
    if len(neg) != m:
        raise ValueError("mask lists differ in length")
    cdef uint64_t *p = <uint64_t *> malloc((m + 1) * sizeof(uint64_t))
    cdef uint64_t *n = <uint64_t *> malloc((m + 1) * sizeof(uint64_t))
    if p == NULL or n == NULL:
        free(p)
        free(n)
        raise MemoryError()
    for j in range(m):
        p[j] = pos[j]
        n[j] = neg[j]
    p_out[0] = p
    n_out[0] = n
    return 0


def first_satisfying(pos, neg, int nvars):
    """Smallest assignment (as an int) satisfying every clause, or -1."""
    if nvars < 0 or nvars > 62:
        raise ValueError("nvars out of kernel range")
    cdef uint64_t *p
    cdef uint64_t *n
    _load(pos, neg, &p, &n)
    cdef Py_ssize_t m = len(pos), j
    cdef uint64_t a, limit = (<uint64_t> 1) << nvars
    cdef long long found = -1
    cdef bint ok
    with nogil:
        a = 0
        while a < limit:
            ok = True
            for j in range(m):
                if ((a & p[j]) | (~a & n[j])) == 0:
                    ok = False
                    break
            if ok:
                found = <long long> a
                break
            a += 1
    free(p)
    free(n)
    return found


def count_satisfying(pos, neg, int nvars):
    """Number of satisfying assignments."""
    if nvars < 0 or nvars > 62:
        raise ValueError("nvars out of kernel range")
    cdef uint64_t *p
    cdef uint64_t *n
    _load(pos, neg, &p, &n)
    cdef Py_ssize_t m = len(pos), j
    cdef uint64_t a, limit = (<uint64_t> 1) << nvars
    cdef long long total = 0
    cdef bint ok
    with nogil:
        a = 0
        while a < limit:
            ok = True
            for j in range(m):
                if ((a & p[j]) | (~a & n[j])) == 0:
                    ok = False
                    break
            if ok:
                total += 1
            a += 1
    free(p)
    free(n)
    return total


def check(pos, neg, unsigned long long a):
    cdef Py_ssize_t j
    for j in range(len(pos)):
        if ((a & <unsigned long long> pos[j]) | (~a & <unsigned long long> neg[j])) == 0:
            return False
    return True
