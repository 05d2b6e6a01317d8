# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled mirror of ``_pykernels``.  Same signatures, same results;
coefficients stay Python Fractions so arithmetic remains exact."""
from fractions import Fraction
from heapq import heapify, heappop, heappush

BACKEND = "cython"


def reduce_vector(dict x, list rows, dict pivot_of, bint full):
    cdef list heap = list(x)
    cdef list mults = []
    cdef dict row
    cdef object a, old, nv, val, j
    cdef Py_ssize_t c, col
    heapify(heap)
    while heap:
        c = heappop(heap)
        a = x.get(c)
        if a is None:
            continue
        j = pivot_of.get(c)
        if j is None:
            if full:
                continue
            return mults, c
        row = <dict>rows[<Py_ssize_t>j]
        for col, val in row.items():
            old = x.get(col)
            if old is None:
                x[col] = -a * val
                heappush(heap, col)
            else:
                nv = old - a * val
                if nv:
                    x[col] = nv
                else:
                    del x[col]
        mults.append((j, a))
    return mults, None


def heis_act(int m, tuple part):
    cdef Py_ssize_t i = 0, n = len(part), k
    cdef int p
    if m < 0:
        p = -m
        while i < n and <int>part[i] >= p:
            i += 1
        return {part[:i] + (p,) + part[i:]: Fraction(1)}
    if m == 0:
        return {}
    k = 0
    for i in range(n):
        if <int>part[i] == m:
            k += 1
    if not k:
        return {}
    i = part.index(m)
    return {part[:i] + part[i + 1:]: Fraction(m * k)}


cdef inline void _add_scaled(dict acc, dict vec, object s):
    cdef object key, val, nv
    for key, val in vec.items():
        nv = acc.get(key, 0) + s * val
        if nv:
            acc[key] = nv
        else:
            acc.pop(key, None)


def vir_act(int m, tuple part, object central, dict memo):
    cdef tuple key = (m, part)
    cdef dict out
    cdef int p
    cdef tuple rest
    hit = memo.get(key)
    if hit is not None:
        return hit
    if not part:
        out = {(-m,): Fraction(1)} if m <= -2 else {}
    elif m <= -2 and -m >= <int>part[0]:
        out = {(-m,) + part: Fraction(1)}
    else:
        p = part[0]
        rest = part[1:]
        out = {}
        for mono, coeff in vir_act(m, rest, central, memo).items():
            _add_scaled(out, vir_act(-p, mono, central, memo), coeff)
        if m + p:
            _add_scaled(out, vir_act(m - p, rest, central, memo), Fraction(m + p))
        if m == p and central:
            _add_scaled(out, {rest: Fraction(1)}, central * Fraction(m ** 3 - m, 12))
    memo[key] = out
    return out
