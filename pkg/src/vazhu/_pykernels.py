"""Pure-Python hot kernels.

These are the reference implementations.  ``_ckernels.pyx`` mirrors every
function here with typed locals; ``vazhu.kernels`` picks whichever is
importable.  Keep the two in lockstep: the test-suite runs both against
each other.
"""
from fractions import Fraction
from heapq import heapify, heappop, heappush

BACKEND = "python"


def reduce_vector(x, rows, pivot_of, full):
    """Eliminate pivot columns of ``x`` (a dict col -> coeff, mutated in place).

    ``rows[j]`` has leading column ``c`` with coefficient 1 whenever
    ``pivot_of[c] == j``; every other column of the row is larger than c.

    With ``full`` false the sweep stops at the first non-pivot column that
    survives (enough to decide membership or to append a new echelon row);
    with ``full`` true it eliminates every pivot column, leaving the
    normal form supported on free columns.

    Returns ``(mults, stop)`` where ``mults`` lists ``(row, coeff)`` pairs
    such that ``x_in = x_out + sum(coeff * rows[row])`` and ``stop`` is
    the free leading column (``None`` when the sweep ran to the end).
    """
    heap = list(x)
    heapify(heap)
    mults = []
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
        row = rows[j]
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


def heis_act(m, part):
    """a(m) on the Fock monomial a(-part[0])...a(-part[-1])1 (part sorted desc)."""
    if m < 0:
        p = -m
        i = 0
        n = len(part)
        while i < n and part[i] >= p:
            i += 1
        return {part[:i] + (p,) + part[i:]: Fraction(1)}
    if m == 0:
        return {}
    k = part.count(m)
    if not k:
        return {}
    i = part.index(m)
    return {part[:i] + part[i + 1:]: Fraction(m * k)}


def _add_scaled(acc, vec, s):
    for key, val in vec.items():
        nv = acc.get(key, 0) + s * val
        if nv:
            acc[key] = nv
        else:
            acc.pop(key, None)


def vir_act(m, part, central, memo):
    """L(m) on the PBW monomial L(-part[0])...L(-part[-1])1 of the universal
    Virasoro vertex algebra (parts >= 2, sorted descending).

    ``memo`` maps ``(m, part)`` to the resulting dict and must be specific
    to ``central``.
    """
    key = (m, part)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if not part:
        out = {(-m,): Fraction(1)} if m <= -2 else {}
    elif m <= -2 and -m >= part[0]:
        out = {(-m,) + part: Fraction(1)}
    else:
        # L(m) L(-p) w = L(-p) L(m) w + (m + p) L(m - p) w + central term
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
