import random
from fractions import Fraction

import pytest

from vazhu import _pykernels, kernels

try:
    from vazhu import _ckernels
except ImportError:  # compiled backend not built
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def test_backend_selected():
    assert kernels.BACKEND in ("python", "cython")


def _random_system(rng, ncols=12, nrows=8):
    rows, pivot_of = [], {}
    for c in rng.sample(range(ncols - 1), nrows):
        row = {c: Fraction(1)}
        for d in range(c + 1, ncols):
            if rng.random() < 0.4:
                row[d] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        row = {k: v for k, v in row.items() if v}
        pivot_of[c] = len(rows)
        rows.append(row)
    x = {c: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for c in range(ncols) if rng.random() < 0.6}
    return {k: v for k, v in x.items() if v}, rows, pivot_of


@needs_c
@pytest.mark.parametrize("seed", range(20))
def test_reduce_vector_parity(seed):
    rng = random.Random(seed)
    x, rows, piv = _random_system(rng)
    for full in (False, True):
        a, b = dict(x), dict(x)
        assert _pykernels.reduce_vector(a, rows, piv, full) == _ckernels.reduce_vector(b, rows, piv, full)
        assert a == b


@needs_c
def test_mode_kernels_parity():
    from vazhu.voa import partitions
    for w in range(7):
        for part in partitions(w):
            for m in range(-4, 5):
                assert _pykernels.heis_act(m, part) == _ckernels.heis_act(m, part)
    c = Fraction(1, 2)
    m1, m2 = {}, {}
    for w in range(9):
        for part in partitions(w, 2):
            for m in range(-4, 5):
                assert _pykernels.vir_act(m, part, c, m1) == _ckernels.vir_act(m, part, c, m2)


def test_reduce_vector_reconstructs_input():
    rng = random.Random(3)
    x, rows, piv = _random_system(rng)
    y = dict(x)
    mults, _ = kernels.reduce_vector(y, rows, piv, True)
    for j, a in mults:
        for k, v in rows[j].items():
            y[k] = y.get(k, 0) + a * v
    assert {k: v for k, v in y.items() if v} == x
