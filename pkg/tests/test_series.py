from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from vazhu.errors import ConfigurationError, TruncationError
from vazhu.series import (LaurentSeriesTrunc, binom, binom_series, expm1_kernel_coeff,
                          log_kernel_coeff, log_power_series, resop, resop_exp, resop_poly,
                          solve_changevar_coeffs)

y = sympy.Symbol("y")


def sym_coeff(expr, deg, order):
    s = sympy.series(expr, y, 0, order).removeO()
    return Fraction(str(sympy.nsimplify(s.coeff(y, deg))))


@pytest.mark.parametrize("a,b,m", [(0, 1, 0), (Fraction(1, 2), 3, -3), (Fraction(1, 2), 3, 1),
                                   (2, 4, 2), (-1, 2, -1), (Fraction(-3, 2), 3, 3)])
def test_log_kernel_against_sympy(a, b, m):
    expr = (1 + y) ** sympy.Rational(a.numerator, a.denominator) if isinstance(a, Fraction) \
        else (1 + y) ** a
    expr = expr * sympy.log(1 + y) ** (-m - 1)
    assert log_kernel_coeff(Fraction(a), b, m) == sym_coeff(expr, b - 1, b + 1)


@pytest.mark.parametrize("alpha,beta,m", [(0, 1, 0), (1, 2, -1), (Fraction(3, 2), 3, 1), (2, 0, 2)])
def test_expm1_kernel_against_sympy(alpha, beta, m):
    al = sympy.Rational(Fraction(alpha).numerator, Fraction(alpha).denominator)
    expr = sympy.exp(al * y) * (sympy.exp(y) - 1) ** (-beta)
    assert expm1_kernel_coeff(Fraction(alpha), beta, m) == sym_coeff(expr, m, m + 3)


@given(st.integers(-4, 4), st.integers(1, 5), st.integers(-5, 6))
def test_log_and_exp_forms_agree(a, b, m):
    # Res_y (1+y)^a y^-b Y(u, log(1+y)) v = Res_x e^{(a+1)x} (e^x-1)^-b Y(u,x) v
    assert log_kernel_coeff(Fraction(a), b, m) == expm1_kernel_coeff(Fraction(a + 1), b, m)


def test_resop_variants_agree_on_mode_table():
    table = {m: {("e", m): Fraction(m * m + 1)} for m in range(-6, 3)}
    modes = lambda m: table.get(m, {})
    for a, b in ((Fraction(1, 2), 3), (0, 1), (2, 4)):
        assert resop(modes, 2, a, b) == resop_exp(modes, 2, Fraction(a) + 1, b)


def test_resop_poly_is_binomial_sum():
    modes = lambda m: {m: Fraction(1)}
    got = resop_poly(modes, 1, 3, 2)
    assert got == {i - 2: Fraction(binom(3, i)) for i in range(4)}


@given(st.integers(-3, 3), st.integers(-3, 3))
def test_binomial_product_law(a, b):
    lhs = binom_series(a, 6) * binom_series(b, 6)
    assert lhs == binom_series(a + b, 6)


@given(st.integers(1, 4), st.integers(1, 4))
def test_log_power_law(j, k):
    assert log_power_series(j, 8) * log_power_series(k, 8) == log_power_series(j + k, 8 + min(j, k))


def test_log_power_series_oracle():
    s = log_power_series(-1, 3)
    assert [s[d] for d in range(-1, 4)] == [1, Fraction(1, 2), Fraction(-1, 12), Fraction(1, 24),
                                          Fraction(-19, 720)]


def test_inverse_round_trip():
    s = LaurentSeriesTrunc.from_list([2, 1, 3, 5], lower=-1)
    one = s * s.inverse()
    assert one[0] == 1 and all(one[d] == 0 for d in range(1, one.trunc + 1))


def test_access_above_truncation_raises():
    s = binom_series(Fraction(1, 2), 3)
    assert s[3] == Fraction(1, 16)
    with pytest.raises(TruncationError):
        s[4]


def test_binom_generalized():
    assert binom(Fraction(-1, 2), 2) == Fraction(3, 8)
    assert binom(5, -1) == 0


def test_changevar_coefficients():
    B = solve_changevar_coeffs(6).B
    assert B == (0, Fraction(-1, 2), Fraction(1, 12), Fraction(-1, 48), Fraction(1, 180),
                 Fraction(-11, 8640), Fraction(1, 6720))


def test_changevar_coefficients_sympy_oracle():
    # exp(sum B_j y^{j+1} d/dy) y = log(1+y): evaluate the flow of the vector field
    B = solve_changevar_coeffs(5).B
    f = sum(sympy.Rational(b.numerator, b.denominator) * y ** (j + 1) for j, b in enumerate(B))
    term, total = y, y
    for k in range(1, 7):
        term = sympy.expand(f * sympy.diff(term, y) / k)
        total += term
    target = sympy.series(sympy.log(1 + y), y, 0, 7).removeO()
    diff = sympy.expand(total - target)
    assert all(diff.coeff(y, d) == 0 for d in range(1, 7))


def test_changevar_order_error():
    with pytest.raises(ConfigurationError):
        solve_changevar_coeffs(-1)
