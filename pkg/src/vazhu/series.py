"""Truncated Laurent series with exact rational coefficients, and the
residue kernels built from them.

A :class:`LaurentSeriesTrunc` knows its coefficients for every degree in
``[lower, trunc]``; asking for a degree above ``trunc`` raises
:class:`~vazhu.errors.TruncationError` rather than returning zero.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import ConfigurationError, TruncationError
from .exact import add_into, as_rational


class LaurentSeriesTrunc:
    __slots__ = ("coeffs", "lower", "trunc")

    def __init__(self, coeffs, lower, trunc):
        if trunc < lower - 1:
            raise ConfigurationError("trunc below lower order")
        self.coeffs = {}
        for d, c in coeffs.items():
            c = as_rational(c)
            if not c:
                continue
            if d < lower or d > trunc:
                raise ConfigurationError(f"degree {d} outside [{lower}, {trunc}]")
            self.coeffs[d] = c
        self.lower = lower
        self.trunc = trunc

    @classmethod
    def from_list(cls, values, lower=0):
        return cls(dict(enumerate(values, start=lower)), lower, lower + len(values) - 1)

    def __getitem__(self, d):
        if d > self.trunc:
            raise TruncationError(f"coefficient of degree {d} unknown (trunc={self.trunc})")
        return self.coeffs.get(d, Fraction(0))

    def __repr__(self):
        terms = " + ".join(f"({c})y^{d}" for d, c in sorted(self.coeffs.items()))
        return f"LaurentSeriesTrunc({terms or '0'} + O(y^{self.trunc + 1}))"

    def __eq__(self, other):
        if not isinstance(other, LaurentSeriesTrunc):
            return NotImplemented
        return (self.coeffs, self.trunc) == (other.coeffs, other.trunc)

    def valuation(self):
        return min(self.coeffs) if self.coeffs else None

    def truncate(self, trunc):
        if trunc > self.trunc:
            raise TruncationError("cannot raise the truncation order")
        lower = min(self.lower, trunc + 1)
        return LaurentSeriesTrunc({d: c for d, c in self.coeffs.items() if d <= trunc}, lower, trunc)

    def shift(self, k):
        """Multiply by y^k."""
        return LaurentSeriesTrunc({d + k: c for d, c in self.coeffs.items()},
                                  self.lower + k, self.trunc + k)

    def __add__(self, other):
        trunc = min(self.trunc, other.trunc)
        out = {d: c for d, c in self.coeffs.items() if d <= trunc}
        add_into(out, {d: c for d, c in other.coeffs.items() if d <= trunc})
        return LaurentSeriesTrunc(out, min(self.lower, other.lower, trunc + 1), trunc)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        s = as_rational(s)
        return LaurentSeriesTrunc({d: s * c for d, c in self.coeffs.items()}, self.lower, self.trunc)

    def __mul__(self, other):
        if not isinstance(other, LaurentSeriesTrunc):
            return self.scale(other)
        trunc = min(self.trunc + other.lower, other.trunc + self.lower)
        out = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                d = d1 + d2
                if d <= trunc:
                    out[d] = out.get(d, 0) + c1 * c2
        out = {d: c for d, c in out.items() if c}
        lower = min(self.lower + other.lower, trunc + 1)
        return LaurentSeriesTrunc(out, lower, trunc)

    __rmul__ = scale

    def inverse(self):
        """Multiplicative inverse; the lowest known coefficient must be nonzero."""
        v = self.lower
        a0 = self[v]
        if not a0:
            raise ConfigurationError("leading coefficient must be nonzero to invert")
        n = self.trunc - v  # relative precision
        unit = [self[v + i] for i in range(n + 1)]
        inv = [Fraction(0)] * (n + 1)
        inv[0] = 1 / a0
        for i in range(1, n + 1):
            s = sum(unit[j] * inv[i - j] for j in range(1, i + 1))
            inv[i] = -s / a0
        return LaurentSeriesTrunc({i - v: c for i, c in enumerate(inv)}, -v, n - v)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        v = self.lower
        result = LaurentSeriesTrunc({0: 1}, 0, self.trunc - v)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result


def binom(a, i):
    """Generalized binomial coefficient a(a-1)...(a-i+1)/i! for rational a."""
    if i < 0:
        return Fraction(0)
    a = as_rational(a)
    num = Fraction(1)
    for j in range(i):
        num *= a - j
    return num / factorial(i)


def binom_series(a, trunc):
    """(1+y)^a through degree ``trunc``."""
    a = as_rational(a)
    coeffs = {}
    c = Fraction(1)
    for i in range(trunc + 1):
        if i:
            c = c * (a - i + 1) / i
        coeffs[i] = c
    return LaurentSeriesTrunc(coeffs, 0, trunc)


@lru_cache(maxsize=None)
def _log_unit(n):
    """log(1+y)/y through degree n."""
    return LaurentSeriesTrunc({i: Fraction((-1) ** i, i + 1) for i in range(n + 1)}, 0, n)


def log_power_series(k, trunc):
    """(log(1+y))^k through degree ``trunc``; the lower order is k."""
    if trunc < k - 1:
        raise ConfigurationError("trunc must be >= k - 1")
    n = trunc - k
    if n < 0:
        return LaurentSeriesTrunc({}, k, trunc)
    unit = _log_unit(n) ** k
    return unit.shift(k)


def exp_series(alpha, trunc):
    """e^{alpha x} through degree ``trunc``."""
    alpha = as_rational(alpha)
    coeffs = {}
    c = Fraction(1)
    for i in range(trunc + 1):
        if i:
            c = c * alpha / i
        coeffs[i] = c
    return LaurentSeriesTrunc(coeffs, 0, trunc)


@lru_cache(maxsize=None)
def _expm1_unit(n):
    """(e^x - 1)/x through degree n."""
    return LaurentSeriesTrunc({i: Fraction(1, factorial(i + 1)) for i in range(n + 1)}, 0, n)


def expm1_power_series(k, trunc):
    """(e^x - 1)^k through degree ``trunc``; the lower order is k."""
    n = trunc - k
    if n < 0:
        return LaurentSeriesTrunc({}, k, trunc)
    return (_expm1_unit(n) ** k).shift(k)


# -- residue kernels ----------------------------------------------------

@lru_cache(maxsize=None)
def log_kernel_coeff(a, b, m):
    """Res_y (1+y)^a y^{-b} (log(1+y))^{-m-1}.

    This is the weight with which the mode u_m v enters
    Res_y (1+y)^a y^{-b} Y(u, log(1+y)) v.  Zero unless m >= -b.
    """
    if m < -b:
        return Fraction(0)
    # [y^{b-1}] (1+y)^a (log(1+y))^{-m-1}; the log power starts at y^{-m-1}
    deg = b + m  # needed degree inside (1+y)^a * unit^{-m-1}
    k = -m - 1
    unit = _log_unit(deg) ** k
    bs = binom_series(a, deg)
    return sum((bs[i] * unit[deg - i] for i in range(deg + 1)), Fraction(0))


@lru_cache(maxsize=None)
def expm1_kernel_coeff(alpha, beta, m):
    """Res_x e^{alpha x} (e^x - 1)^{-beta} x^{-m-1}, i.e. [x^m] e^{alpha x}(e^x-1)^{-beta}."""
    deg = m + beta
    if deg < 0:
        return Fraction(0)
    unit = _expm1_unit(deg) ** (-beta)
    ex = exp_series(alpha, deg)
    return sum((ex[i] * unit[deg - i] for i in range(deg + 1)), Fraction(0))


def resop(modes, m_max, a, b):
    """Res_y (1+y)^a y^{-b} Y(u, log(1+y)) v.

    ``modes(m)`` returns the sparse vector u_m v and must vanish for
    m > m_max.  Only -b <= m <= m_max contribute: the log power has lower
    order -m-1 and the prefactor lower order -b, so each term needs the
    series only through degree b + m <= b + m_max.
    """
    a = as_rational(a)
    acc = {}
    for m in range(-b, m_max + 1):
        c = log_kernel_coeff(a, b, m)
        if c:
            vec = modes(m)
            if vec:
                add_into(acc, vec, c)
    return acc


def resop_poly(modes, m_max, a, b):
    """Res_z (1+z)^a z^{-b} Y(u, z) v = sum_i binom(a, i) u_{i-b} v."""
    a = as_rational(a)
    acc = {}
    for i in range(0, m_max + b + 1):
        c = binom(a, i)
        if c:
            vec = modes(i - b)
            if vec:
                add_into(acc, vec, c)
    return acc


def resop_exp(modes, m_max, alpha, beta):
    """Res_x e^{alpha x} (e^x - 1)^{-beta} Y(u, x) v, expanded directly in x."""
    alpha = as_rational(alpha)
    acc = {}
    for m in range(-beta, m_max + 1):
        c = expm1_kernel_coeff(alpha, beta, m)
        if c:
            vec = modes(m)
            if vec:
                add_into(acc, vec, c)
    return acc


# -- change-of-variable coefficients -------------------------------------

@dataclass(frozen=True)
class ChangeVarCoeffs:
    """B_0..B_J with exp(sum_j B_j y^{j+1} d/dy) y = log(1+y) + O(y^{J+2})."""

    B: tuple

    @property
    def order(self):
        return len(self.B) - 1


def apply_exp_derivation(B, poly, trunc):
    """exp(sum_j B_j y^{j+1} d/dy) applied to a polynomial dict, through ``trunc``.

    Requires B_0 = 0 so that the derivation strictly raises degree.
    """
    if B and B[0]:
        raise ConfigurationError("B_0 must vanish for a nilpotent expansion")
    total = {d: c for d, c in poly.items() if d <= trunc}
    term = dict(total)
    k = 0
    while term:
        k += 1
        nxt = {}
        for d, c in term.items():
            if not d:
                continue
            for j in range(1, len(B)):
                e = d + j
                if e > trunc or not B[j]:
                    continue
                nxt[e] = nxt.get(e, 0) + B[j] * d * c
        term = {d: c / k for d, c in nxt.items() if c}
        add_into(total, term)
    return total


def solve_changevar_coeffs(J):
    """Solve for B_0..B_J order by order.

    B_j first appears in degree j+1, linearly with coefficient 1 (every
    other contribution to that degree involves only B_1..B_{j-1}), and
    degree 1 forces e^{B_0} = 1, i.e. B_0 = 0.
    """
    if J < 0:
        raise ConfigurationError("J must be >= 0")
    target = {d: Fraction((-1) ** (d + 1), d) for d in range(1, J + 2)}
    B = [Fraction(0)]
    for j in range(1, J + 1):
        trial = apply_exp_derivation(B + [Fraction(0)], {1: Fraction(1)}, j + 1)
        B.append(target[j + 1] - trial.get(j + 1, 0))
    return ChangeVarCoeffs(tuple(B))
