"""Three binomial identities behind the ideal and associativity arguments,
checked exactly for a given s after clearing denominators.

I:   sum_{m=0}^s C(m+s,s) [(-1)^m (1+z)^{s+1} - (-1)^s (1+z)^m] / z^{s+m+1} = 1
II:  sum_{m=0}^s C(m+s,s) (-1)^m (m z + s + m + 1) / z^{s+m+2}
         = (-1)^s C(2s+1,s) (s+1) / z^{2s+2}
III: sum_{m=0}^s (-1)^m C(m+s,s) [ sum_{i=0}^{s-m} C(-m-s-1,i) (-1)^i
         z2^i (1+z2)^m / z1^{i+m} - 1/z1^m ] = 0
"""
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import PreconditionError
from .exact import add_into
from .series import binom


class LaurentPoly:
    """Finitely supported map from exponent tuples to Fractions."""

    __slots__ = ("coeffs", "nvars")

    def __init__(self, coeffs=None, nvars=1):
        self.nvars = nvars
        self.coeffs = {}
        for e, c in (coeffs or {}).items():
            e = (e,) if isinstance(e, int) else tuple(e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong arity")
            if c:
                self.coeffs[e] = Fraction(c)

    @classmethod
    def const(cls, c, nvars=1):
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def var(cls, i, nvars=1):
        return cls({tuple(int(j == i) for j in range(nvars)): 1}, nvars)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other, self.nvars)
        return self.nvars == other.nvars and self.coeffs == other.coeffs

    def __add__(self, other):
        return LaurentPoly(add_into(dict(self.coeffs), other.coeffs), self.nvars)

    def __sub__(self, other):
        return LaurentPoly(add_into(dict(self.coeffs), other.coeffs, -1), self.nvars)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({e: c * other for e, c in self.coeffs.items()}, self.nvars)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = LaurentPoly.const(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, *degrees):
        """Multiply by the monomial z^degrees (negative allowed)."""
        return LaurentPoly({tuple(a + b for a, b in zip(e, degrees)): c
                            for e, c in self.coeffs.items()}, self.nvars)

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*z^{e if self.nvars > 1 else e[0]}"
                          for e, c in sorted(self.coeffs.items()))


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    s: int
    ok: bool
    witness: object = None

    def __bool__(self):
        return self.ok

    @property
    def status(self):
        return "pass" if self.ok else "fail"


def _check_s(s):
    if s < 0:
        raise PreconditionError("s must be >= 0")


def identity_I_sides(s):
    """Both sides of I multiplied by z^{2s+1}."""
    _check_s(s)
    one_z = LaurentPoly({0: 1, 1: 1})
    lhs = LaurentPoly()
    for m in range(s + 1):
        num = one_z ** (s + 1) * (-1) ** m - one_z ** m * (-1) ** s
        lhs = lhs + num.shift(s - m) * comb(m + s, s)
    return lhs, LaurentPoly({2 * s + 1: 1})


def identity_II_sides(s):
    """Both sides of II multiplied by z^{2s+2}."""
    _check_s(s)
    lhs = LaurentPoly()
    for m in range(s + 1):
        num = LaurentPoly({1: m, 0: s + m + 1})
        lhs = lhs + num.shift(s - m) * (comb(m + s, s) * (-1) ** m)
    return lhs, LaurentPoly.const((-1) ** s * comb(2 * s + 1, s) * (s + 1))


def identity_III_lhs(s):
    """Left side of III multiplied by z1^s; variables (z1, z2)."""
    _check_s(s)
    z2 = LaurentPoly.var(1, 2)
    one_z2 = LaurentPoly.const(1, 2) + z2
    total = LaurentPoly(nvars=2)
    for m in range(s + 1):
        inner = LaurentPoly.const(-1, 2).shift(s - m, 0)
        pm = one_z2 ** m
        for i in range(s - m + 1):
            c = binom(-m - s - 1, i) * (-1) ** i
            inner = inner + (z2 ** i * pm * c).shift(s - i - m, 0)
        total = total + inner * ((-1) ** m * comb(m + s, s))
    return total


def check_identity_I(s):
    lhs, rhs = identity_I_sides(s)
    diff = lhs - rhs
    return IdentityCheck("identity_I", s, not diff, diff or None)


def check_identity_II(s):
    lhs, rhs = identity_II_sides(s)
    diff = lhs - rhs
    return IdentityCheck("identity_II", s, not diff, diff or None)


def check_identity_III(s):
    lhs = identity_III_lhs(s)
    return IdentityCheck("identity_III", s, not lhs, lhs or None)


CHECKS = (check_identity_I, check_identity_II, check_identity_III)


def check_all(max_s=10):
    return [chk(s) for s in range(max_s + 1) for chk in CHECKS]
