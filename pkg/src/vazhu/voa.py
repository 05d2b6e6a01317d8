"""Concrete vertex algebras on partition bases.

Two families are built in:

``heis``
    The rank-one Heisenberg (free boson) vertex algebra.  The partition
    ``(n1, ..., nk)`` stands for a(-n1)...a(-nk)1 with [a(m), a(n)] = m d_{m+n,0}.
``vir``
    The universal Virasoro vertex algebra of central charge c, i.e. the
    Verma module quotient by L(-1)1 only.  ``(n1, ..., nk)`` (parts >= 2)
    stands for L(-n1)...L(-nk)1.

Partitions are tuples sorted in descending order; the empty tuple is the
vacuum.  Mode products u_k v are evaluated by recursion on the leading
generator of u through the iterate formula

    (a_m b)_k c = sum_i (-1)^i binom(m, i) (a_{m-i} b_{k+i} c - (-1)^m b_{m+k-i} a_i c)

which holds in any vertex algebra and terminates on these graded bases.
"""
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import CapExceeded, ConfigurationError, PreconditionError
from .exact import add_into, as_rational, clean
from .kernels import heis_act, vir_act

HEIS = "heis"
VIR = "vir"
FAMILIES = (HEIS, VIR)


@lru_cache(maxsize=None)
def partitions(n, min_part=1, max_part=None):
    """Partitions of n into parts in [min_part, max_part], descending tuples,
    themselves listed in descending lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, max_part), min_part - 1, -1):
        for rest in partitions(n - first, min_part, first):
            out.append((first,) + rest)
    return tuple(out)


def basis_order_key(mono):
    """Sort key placing heavier monomials first, then larger partitions first."""
    return (-sum(mono), tuple(-p for p in mono))


class Algebra:
    """An AlgebraDescription: family, central charge, automorphism, order T.

    ``automorphism`` is ``"id"`` or ``"neg1"`` (Heisenberg only, a -> -a).
    ``T`` is the order used for the eigenspace decomposition and must be a
    multiple of the automorphism's order.
    """

    def __init__(self, family, central_charge=None, automorphism="id", T=1):
        if family not in FAMILIES:
            raise ConfigurationError(f"unknown family {family!r}")
        if automorphism not in ("id", "neg1"):
            raise ConfigurationError(f"unknown automorphism {automorphism!r}")
        if automorphism == "neg1" and family != HEIS:
            raise ConfigurationError("a -> -a is only defined for the Heisenberg family")
        if T < 1 or (automorphism == "neg1" and T % 2):
            raise ConfigurationError(f"automorphism order does not divide T={T}")
        if family == VIR:
            if central_charge is None:
                raise ConfigurationError("Virasoro family needs a central charge")
            central_charge = as_rational(central_charge)
        elif central_charge is not None:
            raise ConfigurationError("central charge belongs to the conformal spec for heis")
        self.family = family
        self.central_charge = central_charge
        self.automorphism = automorphism
        self.T = T
        self.min_part = 1 if family == HEIS else 2
        self.gen_weight = self.min_part
        self._mp_memo = {}
        self._vir_memo = {}

    def __repr__(self):
        c = f", c={self.central_charge}" if self.family == VIR else ""
        return f"Algebra({self.family}{c}, g={self.automorphism}, T={self.T})"

    def __eq__(self, other):
        return isinstance(other, Algebra) and self.signature() == other.signature()

    def __hash__(self):
        return hash(self.signature())

    def signature(self):
        return (self.family, self.central_charge, self.automorphism, self.T)

    def with_twist_order(self, T):
        return Algebra(self.family, self.central_charge, self.automorphism, T)

    # grading and bases ---------------------------------------------------
    @staticmethod
    def weight(mono):
        return sum(mono)

    def basis(self, weight):
        return list(partitions(weight, self.min_part))

    def basis_upto(self, cap):
        """All monomials of weight <= cap in elimination order (heaviest first)."""
        out = []
        for w in range(cap, -1, -1):
            out.extend(partitions(w, self.min_part))
        return out

    def valid_monomial(self, mono):
        return all(isinstance(p, int) and p >= self.min_part for p in mono) and \
            list(mono) == sorted(mono, reverse=True)

    # automorphism ------------------------------------------------------
    def eigen_index(self, mono):
        """r with g(mono) = exp(-2 pi i r / T) mono."""
        if self.automorphism == "neg1" and len(mono) % 2:
            return self.T // 2
        return 0

    def g_sign(self, mono):
        return -1 if self.automorphism == "neg1" and len(mono) % 2 else 1

    # generator modes -----------------------------------------------------
    def act(self, m, vec):
        """Heisenberg a(m) or Virasoro L(m) on a sparse vector."""
        out = {}
        if self.family == HEIS:
            for mono, c in vec.items():
                add_into(out, heis_act(m, mono), c)
        else:
            cc = self.central_charge
            memo = self._vir_memo
            for mono, c in vec.items():
                add_into(out, vir_act(m, mono, cc, memo), c)
        return out

    def _gen(self, j, vec):
        """Mode j of the generating field: a_j = a(j), or omega_j = L(j - 1)."""
        return self.act(j if self.family == HEIS else j - 1, vec)

    # mode products -----------------------------------------------------
    def mono_product(self, u, k, v, shortcut=True):
        """u_k v for basis monomials, as a dict (shared; do not mutate).

        With ``shortcut`` false the top-level call does not use the grading
        to return zero early; used by the truncation-axiom tests.
        """
        key = (u, k, v)
        memo = self._mp_memo
        if shortcut:
            hit = memo.get(key)
            if hit is not None:
                return hit
        wu = sum(u)
        wv = sum(v)
        if shortcut and wu + wv - k - 1 < 0:
            res = {}
        elif not u:
            res = {v: Fraction(1)} if k == -1 else {}
        else:
            p = u[0]
            rest = u[1:]
            m = -p + self.gen_weight - 1
            wr = wu - p
            res = {}
            # a_{m-i} (b_{k+i} c); b_{k+i} c vanishes once its weight is negative
            for i in range(0, wr + wv - k):
                inner = self.mono_product(rest, k + i, v)
                if inner:
                    add_into(res, self._gen(m - i, inner), comb(-m + i - 1, i))
            # -(-1)^m b_{m+k-i} (a_i c); a_i c vanishes once it lowers below weight 0
            sign = 1 if m % 2 else -1
            start = 1 if self.family == HEIS else 0
            for i in range(start, wv + self.gen_weight):
                gv = self._gen(i, {v: Fraction(1)})
                if not gv:
                    continue
                c = sign * comb(-m + i - 1, i)
                for w, cw in gv.items():
                    inner = self.mono_product(rest, m + k - i, w)
                    if inner:
                        add_into(res, inner, c * cw)
        if shortcut:
            memo[key] = res
        return res

    def product_vec(self, uvec, k, vvec):
        """u_k v for sparse vectors (bilinear extension), no cap checks."""
        out = {}
        for u, cu in uvec.items():
            for v, cv in vvec.items():
                r = self.mono_product(u, k, v)
                if r:
                    add_into(out, r, cu * cv)
        return out

    def state(self, terms, cap=None):
        return State(self, terms, cap)

    def vacuum(self, cap=None):
        return State(self, {(): 1}, cap)

    def monomial(self, mono, cap=None):
        return State(self, {tuple(mono): 1}, cap)


class State:
    """Finite exact-rational combination of basis monomials with a weight cap.

    The cap defaults to the top weight present.  Every operation producing
    a State checks the cap of its result and raises CapExceeded instead of
    dropping components.
    """

    __slots__ = ("alg", "terms", "cap")

    def __init__(self, alg, terms, cap=None):
        terms = clean({tuple(k): v for k, v in terms.items()})
        for mono in terms:
            if not alg.valid_monomial(mono):
                raise ConfigurationError(f"{mono!r} is not a {alg.family} basis monomial")
        top = max((sum(m) for m in terms), default=0)
        if cap is None:
            cap = top
        if top > cap:
            raise CapExceeded(top, cap)
        self.alg = alg
        self.terms = terms
        self.cap = cap

    def __repr__(self):
        return f"State({serialize(self)}, cap={self.cap})"

    def __eq__(self, other):
        if not isinstance(other, State):
            return NotImplemented
        return self.alg == other.alg and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def _same(self, other):
        if self.alg.family != other.alg.family:
            raise ConfigurationError("cannot combine states of different families")

    def __add__(self, other):
        self._same(other)
        return State(self.alg, add_into(dict(self.terms), other.terms), max(self.cap, other.cap))

    def __sub__(self, other):
        self._same(other)
        return State(self.alg, add_into(dict(self.terms), other.terms, -1), max(self.cap, other.cap))

    def __neg__(self):
        return self * -1

    def __mul__(self, s):
        s = as_rational(s)
        return State(self.alg, {k: s * v for k, v in self.terms.items()}, self.cap)

    __rmul__ = __mul__

    def with_cap(self, cap):
        return State(self.alg, self.terms, cap)

    def weights(self):
        return sorted({sum(m) for m in self.terms})

    @property
    def top_weight(self):
        return max((sum(m) for m in self.terms), default=0)

    def is_homogeneous(self):
        return len(self.weights()) <= 1

    def weight(self):
        ws = self.weights()
        if len(ws) > 1:
            raise PreconditionError("state is not weight-homogeneous")
        return ws[0] if ws else 0

    def homogeneous_parts(self):
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(sum(m), {})[m] = c
        return {w: State(self.alg, t, self.cap) for w, t in sorted(parts.items())}

    def eigen_parts(self):
        parts = {}
        for m, c in self.terms.items():
            parts.setdefault(self.alg.eigen_index(m), {})[m] = c
        return {r: State(self.alg, t, self.cap) for r, t in sorted(parts.items())}

    def eigen_index(self):
        rs = {self.alg.eigen_index(m) for m in self.terms}
        if len(rs) > 1:
            raise PreconditionError("state is not g-homogeneous")
        return rs.pop() if rs else 0


# -- operations on states -------------------------------------------------

def _check_cap(terms, cap, what="result"):
    for mono in terms:
        w = sum(mono)
        if w > cap:
            raise CapExceeded(w, cap, what)


def generator_mode(m, s):
    """a(m) s for Heisenberg, L(m) s for Virasoro."""
    alg = s.alg
    for mono in s.terms:
        w = sum(mono) - m
        if w > s.cap:
            raise CapExceeded(w, s.cap, "generator mode result")
    return State(alg, alg.act(m, s.terms), s.cap)


def mode_product(u, k, v, cap=None):
    """u_k v with cap checks; the cap defaults to max(u.cap, v.cap)."""
    u._same(v)
    if cap is None:
        cap = max(u.cap, v.cap)
    for mu in u.terms:
        for mv in v.terms:
            w = sum(mu) + sum(mv) - k - 1
            if w > cap:
                raise CapExceeded(w, cap, f"u_{k} v")
    return State(u.alg, u.alg.product_vec(u.terms, k, v.terms), cap)


def D(v, cap=None):
    """Translation operator D(v) = v_{-2} 1."""
    cap = v.cap if cap is None else cap
    return mode_product(v, -2, v.alg.vacuum(cap), cap)


def g_project(v, r):
    """Component of v in the eigenspace V^r."""
    T = v.alg.T
    if not 0 <= r < T:
        raise ConfigurationError(f"eigen index {r} outside [0, {T})")
    return State(v.alg, {m: c for m, c in v.terms.items() if v.alg.eigen_index(m) == r}, v.cap)


def g_apply(v):
    """The automorphism g itself (only real eigenvalues occur in the built-in families)."""
    return State(v.alg, {m: c * v.alg.g_sign(m) for m, c in v.terms.items()}, v.cap)


# -- verification ----------------------------------------------------------

@dataclass
class CheckResult:
    """Outcome of an exact check; ``witness`` explains a failure."""

    name: str
    ok: bool
    checked: int = 0
    witness: str = ""
    inputs: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok

    @property
    def status(self):
        return "pass" if self.ok else "fail"


def _D_power_vec(alg, vec, j):
    vac = {(): Fraction(1)}
    for _ in range(j):
        vec = alg.product_vec(vec, -2, vac)
    return vec


def skew_rhs(alg, u_terms, v_terms, k, k_max):
    """sum_{j>=0} (-1)^{k+j+1} D^j(v_{k+j} u) / j!, the x^{-k-1} coefficient of
    e^{xD} Y(v, -x) u."""
    acc = {}
    for j in range(0, k_max - k + 1):
        inner = alg.product_vec(v_terms, k + j, u_terms)
        if not inner:
            continue
        sign = -1 if (k + j) % 2 == 0 else 1
        add_into(acc, _D_power_vec(alg, inner, j), Fraction(sign, factorial(j)))
    return acc


def verify_skew_symmetry(u, v, cap):
    """Check u_k v against the expansion of e^{xD} Y(v,-x) u for every k whose
    result stays within ``cap``."""
    alg = u.alg
    wu, wv = u.top_weight, v.top_weight
    k_max = wu + wv - 1
    k_min = k_max - cap
    n = 0
    for k in range(k_min, k_max + 1):
        lhs = alg.product_vec(u.terms, k, v.terms)
        rhs = skew_rhs(alg, u.terms, v.terms, k, k_max)
        n += 1
        if lhs != rhs:
            return CheckResult("skew_symmetry", False, n,
                               f"k={k}: lhs={lhs!r} rhs={rhs!r}",
                               {"u": serialize(u), "v": serialize(v)})
    return CheckResult("skew_symmetry", True, n, inputs={"u": serialize(u), "v": serialize(v)})


@dataclass
class ConformalSpec:
    """A candidate conformal vector; usable only after :meth:`verify` passes."""

    omega: State
    central_charge: Fraction
    lam: Fraction = None
    _verified_cap: int = field(default=-1, repr=False, compare=False)

    def verify(self, cap=5):
        if self._verified_cap >= cap:
            return CheckResult("conformal", True)
        res = verify_conformal(self, cap)
        if res:
            self._verified_cap = cap
        return res

    def require(self, cap=5):
        res = self.verify(cap)
        if not res:
            raise ConfigurationError(f"not a conformal vector: {res.witness}")
        return self

    def L(self, n, vec):
        """L(n) = omega_{n+1} on a sparse vector."""
        return self.omega.alg.product_vec(self.omega.terms, n + 1, vec)


def heisenberg_omega(alg, lam=0):
    """omega_lam = 1/2 a(-1)^2 1 + lam a(-2) 1, central charge 1 - 12 lam^2."""
    lam = as_rational(lam)
    if alg.family != HEIS:
        raise ConfigurationError("heisenberg_omega needs the heis family")
    if lam and alg.automorphism != "id":
        raise ConfigurationError("omega_lam with lam != 0 is not fixed by a -> -a")
    omega = State(alg, {(1, 1): Fraction(1, 2), (2,): lam})
    return ConformalSpec(omega, 1 - 12 * lam * lam, lam)


def virasoro_omega(alg):
    if alg.family != VIR:
        raise ConfigurationError("virasoro_omega needs the vir family")
    return ConformalSpec(State(alg, {(2,): 1}), alg.central_charge)


def default_conformal(alg, lam=0):
    return heisenberg_omega(alg, lam) if alg.family == HEIS else virasoro_omega(alg)


def verify_conformal(spec, cap):
    """Virasoro relations, L(-1) = D and L(0)-grading on all basis states of
    weight <= cap, using only mode products of omega."""
    alg = spec.omega.alg
    c = as_rational(spec.central_charge)
    if any(alg.g_sign(m) != 1 for m in spec.omega.terms):
        return CheckResult("conformal", False, 0, "omega is not fixed by g")
    vac = {(): Fraction(1)}
    n = 0
    for w in range(cap + 1):
        for mono in alg.basis(w):
            vec = {mono: Fraction(1)}
            n += 1
            got = spec.L(0, vec)
            if got != ({mono: Fraction(w)} if w else {}):
                return CheckResult("conformal", False, n, f"L(0){mono} = {got!r}, expected weight {w}")
            if w + 1 <= cap:
                dv = alg.product_vec(vec, -2, vac)
                lm1 = spec.L(-1, vec)
                if dv != lm1:
                    return CheckResult("conformal", False, n, f"L(-1){mono} = {lm1!r} != D = {dv!r}")
            for a in range(-2, cap + 1):
                for b in range(a + 1, cap + 1):
                    if max(w - a, w - b, w - a - b) > cap:
                        continue
                    lhs = add_into(dict(spec.L(a, spec.L(b, vec))), spec.L(b, spec.L(a, vec)), -1)
                    rhs = {}
                    if a - b:
                        add_into(rhs, spec.L(a + b, vec), a - b)
                    if a + b == 0 and c:
                        add_into(rhs, vec, Fraction(a ** 3 - a, 12) * c)
                    if lhs != rhs:
                        return CheckResult("conformal", False, n,
                                           f"[L({a}),L({b})]{mono}: {lhs!r} != {rhs!r}")
    return CheckResult("conformal", True, n)


# -- text format -------------------------------------------------------------

def format_rational(x):
    x = as_rational(x)
    return str(x)


def serialize(s, with_family=True):
    """``family:coeff*[n1,n2,...] + ...`` in elimination order; ``0`` for zero."""
    items = sorted(s.terms.items(), key=lambda kv: basis_order_key(kv[0]))
    body = " + ".join(f"{format_rational(c)}*[{','.join(map(str, m))}]" for m, c in items) or "0"
    return f"{s.alg.family}:{body}" if with_family else body


_TERM = re.compile(r"^\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?\[([\d,\s]*)\]\s*$")


def parse_state(text, alg, cap=None):
    """Inverse of :func:`serialize`; the family prefix is optional."""
    text = text.strip()
    if ":" in text:
        fam, text = text.split(":", 1)
        if fam.strip() != alg.family:
            raise ConfigurationError(f"state family {fam!r} does not match {alg.family!r}")
    # "a - b" is read as "a + -b"
    text = re.sub(r"(?<=[\]\d])\s+-\s*", " + -", text.strip())
    if text == "0":
        return State(alg, {}, cap)
    terms = {}
    depth = 0
    chunk = []
    pieces = []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "+" and depth == 0 and "".join(chunk).strip() and not "".join(chunk).strip().endswith("*"):
            pieces.append("".join(chunk))
            chunk = []
            continue
        chunk.append(ch)
    pieces.append("".join(chunk))
    for piece in pieces:
        mt = _TERM.match(piece)
        if not mt:
            raise ConfigurationError(f"cannot parse state term {piece!r}")
        coeff = Fraction(mt.group(2)) if mt.group(2) else Fraction(1)
        if mt.group(1) == "-":
            coeff = -coeff
        parts = tuple(int(x) for x in mt.group(3).replace(" ", "").split(",") if x)
        mono = tuple(sorted(parts, reverse=True))
        add_into(terms, {mono: coeff})
    return State(alg, terms, cap)
