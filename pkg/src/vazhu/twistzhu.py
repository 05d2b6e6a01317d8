"""Twisted Zhu-type products, their ideals, and quotient approximations.

For an automorphism g of order T and n = floor(n) + nbar/T the module
provides the conformal-free products ``diamond`` and ``bullet`` and the
classical ``circ_classic`` / ``star_classic`` (which need a conformal
vector for the weights).  Ideals are approximated from below by the span
of generators of bounded weight; a membership certificate is therefore a
proof, while a failed search is only ``inconclusive``.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .errors import CapExceeded, ConfigurationError, DimensionMismatch, PreconditionError
from .exact import SubspaceSpan, add_into, intersect_with_window
from .series import resop, resop_poly
from .voa import D, State, serialize

TILDE = "tilde"
CLASSIC = "classic"


@dataclass(frozen=True)
class TwistParams:
    """n = floor_n + nbar / T with 0 <= nbar < T."""

    T: int
    floor_n: int
    nbar: int = 0

    def __post_init__(self):
        if self.T < 1 or self.floor_n < 0 or not 0 <= self.nbar < self.T:
            raise ConfigurationError(f"bad twist parameters {self}")

    @classmethod
    def parse(cls, text, T):
        """``"k/T"`` (k a non-negative integer) or a bare integer."""
        text = str(text).strip()
        if "/" in text:
            k, d = text.split("/")
            k, d = int(k), int(d)
            if d != T:
                raise ConfigurationError(f"--n denominator {d} must equal T={T}")
        else:
            k = int(text) * T
        if k < 0:
            raise ConfigurationError("n must be non-negative")
        return cls(T, k // T, k % T)

    @property
    def n(self):
        return Fraction(self.floor_n * self.T + self.nbar, self.T)

    def __str__(self):
        return f"{self.floor_n * self.T + self.nbar}/{self.T}"

    def delta(self, l):
        """delta_nbar(l): 1 if nbar >= l, with delta_nbar(T) = 0."""
        if l == self.T:
            return 0
        if not 0 <= l < self.T:
            raise ConfigurationError(f"delta argument {l} outside [0, T]")
        return 1 if self.nbar >= l else 0

    def f(self, r):
        return self.delta(r) + self.floor_n + Fraction(r, self.T)

    def h(self, r):
        return 2 * self.floor_n + self.delta(r) + self.delta(self.T - r) + 1

    def kernel(self, r):
        return DiamondKernel(r, self.f(r) - 1, self.h(r), self.f(r), self.h(r))

    def h_max(self):
        return max(self.h(r) for r in range(self.T))

    def previous(self):
        """Parameters for n - 1/T."""
        k = self.floor_n * self.T + self.nbar - 1
        if k < 0:
            raise ConfigurationError("n - 1/T is negative")
        return TwistParams(self.T, k // self.T, k % self.T)


@dataclass(frozen=True)
class DiamondKernel:
    """u diamond v = Res_y (1+y)^A y^{-B} Y(u, log(1+y)) v for u in V^r."""

    r: int
    A: Fraction
    B: int
    f: Fraction
    h: int


def _check_alg(alg, tw):
    if alg.T != tw.T:
        raise ConfigurationError(f"twist order T={tw.T} differs from the algebra's T={alg.T}")


def _modes(alg, uvec, vvec):
    return lambda m: alg.product_vec(uvec, m, vvec)


def _split_r(alg, vec):
    parts = {}
    for mono, c in vec.items():
        parts.setdefault(alg.eigen_index(mono), {})[mono] = c
    return parts


def _split_wr(alg, vec):
    parts = {}
    for mono, c in vec.items():
        parts.setdefault((sum(mono), alg.eigen_index(mono)), {})[mono] = c
    return parts


def _top(vec):
    return max((sum(m) for m in vec), default=0)


# -- raw products on sparse vectors ------------------------------------

def residue_log(alg, uvec, vvec, a, b, modes=None):
    """Res_y (1+y)^a y^{-b} Y(u, log(1+y)) v on sparse vectors."""
    if not uvec or not vvec:
        return {}
    return resop(modes or _modes(alg, uvec, vvec), _top(uvec) + _top(vvec) - 1, a, b)


def diamond_vec(alg, uvec, vvec, tw):
    out = {}
    for r, part in _split_r(alg, uvec).items():
        k = tw.kernel(r)
        add_into(out, residue_log(alg, part, vvec, k.A, k.B))
    return out


def bullet_vec(alg, uvec, vvec, tw):
    u0 = _split_r(alg, uvec).get(0)
    out = {}
    if not u0:
        return out
    N = tw.floor_n
    for m in range(N + 1):
        add_into(out, residue_log(alg, u0, vvec, N, N + m + 1), (-1) ** m * comb(m + N, N))
    return out


def circ_vec(alg, uvec, vvec, tw):
    out = {}
    for (w, r), part in _split_wr(alg, uvec).items():
        a = w - 1 + tw.delta(r) + tw.floor_n + Fraction(r, tw.T)
        add_into(out, resop_poly(_modes(alg, part, vvec), w + _top(vvec) - 1, a, tw.h(r)))
    return out


def star_vec(alg, uvec, vvec, tw):
    out = {}
    N = tw.floor_n
    for (w, r), part in _split_wr(alg, uvec).items():
        if r:
            continue
        modes = _modes(alg, part, vvec)
        m_max = w + _top(vvec) - 1
        for m in range(N + 1):
            add_into(out, resop_poly(modes, m_max, w + N, N + m + 1), (-1) ** m * comb(m + N, N))
    return out


def D_vec(alg, vec):
    return alg.product_vec(vec, -2, {(): Fraction(1)})


def classic_translation_vec(alg, vec, spec):
    """L(-1)u + L(0)u."""
    return add_into(dict(spec.L(-1, vec)), spec.L(0, vec))


# -- public products on States -------------------------------------------

def _wrap(u, v, terms, cap):
    if cap is None:
        cap = max(u.cap, v.cap)
    top = _top(terms)
    if top > cap:
        raise CapExceeded(top, cap, "product")
    return State(u.alg, terms, cap)


def _require_omega(u, omega):
    if omega is None:
        raise ConfigurationError("classical products need a conformal spec")
    omega.require()
    if omega.omega.alg.family != u.alg.family:
        raise ConfigurationError("conformal spec belongs to another algebra")


def diamond(u, v, tw, cap=None, strict=False):
    """u diamond_{g,n} v.  A u mixing eigenspaces is split and recombined
    (bilinear extension) unless ``strict``."""
    _check_alg(u.alg, tw)
    if strict and len(_split_r(u.alg, u.terms)) > 1:
        raise PreconditionError("u is not g-homogeneous")
    return _wrap(u, v, diamond_vec(u.alg, u.terms, v.terms, tw), cap)


def bullet(u, v, tw, cap=None):
    _check_alg(u.alg, tw)
    return _wrap(u, v, bullet_vec(u.alg, u.terms, v.terms, tw), cap)


def circ_classic(u, v, tw, omega, cap=None):
    _check_alg(u.alg, tw)
    _require_omega(u, omega)
    return _wrap(u, v, circ_vec(u.alg, u.terms, v.terms, tw), cap)


def star_classic(u, v, tw, omega, cap=None):
    _check_alg(u.alg, tw)
    _require_omega(u, omega)
    return _wrap(u, v, star_vec(u.alg, u.terms, v.terms, tw), cap)


PRODUCTS = {"diamond": diamond, "bullet": bullet, "circ": circ_classic, "star": star_classic}


# -- ideal spans -----------------------------------------------------------

@dataclass
class IdealSpan:
    """A bounded-generator approximation of O_{g,n}(V) or its tilde version."""

    alg: object
    tw: TwistParams
    kind: str
    P: int
    ambient_cap: int
    span: SubspaceSpan
    labels: list
    omega: object = None

    def contains(self, vec):
        """Certificate or NotInSpan; keys above the ambient count as not in span."""
        try:
            return self.span.membership(vec)
        except DimensionMismatch:
            return None

    def describe(self, gi):
        op, u, v = self.labels[gi]
        fmt = lambda m: "[" + ",".join(map(str, m)) + "]"
        return f"{op}({fmt(u)})" if v is None else f"{op}({fmt(u)},{fmt(v)})"


_SPAN_CACHE = {}


def default_ambient(tw, P):
    return P + tw.h_max() + 2


def ideal_span(alg, tw, kind=TILDE, P=4, ambient=None, omega=None):
    """Span of the ideal generators of weight <= P inside V_{<= ambient}.

    ``kind`` is ``"tilde"`` (u diamond v and D u) or ``"classic"``
    (u circ v and L(-1)u + L(0)u, which needs ``omega``).  Spans are cached
    per (algebra, twist, kind, conformal vector, P, ambient).
    """
    _check_alg(alg, tw)
    if ambient is None:
        ambient = default_ambient(tw, P)
    if ambient < P + tw.h_max() - 1:
        raise CapExceeded(P + tw.h_max() - 1, ambient, "ideal generators")
    if kind == CLASSIC:
        if omega is None:
            raise ConfigurationError("classic ideal needs a conformal spec")
        omega.require()
        okey = tuple(sorted(omega.omega.terms.items()))
    elif kind == TILDE:
        okey = None
    else:
        raise ConfigurationError(f"unknown ideal kind {kind!r}")
    key = (alg.signature(), tw, kind, okey, P, ambient)
    hit = _SPAN_CACHE.get(key)
    if hit is not None:
        return hit
    gens, labels = [], []
    monos = [m for w in range(P + 1) for m in alg.basis(w)]
    for u in monos:
        vec = {u: Fraction(1)}
        if kind == TILDE:
            g = D_vec(alg, vec)
            labels.append(("D", u, None))
        else:
            g = classic_translation_vec(alg, vec, omega)
            labels.append(("L-1+L0", u, None))
        gens.append(g)
    prod = diamond_vec if kind == TILDE else circ_vec
    name = "diamond" if kind == TILDE else "circ"
    for s in range(P + 1):
        for wu in range(s + 1):
            for u in alg.basis(wu):
                for v in alg.basis(s - wu):
                    gens.append(prod(alg, {u: Fraction(1)}, {v: Fraction(1)}, tw))
                    labels.append((name, u, v))
    span = SubspaceSpan(alg.basis_upto(ambient), gens)
    out = IdealSpan(alg, tw, kind, P, ambient, span, labels, omega)
    _SPAN_CACHE[key] = out
    return out


def clear_span_cache():
    _SPAN_CACHE.clear()


# -- membership with iterative deepening ---------------------------------

def default_schedule(W):
    """Verifiers take W as the combined weight of their inputs, which is
    where the target of the check lives."""
    return [W, W + 2, W + 4, W + 6]


@dataclass
class MembershipResult:
    """``certificate`` (a proof, with the level P it was found at) or
    ``inconclusive`` (not found within the schedule; never a refutation)."""

    status: str
    level: int = None
    certificate: object = None
    ideal: IdealSpan = None
    residual: dict = None

    def __bool__(self):
        return self.status == "certificate"

    def verify(self, target):
        """Re-evaluate the certificate against the span's stored generators."""
        return bool(self) and self.ideal.span.check(self.certificate, target)


def membership_mod_ideal(x, alg, tw, kind=TILDE, schedule=(4, 6, 8, 10), omega=None, ambient=None):
    """Iterative deepening over the generator cap P."""
    vec = x.terms if isinstance(x, State) else x
    if not vec:
        ideal = ideal_span(alg, tw, kind, schedule[0], ambient, omega)
        return MembershipResult("certificate", schedule[0], ideal.span.membership({}), ideal)
    last = None
    for P in schedule:
        # extra ambient columns cost nothing, so widen to hold the target
        amb = ambient if ambient is not None else max(default_ambient(tw, P), _top(vec))
        if _top(vec) > amb:
            continue
        ideal = ideal_span(alg, tw, kind, P, amb, omega)
        res = ideal.contains(vec)
        if res:
            return MembershipResult("certificate", P, res, ideal)
        last = res.residual if res is not None else None
    return MembershipResult("inconclusive", residual=last)


# -- quotient approximations ---------------------------------------------

@dataclass
class QuotientAlgebra:
    """Approximation of V / O at window W and generator cap P.

    ``table[(i, j)]`` maps to the coefficients (rep index -> Fraction) of
    reps[i] * reps[j] modulo the ideal span, or ``None`` when the product
    does not reduce into the window at this (W, P).
    """

    alg: object
    tw: TwistParams
    kind: str
    W: int
    P: int
    ambient_cap: int
    reps: list
    table: dict
    unit_index: int
    unit_ok: bool
    centrality: dict = field(default_factory=dict)
    note: str = "approximation at (W,P); not claimed equal to the true quotient"

    @property
    def dim(self):
        return len(self.reps)

    def complete(self):
        return all(v is not None for v in self.table.values())

    def is_commutative(self):
        for (i, j), val in self.table.items():
            other = self.table.get((j, i))
            if val is not None and other is not None and val != other:
                return False
        return True


def quotient_algebra(alg, tw, kind=TILDE, W=4, P=None, omega=None, ambient=None):
    """Coset representatives of V_{<=W} modulo the windowed ideal span and
    structure constants of the induced product on them."""
    if P is None:
        P = W
    need = 2 * W + 2 * tw.floor_n  # heaviest component of a product of reps
    if ambient is None:
        ambient = max(default_ambient(tw, P), need)
    elif ambient < need:
        raise CapExceeded(need, ambient, "products of representatives (raise the ambient cap)")
    ideal = ideal_span(alg, tw, kind, P, ambient, omega)
    span = ideal.span
    inwin = intersect_with_window(span, lambda m: sum(m) <= W)
    reps = sorted(inwin.free_keys(), key=lambda m: (sum(m), m))
    rep_index = {m: i for i, m in enumerate(reps)}
    mult = bullet_vec if kind == TILDE else star_vec
    table = {}
    for i, a in enumerate(reps):
        for j, b in enumerate(reps):
            prod = mult(alg, {a: Fraction(1)}, {b: Fraction(1)}, tw)
            nf, _ = span.normal_form(prod)
            if any(m not in rep_index for m in nf):
                table[(i, j)] = None
            else:
                table[(i, j)] = {rep_index[m]: c for m, c in sorted(nf.items(), key=lambda kv: rep_index[kv[0]])}
    unit = rep_index.get(())
    unit_ok = unit is not None and all(
        table[(unit, j)] in ({j: Fraction(1)}, None) and table[(j, unit)] in ({j: Fraction(1)}, None)
        for j in range(len(reps)))
    q = QuotientAlgebra(alg, tw, kind, W, P, ideal.ambient_cap, reps, table, unit, unit_ok)
    if kind == CLASSIC:
        om = omega.omega.terms
        for j, b in enumerate(reps):
            bv = {b: Fraction(1)}
            diff = add_into(dict(star_vec(alg, om, bv, tw)), star_vec(alg, bv, om, tw), -1)
            res = ideal.contains(diff)
            q.centrality[j] = bool(res) and span.check(res, diff)
    return q


def radical_diagnostic(q):
    """dim - rank of the trace form Tr(L_a L_b) on the approximation, or
    None when the structure table is incomplete at this (W, P)."""
    if not q.complete():
        return None
    n = q.dim
    mats = []
    for i in range(n):
        # left multiplication by rep i: column j holds table[(i, j)]
        mats.append([[q.table[(i, j)].get(k, Fraction(0)) for j in range(n)] for k in range(n)])
    gram = {}
    for a in range(n):
        for b in range(n):
            s = Fraction(0)
            A, B = mats[a], mats[b]
            for k in range(n):
                for l in range(n):
                    s += A[k][l] * B[l][k]
            if s:
                gram[(a, b)] = s
    rows = [{b: gram[(a, b)] for b in range(n) if (a, b) in gram} for a in range(n)]
    rank = SubspaceSpan(range(n), rows).rank
    return n - rank


# -- verifiers -----------------------------------------------------------

@dataclass
class Verdict:
    """One verification record."""

    name: str
    status: str  # pass | fail | certificate | inconclusive
    inputs: dict = field(default_factory=dict)
    detail: str = ""
    level: int = None

    @property
    def hard_failure(self):
        return self.status == "fail"


def _mono_str(m):
    return "[" + ",".join(map(str, m)) + "]"


def _membership_verdict(name, target, alg, tw, inputs, schedule, kind=TILDE, omega=None):
    res = membership_mod_ideal(target, alg, tw, kind, schedule, omega)
    if res:
        if not res.verify(target):
            return Verdict(name, "fail", inputs, "certificate failed re-check")
        return Verdict(name, "certificate", inputs, f"{len(res.certificate.coefficients)} generators",
                       res.level)
    return Verdict(name, "inconclusive", inputs, "not found within schedule")


def residue_element(alg, uvec, vvec, tw, k, m):
    """Res_x e^{x(f(r)+k)} (e^x-1)^{-(h(r)+m)} Y(u,x) v, summed over eigen parts of u."""
    out = {}
    for r, part in _split_r(alg, uvec).items():
        add_into(out, residue_log(alg, part, vvec, tw.f(r) + k - 1, tw.h(r) + m))
    return out


def verify_residue_in_ideal(u, v, tw, k, m, schedule=None):
    if not m >= k >= 0:
        raise PreconditionError("need m >= k >= 0")
    alg = u.alg
    target = residue_element(alg, u.terms, v.terms, tw, k, m)
    schedule = schedule or default_schedule(max(u.top_weight + v.top_weight, 1))
    return _membership_verdict("residue_in_ideal", target, alg, tw,
                               {"u": serialize(u), "v": serialize(v), "n": str(tw), "k": k, "m": m},
                               schedule)


def verify_skew_mod_ideal(u, v, tw):
    """u_k v - (-1)^{k+1} v_k u equals D(w) for an explicit w, for every k
    down to the weight-0 level of the result."""
    alg = u.alg
    k_max = u.top_weight + v.top_weight - 1
    for k in range(k_max - u.top_weight - v.top_weight - 2, k_max + 1):
        lhs = alg.product_vec(u.terms, k, v.terms)
        add_into(lhs, alg.product_vec(v.terms, k, u.terms), -1 if (k + 1) % 2 == 0 else 1)
        w = {}
        for j in range(1, k_max - k + 1):
            inner = alg.product_vec(v.terms, k + j, u.terms)
            for _ in range(j - 1):
                inner = D_vec(alg, inner)
            sign = -1 if (k + j) % 2 == 0 else 1
            add_into(w, inner, Fraction(sign, factorial(j)))
        if lhs != D_vec(alg, w):
            return Verdict("skew_mod_ideal", "fail", {"u": serialize(u), "v": serialize(v), "k": k},
                           "difference is not the constructed D-image")
    return Verdict("skew_mod_ideal", "pass", {"u": serialize(u), "v": serialize(v), "n": str(tw)})


def verify_odd_in_ideal(u, tw, schedule=None):
    """u in V^r with r != 0 lies in the tilde ideal."""
    schedule = schedule or default_schedule(max(u.top_weight, 1))
    return _membership_verdict("odd_in_ideal", u.terms, u.alg, tw,
                               {"u": serialize(u), "n": str(tw)}, schedule)


def bullet_alt_form(alg, uvec, vvec, tw):
    """sum_m (-1)^{floor n} binom(m + floor n, m) Res_x e^{xm}(e^x-1)^{-(floor n+m+1)} Y(v,x)u."""
    N = tw.floor_n
    out = {}
    for m in range(N + 1):
        add_into(out, residue_log(alg, vvec, uvec, m - 1, N + m + 1), (-1) ** N * comb(m + N, m))
    return out


def _require_fixed(*states):
    for s in states:
        if set(_split_r(s.alg, s.terms)) - {0}:
            raise PreconditionError(f"{serialize(s)} is not in the g-fixed subspace")


def verify_bullet_alt_form(u, v, tw, schedule=None):
    """Needs u in V^0."""
    _require_fixed(u)
    alg = u.alg
    target = add_into(bullet_vec(alg, u.terms, v.terms, tw), bullet_alt_form(alg, u.terms, v.terms, tw), -1)
    schedule = schedule or default_schedule(max(u.top_weight + v.top_weight, 1))
    return _membership_verdict("bullet_alt_form", target, alg, tw,
                               {"u": serialize(u), "v": serialize(v), "n": str(tw)}, schedule)


def verify_commutator(u, v, tw, schedule=None):
    """u.v - v.u - u_0 v lies in the tilde ideal (u, v in V^0)."""
    _require_fixed(u, v)
    alg = u.alg
    target = bullet_vec(alg, u.terms, v.terms, tw)
    add_into(target, bullet_vec(alg, v.terms, u.terms, tw), -1)
    add_into(target, alg.product_vec(u.terms, 0, v.terms), -1)
    schedule = schedule or default_schedule(max(u.top_weight + v.top_weight, 1))
    return _membership_verdict("commutator", target, alg, tw,
                               {"u": serialize(u), "v": serialize(v), "n": str(tw)}, schedule)


def verify_ideal_property(u1, u2, u3, tw, schedule=None):
    """(u1 <> u2).u3, u3.(u1 <> u2), (D u1).u2 and u1.(D u2) lie in the ideal."""
    alg = u1.alg
    d = diamond_vec(alg, u1.terms, u2.terms, tw)
    targets = {
        "left": bullet_vec(alg, d, u3.terms, tw),
        "right": bullet_vec(alg, u3.terms, d, tw),
        "D_left": bullet_vec(alg, D_vec(alg, u1.terms), u2.terms, tw),
        "D_right": bullet_vec(alg, u1.terms, D_vec(alg, u2.terms), tw),
    }
    base = {"u1": serialize(u1), "u2": serialize(u2), "u3": serialize(u3), "n": str(tw)}
    schedule = schedule or default_schedule(max(u1.top_weight + u2.top_weight + u3.top_weight, 1))
    return [_membership_verdict(f"ideal_property_{k}", t, alg, tw, dict(base), schedule)
            for k, t in targets.items()]


def verify_associativity(u, v, w, tw, schedule=None):
    alg = u.alg
    uv = bullet_vec(alg, u.terms, v.terms, tw)
    vw = bullet_vec(alg, v.terms, w.terms, tw)
    target = add_into(bullet_vec(alg, uv, w.terms, tw), bullet_vec(alg, u.terms, vw, tw), -1)
    schedule = schedule or default_schedule(max(u.top_weight + v.top_weight + w.top_weight, 1))
    return _membership_verdict("associativity", target, alg, tw,
                               {"u": serialize(u), "v": serialize(v), "w": serialize(w), "n": str(tw)},
                               schedule)


def verify_unit(v, tw):
    """1 . v = v exactly."""
    alg = v.alg
    got = bullet_vec(alg, {(): Fraction(1)}, v.terms, tw)
    ok = got == v.terms
    return Verdict("unit", "pass" if ok else "fail", {"v": serialize(v), "n": str(tw)})


def verify_surjection(alg, tw, samples, P=None, schedule=None):
    """Generators of the n ideal lie in the n - 1/T ideal, and the two
    products agree modulo the n - 1/T ideal on the sample pairs."""
    prev = tw.previous()
    out = []
    P = P if P is not None else 3
    schedule = schedule or default_schedule(P)
    gens = ideal_span(alg, tw, TILDE, P)
    for gi, g in enumerate(gens.span.generators):
        v = _membership_verdict("surjection_inclusion", g, alg, prev,
                                {"generator": gens.describe(gi), "n": str(tw)}, schedule)
        out.append(v)
    for u, v in samples:
        target = add_into(bullet_vec(alg, u.terms, v.terms, tw), bullet_vec(alg, u.terms, v.terms, prev), -1)
        out.append(_membership_verdict("surjection_product", target, alg, prev,
                                       {"u": serialize(u), "v": serialize(v), "n": str(tw)}, schedule))
    return out
