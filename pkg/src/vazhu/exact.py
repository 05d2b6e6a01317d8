"""Exact rational linear algebra over sparse vectors.

A sparse vector is a plain ``dict`` mapping basis keys to nonzero
:class:`fractions.Fraction` values.  :class:`SubspaceSpan` keeps an echelon
basis of the span of a list of generators together with the elimination
record needed to express any member back in terms of those generators.
"""
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigurationError, DimensionMismatch
from .kernels import reduce_vector

Rational = Fraction


def as_rational(x):
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


def clean(vec):
    """Drop explicit zeros, coercing values to Fraction."""
    out = {}
    for k, v in vec.items():
        v = as_rational(v)
        if v:
            out[k] = v
    return out


def add_into(acc, vec, scale=1):
    """acc += scale * vec, in place, keeping the no-zero invariant."""
    for k, v in vec.items():
        nv = acc.get(k, 0) + scale * v
        if nv:
            acc[k] = nv
        else:
            acc.pop(k, None)
    return acc


def combine(pairs):
    """Sum of ``coeff * vec`` over an iterable of ``(coeff, vec)``."""
    acc = {}
    for coeff, vec in pairs:
        if coeff:
            add_into(acc, vec, coeff)
    return acc


@dataclass(frozen=True)
class Certificate:
    """Coefficients (generator index -> Fraction) reproducing a target exactly."""

    coefficients: dict

    def __bool__(self):
        return True

    def evaluate(self, generators):
        return combine((c, generators[i]) for i, c in self.coefficients.items())


@dataclass(frozen=True)
class NotInSpan:
    """Negative membership answer; ``residual`` is the nonzero reduced remainder."""

    residual: dict

    def __bool__(self):
        return False


class SubspaceSpan:
    """Echelon basis of span(generators) inside an ordered ambient basis.

    Columns are eliminated in ambient order, so keys listed first become
    pivots first.  Rows are stored with leading coefficient 1 and are only
    reduced to the left of their pivot (row echelon); :meth:`rref` gives the
    fully reduced form.
    """

    def __init__(self, ambient, generators=()):
        ambient = tuple(ambient)
        index = {}
        for i, key in enumerate(ambient):
            if key in index:
                raise ConfigurationError(f"duplicate basis key {key!r} in ordering")
            index[key] = i
        self.ambient = ambient
        self.index = index
        self.generators = []
        self._rows = []  # col -> Fraction
        self._pivot_of = {}  # col -> row number
        self._record = []  # (generator index, scale, [(row, coeff)])
        for g in generators:
            self.add(g)

    # construction ----------------------------------------------------
    def _to_cols(self, vec):
        out = {}
        index = self.index
        for key, val in vec.items():
            col = index.get(key)
            if col is None:
                raise DimensionMismatch(f"key {key!r} is outside the ambient basis")
            if val:
                out[col] = as_rational(val)
        return out

    def _to_keys(self, cols):
        amb = self.ambient
        return {amb[c]: v for c, v in cols.items()}

    def add(self, vec):
        """Append a generator; returns True when the rank grew."""
        gi = len(self.generators)
        self.generators.append(clean(vec))
        x = self._to_cols(vec)
        mults, lead = reduce_vector(x, self._rows, self._pivot_of, False)
        if lead is None:
            return False
        a = x[lead]
        inv = 1 / a
        row = {c: v * inv for c, v in x.items()}
        self._pivot_of[lead] = len(self._rows)
        self._rows.append(row)
        self._record.append((gi, inv, mults))
        return True

    def extend(self, vecs):
        for v in vecs:
            self.add(v)
        return self

    # queries ---------------------------------------------------------
    @property
    def rank(self):
        return len(self._rows)

    @property
    def pivots(self):
        return sorted(self._pivot_of)

    def pivot_keys(self):
        return [self.ambient[c] for c in self.pivots]

    def free_keys(self):
        piv = self._pivot_of
        return [k for c, k in enumerate(self.ambient) if c not in piv]

    def rows(self):
        """Echelon rows as key dicts, ordered by pivot."""
        return [self._to_keys(self._rows[self._pivot_of[c]]) for c in self.pivots]

    def rref(self):
        """Reduced row echelon rows as key dicts, ordered by pivot."""
        pivots = self.pivots
        reduced = {}
        for c in reversed(pivots):
            x = dict(self._rows[self._pivot_of[c]])
            for col in sorted(x):
                if col != c and col in reduced and col in x:
                    add_into(x, reduced[col], -x[col])
            reduced[c] = x
        return [self._to_keys(reduced[c]) for c in pivots]

    def _expand(self, mults):
        """Turn row multipliers into generator coefficients."""
        coef_rows = {}
        for j, a in mults:
            coef_rows[j] = coef_rows.get(j, 0) + a
        gens = {}
        record = self._record
        for i in range(len(record) - 1, -1, -1):
            d = coef_rows.pop(i, 0)
            if not d:
                continue
            gi, scale, sub = record[i]
            t = d * scale
            gens[gi] = gens.get(gi, 0) + t
            for j, a in sub:
                coef_rows[j] = coef_rows.get(j, 0) - t * a
        return {g: c for g, c in sorted(gens.items()) if c}

    def membership(self, vec):
        """Certificate in terms of the original generators, or NotInSpan."""
        x = self._to_cols(vec)
        mults, lead = reduce_vector(x, self._rows, self._pivot_of, False)
        if lead is not None:
            # finish the sweep so the reported residual is the normal form
            reduce_vector(x, self._rows, self._pivot_of, True)
            return NotInSpan(self._to_keys(x))
        return Certificate(self._expand(mults))

    def normal_form(self, vec):
        """(residual, certificate) with residual supported on free keys and
        vec - residual = certificate.evaluate(generators)."""
        x = self._to_cols(vec)
        mults, _ = reduce_vector(x, self._rows, self._pivot_of, True)
        return self._to_keys(x), Certificate(self._expand(mults))

    def contains(self, vec):
        return bool(self.membership(vec))

    def check(self, cert, vec):
        """Independent re-check of a certificate against the stored generators."""
        return cert.evaluate(self.generators) == clean(vec)


def reduce(rows, order):
    """Echelon span of ``rows`` with columns eliminated in ``order``."""
    return SubspaceSpan(order, rows)


def membership(x, span):
    return span.membership(x)


def intersect_with_window(span, window):
    """Reduced basis of the vectors in ``span`` supported inside ``window``.

    ``window`` is a predicate on basis keys.  Out-of-window keys are moved to
    the front of the elimination order; rows whose pivot lands in the window
    then carry no out-of-window support.  The result lives on the in-window
    keys, with the surviving rows as its generators.
    """
    inside = [window(k) for k in span.ambient]
    first_in = next((i for i, f in enumerate(inside) if f), len(inside))
    if all(inside[first_in:]):
        base = span
    else:
        order = [k for k, f in zip(span.ambient, inside) if not f]
        order += [k for k, f in zip(span.ambient, inside) if f]
        base = SubspaceSpan(order, span.rows())
    index = base.index
    keep = [r for r in base.rows() if window(base.ambient[min(index[k] for k in r)])]
    return SubspaceSpan([k for k in base.ambient if window(k)], keep)
