from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from vazhu.errors import ConfigurationError, DimensionMismatch
from vazhu.exact import (Certificate, NotInSpan, SubspaceSpan, add_into, as_rational,
                         intersect_with_window, membership, reduce)

KEYS = list("abcdef")
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
vectors = st.dictionaries(st.sampled_from(KEYS), rationals, max_size=6)


def sympy_rank(vecs):
    if not vecs:
        return 0
    return sympy.Matrix([[v.get(k, 0) for k in KEYS] for v in vecs]).rank()


@given(rationals)
def test_rational_string_round_trip(x):
    assert as_rational(str(x)) == x


def test_as_rational_rejects_floats():
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_add_into_drops_zeros():
    acc = {"a": Fraction(1)}
    add_into(acc, {"a": 1, "b": 2}, -1)
    assert acc == {"b": Fraction(-2)}


@given(st.lists(vectors, max_size=6))
def test_rank_matches_sympy(vecs):
    assert reduce(vecs, KEYS).rank == sympy_rank(vecs)


@given(st.lists(vectors, max_size=5), vectors)
def test_membership_iff_rank_unchanged(vecs, x):
    span = SubspaceSpan(KEYS, vecs)
    res = membership(x, span)
    assert bool(res) == (sympy_rank(vecs + [x]) == sympy_rank(vecs))
    if res:
        assert res.evaluate(span.generators) == {k: v for k, v in x.items() if v}
        assert span.check(res, x)
    else:
        assert isinstance(res, NotInSpan) and res.residual


@given(st.lists(vectors, max_size=5), vectors)
def test_normal_form_is_supported_on_free_keys(vecs, x):
    span = SubspaceSpan(KEYS, vecs)
    nf, cert = span.normal_form(x)
    assert set(nf) <= set(span.free_keys())
    lhs = dict(x)
    add_into(lhs, nf, -1)
    assert cert.evaluate(span.generators) == {k: v for k, v in lhs.items() if v}


@given(st.lists(vectors, max_size=5))
def test_window_extremes(vecs):
    span = SubspaceSpan(KEYS, vecs)
    assert intersect_with_window(span, lambda k: True).rank == span.rank
    assert intersect_with_window(span, lambda k: False).rank == 0


@given(st.lists(vectors, max_size=5), st.sets(st.sampled_from(KEYS)))
def test_window_basis_lies_in_span_and_window(vecs, win):
    span = SubspaceSpan(KEYS, vecs)
    sub = intersect_with_window(span, lambda k: k in win)
    for row in sub.rows():
        assert set(row) <= win
        assert span.contains(row)
    # dimension oracle: rank(span) - rank(projection onto the complement)
    outside = [{k: v for k, v in r.items() if k not in win} for r in span.rows()]
    assert sub.rank == span.rank - sympy_rank(outside)


def test_duplicate_keys_rejected():
    with pytest.raises(ConfigurationError):
        SubspaceSpan(["a", "a"])


def test_key_outside_ambient():
    span = SubspaceSpan(["a"], [{"a": 1}])
    with pytest.raises(DimensionMismatch):
        span.membership({"z": 1})


def test_certificate_small_example():
    span = SubspaceSpan("abc", [{"a": 1, "b": 1}, {"b": 1, "c": 1}])
    cert = span.membership({"a": 1, "c": -1})
    assert isinstance(cert, Certificate)
    assert cert.coefficients == {0: 1, 1: -1}
    assert not span.membership({"a": 1})


def test_rref_is_reduced():
    span = SubspaceSpan("abc", [{"a": 1, "b": 2, "c": 3}, {"b": 1, "c": 1}])
    assert span.rref() == [{"a": 1, "c": 1}, {"b": 1, "c": 1}]
