from fractions import Fraction

import pytest

from vazhu.errors import ConfigurationError
from vazhu.series import ChangeVarCoeffs
from vazhu.voa import Algebra, State, heisenberg_omega, virasoro_omega
from vazhu import changevar as cv
from vazhu.twistzhu import TwistParams

HEIS = Algebra("heis")
VIR = Algebra("vir", Fraction(1, 2))


@pytest.fixture(scope="module")
def hctx():
    return cv.BracketContext(heisenberg_omega(HEIS))


@pytest.fixture(scope="module")
def vctx():
    return cv.BracketContext(virasoro_omega(VIR))


def monos(alg, hi):
    return [m for w in range(hi + 1) for m in alg.basis(w)]


def test_tilde_omega(vctx):
    diff = dict(vctx.tilde_omega.terms)
    for k, v in vctx.omega.omega.terms.items():
        diff[k] = diff.get(k, 0) - v
    assert {k: v for k, v in diff.items() if v} == {(): Fraction(-1, 48)}


def test_translation_check(vctx, hctx):
    assert vctx.check_translation(3) and hctx.check_translation(3)


def test_bracket_vacuum_axioms(hctx, vctx):
    for ctx in (hctx, vctx):
        alg = ctx.alg
        vac = {(): Fraction(1)}
        for m in monos(alg, 4):
            vec = {m: Fraction(1)}
            for k in range(-3, 3):
                assert cv.bracket_mode_vec(alg, vac, k, vec) == (vec if k == -1 else {})
            assert cv.bracket_mode_vec(alg, vec, -1, vac) == vec
            for k in range(0, 3):
                assert cv.bracket_mode_vec(alg, vec, k, vac) == {}


def test_bracket_of_two_currents(hctx):
    # a[-1]a = a(-1)^2 1 - 1/12 1
    a = {(1,): Fraction(1)}
    assert cv.bracket_mode_vec(HEIS, a, -1, a) == {(1, 1): 1, (): Fraction(-1, 12)}


def test_exp_Lplus_examples(hctx):
    vac = State(HEIS, {(): 1})
    assert cv.exp_Lplus(vac, hctx) == vac
    a = State(HEIS, {(1,): 1})
    assert cv.exp_Lplus(a, hctx) == a
    # L(1) a(-2)1 = 2 a(-1)1 and B_1 = -1/2
    assert cv.exp_Lplus(State(HEIS, {(2,): 1}), hctx).terms == {(2,): 1, (1,): -1}


def test_exp_Lplus_inverse(hctx, vctx):
    for ctx in (hctx, vctx):
        for m in monos(ctx.alg, 6):
            s = State(ctx.alg, {m: 1})
            assert cv.exp_Lplus(cv.exp_Lplus(s, ctx, 1), ctx, -1) == s


def test_order_shortfall_is_an_error():
    ctx = cv.BracketContext(heisenberg_omega(HEIS), order=2)
    with pytest.raises(ConfigurationError):
        cv.exp_Lplus(State(HEIS, {(1, 1, 1): 1}), ctx)


def test_classic_vs_bracket_samples(hctx, vctx):
    for ctx in (hctx, vctx):
        for n in ("0", "1"):
            tw = TwistParams.parse(n, 1)
            for u in monos(ctx.alg, 3):
                for v in monos(ctx.alg, 3):
                    r = cv.verify_classic_vs_bracket(State(ctx.alg, {u: 1}), State(ctx.alg, {v: 1}), tw, ctx)
                    assert r.status == "pass", r


def test_bracket_iso_tilde_omega(vctx):
    w = vctx.tilde_omega
    res = cv.verify_bracket_iso([(w, w)], TwistParams(1, 0, 0), vctx, modes=[-1, 0, 1, 2])
    assert [r.status for r in res] == ["pass"]


def test_bracket_iso_detects_wrong_coefficients(hctx):
    B = list(hctx.coeffs.B)
    B[2] += 1
    bad = cv.BracketContext(hctx.omega, coeffs=ChangeVarCoeffs(tuple(B)))
    a = State(HEIS, {(1,): 1})
    s = State(HEIS, {(1, 1): 1})
    res = cv.verify_bracket_iso([(a, a), (s, s)], TwistParams(1, 0, 0), bad)
    assert any(r.status == "fail" for r in res)


def test_conformal_independence_identity(hctx):
    res = cv.verify_conformal_independence(hctx, hctx, TwistParams(1, 0, 0), 2, [2, 4])
    assert all(r.status in ("pass", "certificate") for r in res)
