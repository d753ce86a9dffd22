"""Bracket laws, distinguished central elements, and the residue corrections."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cherw.exact import Poly
from cherw.pairings import DeformationParam
from cherw.poisson import (CentralCandidate, build_context, c_series,
                           central_candidate, poisson_bracket,
                           _jacobi_defect, _residue_coefficients, tau,
                           top_symbol, verify_central, verify_freeness,
                           verify_gr_compatibility, verify_poisson_center)


def _mono(ctx, spec, coeff=1):
    out = ctx.ring.const(coeff)
    for name, e in spec.items():
        out = out * ctx.ring.var(name) ** e
    return out


def test_rank_one_vector_bracket():
    ctx = build_context("gl", 1, 2)
    expected = (3 * ctx.ring.var("a(1,1)") ** 2 + ctx.ring.var("zeta(0)"))
    assert poisson_bracket(ctx, ctx.y(1), ctx.x(1)) == expected


def test_bracket_is_alternating_and_antisymmetric():
    ctx = build_context("gl", 2, 1)
    f = _mono(ctx, {"a(1,2)": 1, "y(1)": 2}) + _mono(ctx, {"x(2)": 1})
    g = _mono(ctx, {"a(2,1)": 1, "x(1)": 1}, 3)
    assert poisson_bracket(ctx, f, f).is_zero()
    assert poisson_bracket(ctx, f, g) == -poisson_bracket(ctx, g, f)


def test_bracket_satisfies_leibniz():
    ctx = build_context("gl", 2, 1)
    f = _mono(ctx, {"a(1,1)": 1, "y(2)": 1})
    g = _mono(ctx, {"x(1)": 1}) + _mono(ctx, {"a(2,2)": 2})
    h = _mono(ctx, {"y(1)": 1, "x(2)": 1})
    assert (poisson_bracket(ctx, f * g, h)
            == f * poisson_bracket(ctx, g, h) + g * poisson_bracket(ctx, f, h))


def test_matrix_rows_follow_the_action():
    ctx = build_context("gl", 2, 1)
    e12 = ctx.matrix_element("E(1,2)")
    assert poisson_bracket(ctx, e12, ctx.y(2)) == ctx.y(1)
    assert poisson_bracket(ctx, e12, ctx.y(1)).is_zero()
    assert poisson_bracket(ctx, e12, ctx.x(1)) == -ctx.x(2)
    assert poisson_bracket(ctx, e12, ctx.x(2)).is_zero()


def test_jacobi_holds_and_detector_sees_corruption():
    ctx = build_context("sp", 1, 1)
    assert _jacobi_defect(ctx) is None
    ctx.brackets[("c(1,1)", "y(1)")] = (
        ctx.brackets[("c(1,1)", "y(1)")] + ctx.y(2))
    assert _jacobi_defect(ctx) is not None


def test_tau_gl_values():
    ctx1 = build_context("gl", 1, 2)
    assert tau(ctx1, 1) == ctx1.y(1) * ctx1.x(1)
    ctx = build_context("gl", 2, 2)
    y1, y2, x1, x2 = ctx.y(1), ctx.y(2), ctx.x(1), ctx.x(2)
    a = {name: ctx.ring.var(name) for name in
         ("a(1,1)", "a(1,2)", "a(2,1)", "a(2,2)")}
    assert tau(ctx, 1) == x1 * y1 + x2 * y2
    expected2 = (x1 * (a["a(2,2)"] * y1 - a["a(2,1)"] * y2)
                 + x2 * (a["a(1,1)"] * y2 - a["a(1,2)"] * y1))
    assert tau(ctx, 2) == expected2
    with pytest.raises(ValueError):
        tau(ctx, 3)


def test_tau_sp_rank_one():
    ctx = build_context("sp", 1, 1)
    c11, c12, c21 = (ctx.ring.var(v) for v in ("c(1,1)", "c(1,2)", "c(2,1)"))
    expected = (-2 * c11 * ctx.y(1) * ctx.y(2)
                + 2 * c12 * ctx.y(1) ** 2 - 2 * c21 * ctx.y(2) ** 2)
    assert tau(ctx, 1) == expected


def test_c_series_gl_rank_one():
    ctx = build_context("gl", 1, 2)
    a, z0 = ctx.ring.var("a(1,1)"), ctx.ring.var("zeta(0)")
    assert c_series(ctx) == [a ** 3 + z0 * a]
    ctx1 = build_context("gl", 1, 1)
    assert c_series(ctx1) == [ctx1.ring.var("a(1,1)") ** 2]


def test_c_series_sp_rank_one():
    ctx = build_context("sp", 1, 1)
    c11, c12, c21, z0 = (ctx.ring.var(v) for v in
                         ("c(1,1)", "c(1,2)", "c(2,1)", "zeta(0)"))
    disc = c11 ** 2 + 4 * c12 * c21
    assert c_series(ctx) == [-2 * disc ** 2 - 2 * z0 * disc]


def test_residue_outer_region_has_no_constant_term():
    ctx = build_context("gl", 2, 2)
    res = _residue_coefficients(ctx, ctx.zeta, "outer")
    assert all(r >= 1 for r in res)
    assert max(res) <= ctx.n


def test_inner_region_rejected():
    ctx = build_context("gl", 1, 2)
    with pytest.raises(ValueError, match="residue convention mismatch"):
        c_series(ctx, region="inner")


def test_mismatched_deformation_param_rejected():
    ctx = build_context("gl", 1, 2)
    with pytest.raises(ValueError, match="does not match"):
        c_series(ctx, zeta=DeformationParam.universal("gl", 1, 3))


def test_corrected_elements_central_uncorrected_not():
    ctx = build_context("gl", 2, 2)
    cs = c_series(ctx)
    for k in (1, 2):
        cand = central_candidate(ctx, k, cs)
        assert cand.sum == cand.tau_k + cand.c_k
        assert verify_central(ctx, cand.sum, name=f"tau_{k}+c_{k}").ok
    bare = verify_central(ctx, tau(ctx, 1), name="tau_1")
    assert not bare.ok
    assert "nonzero bracket" in bare.entries[0].witness


def test_full_suites_pass():
    for kind, n, m in [("gl", 1, 3), ("gl", 2, 2), ("sp", 1, 2)]:
        rep = verify_poisson_center(kind, n, m)
        assert rep.ok, rep.to_json()
        assert rep.params["residue_region"] == "outer"
        idents = [e.identity for e in rep.entries]
        assert "generator-jacobi" in idents
        assert "uncorrected-tau-not-central" in idents


def test_freeness_rank():
    assert verify_freeness(build_context("gl", 2, 2)).ok
    assert verify_freeness(build_context("sp", 1, 2)).ok


def test_gr_compatibility():
    for args in [("gl", 1, 2), ("gl", 2, 1), ("sp", 1, 1)]:
        assert verify_gr_compatibility(*args).ok


def test_top_symbol_of_commutator_matches_bracket():
    from cherw.cherednik import build_universal
    H = build_universal("gl", 1, 2)
    ctx = build_context("gl", 1, 2)
    p = H.presentation
    comm = p.commutator(H.y(1), H.x(1))
    assert top_symbol(ctx, p, comm) == poisson_bracket(ctx, ctx.y(1), ctx.x(1))


_CTX = None


def _shared_ctx():
    global _CTX
    if _CTX is None:
        _CTX = build_context("gl", 1, 2)
    return _CTX


@st.composite
def small_polys(draw):
    ctx = _shared_ctx()
    out = ctx.ring.zero()
    for _ in range(draw(st.integers(0, 2))):
        exps = tuple(draw(st.integers(0, 2)) for _ in ctx.ring.vars)
        out = out + ctx.ring.monomial(exps, Fraction(draw(st.integers(-3, 3))))
    return out


@settings(max_examples=40, deadline=None)
@given(small_polys(), small_polys(), small_polys())
def test_jacobi_on_random_polynomials(f, g, h):
    ctx = _shared_ctx()
    total = (poisson_bracket(ctx, f, poisson_bracket(ctx, g, h))
             + poisson_bracket(ctx, g, poisson_bracket(ctx, h, f))
             + poisson_bracket(ctx, h, poisson_bracket(ctx, f, g)))
    assert total.is_zero()
