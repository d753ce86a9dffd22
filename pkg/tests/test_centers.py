"""Polynomial solvers, the corrected Casimir, diagonal images, slices."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cherw.centers import (HCImage, WPolyTriple, _matrix_part_image, casimir,
                           classify_findim, complete_homogeneous,
                           completion_coefficient_table, hc_project,
                           matrix_trace_invariants, plain_contraction,
                           solve_fgw, verify_casimir_hc,
                           verify_slice_identities, verify_twist_lemma,
                           weight_polynomial_value)
from cherw.cherednik import build_universal
from cherw.exact import PolyRing


def _z_coeffs(p, top):
    ring = p.ring
    zi = ring.index("z")
    out = [ring.zero() for _ in range(top + 1)]
    for exps, c in p.terms.items():
        rest = list(exps)
        d = rest[zi]
        rest[zi] = 0
        out[d] = out[d] + ring.monomial(tuple(rest), c)
    return out


# -- the difference/derivative/shift polynomial triple ------------------------


def test_rank_one_triple_matches_hand_solution():
    triple = solve_fgw(1, 1)
    z = triple.ring.var("z")
    assert triple.f == z ** 2 + z
    assert triple.g == triple.f
    assert triple.w == z + 1


def test_two_one_triple_matches_hand_solution():
    triple = solve_fgw(2, 1)
    z = triple.ring.var("z")
    assert triple.f == 3 * z ** 2 + 3 * z
    assert triple.g_coefficients() == [triple.ring.const(Fraction(3, 2)),
                                       triple.ring.one()]
    assert triple.w == z + Fraction(3, 2)


def test_universal_two_two_coefficients():
    triple = solve_fgw(2, 2)
    ring = triple.ring
    zeta0 = ring.var("zeta(0)")
    assert triple.w_coefficients() == [zeta0 + Fraction(1, 2),
                                       ring.const(2), ring.one()]
    assert triple.g_coefficients() == [zeta0 + 1, ring.const(2), ring.one()]


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_leading_coefficients_and_degrees(n, m):
    triple = solve_fgw(n, m)
    ws = triple.w_coefficients()
    assert ws[m] == triple.ring.one()
    assert ws[m - 1] == triple.ring.const(Fraction(n + m, 2))
    zi = triple.ring.index("z")
    assert max(e[zi] for e in triple.f.terms) == m + 1
    assert max(e[zi] for e in triple.w.terms) == m
    assert all(e[zi] > 0 for e in triple.f.terms)


def test_scalar_deformation_path():
    triple = solve_fgw(1, 2, zeta=(Fraction(5),))
    sym = solve_fgw(1, 2)
    sub = {"zeta(0)": triple.ring.const(5)}
    assert sym.w.subs(sub, ring=triple.ring) == triple.w


def test_wrong_deformation_length_rejected():
    with pytest.raises(ValueError):
        solve_fgw(1, 3, zeta=(Fraction(1),))


# -- complete homogeneous helper ----------------------------------------------


def test_complete_homogeneous_small_values():
    ring = PolyRing(("lam(1)", "lam(2)"))
    a, b = ring.var("lam(1)"), ring.var("lam(2)")
    assert complete_homogeneous(ring, ring.vars, 0) == ring.one()
    assert complete_homogeneous(ring, ring.vars, 2) == a ** 2 + a * b + b ** 2
    assert complete_homogeneous(ring, ring.vars, -1).is_zero()


# -- corrected contraction and its centrality ----------------------------------


def test_corrected_contraction_is_central_rank_one():
    H = build_universal("gl", 1, 2)
    p = H.presentation
    t = casimir(H)
    for g in p.generators:
        assert p.commutator(t, p.gen(g.label)).is_zero()


def test_plain_contraction_is_not_central():
    H = build_universal("gl", 1, 1)
    p = H.presentation
    t = plain_contraction(H)
    assert any(not p.commutator(t, p.gen(g.label)).is_zero()
               for g in p.generators)


def test_plain_contraction_has_zero_matrix_part():
    H = build_universal("gl", 1, 1)
    assert _matrix_part_image(H, plain_contraction(H)).is_zero()


def test_matrix_part_image_rejects_unbalanced_words():
    H = build_universal("gl", 1, 1)
    with pytest.raises(ValueError):
        _matrix_part_image(H, H.y(1))


# -- diagonal images ------------------------------------------------------------


def test_first_invariant_projects_to_power_sum():
    H = build_universal("gl", 2, 1)
    inv = matrix_trace_invariants(H, 1)[0]
    img = hc_project(inv)
    lam = ("lam(1)", "lam(2)")
    assert img.value == complete_homogeneous(img.ring, lam, 1)


def test_second_invariant_picks_up_constant_shift():
    H = build_universal("gl", 2, 1)
    inv = matrix_trace_invariants(H, 2)[1]
    img = hc_project(inv)
    lam = ("lam(1)", "lam(2)")
    expected = (complete_homogeneous(img.ring, lam, 2)
                + img.ring.const(Fraction(-1, 4)))
    assert img.value == expected


def test_diagonal_image_multiplicative_on_central_pairs():
    H = build_universal("gl", 2, 1)
    inv1, inv2 = matrix_trace_invariants(H, 2)
    lhs = hc_project(inv1 * inv2)
    rhs = hc_project(inv1).value * hc_project(inv2).value
    assert lhs.value == rhs


def test_diagonal_image_rejects_noncentral_input():
    H = build_universal("gl", 2, 1)
    with pytest.raises(ValueError):
        hc_project(H.presentation.gen("E(1,2)"))


def test_diagonal_image_rejects_vector_letters():
    H = build_universal("gl", 1, 1)
    with pytest.raises(ValueError):
        hc_project(H.y(1))


def _entry(report, identity):
    match = [e for e in report.entries if e.identity == identity]
    assert len(match) == 1, identity
    return match[0]


def test_casimir_report_rank_one_all_pass():
    rep = verify_casimir_hc(1, 2)
    assert rep.ok
    assert len(rep.entries) == 9


def test_casimir_report_rank_two_surfaces_constant_shift():
    rep = verify_casimir_hc(2, 1)
    assert not rep.ok
    strict = _entry(rep, "harish-chandra-image-matches-weight-polynomial")
    assert strict.status == "fail"
    assert strict.witness == "difference -1/4"
    assert _entry(rep, "difference-is-a-central-scalar").status == "pass"
    accounted = _entry(rep, "difference-accounted-by-invariant-normalization")
    assert accounted.status == "pass"
    assert "degree 2: -1/4" in accounted.witness


def test_casimir_report_rank_two_length_two_difference():
    rep = verify_casimir_hc(2, 2)
    strict = _entry(rep, "harish-chandra-image-matches-weight-polynomial")
    assert strict.status == "fail"
    assert strict.witness == "difference -1/2"
    assert _entry(rep, "corrupted-weight-rejected").status == "pass"


# -- slice identities -----------------------------------------------------------


def test_slice_report_small_block_passes():
    rep = verify_slice_identities("gl", 1, 2)
    assert rep.ok
    names = {e.identity for e in rep.entries}
    assert "corner-minor-expansion" in names
    assert "corner-minor-expansion-in-pairing-coordinates" in names
    assert _entry(rep, "newton-trace-numeric-spot").status == "pass"


def test_slice_report_two_by_two_block_passes():
    assert verify_slice_identities("gl", 2, 2).ok


def test_slice_rejects_trivial_block():
    with pytest.raises(ValueError):
        verify_slice_identities("gl", 2, 1)


def test_symplectic_slice_rank_one_passes_verbatim():
    rep = verify_slice_identities("sp", 1, 1)
    assert rep.ok
    assert _entry(rep, "corner-minor-expansion-symplectic").status == "pass"


def test_symplectic_slice_rank_two_needs_alternating_sign():
    rep = verify_slice_identities("sp", 2, 1)
    assert not rep.ok
    verbatim = _entry(rep, "corner-minor-expansion-symplectic")
    assert verbatim.status == "fail"
    assert "(-1)^(n+1)/4" in verbatim.witness
    oriented = _entry(rep, "corner-minor-expansion-symplectic-oriented")
    assert oriented.status == "pass"
    assert "-1/4" in oriented.witness


# -- shifted complete-homogeneous expansion -------------------------------------


def test_twist_rank_two_degree_two_oracle():
    ring = PolyRing(("lam(1)", "lam(2)", "delta"))
    lam = ("lam(1)", "lam(2)")
    delta = ring.var("delta")
    shift = {name: ring.var(name) + delta for name in lam}
    lhs = complete_homogeneous(ring, lam, 2).subs(shift, ring=ring)
    h2 = complete_homogeneous(ring, lam, 2)
    h1 = complete_homogeneous(ring, lam, 1)
    assert lhs == h2 + 3 * h1 * delta + 3 * delta ** 2


def test_twist_report_passes():
    rep = verify_twist_lemma(2, 3)
    assert rep.ok
    assert len(rep.entries) == 4


@st.composite
def _shift_instances(draw):
    n = draw(st.integers(min_value=1, max_value=3))
    i = draw(st.integers(min_value=1, max_value=4))
    nums = st.integers(min_value=-6, max_value=6)
    dens = st.integers(min_value=1, max_value=4)
    values = [Fraction(draw(nums), draw(dens)) for _ in range(n)]
    delta = Fraction(draw(nums), draw(dens))
    return n, i, values, delta


@given(_shift_instances())
@settings(max_examples=30, deadline=None)
def test_numeric_shift_expansion(instance):
    from math import comb

    from cherw.centers import _h_value

    n, i, values, delta = instance
    lhs = _h_value([v + delta for v in values], i)
    rhs = sum(comb(n + i - 1, j) * _h_value(values, i - j) * delta ** j
              for j in range(i + 1))
    assert lhs == rhs


# -- finite-dimensionality classification ---------------------------------------


def test_classification_hand_oracle():
    assert weight_polynomial_value(1, 1, (), (Fraction(1),)) == 2
    assert weight_polynomial_value(1, 1, (), (Fraction(-2),)) == 2
    assert classify_findim(1, 1, (), (Fraction(1),)) == (3, (Fraction(-2),))


def test_classification_double_root_returns_none():
    assert classify_findim(1, 1, (), (Fraction(-1, 2),)) is None


def test_classification_rank_two_oracle():
    lam = (Fraction(1, 2), Fraction(-1, 2))
    assert classify_findim(2, 1, (), lam) == (1, (Fraction(-3, 2),))


def test_classification_rejects_non_dominant():
    with pytest.raises(ValueError):
        classify_findim(2, 1, (), (Fraction(0), Fraction(0)))
    with pytest.raises(ValueError):
        classify_findim(2, 1, (), (Fraction(1, 2), Fraction(0)))


def test_classification_round_trip_family():
    for k in range(1, 21):
        lam = Fraction(k - 1, 2)
        got = classify_findim(1, 1, (), (lam,))
        assert got == (k, (lam - k,))


def test_classification_completion_solves_defining_equation():
    lam = (Fraction(1, 2), Fraction(-1, 2))
    zeta = (Fraction(0),)
    got = classify_findim(2, 2, zeta, lam)
    assert got == (1, (Fraction(-1, 2), Fraction(-3, 2)))
    k, completion = got
    target = weight_polynomial_value(2, 2, zeta, lam)
    assert weight_polynomial_value(2, 2, zeta, (lam[0], lam[1] - k)) == target
    for nu in completion:
        assert weight_polynomial_value(2, 2, zeta, (lam[0], nu)) == target


# -- formal completion coefficients ---------------------------------------------


def test_completion_table_binomial_spot():
    from math import comb

    table = completion_coefficient_table(2, 3)
    assert sorted(table) == [0, 1]
    ring = table[0].ring
    s = ring.var("s")
    expected = sum((s ** (3 - j) * comb(5 - j, 3 - j)) * ring.var(f"S({j})")
                   for j in range(4))
    assert table[0] == expected
