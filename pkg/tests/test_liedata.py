"""Tests for concrete Lie algebra data.

Construction already asserts Jacobi, sl2 relations, centralizer dimensions
(against a brute-force kernel), and weights; tests here exercise frozen
hand-computed oracles and the symbolic identities.
"""

from fractions import Fraction

import pytest

from cherw.exact import PolyRing, nullspace
from cherw.liedata import (
    build_lie,
    centralizer_basis,
    char_invariants,
    det_series,
    one_block_nilpotent,
    slice_matrix,
    sp_member_defect,
)


def test_gl2_bracket():
    gl2 = build_lie("gl", 2)
    got = gl2.bracket({"E(2,1)": Fraction(1)}, {"E(1,2)": Fraction(1)})
    assert got == {"E(2,2)": 1, "E(1,1)": -1}


def test_gl_commutator_rule():
    gl3 = build_lie("gl", 3)
    # [E_ij, E_kl] = d_jk E_il - d_li E_kj
    got = gl3.bracket({"E(1,2)": Fraction(1)}, {"E(2,3)": Fraction(1)})
    assert got == {"E(1,3)": 1}
    got = gl3.bracket({"E(1,2)": Fraction(1)}, {"E(3,1)": Fraction(1)})
    assert got == {"E(3,2)": -1}


def test_sp1_is_three_dimensional_sl2():
    sp2 = build_lie("sp", 1)
    assert sp2.dim == 3
    assert set(sp2.basis) == {"U(1,1)", "U(1,2)", "U(2,1)"}
    # U(1,1) acts as the Cartan element: [U(1,1), U(1,2)] = 2 U(1,2).
    got = sp2.bracket({"U(1,1)": Fraction(1)}, {"U(1,2)": Fraction(1)})
    assert got == {"U(1,2)": 2}
    got = sp2.bracket({"U(1,2)": Fraction(1)}, {"U(2,1)": Fraction(1)})
    assert got == {"U(1,1)": 4}


def test_sl3_dimension_and_tracelessness():
    sl3 = build_lie("sl", 3)
    assert sl3.dim == 8
    for label in sl3.basis:
        mat = sl3.matrices[label]
        assert sum(mat[i][i] for i in range(3)) == 0


def test_sp_membership_condition():
    sp4 = build_lie("sp", 2)
    assert sp4.dim == 10
    for label in sp4.basis:
        assert sp_member_defect(sp4.matrices[label]) is None


def test_trace_form_symmetry():
    sp4 = build_lie("sp", 2)
    for a in sp4.basis[:4]:
        for b in sp4.basis[:4]:
            assert sp4.trace_form[(a, b)] == sp4.trace_form[(b, a)]


def test_coordinates_round_trip():
    gl2 = build_lie("gl", 2)
    m = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(-1)]]
    coords = gl2.coordinates(m)
    assert gl2.element_matrix(coords) == m
    sl2 = build_lie("sl", 2)
    with pytest.raises(ValueError):
        sl2.coordinates([[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]])


# -- one-block nilpotents ------------------------------------------------------


def test_one_block_sl_1_2():
    triple = one_block_nilpotent("sl", 1, 2)
    assert triple.e == {"E(2,3)": 1}
    assert triple.f == {"E(3,2)": 1}
    assert triple.h == {"H(2)": 1}  # E_22 - E_33


def test_one_block_sp_1_1():
    triple = one_block_nilpotent("sp", 1, 1)
    e_mat = triple.e_matrix()
    assert e_mat[1][2] == 1
    assert sum(1 for row in e_mat for x in row if x) == 1


def test_one_block_range_check():
    with pytest.raises(ValueError):
        one_block_nilpotent("sl", 1, 1)


def test_one_block_sl_2_3_relations_hold():
    # Construction asserts the sl2 relations and the Jordan type.
    triple = one_block_nilpotent("sl", 2, 3)
    assert triple.algebra.size == 5


# -- centralizers --------------------------------------------------------------


def test_centralizer_gl_2_2_dimension():
    cb = centralizer_basis("sl", 2, 2)
    assert cb.dim == 4 + 4 + 1  # gl_2 + V + V* + C^{m-1}


def test_centralizer_xi_example():
    cb = centralizer_basis("sl", 1, 3)
    xi_top = cb.xi[-1]
    assert xi_top.name == "xi(1)"
    assert xi_top.element == {"E(2,3)": 1, "E(3,4)": 1}
    assert xi_top.weight_h == 2 * 3 - 2 * 1 - 2


def test_centralizer_t_element_traceless():
    cb = centralizer_basis("sl", 2, 2)
    t_mat = cb.algebra.element_matrix(cb.t_element)
    assert sum(t_mat[i][i] for i in range(4)) == 0
    assert t_mat[0][0] == Fraction(2, 4)
    assert t_mat[3][3] == Fraction(-2, 4)


def test_centralizer_weights_gl():
    cb = centralizer_basis("sl", 2, 3)
    for entry in cb.v_plus:
        assert (entry.weight_h, entry.weight_t) == (2, 1)
    for entry in cb.v_minus:
        assert (entry.weight_h, entry.weight_t) == (2, -1)
    assert [e.weight_h for e in cb.xi] == [4, 2]


def test_centralizer_sp():
    cb = centralizer_basis("sp", 1, 1)
    assert cb.dim == 3 + 2 + 1
    assert [e.weight_t for e in cb.v_plus] == [1]
    assert [e.weight_t for e in cb.v_minus] == [-1]
    assert all(e.weight_h == 1 for e in cb.v_plus + cb.v_minus)
    cb2 = centralizer_basis("sp", 2, 1)
    assert cb2.dim == 10 + 4 + 1


# -- slices --------------------------------------------------------------------


def test_slice_gl_1_2_display():
    sm = slice_matrix("gl", 1, 2)
    ring = sm.ring
    x = ring.var("x(1,1)")
    lam = x / (-2)
    m = sm.matrix
    assert m[0][0] == x
    assert m[0][1] == ring.var("u(1)")
    assert m[0][2].is_zero()
    assert m[1][0].is_zero()
    assert m[1][1] == lam
    assert m[1][2] == ring.one()
    assert m[2][0] == ring.var("v(1)")
    assert m[2][1] == ring.var("w(1)")
    assert m[2][2] == lam


def test_slice_gl_2_2_constructs():
    # Construction asserts [X - e_m, f_m] = 0 and the display shape.
    sm = slice_matrix("gl", 2, 2)
    assert sm.size == 4
    assert len(sm.ring.vars) == 4 + 2 + 2 + 1


def test_slice_sp_1_1_free_coordinate_count():
    sm = slice_matrix("sp", 1, 1)
    # dim sp_2 + 2n + m = 3 + 2 + 1; equals the kernel of ad(f_m).
    assert len(sm.ring.vars) == 6
    alg = sm.triple.algebra
    kernel = nullspace(alg.ad_matrix(sm.triple.f), width=alg.dim)
    assert len(kernel) == 6


def test_slice_blocks():
    sm = slice_matrix("gl", 2, 2)
    x1 = sm.x1_block()
    assert x1[0][1] == sm.ring.var("x(1,2)")
    x2 = sm.x2_block()
    assert x2[0][1] == sm.ring.one()


# -- characteristic invariants ------------------------------------------------


def test_char_invariants_diag_1_2():
    mat = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(2)]]
    inv = char_invariants(mat, 3)
    assert inv.F[1].constant_value() == 3
    assert inv.F[2].constant_value() == 2
    assert inv.F[3].is_zero()
    assert inv.trS[2].constant_value() == 7
    assert inv.trLam[2].constant_value() == 2
    # Newton identity at l = 2: 7 - 9 + 2 = 0.
    assert inv.newton_defect(2).is_zero()


def test_char_invariants_slice_trace():
    sm = slice_matrix("gl", 1, 2)
    inv = char_invariants(sm, 1)
    assert inv.F[1].is_zero()  # traceless slice


@pytest.mark.parametrize("n", [1, 2, 3])
def test_newton_identity_generic(n):
    ring = PolyRing(tuple(f"a({i},{j})" for i in range(n) for j in range(n)))
    mat = [[ring.var(f"a({i},{j})") for j in range(n)] for i in range(n)]
    inv = char_invariants(mat, 4)
    for l in range(1, 5):
        assert inv.newton_defect(l).is_zero()


def test_det_series_matches_char_invariants():
    ring = PolyRing(())
    mat = [[ring.const(1), ring.const(0)], [ring.const(0), ring.const(2)]]
    series = det_series(mat, ring, "z", 4)
    assert series.coefficient_of(0) == ring.one()
    assert series.coefficient_of(1).constant_value() == 3
    assert series.coefficient_of(2).constant_value() == 2
    assert series.coefficient_of(3).is_zero()
