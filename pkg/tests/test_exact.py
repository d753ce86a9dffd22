"""Tests for the exact arithmetic substrate.

Expected values below were computed by hand and frozen; every comparison is
exact.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cherw.exact import (
    LinearSolveError,
    Poly,
    PolyRing,
    PrecisionError,
    TruncSeries,
    mat_identity,
    mat_mul,
    mat_trace,
    nullspace,
    rank,
    scalar_from_str,
    scalar_to_str,
    solve_linear,
)

R = PolyRing.make("a", "b")
A = R.var("a")
B = R.var("b")


# -- scalars -----------------------------------------------------------------


def test_scalar_string_round_trip():
    for text in ["3/4", "-7", "0", "22/7", "-5/9"]:
        assert scalar_to_str(scalar_from_str(text)) == text
    assert scalar_to_str(Fraction(6, 4)) == "3/2"
    assert scalar_from_str(" 1/3 ") == Fraction(1, 3)


# -- polynomial basics --------------------------------------------------------


def test_ring_construction_rejects_duplicates():
    with pytest.raises(ValueError):
        PolyRing.make("x", "x")


def test_constant_and_var():
    five = R.const(5)
    assert five.is_constant()
    assert five.constant_value() == 5
    assert not A.is_constant()
    assert A.degree() == 1
    assert R.zero().degree() == -1
    assert R.zero().is_zero()


def test_binomial_square():
    p = (A + B) ** 2
    assert p == A * A + 2 * A * B + B * B
    assert p.coefficient((1, 1)) == 2


def test_arithmetic_with_scalars():
    p = 2 * A + 3
    assert p - 3 == A + A
    assert (p * Fraction(1, 2)).coefficient((1, 0)) == 1
    assert (1 - A) + (A - 1) == 0
    assert (A / 2) == A.scale(Fraction(1, 2))


def test_canonical_str_grlex_descending():
    p = R.const(Fraction(3, 2)) * A * A * B - A + 5
    assert p.canonical_str() == "3/2*a^2*b - a + 5"
    assert str(R.zero()) == "0"
    assert str(-A) == "-a"
    assert str(A * A - B * B) == "a^2 - b^2"


def test_diff():
    p = A ** 3 * B
    assert p.diff("a") == 3 * A ** 2 * B
    assert p.diff("b") == A ** 3
    assert A.diff("b").is_zero()


def test_subs_polynomial():
    p = A ** 2 + B
    q = p.subs({"a": B + 1})
    assert q == B ** 2 + 3 * B + 1


def test_subs_scalar_and_target_ring():
    big = PolyRing.make("a", "b", "c")
    p = A * B + A
    q = p.subs({"b": 2}, ring=big)
    assert q == big.var("a") * 3
    r = p.subs({"a": big.var("c")}, ring=big)
    assert r == big.var("c") * big.var("b") + big.var("c")


def test_cast_reorders_and_extends():
    big = PolyRing.make("b", "a", "c")
    p = A ** 2 + 2 * B
    q = p.cast(big)
    assert q == big.var("a") ** 2 + 2 * big.var("b")
    with pytest.raises(ValueError):
        (big.var("c") + 1).cast(R)


def test_eval():
    p = A ** 2 * B - Fraction(1, 2)
    assert p.eval({"a": 2, "b": Fraction(1, 4)}) == Fraction(1, 2)
    with pytest.raises(KeyError):
        p.eval({"a": 1})


def test_univariate_coeffs():
    lam = PolyRing.make("lam", "mu")
    z = lam.var("lam")
    p = 2 * z ** 3 - z + 5
    assert p.univariate_coeffs("lam") == [5, -1, 0, 2]
    with pytest.raises(ValueError):
        (p + lam.var("mu")).univariate_coeffs("lam")


def test_degrees_and_components():
    p = A ** 2 * B + A * B + 1
    assert p.degree() == 3
    assert p.degree("a") == 2
    assert p.weighted_degree({"a": 2, "b": 3}) == 7
    assert p.homogeneous_component(2) == A * B
    assert p.homogeneous_component(7, {"a": 2, "b": 3}) == A ** 2 * B
    assert p.variables() == {"a", "b"}


def test_ring_mismatch_rejected():
    other = PolyRing.make("x")
    with pytest.raises(ValueError):
        A + other.var("x")


# -- polynomial laws (property tests) ----------------------------------------

small_fractions = st.fractions(
    min_value=-4, max_value=4, max_denominator=3
)


@st.composite
def polys(draw):
    n_terms = draw(st.integers(min_value=0, max_value=4))
    terms = {}
    for _ in range(n_terms):
        exps = (
            draw(st.integers(min_value=0, max_value=3)),
            draw(st.integers(min_value=0, max_value=3)),
        )
        terms[exps] = draw(small_fractions)
    return Poly(R, terms)


@given(polys(), polys(), polys())
@settings(max_examples=60, deadline=None)
def test_ring_axioms(p, q, r):
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p + (q + r) == (p + q) + r


@given(polys(), polys(), small_fractions, small_fractions)
@settings(max_examples=60, deadline=None)
def test_eval_is_ring_homomorphism(p, q, x, y):
    point = {"a": x, "b": y}
    assert (p * q).eval(point) == p.eval(point) * q.eval(point)
    assert (p + q).eval(point) == p.eval(point) + q.eval(point)


@given(polys(), polys())
@settings(max_examples=40, deadline=None)
def test_diff_is_a_derivation(p, q):
    assert (p * q).diff("a") == p.diff("a") * q + p * q.diff("a")


# -- truncated series ---------------------------------------------------------

R0 = PolyRing.make()


def test_geometric_inverse():
    s = TruncSeries(R0, "t", {0: 1, 1: -1}, 8)
    inv = s.invert()
    assert inv.order == 8
    for k in range(8):
        assert inv.coefficient_of(k) == R0.one()
    assert s * inv == TruncSeries.constant(R0, "t", 1, 8)


def test_laurent_inverse_bookkeeping():
    # t^2 - t^3 known through t^8: inverse starts at t^-2 with order 9 - 4 = 5.
    s = TruncSeries(R0, "t", {2: 1, 3: -1}, 9)
    inv = s.invert()
    assert inv.order == 5
    assert inv.low == -2
    for k in range(-2, 5):
        assert inv.coefficient_of(k) == R0.one()


def test_inverse_requires_constant_unit():
    ring = PolyRing.make("a")
    s = TruncSeries(ring, "t", {0: ring.var("a")}, 4)
    with pytest.raises(ValueError):
        s.invert()
    with pytest.raises(ValueError):
        TruncSeries(ring, "t", {}, 4).invert()


def test_mul_precision_window():
    a = TruncSeries(R0, "t", {1: 1}, 4)
    b = TruncSeries(R0, "t", {0: 1, 1: 1}, 3)
    prod = a * b
    assert prod.order == 4
    assert prod.coefficient_of(1) == R0.one()
    assert prod.coefficient_of(2) == R0.one()
    assert prod.coefficient_of(3) == R0.zero()


def test_coefficient_beyond_precision_raises():
    s = TruncSeries(R0, "t", {0: 1}, 3)
    with pytest.raises(PrecisionError):
        s.coefficient_of(3)
    assert s.coefficient_of(-5) == R0.zero()
    with pytest.raises(PrecisionError):
        s.truncate(5)


def test_series_with_poly_coefficients():
    ring = PolyRing.make("a")
    a = ring.var("a")
    s = TruncSeries(ring, "t", {0: 1, 1: -a}, 6)
    inv = s.invert()
    for k in range(6):
        assert inv.coefficient_of(k) == a ** k
    assert (s * a).coefficient_of(1) == -(a ** 2)


def test_series_shift_pow_and_str():
    s = TruncSeries.gen(R0, "t", 5)
    assert (s ** 2).coefficient_of(2) == R0.one()
    assert s.shift(-1).low == 0
    assert "O(t^5)" in str(s)
    with pytest.raises(ValueError):
        TruncSeries(R0, "t", {5: 1}, 4)
    with pytest.raises(ValueError):
        TruncSeries(PolyRing.make("t"), "t", {}, 3)


# -- linear algebra -----------------------------------------------------------


def test_solve_2x2():
    x = solve_linear([[2, 1], [1, 3]], [Fraction(5), Fraction(10)])
    assert x == [1, 3]


def test_solve_overdetermined_consistent():
    x = solve_linear([[1, 0], [0, 1], [1, 1]], [2, 3, 5])
    assert x == [2, 3]


def test_solve_inconsistent_raises():
    with pytest.raises(LinearSolveError) as err:
        solve_linear([[1, 0], [0, 1], [1, 1]], [2, 3, 6])
    assert err.value.kind == "inconsistent"
    assert err.value.rank == 2


def test_solve_underdetermined():
    with pytest.raises(LinearSolveError) as err:
        solve_linear([[1, 1]], [2])
    assert err.value.kind == "underdetermined"
    x = solve_linear([[1, 1]], [2], require_unique=False)
    assert x == [2, 0]


def test_solve_with_poly_rhs():
    x = solve_linear([[1, 1], [0, 1]], [A, B])
    assert x[0] == A - B
    assert x[1] == B


def test_rank_and_nullspace():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1]]) == 2
    basis = nullspace([[1, 1, 0], [0, 0, 1]])
    assert basis == [[-1, 1, 0]]
    assert nullspace([[0, 0]], width=2) == [[1, 0], [0, 1]]


@given(
    st.lists(
        st.lists(st.integers(min_value=-5, max_value=5), min_size=3, max_size=3),
        min_size=3,
        max_size=3,
    ),
    st.lists(st.integers(min_value=-5, max_value=5), min_size=3, max_size=3),
)
@settings(max_examples=50, deadline=None)
def test_solve_recovers_known_solution(matrix, x):
    if rank(matrix) < 3:
        with pytest.raises(LinearSolveError):
            solve_linear(matrix, [Fraction(0)] * 3)
        return
    b = [sum(matrix[i][j] * x[j] for j in range(3)) for i in range(3)]
    assert solve_linear(matrix, b) == x


# -- matrix helpers -----------------------------------------------------------


def test_matrix_helpers():
    m = [[Fraction(1), Fraction(2)], [Fraction(3), Fraction(4)]]
    assert mat_mul(m, mat_identity(2)) == m
    assert mat_trace(m) == 5
    sq = mat_mul(m, m)
    assert sq == [[7, 10], [15, 22]]


def test_matrix_helpers_with_poly_entries():
    m = [[A, B], [R.zero(), A]]
    sq = mat_mul(m, m)
    assert sq[0][0] == A ** 2
    assert sq[0][1] == 2 * A * B
    assert mat_trace(m) == 2 * A
