"""Straightening-engine checks against hand-computed normal forms."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cherw.exact import PolyRing
from cherw.liedata import build_lie
from cherw.pbw import (Generator, PBWPresentation, commutator,
                       consistency_check, element_from_jsonable,
                       element_to_jsonable, normal_order,
                       presentation_from_jsonable, presentation_to_jsonable,
                       symmetrize)


def enveloping_gl(n: int, extra_vars: tuple[str, ...] = (),
                  weights: dict[str, int] | None = None) -> PBWPresentation:
    lie = build_lie("gl", n)
    ring = PolyRing(tuple(extra_vars))
    gens = [Generator(label, 2) for label in lie.basis]
    p = PBWPresentation(gens, ring, weights)
    for i, upper in enumerate(lie.basis):
        for lower in lie.basis[:i]:
            tail = lie.bracket_table[(upper, lower)]
            p.add_rewrite(upper, lower,
                          {((p.index(lbl), 1),): ring.const(c)
                           for lbl, c in tail.items()})
    return p


def weyl(n: int, invertible_last: bool = False) -> PBWPresentation:
    """Differential operators on n variables with a square deformation scalar."""
    ring = PolyRing(("hbar",))
    gens = [Generator(f"z({k})", 1,
                      invertible=(invertible_last and k == n))
            for k in range(1, n + 1)]
    gens += [Generator(f"d({k})", 1) for k in range(1, n + 1)]
    p = PBWPresentation(gens, ring, {"hbar": 1})
    hbar2 = ring.var("hbar") ** 2
    for k in range(1, n + 1):
        p.add_rewrite(f"d({k})", f"z({k})", {(): hbar2})
    return p


def test_gl2_single_swap():
    p = enveloping_gl(2)
    got = normal_order(p, ["E(2,1)", "E(1,2)"])
    expected = (p.gen("E(1,2)") * p.gen("E(2,1)")
                - p.gen("E(1,1)") + p.gen("E(2,2)"))
    assert got == expected


def test_already_ordered_is_fixed():
    p = enveloping_gl(2)
    word = ["E(1,1)", "E(1,2)", "E(1,2)", "E(2,2)"]
    elem = normal_order(p, word)
    assert list(elem.terms) == [((0, 1), (1, 2), (3, 1))]
    assert elem.terms[((0, 1), (1, 2), (3, 1))] == p.ring.one()


def test_weyl_relation():
    p = weyl(1)
    got = normal_order(p, ["d(1)", "z(1)"])
    expected = p.gen("z(1)") * p.gen("d(1)") + p.scalar(p.ring.var("hbar") ** 2)
    assert got == expected


def test_structure_constants_round_trip():
    p = enveloping_gl(2)
    lie = build_lie("gl", 2)
    for a in lie.basis:
        for b in lie.basis:
            got = commutator(p, p.gen(a), p.gen(b))
            want = p.zero()
            for lbl, c in lie.bracket_table[(a, b)].items():
                want = want + p.gen(lbl) * c
            assert got == want, (a, b)


def test_commutator_self_vanishes():
    p = enveloping_gl(2)
    u = p.gen("E(1,2)") * p.gen("E(2,1)") + p.gen("E(1,1)") * 3
    assert commutator(p, u, u).is_zero()


def test_central_generator_commutes():
    ring = PolyRing(())
    p = PBWPresentation([Generator("c", 2, central=True),
                         Generator("a", 1), Generator("b", 1)], ring)
    p.add_rewrite("b", "a", {(): ring.one()})
    c = p.gen("c")
    u = p.gen("b") * p.gen("a") * p.gen("c")
    assert commutator(p, c, u).is_zero()
    with pytest.raises(ValueError):
        p.add_rewrite("b", "c", {(): ring.one()})


def test_symmetrize_single_generator():
    p = enveloping_gl(2)
    assert symmetrize(p, {"E(2,1)": 1}) == p.gen("E(2,1)")


def test_symmetrize_two_letters():
    p = enveloping_gl(2)
    got = symmetrize(p, {"E(1,2)": 1, "E(2,1)": 1})
    expected = (p.gen("E(1,2)") * p.gen("E(2,1)")
                + (p.gen("E(2,2)") - p.gen("E(1,1)")) * Fraction(1, 2))
    assert got == expected


def test_symmetrize_top_term_reproduces_monomial():
    p = enveloping_gl(2)
    mono = {"E(1,2)": 1, "E(2,1)": 2, "E(2,2)": 1}
    got = p.symmetrize(mono)
    word = ((p.index("E(1,2)"), 1), (p.index("E(2,1)"), 2),
            (p.index("E(2,2)"), 1))
    top = p.top_terms(got)
    assert top == {word: p.ring.one()}


def test_symmetrize_degree_cap():
    p = enveloping_gl(2)
    with pytest.raises(ValueError, match="symmetrization degree cap"):
        p.symmetrize({"E(1,1)": 9})


def test_product_filtration_bound():
    p = enveloping_gl(2)
    a = p.gen("E(2,1)") * p.gen("E(2,2)")
    b = p.gen("E(1,2)") * p.gen("E(1,1)")
    ab = a * b
    assert p.degree(ab) == p.degree(a) + p.degree(b)
    top = p.top_terms(ab)
    word = ((0, 1), (1, 1), (2, 1), (3, 1))
    assert top == {word: p.ring.one()}


def test_consistency_check_gl3_passes():
    p = enveloping_gl(3)
    report = p.consistency_check(through_degree=6)
    assert report.ok
    entry = report.entries[0]
    assert entry.witness["triples_checked"] == 9 * 8 * 7 // 6


def test_consistency_check_catches_corruption():
    lie = build_lie("gl", 2)
    ring = PolyRing(())
    gens = [Generator(label, 2) for label in lie.basis]
    p = PBWPresentation(gens, ring)
    for i, upper in enumerate(lie.basis):
        for lower in lie.basis[:i]:
            tail = lie.bracket_table[(upper, lower)]
            terms = {((p.index(lbl), 1),): ring.const(c)
                     for lbl, c in tail.items()}
            if (upper, lower) == ("E(2,1)", "E(1,2)"):
                # Add a spurious off-diagonal term to the bracket.
                terms[((p.index("E(1,2)"), 1),)] = ring.one()
            p.add_rewrite(upper, lower, terms)
    report = p.consistency_check(through_degree=6)
    assert not report.ok
    assert any(e.status == "fail" for e in report.entries)


def test_inverse_generator_cancels():
    p = weyl(1, invertible_last=True)
    z, zi = p.gen("z(1)"), p.gen("z(1)", -1)
    assert z * zi == p.one()
    assert zi * z == p.one()
    assert zi * (z * z) == z


def test_inverse_generator_derived_swap():
    p = weyl(1, invertible_last=True)
    got = normal_order(p, [("d(1)", 1), ("z(1)", -1)])
    hbar2 = p.ring.var("hbar") ** 2
    expected = (p.gen("z(1)", -1) * p.gen("d(1)")
                - p.gen("z(1)", -2) * hbar2)
    assert got == expected
    # Round trip: multiply back by z(1).
    assert got * p.gen("z(1)") == p.gen("d(1)")


def test_negative_power_of_plain_generator_rejected():
    p = weyl(1)
    with pytest.raises(ValueError):
        p.gen("z(1)", -1)


def test_double_inverse_swap_rejected():
    ring = PolyRing(())
    p = PBWPresentation([Generator("a", 1, invertible=True),
                         Generator("b", 1, invertible=True)], ring)
    p.add_rewrite("b", "a", {(): ring.one()})
    with pytest.raises(ValueError, match="two inverted"):
        p.mul(p.gen("b", -1), p.gen("a", -1))


def test_rewrite_degree_bound_enforced():
    ring = PolyRing(())
    p = PBWPresentation([Generator("a", 1), Generator("b", 1)], ring)
    with pytest.raises(ValueError, match="filtration"):
        p.add_rewrite("b", "a", {((0, 1), (1, 2)): ring.one()})


def test_serialization_round_trip():
    p = enveloping_gl(2, extra_vars=("t",), weights={"t": 1})
    data = presentation_to_jsonable(p)
    q = presentation_from_jsonable(data)
    assert presentation_to_jsonable(q) == data
    elem = (p.gen("E(2,1)") * p.gen("E(1,2)")
            + p.gen("E(1,1)") * p.ring.var("t"))
    packed = element_to_jsonable(elem)
    back = element_from_jsonable(q, packed)
    assert element_to_jsonable(back) == packed


def test_power_matches_repeated_product():
    p = enveloping_gl(2)
    u = p.gen("E(2,1)") + p.gen("E(1,2)")
    assert u ** 3 == u * u * u
    assert u ** 0 == p.one()


LABELS2 = ["E(1,1)", "E(1,2)", "E(2,1)", "E(2,2)"]


@st.composite
def gl2_elements(draw):
    p = ALG2
    n_terms = draw(st.integers(0, 3))
    acc = p.zero()
    for _ in range(n_terms):
        word = draw(st.lists(st.sampled_from(LABELS2), min_size=0, max_size=3))
        coeff = draw(st.integers(-3, 3))
        acc = acc + p.from_labels(word) * coeff
    return acc


ALG2 = enveloping_gl(2)


@settings(max_examples=40, deadline=None)
@given(gl2_elements(), gl2_elements(), gl2_elements())
def test_associativity_random(a, b, c):
    assert (a * b) * c == a * (b * c)


@settings(max_examples=40, deadline=None)
@given(gl2_elements(), gl2_elements())
def test_commutator_antisymmetry_random(a, b):
    p = ALG2
    assert commutator(p, a, b) == -commutator(p, b, a)


@settings(max_examples=30, deadline=None)
@given(gl2_elements(), gl2_elements())
def test_degree_subadditive_random(a, b):
    p = ALG2
    ab = a * b
    if not (a.is_zero() or b.is_zero()):
        assert p.degree(ab) <= p.degree(a) + p.degree(b)


def test_consistency_report_serialization():
    p = enveloping_gl(2)
    report = consistency_check(p, through_degree=6, suite="u-gl2")
    data = report.to_dict()
    assert data["suite"] == "u-gl2"
    assert data["summary"]["fail"] == 0
