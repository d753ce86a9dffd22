"""Built-algebra checks: relations, gradings, diamond consistency."""

from fractions import Fraction

import pytest

from cherw.cherednik import (CherednikAlgebra, build_universal,
                             filtration_degree, specialize)
from cherw.pbw import presentation_to_jsonable


def test_rank_one_length_two_bracket():
    H = build_universal("gl", 1, 2)
    p = H.presentation
    got = p.commutator(H.y(1), H.x(1))
    zeta0 = p.ring.var("zeta(0)")
    expected = p.scalar(zeta0) + p.gen("E(1,1)") ** 2 * 3
    assert got == expected


def test_identity_acts_by_degree():
    for n, m in ((2, 1), (2, 2)):
        H = build_universal("gl", n, m)
        p = H.presentation
        ident = p.zero()
        for t in range(1, n + 1):
            ident = ident + p.gen(f"E({t},{t})")
        for i in range(1, n + 1):
            assert p.commutator(ident, H.y(i)) == H.y(i)
            assert p.commutator(ident, H.x(i)) == -H.x(i)


def test_matrix_action_structure():
    H = build_universal("gl", 2, 1)
    p = H.presentation
    # [E_kl, y_i] = delta_li y_k and [E_kl, x_i] = -delta_ki x_l.
    assert p.commutator(p.gen("E(1,2)"), H.y(2)) == H.y(1)
    assert p.commutator(p.gen("E(1,2)"), H.y(1)).is_zero()
    assert p.commutator(p.gen("E(1,2)"), H.x(1)) == -H.x(2)
    assert p.commutator(p.gen("E(1,2)"), H.x(2)).is_zero()


def test_vector_generators_commute_within_family():
    H = build_universal("gl", 2, 2)
    p = H.presentation
    assert p.commutator(H.y(1), H.y(2)).is_zero()
    assert p.commutator(H.x(1), H.x(2)).is_zero()


def test_sp_weyl_structure_at_length_zero():
    H = build_universal("sp", 1, 0)
    p = H.presentation
    assert p.commutator(H.y(1), H.y(2)) == p.one()


def test_sp_length_one_bracket_shape():
    H = build_universal("sp", 1, 1)
    p = H.presentation
    got = p.commutator(H.y(1), H.y(2))
    zeta0 = p.scalar(p.ring.var("zeta(0)"))
    r2 = got - zeta0
    assert filtration_degree(H, zeta0) == 4
    assert p.degree(r2) == 4
    assert not r2.is_zero()


def test_filtration_degrees():
    H = build_universal("gl", 1, 2)
    p = H.presentation
    assert filtration_degree(H, H.y(1) * H.x(1)) == 2 * (2 + 1)
    assert filtration_degree(H, p.scalar(p.ring.var("zeta(0)"))) == 4
    assert filtration_degree(H, p.gen("E(1,1)")) == 2


def test_consistency_universal_small():
    for kind, n, m in (("gl", 1, 2), ("gl", 2, 1), ("sp", 1, 1)):
        H = build_universal(kind, n, m)
        report = H.consistency_check()
        assert report.ok, (kind, n, m, report.to_json())


def test_specialize_and_consistency():
    H = build_universal("gl", 1, 2)
    Hc = specialize(H, [Fraction(5)])
    p = Hc.presentation
    got = p.commutator(Hc.y(1), Hc.x(1))
    expected = p.scalar(Fraction(5)) + p.gen("E(1,1)") ** 2 * 3
    assert got == expected
    assert Hc.consistency_check().ok


def test_specialize_length_mismatch():
    H = build_universal("gl", 1, 2)
    with pytest.raises(ValueError, match="length mismatch"):
        specialize(H, [Fraction(1), Fraction(2)])


def test_specialize_all_zero_keeps_top():
    H = build_universal("gl", 2, 2)
    Hc = specialize(H, [Fraction(0)])
    p = Hc.presentation
    got = p.commutator(Hc.y(1), Hc.x(1))
    assert p.degree(got) == 4
    assert got.constant().is_zero()


def test_rank_one_length_one_closes_as_lie_algebra():
    H = build_universal("gl", 1, 1)
    p = H.presentation
    e11, y, x = p.gen("E(1,1)"), H.y(1), H.x(1)
    span = {"E": e11, "y": y, "x": x, "1": p.one()}
    # The bracket of any two span members stays inside the span.
    combos = {
        ("E", "y"): {"y": Fraction(1)},
        ("E", "x"): {"x": Fraction(-1)},
        ("y", "x"): {"E": Fraction(2)},
    }
    for (a, b), expect in combos.items():
        got = p.commutator(span[a], span[b])
        want = p.zero()
        for name, coeff in expect.items():
            want = want + span[name] * coeff
        assert got == want, (a, b)


def test_x_accessor_guard():
    H = build_universal("sp", 1, 1)
    with pytest.raises(ValueError):
        H.x(1)


def test_rewrite_table_serializes():
    H = build_universal("gl", 1, 1)
    data = presentation_to_jsonable(H.presentation)
    labels = [g[0] for g in data["generators"]]
    assert labels == ["E(1,1)", "y(1)", "x(1)"]
    assert any(pair[:2] == ["x(1)", "y(1)"] for pair in data["rewrite"])
