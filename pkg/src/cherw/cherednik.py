"""Builders for the deformed matrix-plus-vector algebras.

The universal algebra at length m deforms the semidirect product of a
matrix Lie algebra with its vector representation (plus the dual in the
gl case): vector generators no longer commute, their bracket being the
coefficient-weighted sum of symmetrized pairings.  Generator order is
matrix basis, then y's, then x's; deformation coefficients live in the
coefficient ring so that monomials stay short.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exact import Poly, PolyRing
from .liedata import build_lie
from .pairings import DeformationParam, compute_pairings
from .pbw import Generator, PBWElement, PBWPresentation
from .report import VerificationReport


@dataclass
class CherednikAlgebra:
    """A built presentation plus the data that parameterizes it."""

    kind: str
    n: int
    m: int
    presentation: PBWPresentation
    zeta: DeformationParam

    @property
    def rep_dim(self) -> int:
        return self.n if self.kind == "gl" else 2 * self.n

    def g(self, label: str) -> PBWElement:
        return self.presentation.gen(label)

    def y(self, i: int) -> PBWElement:
        return self.presentation.gen(f"y({i})")

    def x(self, l: int) -> PBWElement:
        if self.kind != "gl":
            raise ValueError("x generators exist in the gl case only")
        return self.presentation.gen(f"x({l})")

    def consistency_check(self, suite: str | None = None) -> VerificationReport:
        """Diamond check over every generator triple."""
        degrees = [g.degree for g in self.presentation.generators]
        budget = 3 * max(degrees)
        name = suite or f"{self.kind}-n{self.n}-m{self.m}"
        return self.presentation.consistency_check(budget, suite=name)


def _vector_degree(kind: str, m: int) -> int:
    return m + 1 if kind == "gl" else 2 * m + 1


def _zeta_weight(kind: str, m: int, j: int) -> int:
    return 2 * (m - j) if kind == "gl" else 4 * (m - j)


@lru_cache(maxsize=None)
def build_universal(kind: str, n: int, m: int) -> CherednikAlgebra:
    """Universal length-m algebra with symbolic deformation coefficients."""
    zeta = DeformationParam.universal(kind, n, m)
    return _build(kind, n, m, zeta)


def specialize(H: CherednikAlgebra, c: Sequence[Fraction]) -> CherednikAlgebra:
    """Substitute scalars for the free deformation coefficients."""
    free = [j for j, coeff in enumerate(H.zeta.coeffs)
            if isinstance(coeff, Poly) and not coeff.is_constant()]
    if len(c) != len(free):
        raise ValueError(f"length mismatch: expected {len(free)} "
                         f"coefficients, got {len(c)}")
    values = list(H.zeta.coeffs)
    for j, scalar in zip(free, c):
        values[j] = Fraction(scalar)
    fixed = tuple(v.constant_value() if isinstance(v, Poly) else v
                  for v in values)
    zeta = DeformationParam(H.kind, H.n, H.m, fixed)
    return _build(H.kind, H.n, H.m, zeta)


def _build(kind: str, n: int, m: int,
           zeta: DeformationParam) -> CherednikAlgebra:
    jmax = m if kind == "gl" else 2 * m
    table = compute_pairings(kind, n, jmax)
    lie = build_lie(kind, n)
    dim = n if kind == "gl" else 2 * n

    symbolic = [c for c in zeta.coeffs
                if isinstance(c, Poly) and not c.is_constant()]
    if symbolic:
        ring = symbolic[0].ring
        weights = {f"zeta({j})": _zeta_weight(kind, m, j)
                   for j in range(m + 1) if ring.has(f"zeta({j})")}
    else:
        ring = PolyRing(())
        weights = {}

    vdeg = _vector_degree(kind, m)
    gens = [Generator(label, 2) for label in lie.basis]
    gens += [Generator(f"y({i})", vdeg) for i in range(1, dim + 1)]
    if kind == "gl":
        gens += [Generator(f"x({l})", vdeg) for l in range(1, n + 1)]
    p = PBWPresentation(gens, ring, weights)

    # Matrix part.
    for i, upper in enumerate(lie.basis):
        for lower in lie.basis[:i]:
            tail = {((p.index(lbl), 1),): ring.const(coeff)
                    for lbl, coeff in lie.bracket_table[(upper, lower)].items()
                    if coeff}
            if tail:
                p.add_rewrite(upper, lower, tail)

    # Vector actions: [A, y_i] = sum_k A_{ki} y_k and the dual on x.
    for label in lie.basis:
        mat = lie.matrices[label]
        for i in range(1, dim + 1):
            tail = {}
            for k in range(1, dim + 1):
                if mat[k - 1][i - 1]:
                    tail[((p.index(f"y({k})"), 1),)] = \
                        ring.const(-mat[k - 1][i - 1])
            if tail:
                p.add_rewrite(f"y({i})", label, tail)
        if kind == "gl":
            for l in range(1, n + 1):
                tail = {}
                for q in range(1, n + 1):
                    if mat[l - 1][q - 1]:
                        tail[((p.index(f"x({q})"), 1),)] = \
                            ring.const(mat[l - 1][q - 1])
                if tail:
                    p.add_rewrite(f"x({l})", label, tail)

    # Deformed vector-vector bracket.
    def bracket_value(i: int, l: int) -> PBWElement:
        total = p.zero()
        for j, coeff in enumerate(zeta.coeffs):
            if isinstance(coeff, Poly):
                if coeff.is_zero():
                    continue
                scale = coeff.cast(ring)
            else:
                if coeff == 0:
                    continue
                scale = ring.const(coeff)
            key = (j if kind == "gl" else 2 * j, i, l)
            r = table.r_sym[key]
            lifted = PBWElement(p, {word: c.cast(ring) * scale
                                    for word, c in r.terms.items()})
            total = total + lifted
        return total

    if kind == "gl":
        for l in range(1, n + 1):
            for i in range(1, dim + 1):
                tail = -bracket_value(i, l)
                if not tail.is_zero():
                    p.add_rewrite(f"x({l})", f"y({i})", tail)
    else:
        for b in range(2, dim + 1):
            for a in range(1, b):
                tail = bracket_value(b, a)
                if not tail.is_zero():
                    p.add_rewrite(f"y({b})", f"y({a})", tail)

    if symbolic or all(
            (c == 0 if not isinstance(c, Poly) else c.is_zero())
            for c in zeta.coeffs[:-1]):
        _assert_relation_grading(p, kind, m)
    return CherednikAlgebra(kind=kind, n=n, m=m, presentation=p, zeta=zeta)


def _assert_relation_grading(p: PBWPresentation, kind: str, m: int) -> None:
    """Every tail term must sit at the pair degree minus an even drop of at
    least two (normal-ordering corrections inside symmetrized products account
    for the drops beyond the first)."""
    for (i, j), tail in p.rewrite.items():
        target = p.generators[i].degree + p.generators[j].degree - 2
        for word, coeff in tail.terms.items():
            base = p._word_degree(word)
            total = base + max(coeff.weighted_degree(p.coeff_weights), 0)
            if total > target or (target - total) % 2:
                raise AssertionError(
                    f"tail of ({p.generators[i].label}, "
                    f"{p.generators[j].label}) reaches degree {total}, "
                    f"expected at most {target} in even steps")


def filtration_degree(H: CherednikAlgebra, elt: PBWElement) -> int:
    return H.presentation.degree(elt)
