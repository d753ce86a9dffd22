"""Exact arithmetic substrate: rationals, sparse multivariate polynomials,
truncated Laurent series, and exact linear algebra.

All coefficients are ``fractions.Fraction`` values, so every comparison in
the package is an exact equality.  Polynomials live in a ``PolyRing`` that
fixes an ordered tuple of variable names; exponent vectors are dense tuples
aligned with that order.  ``TruncSeries`` adds one distinguished series
variable on top of a coefficient ring and tracks the precision (all
exponents below ``order`` are known exactly).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

Scalar = Fraction
ScalarLike = Union[Fraction, int]
Exponent = tuple[int, ...]


def scalar_from_str(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` into an exact rational."""
    return Fraction(text.strip())


def scalar_to_str(value: ScalarLike) -> str:
    """Render an exact rational as ``"p"`` or ``"p/q"``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class PrecisionError(Exception):
    """Requested data lies beyond the known precision of a series."""


class LinearSolveError(Exception):
    """An exact linear system is inconsistent or not uniquely solvable."""

    def __init__(self, kind: str, message: str, rank: int | None = None):
        super().__init__(message)
        self.kind = kind
        self.rank = rank


@dataclass(frozen=True)
class PolyRing:
    """An ordered tuple of variable names defining a polynomial ring."""

    vars: tuple[str, ...]

    def __post_init__(self) -> None:
        if len(set(self.vars)) != len(self.vars):
            raise ValueError(f"duplicate variable names: {self.vars}")
        for name in self.vars:
            if not name or not isinstance(name, str):
                raise ValueError(f"invalid variable name: {name!r}")
        object.__setattr__(self, "_pos", {v: i for i, v in enumerate(self.vars)})

    @classmethod
    def make(cls, *names: str) -> "PolyRing":
        return cls(tuple(names))

    def index(self, name: str) -> int:
        pos = self._pos  # type: ignore[attr-defined]
        if name not in pos:
            raise KeyError(f"variable {name!r} not in ring {self.vars}")
        return pos[name]

    def has(self, name: str) -> bool:
        return name in self._pos  # type: ignore[attr-defined]

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, value: ScalarLike) -> "Poly":
        value = Fraction(value)
        if value == 0:
            return Poly(self, {})
        return Poly(self, {(0,) * len(self.vars): value})

    def var(self, name: str) -> "Poly":
        exps = [0] * len(self.vars)
        exps[self.index(name)] = 1
        return Poly(self, {tuple(exps): Fraction(1)})

    def gens(self) -> tuple["Poly", ...]:
        return tuple(self.var(v) for v in self.vars)

    def monomial(self, exps: Sequence[int], coeff: ScalarLike = 1) -> "Poly":
        exps = tuple(int(e) for e in exps)
        if len(exps) != len(self.vars) or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps} for ring {self.vars}")
        return Poly(self, {exps: Fraction(coeff)})

    def extend(self, *names: str) -> "PolyRing":
        """A ring with additional variables appended after the current ones."""
        return PolyRing(self.vars + tuple(names))


def _grlex_key(exps: Exponent) -> tuple:
    return (sum(exps), exps)


class Poly:
    """Sparse exact polynomial: dict from exponent tuple to Fraction."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: Mapping[Exponent, ScalarLike]):
        clean: dict[Exponent, Fraction] = {}
        for exps, coeff in terms.items():
            coeff = Fraction(coeff)
            if coeff != 0:
                clean[exps] = coeff
        self.ring = ring
        self.terms = clean

    # -- predicates and basic data -------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(exps) for exps in self.terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial, as a Fraction."""
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self}")
        return next(iter(self.terms.values()))

    def constant_term(self) -> Fraction:
        """The coefficient of the monomial 1."""
        return self.terms.get((0,) * len(self.ring.vars), Fraction(0))

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def degree(self, var: str | None = None) -> int:
        """Total degree, or degree in one variable; the zero poly has degree -1."""
        if not self.terms:
            return -1
        if var is None:
            return max(sum(exps) for exps in self.terms)
        idx = self.ring.index(var)
        return max(exps[idx] for exps in self.terms)

    def weighted_degree(self, weights: Mapping[str, int]) -> int:
        """Max over terms of the weight-sum of exponents; unlisted vars weigh 0."""
        if not self.terms:
            return -1
        w = [weights.get(v, 0) for v in self.ring.vars]
        return max(sum(e * wi for e, wi in zip(exps, w)) for exps in self.terms)

    def variables(self) -> set[str]:
        """Names of variables that actually occur."""
        out: set[str] = set()
        for exps in self.terms:
            for name, e in zip(self.ring.vars, exps):
                if e:
                    out.add(name)
        return out

    # -- arithmetic ------------------------------------------------------

    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError(
                    f"ring mismatch: {self.ring.vars} vs {other.ring.vars}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return None

    def __add__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, coeff in other.terms.items():
            new = terms.get(exps, Fraction(0)) + coeff
            if new == 0:
                terms.pop(exps, None)
            else:
                terms[exps] = new
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.ring, {exps: -c for exps, c in self.terms.items()})

    def __sub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                new = terms.get(key, Fraction(0)) + c1 * c2
                if new == 0:
                    terms.pop(key, None)
                else:
                    terms[key] = new
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def scale(self, value: ScalarLike) -> "Poly":
        value = Fraction(value)
        if value == 0:
            return self.ring.zero()
        return Poly(self.ring, {e: c * value for e, c in self.terms.items()})

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial powers are not defined")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n = base_needed
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- calculus and substitution ----------------------------------------

    def diff(self, var: str) -> "Poly":
        idx = self.ring.index(var)
        terms: dict[Exponent, Fraction] = {}
        for exps, coeff in self.terms.items():
            e = exps[idx]
            if e:
                key = exps[:idx] + (e - 1,) + exps[idx + 1 :]
                terms[key] = terms.get(key, Fraction(0)) + coeff * e
        return Poly(self.ring, terms)

    def subs(self, mapping: Mapping[str, "Poly | ScalarLike"],
             ring: PolyRing | None = None) -> "Poly":
        """Substitute polynomials or scalars for variables.

        Unsubstituted variables must exist in the target ring (default: the
        ring of this polynomial).
        """
        target = ring if ring is not None else self.ring
        resolved: dict[str, Poly] = {}
        for name in self.ring.vars:
            if name in mapping:
                value = mapping[name]
                if isinstance(value, (int, Fraction)):
                    resolved[name] = target.const(value)
                elif value.ring == target:
                    resolved[name] = value
                else:
                    resolved[name] = value.cast(target)
        power_cache: dict[tuple[str, int], Poly] = {}
        out = target.zero()
        for exps, coeff in self.terms.items():
            factor = target.const(coeff)
            for name, e in zip(self.ring.vars, exps):
                if not e:
                    continue
                key = (name, e)
                if key not in power_cache:
                    base = resolved.get(name)
                    if base is None:
                        base = target.var(name)
                    power_cache[key] = base ** e
                factor = factor * power_cache[key]
            out = out + factor
        return out

    def cast(self, ring: PolyRing) -> "Poly":
        """Reinterpret in another ring containing all occurring variables."""
        if ring == self.ring:
            return self
        positions = []
        for i, name in enumerate(self.ring.vars):
            if ring.has(name):
                positions.append(ring.index(name))
            else:
                positions.append(-1)
        width = len(ring.vars)
        terms: dict[Exponent, Fraction] = {}
        for exps, coeff in self.terms.items():
            new = [0] * width
            for i, e in enumerate(exps):
                if not e:
                    continue
                if positions[i] < 0:
                    raise ValueError(
                        f"variable {self.ring.vars[i]!r} missing from target ring"
                    )
                new[positions[i]] = e
            terms[tuple(new)] = coeff
        return Poly(ring, terms)

    def eval(self, point: Mapping[str, ScalarLike]) -> Fraction:
        """Evaluate at rational values; every occurring variable must be given."""
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            value = coeff
            for name, e in zip(self.ring.vars, exps):
                if e:
                    value *= Fraction(point[name]) ** e
            total += value
        return total

    def univariate_coeffs(self, var: str) -> list[Fraction]:
        """Coefficient list [c_0, ..., c_d] of a polynomial in one variable.

        Raises ValueError if any other variable occurs.
        """
        idx = self.ring.index(var)
        deg = self.degree(var) if self.terms else 0
        out = [Fraction(0)] * (max(deg, 0) + 1)
        for exps, coeff in self.terms.items():
            if sum(exps) != exps[idx]:
                raise ValueError(f"polynomial is not univariate in {var!r}: {self}")
            out[exps[idx]] = coeff
        return out

    def homogeneous_component(self, d: int,
                              weights: Mapping[str, int] | None = None) -> "Poly":
        """Terms of exact (weighted) total degree d."""
        if weights is None:
            picker = lambda exps: sum(exps) == d
        else:
            w = [weights.get(v, 0) for v in self.ring.vars]
            picker = lambda exps: sum(e * wi for e, wi in zip(exps, w)) == d
        return Poly(self.ring, {e: c for e, c in self.terms.items() if picker(e)})

    # -- presentation ------------------------------------------------------

    def canonical_str(self) -> str:
        """Deterministic rendering: graded-lex descending, "p/q" coefficients."""
        if not self.terms:
            return "0"
        parts: list[str] = []
        for exps in sorted(self.terms, key=_grlex_key, reverse=True):
            coeff = self.terms[exps]
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.ring.vars, exps)
                if e
            ]
            mon = "*".join(factors)
            mag = abs(coeff)
            if mon and mag == 1:
                body = mon
            elif mon:
                body = f"{scalar_to_str(mag)}*{mon}"
            else:
                body = scalar_to_str(mag)
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(parts)

    def __str__(self) -> str:
        return self.canonical_str()

    def __repr__(self) -> str:
        return self.canonical_str()


class TruncSeries:
    """Truncated Laurent series in one variable with Poly coefficients.

    ``coeffs[e]`` is the coefficient of ``var**e``; all exponents strictly
    below ``order`` are known exactly, everything at or above ``order`` is
    unknown.  The series variable is separate from the coefficient ring.
    """

    __slots__ = ("ring", "var", "order", "coeffs")

    def __init__(self, ring: PolyRing, var: str, coeffs: Mapping[int, "Poly | ScalarLike"],
                 order: int):
        if ring.has(var):
            raise ValueError(f"series variable {var!r} collides with a ring variable")
        clean: dict[int, Poly] = {}
        for e, value in coeffs.items():
            if isinstance(value, (int, Fraction)):
                value = ring.const(value)
            elif value.ring != ring:
                raise ValueError("coefficient ring mismatch")
            if int(e) >= order:
                raise ValueError(f"coefficient at {var}^{e} is at or beyond order {order}")
            if not value.is_zero():
                clean[int(e)] = value
        self.ring = ring
        self.var = var
        self.order = order
        self.coeffs = clean

    @classmethod
    def constant(cls, ring: PolyRing, var: str, value: "Poly | ScalarLike",
                 order: int) -> "TruncSeries":
        return cls(ring, var, {0: value}, order)

    @classmethod
    def gen(cls, ring: PolyRing, var: str, order: int) -> "TruncSeries":
        return cls(ring, var, {1: ring.one()}, order)

    @property
    def low(self) -> int:
        """Lowest known nonzero exponent; equals order for a (known-)zero series."""
        return min(self.coeffs) if self.coeffs else self.order

    def _lift(self, other) -> "TruncSeries | None":
        if isinstance(other, TruncSeries):
            if other.ring != self.ring or other.var != self.var:
                raise ValueError("series mismatch: different ring or variable")
            return other
        if isinstance(other, (int, Fraction, Poly)):
            return TruncSeries(self.ring, self.var, {0: other}, self.order)
        return None

    def __add__(self, other) -> "TruncSeries":
        other = self._lift(other)
        if other is None:
            return NotImplemented
        order = min(self.order, other.order)
        coeffs: dict[int, Poly] = {e: p for e, p in self.coeffs.items() if e < order}
        for e, p in other.coeffs.items():
            if e >= order:
                continue
            if e in coeffs:
                coeffs[e] = coeffs[e] + p
            else:
                coeffs[e] = p
        return TruncSeries(self.ring, self.var, coeffs, order)

    __radd__ = __add__

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.ring, self.var,
                           {e: -p for e, p in self.coeffs.items()}, self.order)

    def __sub__(self, other) -> "TruncSeries":
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "TruncSeries":
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, (int, Fraction)):
            return TruncSeries(self.ring, self.var,
                               {e: p.scale(other) for e, p in self.coeffs.items()},
                               self.order)
        if isinstance(other, Poly):
            return TruncSeries(self.ring, self.var,
                               {e: p * other for e, p in self.coeffs.items()},
                               self.order)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        # Error terms beyond one factor's order meet the other factor's lowest
        # exponent, which bounds the product's trustworthy window.
        order = min(self.order + other.low, other.order + self.low)
        coeffs: dict[int, Poly] = {}
        for e1, p1 in self.coeffs.items():
            for e2, p2 in other.coeffs.items():
                e = e1 + e2
                if e >= order:
                    continue
                prod = p1 * p2
                if e in coeffs:
                    coeffs[e] = coeffs[e] + prod
                else:
                    coeffs[e] = prod
        return TruncSeries(self.ring, self.var, coeffs, order)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TruncSeries":
        if n < 0:
            raise ValueError("use invert() for negative series powers")
        result = TruncSeries.constant(self.ring, self.var, 1, self.order)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return (self.ring == other.ring and self.var == other.var
                and self.order == other.order and self.coeffs == other.coeffs)

    __hash__ = None  # type: ignore[assignment]

    def shift(self, k: int) -> "TruncSeries":
        """Multiply by var**k (exactly)."""
        return TruncSeries(self.ring, self.var,
                           {e + k: p for e, p in self.coeffs.items()},
                           self.order + k)

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise PrecisionError(
                f"cannot refine precision from O({self.var}^{self.order}) "
                f"to O({self.var}^{order})")
        return TruncSeries(self.ring, self.var,
                           {e: p for e, p in self.coeffs.items() if e < order}, order)

    def map_coeffs(self, fn: Callable[[Poly], Poly]) -> "TruncSeries":
        return TruncSeries(self.ring, self.var,
                           {e: fn(p) for e, p in self.coeffs.items()}, self.order)

    def coefficient_of(self, e: int) -> Poly:
        if e >= self.order:
            raise PrecisionError(
                f"coefficient of {self.var}^{e} lies beyond precision "
                f"O({self.var}^{self.order})")
        return self.coeffs.get(e, self.ring.zero())

    def invert(self) -> "TruncSeries":
        """Multiplicative inverse; the lowest coefficient must be a nonzero rational."""
        if not self.coeffs:
            raise ValueError("cannot invert a series with no known nonzero term")
        l = self.low
        lead = self.coeffs[l]
        if not lead.is_constant():
            raise ValueError(
                f"cannot invert: leading coefficient {lead} is not a nonzero constant")
        c = lead.constant_value()
        rel_order = self.order - l
        # Write self = c * var^l * (1 + N) and sum the geometric series in -N.
        tail = TruncSeries(self.ring, self.var,
                           {e - l: p.scale(Fraction(-1) / c)
                            for e, p in self.coeffs.items() if e != l},
                           rel_order)
        acc = TruncSeries.constant(self.ring, self.var, 1, rel_order)
        term = acc
        while term.coeffs:
            term = (term * tail).truncate(rel_order)
            acc = acc + term
        return TruncSeries(self.ring, self.var,
                           {e - l: p.scale(Fraction(1) / c)
                            for e, p in acc.coeffs.items()},
                           rel_order - l)

    def __str__(self) -> str:
        parts = []
        for e in sorted(self.coeffs):
            poly = self.coeffs[e]
            body = poly.canonical_str()
            if len(poly.terms) > 1:
                body = f"({body})"
            if e == 0:
                parts.append(body)
            elif e == 1:
                parts.append(f"{body}*{self.var}" if body != "1" else self.var)
            else:
                head = f"{body}*" if body != "1" else ""
                parts.append(f"{head}{self.var}^{e}")
        parts.append(f"O({self.var}^{self.order})")
        return " + ".join(parts)

    __repr__ = __str__


def poly_to_jsonable(p: Poly) -> dict:
    """Canonical JSON form: variable list plus sorted (exponents, "p/q") pairs."""
    terms = sorted(
        ([list(exps), scalar_to_str(c)] for exps, c in p.terms.items()),
        key=lambda t: t[0])
    return {"vars": list(p.ring.vars), "terms": terms}


def poly_from_jsonable(data: Mapping, ring: PolyRing | None = None) -> Poly:
    if ring is None:
        ring = PolyRing(tuple(data["vars"]))
    elif tuple(data["vars"]) != ring.vars:
        raise ValueError("serialized polynomial ring does not match")
    return Poly(ring, {tuple(exps): scalar_from_str(c)
                       for exps, c in data["terms"]})


# -- exact linear algebra ----------------------------------------------------


def _is_zero_entry(value) -> bool:
    if isinstance(value, Poly):
        return value.is_zero()
    return value == 0


def solve_linear(matrix: Sequence[Sequence[ScalarLike]],
                 rhs: Sequence,
                 require_unique: bool = True) -> list:
    """Solve ``A x = b`` exactly over the rationals.

    ``matrix`` has Fraction (or int) entries; ``rhs`` entries may be
    Fractions or Poly values, and the solution entries have the same type.
    Overdetermined systems are fine as long as they are consistent.  Raises
    LinearSolveError (kind "inconsistent" or "underdetermined") otherwise;
    with ``require_unique=False`` free variables are set to zero.
    """
    rows = [[Fraction(x) for x in row] for row in matrix]
    b = list(rhs)
    m = len(rows)
    if len(b) != m:
        raise ValueError(f"matrix has {m} rows but rhs has {len(b)} entries")
    n = len(rows[0]) if m else 0
    for row in rows:
        if len(row) != n:
            raise ValueError("ragged matrix")

    pivots: list[tuple[int, int]] = []
    row_at = 0
    for col in range(n):
        pivot = None
        for r in range(row_at, m):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[row_at], rows[pivot] = rows[pivot], rows[row_at]
        b[row_at], b[pivot] = b[pivot], b[row_at]
        inv = Fraction(1) / rows[row_at][col]
        rows[row_at] = [x * inv for x in rows[row_at]]
        b[row_at] = b[row_at] * inv
        for r in range(m):
            if r != row_at and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[row_at])]
                b[r] = b[r] - factor * b[row_at]
        pivots.append((row_at, col))
        row_at += 1

    rank_value = len(pivots)
    for r in range(rank_value, m):
        if not _is_zero_entry(b[r]):
            raise LinearSolveError(
                "inconsistent",
                f"inconsistent linear system: rank {rank_value}, "
                f"row {r} has zero coefficients but nonzero right-hand side",
                rank=rank_value)
    if rank_value < n and require_unique:
        raise LinearSolveError(
            "underdetermined",
            f"linear system has rank {rank_value} < {n} unknowns",
            rank=rank_value)

    solution: list = [Fraction(0)] * n
    for r, col in pivots:
        solution[col] = b[r]
    return solution


def rank(matrix: Sequence[Sequence[ScalarLike]]) -> int:
    """Exact rank of a rational matrix."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    m = len(rows)
    n = len(rows[0]) if m else 0
    rank_value = 0
    for col in range(n):
        pivot = None
        for r in range(rank_value, m):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank_value], rows[pivot] = rows[pivot], rows[rank_value]
        inv = Fraction(1) / rows[rank_value][col]
        rows[rank_value] = [x * inv for x in rows[rank_value]]
        for r in range(m):
            if r != rank_value and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank_value])]
        rank_value += 1
    return rank_value


def nullspace(matrix: Sequence[Sequence[ScalarLike]],
              width: int | None = None) -> list[list[Fraction]]:
    """Basis of the exact kernel of a rational matrix (free-variable basis)."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    m = len(rows)
    if width is None:
        if not m:
            raise ValueError("cannot infer width of an empty matrix")
        width = len(rows[0])
    n = width
    pivots: list[tuple[int, int]] = []
    row_at = 0
    for col in range(n):
        pivot = None
        for r in range(row_at, m):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[row_at], rows[pivot] = rows[pivot], rows[row_at]
        inv = Fraction(1) / rows[row_at][col]
        rows[row_at] = [x * inv for x in rows[row_at]]
        for r in range(m):
            if r != row_at and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[row_at])]
        pivots.append((row_at, col))
        row_at += 1
    pivot_cols = {col for _, col in pivots}
    basis: list[list[Fraction]] = []
    for free in range(n):
        if free in pivot_cols:
            continue
        vec = [Fraction(0)] * n
        vec[free] = Fraction(1)
        for r, col in pivots:
            vec[col] = -rows[r][free]
        basis.append(vec)
    return basis


# -- small generic matrix helpers (entries: anything with + and *) -----------


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    if not a or not b:
        raise ValueError("empty matrix")
    inner = len(b)
    out = []
    for row in a:
        if len(row) != inner:
            raise ValueError("dimension mismatch in mat_mul")
        new_row = []
        for j in range(len(b[0])):
            acc = row[0] * b[0][j]
            for k in range(1, inner):
                acc = acc + row[k] * b[k][j]
            new_row.append(acc)
        out.append(new_row)
    return out


def mat_add(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a: Sequence[Sequence]) -> list[list]:
    return [[c * x for x in row] for row in a]


def mat_trace(a: Sequence[Sequence]):
    acc = a[0][0]
    for i in range(1, len(a)):
        acc = acc + a[i][i]
    return acc


def mat_identity(n: int, one=Fraction(1), zero=Fraction(0)) -> list[list]:
    return [[one if i == j else zero for j in range(n)] for i in range(n)]
