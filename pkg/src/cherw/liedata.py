"""Concrete matrix Lie algebra data: bases, brackets, trace forms,
one-block nilpotents with their sl2-triples, centralizer bases, slice
matrices, and characteristic invariants.

Conventions:
  - gl_n and sl_n use elementary matrices E(i,j), 1-based indices; sl_n
    replaces the diagonal by H(i) = E_ii - E_{i+1,i+1}.
  - sp_2n is the symplectic algebra of the skew form given by the
    antidiagonal matrix J_ab = (-1)^b delta_{a+b,2n+1}; its basis is
    U(k,l) = E_kl + (-1)^{k+l+1} E_{2n+1-l,2n+1-k} for k+l <= 2n+1,
    which equals 2 E_kl on the antidiagonal k+l = 2n+1.
  - The bilinear form is the plain trace form (a,b) = tr(ab).

Elements are sparse coordinate dicts {basis label: Fraction}.  All brackets
are verified against matrix commutators at construction, and the bracket
table satisfies the Jacobi identity (checked exhaustively in low dimension).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

from .exact import (Poly, PolyRing, mat_identity, mat_mul, mat_sub, nullspace,
                    rank as exact_rank)

Element = dict[str, Fraction]
Matrix = list[list[Fraction]]

ZERO = Fraction(0)
ONE = Fraction(1)


def _zeros(n: int) -> Matrix:
    return [[ZERO] * n for _ in range(n)]


def _e_matrix(n: int, i: int, j: int, c: Fraction = ONE) -> Matrix:
    m = _zeros(n)
    m[i - 1][j - 1] = c
    return m


def _add_into(target: Matrix, other: Matrix, c: Fraction = ONE) -> None:
    for row_t, row_o in zip(target, other):
        for j, value in enumerate(row_o):
            if value:
                row_t[j] = row_t[j] + c * value


def _commutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def _is_zero_matrix(m: Matrix) -> bool:
    return all(all(x == 0 for x in row) for row in m)


def sp_member_defect(m: Matrix) -> tuple[int, int] | None:
    """First entry violating a_{2N+1-j,2N+1-i} = (-1)^{i+j+1} a_{ij}, if any."""
    size = len(m)
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            if m[size - j][size - i] != (-1) ** (i + j + 1) * m[i - 1][j - 1]:
                return (i, j)
    return None


@dataclass(eq=False)
class LieAlgebraData:
    """A based matrix Lie algebra with tabulated brackets and trace form."""

    kind: str
    size: int
    basis: tuple[str, ...]
    matrices: dict[str, Matrix]
    bracket_table: dict[tuple[str, str], Element] = field(default_factory=dict)
    trace_form: dict[tuple[str, str], Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind == "sp":
            for label in self.basis:
                defect = sp_member_defect(self.matrices[label])
                if defect is not None:
                    raise AssertionError(
                        f"{label} violates the symplectic membership condition "
                        f"at entry {defect}")
        for a in self.basis:
            for b in self.basis:
                bracket = _commutator(self.matrices[a], self.matrices[b])
                self.bracket_table[(a, b)] = self.coordinates(bracket)
                self.trace_form[(a, b)] = _trace(
                    mat_mul(self.matrices[a], self.matrices[b]))
        if self.dim <= 20:
            self._check_jacobi()

    @property
    def dim(self) -> int:
        return len(self.basis)

    # -- coordinates --------------------------------------------------------

    def coordinates(self, m: Matrix) -> Element:
        """Exact coordinates in the basis; raises if m is not a member."""
        coords = self._raw_coordinates(m)
        rebuilt = self.element_matrix(coords)
        if rebuilt != m:
            raise ValueError(f"matrix is not in the span of the {self.kind} basis")
        return coords

    def _raw_coordinates(self, m: Matrix) -> Element:
        coords: Element = {}
        n = self.size
        if self.kind == "gl":
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if m[i - 1][j - 1]:
                        coords[f"E({i},{j})"] = m[i - 1][j - 1]
        elif self.kind == "sl":
            partial = ZERO
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    if i != j and m[i - 1][j - 1]:
                        coords[f"E({i},{j})"] = m[i - 1][j - 1]
            for i in range(1, n):
                partial += m[i - 1][i - 1]
                if partial:
                    coords[f"H({i})"] = partial
        else:  # sp
            for k in range(1, n + 1):
                for l in range(1, n + 1):
                    if k + l > n + 1:
                        continue
                    value = m[k - 1][l - 1]
                    if k + l == n + 1:
                        value = value / 2
                    if value:
                        coords[f"U({k},{l})"] = value
        return coords

    def element_matrix(self, elem: Mapping[str, Fraction]) -> Matrix:
        out = _zeros(self.size)
        for label, c in elem.items():
            if c:
                _add_into(out, self.matrices[label], Fraction(c))
        return out

    # -- element algebra -----------------------------------------------------

    def bracket(self, a: Mapping[str, Fraction], b: Mapping[str, Fraction]) -> Element:
        out: Element = {}
        for la, ca in a.items():
            if not ca:
                continue
            for lb, cb in b.items():
                if not cb:
                    continue
                for lc, cc in self.bracket_table[(la, lb)].items():
                    new = out.get(lc, ZERO) + ca * cb * cc
                    if new:
                        out[lc] = new
                    else:
                        out.pop(lc, None)
        return out

    def pair(self, a: Mapping[str, Fraction], b: Mapping[str, Fraction]) -> Fraction:
        total = ZERO
        for la, ca in a.items():
            for lb, cb in b.items():
                total += ca * cb * self.trace_form[(la, lb)]
        return total

    def ad_matrix(self, elem: Mapping[str, Fraction]) -> Matrix:
        """Matrix of ad(elem) acting on the algebra in its own basis."""
        index = {label: i for i, label in enumerate(self.basis)}
        cols = []
        for label in self.basis:
            image = self.bracket(elem, {label: ONE})
            col = [ZERO] * self.dim
            for lc, c in image.items():
                col[index[lc]] = c
            cols.append(col)
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    # -- construction-time validation ----------------------------------------

    def _check_jacobi(self) -> None:
        for a in self.basis:
            for b in self.basis:
                ab = self.bracket_table[(a, b)]
                ba = self.bracket_table[(b, a)]
                merged = dict(ab)
                for lc, c in ba.items():
                    merged[lc] = merged.get(lc, ZERO) + c
                if any(merged.values()):
                    raise AssertionError(f"bracket not antisymmetric on ({a},{b})")
        for a in self.basis:
            ea = {a: ONE}
            for b in self.basis:
                eb = {b: ONE}
                ab = self.bracket_table[(a, b)]
                for c in self.basis:
                    ec = {c: ONE}
                    lhs = self.bracket(ea, self.bracket_table[(b, c)])
                    rhs = self.bracket(ab, ec)
                    for lc, cc in self.bracket(eb, self.bracket_table[(a, c)]).items():
                        rhs[lc] = rhs.get(lc, ZERO) + cc
                    for lc in set(lhs) | set(rhs):
                        if lhs.get(lc, ZERO) != rhs.get(lc, ZERO):
                            raise AssertionError(
                                f"Jacobi fails on triple ({a},{b},{c})")


def _trace(m: Matrix) -> Fraction:
    return sum((m[i][i] for i in range(len(m))), ZERO)


@lru_cache(maxsize=None)
def build_lie(kind: str, n: int) -> LieAlgebraData:
    """gl_n or sl_n of size n, or sp_2n of size 2n (pass the half-rank n)."""
    if n < 1:
        raise ValueError("rank must be positive")
    if kind == "gl":
        labels = [f"E({i},{j})" for i in range(1, n + 1) for j in range(1, n + 1)]
        mats = {f"E({i},{j})": _e_matrix(n, i, j)
                for i in range(1, n + 1) for j in range(1, n + 1)}
        return LieAlgebraData("gl", n, tuple(labels), mats)
    if kind == "sl":
        if n < 2:
            raise ValueError("sl_n needs n >= 2")
        entries: list[tuple[tuple[int, int], str, Matrix]] = []
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i == j:
                    if i < n:
                        m = _e_matrix(n, i, i)
                        _add_into(m, _e_matrix(n, i + 1, i + 1), Fraction(-1))
                        entries.append(((i, i), f"H({i})", m))
                else:
                    entries.append(((i, j), f"E({i},{j})", _e_matrix(n, i, j)))
        entries.sort(key=lambda t: t[0])
        labels = tuple(label for _, label, _ in entries)
        mats = {label: m for _, label, m in entries}
        return LieAlgebraData("sl", n, labels, mats)
    if kind == "sp":
        size = 2 * n
        labels = []
        mats = {}
        for k in range(1, size + 1):
            for l in range(1, size + 1):
                if k + l > size + 1:
                    continue
                m = _e_matrix(size, k, l)
                _add_into(m, _e_matrix(size, size + 1 - l, size + 1 - k),
                          Fraction((-1) ** (k + l + 1)))
                labels.append(f"U({k},{l})")
                mats[f"U({k},{l})"] = m
        return LieAlgebraData("sp", size, tuple(labels), mats)
    raise ValueError(f"unknown kind {kind!r}")


@dataclass(eq=False)
class SL2Triple:
    algebra: LieAlgebraData
    e: Element
    h: Element
    f: Element

    def __post_init__(self) -> None:
        alg = self.algebra
        checks = [
            (alg.bracket(self.h, self.e), {k: 2 * v for k, v in self.e.items()}, "[h,e]=2e"),
            (alg.bracket(self.h, self.f), {k: -2 * v for k, v in self.f.items()}, "[h,f]=-2f"),
            (alg.bracket(self.e, self.f), self.h, "[e,f]=h"),
        ]
        for got, want, name in checks:
            for label in set(got) | set(want):
                if got.get(label, ZERO) != want.get(label, ZERO):
                    raise AssertionError(f"sl2 relation {name} fails")

    def e_matrix(self) -> Matrix:
        return self.algebra.element_matrix(self.e)

    def f_matrix(self) -> Matrix:
        return self.algebra.element_matrix(self.f)

    def h_matrix(self) -> Matrix:
        return self.algebra.element_matrix(self.h)


def _matrix_rank(m: Matrix) -> int:
    return exact_rank(m)


def _nilpotent_jordan_check(e: Matrix, block: int) -> None:
    # Jordan type (1,...,1,block): rank e^k = block - k for k < block, then 0.
    power = mat_identity(len(e))
    for k in range(1, block + 1):
        power = mat_mul(power, e)
        expected = block - k
        if _matrix_rank(power) != expected:
            raise AssertionError(
                f"nilpotent has wrong Jordan type: rank(e^{k}) != {expected}")


@lru_cache(maxsize=None)
def one_block_nilpotent(kind: str, n: int, m: int) -> SL2Triple:
    """The standard sl2-triple through the one-block nilpotent e_m.

    kind "gl"/"sl": inside sl_{n+m} (needs m >= 2); kind "sp": inside
    sp_{2(n+m)} (needs m >= 1).  n >= 0 counts the fixed part.
    """
    if kind in ("gl", "sl"):
        size = n + m
        if m < 2 or m > size:
            raise ValueError(f"one-block nilpotent in sl needs 2 <= m, got m={m}")
        alg = build_lie("sl", size)
        e = {f"E({n + j},{n + j + 1})": ONE for j in range(1, m)}
        f = {f"E({n + j + 1},{n + j})": Fraction(j * (m - j)) for j in range(1, m)}
        h_diag = _zeros(size)
        for j in range(1, m + 1):
            h_diag[n + j - 1][n + j - 1] = Fraction(m + 1 - 2 * j)
        h = alg.coordinates(h_diag)
        triple = SL2Triple(alg, e, h, f)
        _nilpotent_jordan_check(triple.e_matrix(), m)
        return triple
    if kind == "sp":
        if m < 1 or m > n + m:
            raise ValueError(f"one-block nilpotent in sp needs 1 <= m, got m={m}")
        size = 2 * (n + m)
        alg = build_lie("sp", n + m)
        e_mat = _zeros(size)
        for j in range(1, 2 * m):
            e_mat[n + j - 1][n + j] = ONE
        f_mat = _zeros(size)
        for j in range(1, 2 * m):
            f_mat[n + j][n + j - 1] = Fraction(j * (2 * m - j))
        h_mat = _zeros(size)
        for j in range(1, 2 * m + 1):
            h_mat[n + j - 1][n + j - 1] = Fraction(2 * m + 1 - 2 * j)
        triple = SL2Triple(alg, alg.coordinates(e_mat), alg.coordinates(h_mat),
                           alg.coordinates(f_mat))
        _nilpotent_jordan_check(triple.e_matrix(), 2 * m)
        return triple
    raise ValueError(f"unknown kind {kind!r}")


@dataclass(eq=False)
class CentralizerEntry:
    name: str
    element: Element
    weight_h: int
    weight_t: int


@dataclass(eq=False)
class CentralizerBasis:
    kind: str
    n: int
    m: int
    triple: SL2Triple
    q_part: dict[str, CentralizerEntry]
    v_plus: list[CentralizerEntry]
    v_minus: list[CentralizerEntry]
    xi: list[CentralizerEntry]
    t_element: Element

    @property
    def algebra(self) -> LieAlgebraData:
        return self.triple.algebra

    def all_entries(self) -> list[CentralizerEntry]:
        return (list(self.q_part.values()) + self.v_plus + self.v_minus
                + list(self.xi))

    @property
    def dim(self) -> int:
        return len(self.all_entries())


def _weight_of(alg: LieAlgebraData, grader: Element, elem: Element) -> int:
    """Eigenvalue of ad(grader) on elem; raises if not an eigenvector."""
    image = alg.bracket(grader, elem)
    candidates = [image.get(l, ZERO) / c for l, c in elem.items() if c]
    w = candidates[0]
    scaled = {l: w * c for l, c in elem.items()}
    for label in set(image) | set(scaled):
        if image.get(label, ZERO) != scaled.get(label, ZERO):
            raise AssertionError("element is not an ad-eigenvector")
    if w.denominator != 1:
        raise AssertionError("non-integral ad weight")
    return int(w)


def gl_embedding_matrix(n: int, m: int, i: int, j: int) -> Matrix:
    """The copy of gl_n's E_ij inside sl_{n+m}: E_ij - delta_ij/(n+m) Id."""
    size = n + m
    out = _e_matrix(size, i, j)
    if i == j:
        for k in range(size):
            out[k][k] -= Fraction(1, size)
    return out


def sp_corner_index(n: int, m: int, i: int) -> int:
    """Row/column embedding sp_2n -> sp_{2(n+m)} via the four corner blocks."""
    return i if i <= n else i + 2 * m


def sp_corner_embedding_matrix(n: int, m: int, small: Matrix) -> Matrix:
    size = 2 * (n + m)
    out = _zeros(size)
    for i in range(1, 2 * n + 1):
        for j in range(1, 2 * n + 1):
            if small[i - 1][j - 1]:
                out[sp_corner_index(n, m, i) - 1][sp_corner_index(n, m, j) - 1] = \
                    small[i - 1][j - 1]
    return out


@lru_cache(maxsize=None)
def centralizer_basis(kind: str, n: int, m: int) -> CentralizerBasis:
    """Basis of the centralizer of e_m, with ad(h) and ad(T) weights.

    kind "gl"/"sl": inside sl_{n+m}; components gl_n + V + V* + C^{m-1}.
    kind "sp": inside sp_{2(n+m)}; components sp_2n + V_2n + C^m (the V_2n
    entries are split into the two ad(T)-weight families v_plus/v_minus).
    """
    triple = one_block_nilpotent(kind, n, m)
    alg = triple.algebra
    if kind in ("gl", "sl"):
        size = n + m
        q_part = {}
        t_elem = alg.coordinates(
            [[Fraction(m, size) if i == j and i <= n
              else (Fraction(-n, size) if i == j else ZERO)
              for j in range(1, size + 1)] for i in range(1, size + 1)])
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                elem = alg.coordinates(gl_embedding_matrix(n, m, i, j))
                q_part[f"E({i},{j})"] = CentralizerEntry(f"E({i},{j})", elem, 0, 0)
        v_plus = [CentralizerEntry(f"y({i})", {f"E({i},{n + m})": ONE}, m - 1, 1)
                  for i in range(1, n + 1)]
        v_minus = [CentralizerEntry(f"x({i})", {f"E({n + 1},{i})": ONE}, m - 1, -1)
                   for i in range(1, n + 1)]
        xi = []
        for k in range(m - 1):
            elem = {f"E({n + t},{n + t + m - k - 1})": ONE
                    for t in range(1, k + 2)}
            xi.append(CentralizerEntry(f"xi({k})", elem, 2 * m - 2 * k - 2, 0))
        expected_dim = n * n + 2 * n + m - 1
    else:
        size = 2 * (n + m)
        sp_small = build_lie("sp", n)
        t_mat = _zeros(size)
        for i in range(1, n + 1):
            t_mat[i - 1][i - 1] = ONE
            t_mat[size - i][size - i] = -ONE
        t_elem = alg.coordinates(t_mat)
        q_part = {}
        for label in sp_small.basis:
            embedded = sp_corner_embedding_matrix(n, m, sp_small.matrices[label])
            elem = alg.coordinates(embedded)
            weight_t = _weight_of(alg, t_elem, elem)
            if weight_t % 2:
                raise AssertionError(f"odd grading weight on the fixed part: {label}")
            q_part[label] = CentralizerEntry(label, elem, 0, weight_t)
        v_plus = []
        v_minus = []
        for i in range(1, n + 1):
            mat = _e_matrix(size, i, n + 2 * m)
            _add_into(mat, _e_matrix(size, n + 1, 2 * n + 2 * m + 1 - i),
                      Fraction((-1) ** (n + i + 1)))
            v_plus.append(CentralizerEntry(
                f"y({i})", alg.coordinates(mat), 2 * m - 1, 1))
        for i in range(1, n + 1):
            mat = _e_matrix(size, n + 2 * m + i, n + 2 * m)
            _add_into(mat, _e_matrix(size, n + 1, n + 1 - i),
                      Fraction((-1) ** (i + 1)))
            v_minus.append(CentralizerEntry(
                f"y({n + i})", alg.coordinates(mat), 2 * m - 1, -1))
        xi = []
        for j in range(m):
            mat = _zeros(size)
            for t in range(0, 2 * j + 1):
                mat[n + t][n + 2 * (m - j) + t - 1] += ONE
            xi.append(CentralizerEntry(f"xi({j})", alg.coordinates(mat),
                                       4 * m - 4 * j - 2, 0))
        expected_dim = n * (2 * n + 1) + 2 * n + m

    basis = CentralizerBasis(kind if kind != "gl" else "sl", n, m, triple,
                             q_part, v_plus, v_minus, xi, t_elem)
    entries = basis.all_entries()
    if len(entries) != expected_dim:
        raise AssertionError(
            f"centralizer dimension {len(entries)} != expected {expected_dim}")
    kernel_dim = len(nullspace(alg.ad_matrix(triple.e), width=alg.dim))
    if kernel_dim != expected_dim:
        raise AssertionError(
            f"brute-force centralizer dimension {kernel_dim} != {expected_dim}")
    index = {label: i for i, label in enumerate(alg.basis)}
    rows = []
    for entry in entries:
        if any(alg.bracket(triple.e, entry.element).values()):
            raise AssertionError(f"{entry.name} does not commute with e")
        got_h = _weight_of(alg, triple.h, entry.element)
        got_t = _weight_of(alg, basis.t_element, entry.element)
        if (got_h, got_t) != (entry.weight_h, entry.weight_t):
            raise AssertionError(
                f"{entry.name} has weights ({got_h},{got_t}), expected "
                f"({entry.weight_h},{entry.weight_t})")
        row = [ZERO] * alg.dim
        for label, c in entry.element.items():
            row[index[label]] = c
        rows.append(row)
    from .exact import rank as _rank
    if _rank(rows) != expected_dim:
        raise AssertionError("centralizer entries are linearly dependent")
    return basis


@dataclass(eq=False)
class SliceMatrix:
    """A symbolic matrix parameterizing the affine slice through e_m."""

    kind: str
    n: int
    m: int
    ring: PolyRing
    matrix: list[list[Poly]]
    triple: SL2Triple

    @property
    def size(self) -> int:
        return len(self.matrix)

    def x1_block(self) -> list[list[Poly]]:
        """The fixed-part block (upper-left n x n, or the sp corner blocks)."""
        n, m = self.n, self.m
        if self.kind in ("gl", "sl"):
            return [row[:n] for row in self.matrix[:n]]
        idx = [sp_corner_index(n, m, i) - 1 for i in range(1, 2 * n + 1)]
        return [[self.matrix[i][j] for j in idx] for i in idx]

    def x2_block(self) -> list[list[Poly]]:
        """The moving-part block (lower-right m x m, or centered 2m x 2m)."""
        n, m = self.n, self.m
        if self.kind in ("gl", "sl"):
            return [row[n:] for row in self.matrix[n:]]
        return [row[n:n + 2 * m] for row in self.matrix[n:n + 2 * m]]


def _poly_matrix_from_scalar(ring: PolyRing, m: Matrix) -> list[list[Poly]]:
    return [[ring.const(x) for x in row] for row in m]


def _poly_mat_commutes(a: list[list[Poly]], b: list[list[Poly]]) -> bool:
    return all(x.is_zero() for row in mat_sub(mat_mul(a, b), mat_mul(b, a))
               for x in row)


@lru_cache(maxsize=None)
def slice_matrix(kind: str, n: int, m: int) -> SliceMatrix:
    """The symbolic slice e_m + Ker ad(f_m) in the chosen coordinates."""
    triple = one_block_nilpotent(kind, n, m)
    alg = triple.algebra
    size = alg.size
    if kind in ("gl", "sl"):
        names = [f"x({i},{j})" for i in range(1, n + 1) for j in range(1, n + 1)]
        names += [f"u({i})" for i in range(1, n + 1)]
        names += [f"v({i})" for i in range(1, n + 1)]
        names += [f"w({k})" for k in range(1, m)]
        ring = PolyRing(tuple(names))
        mat = _poly_matrix_from_scalar(ring, triple.e_matrix())
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                mat[i - 1][j - 1] = mat[i - 1][j - 1] + ring.var(f"x({i},{j})")
            mat[i - 1][n] = mat[i - 1][n] + ring.var(f"u({i})")
            mat[size - 1][i - 1] = mat[size - 1][i - 1] + ring.var(f"v({i})")
        f_mat = triple.f_matrix()
        power = mat_identity(size)
        for k in range(1, m):
            power = mat_mul(power, f_mat)
            wk = ring.var(f"w({k})")
            for a in range(size):
                for b in range(size):
                    if power[a][b]:
                        mat[a][b] = mat[a][b] + wk * power[a][b]
        lam = ring.zero()
        for i in range(1, n + 1):
            lam = lam - ring.var(f"x({i},{i})")
        lam = lam / m
        for j in range(n, size):
            mat[j][j] = mat[j][j] + lam
        result = SliceMatrix("sl", n, m, ring, mat, triple)
        # Display shape: zeros outside the allowed pattern, trace zero.
        trace = sum((mat[i][i] for i in range(size)), ring.zero())
        if not trace.is_zero():
            raise AssertionError("slice matrix is not traceless")
        for i in range(n):
            for j in range(n + 1, size):
                if not mat[i][j].is_zero():
                    raise AssertionError("unexpected entry in upper-right block")
        for i in range(n, size - 1):
            for j in range(n):
                if not mat[i][j].is_zero():
                    raise AssertionError("unexpected entry in lower-left block")
    else:
        sp_small = build_lie("sp", n)
        names = [label.replace("U", "c") for label in sp_small.basis]
        names += [f"v({i})" for i in range(1, 2 * n + 1)]
        names += [f"w({k})" for k in range(1, m + 1)]
        ring = PolyRing(tuple(names))
        mat = _poly_matrix_from_scalar(ring, triple.e_matrix())
        for label in sp_small.basis:
            var = ring.var(label.replace("U", "c"))
            embedded = sp_corner_embedding_matrix(n, m, sp_small.matrices[label])
            for a in range(size):
                for b in range(size):
                    if embedded[a][b]:
                        mat[a][b] = mat[a][b] + var * embedded[a][b]
        for i in range(1, n + 1):
            u_mat = _ambient_u_matrix(size, i, n + 1)
            var = ring.var(f"v({i})")
            for a in range(size):
                for b in range(size):
                    if u_mat[a][b]:
                        mat[a][b] = mat[a][b] + var * u_mat[a][b]
        for i in range(1, n + 1):
            u_mat = _ambient_u_matrix(size, n + 2 * m + i, n + 1)
            var = ring.var(f"v({n + i})")
            for a in range(size):
                for b in range(size):
                    if u_mat[a][b]:
                        mat[a][b] = mat[a][b] + var * u_mat[a][b]
        f_mat = triple.f_matrix()
        power = mat_identity(size)
        f_sq = mat_mul(f_mat, f_mat)
        for k in range(1, m + 1):
            power = mat_mul(power, f_mat) if k == 1 else mat_mul(power, f_sq)
            wk = ring.var(f"w({k})")
            for a in range(size):
                for b in range(size):
                    if power[a][b]:
                        mat[a][b] = mat[a][b] + wk * power[a][b]
        result = SliceMatrix("sp", n, m, ring, mat, triple)
        defect = _sp_poly_member_defect(mat)
        if defect is not None:
            raise AssertionError(
                f"sp slice violates the membership condition at {defect}")
    f_poly = _poly_matrix_from_scalar(ring, triple.f_matrix())
    e_poly = _poly_matrix_from_scalar(ring, triple.e_matrix())
    moved = mat_sub(result.matrix, e_poly)
    if not _poly_mat_commutes(moved, f_poly):
        raise AssertionError("slice matrix minus e_m does not commute with f_m")
    return result


def _ambient_u_matrix(size: int, i: int, j: int) -> Matrix:
    out = _e_matrix(size, i, j)
    _add_into(out, _e_matrix(size, size + 1 - j, size + 1 - i),
              Fraction((-1) ** (i + j + 1)))
    return out


def _sp_poly_member_defect(mat: list[list[Poly]]) -> tuple[int, int] | None:
    size = len(mat)
    for i in range(1, size + 1):
        for j in range(1, size + 1):
            want = mat[i - 1][j - 1] * ((-1) ** (i + j + 1))
            if mat[size - j][size - i] != want:
                return (i, j)
    return None


@dataclass(eq=False)
class CharInvariants:
    """det(1+zX) coefficients and the symmetric/exterior trace powers."""

    F: list[Poly]      # F[k] = coefficient of z^k in det(1+zX) = tr Lambda^k
    trS: list[Poly]    # trS[k] = trace of X on Sym^k
    trLam: list[Poly]  # alias of F

    def newton_defect(self, l: int) -> Poly:
        """sum_{j<=l} (-1)^j trS^{l-j} trLam^j; identically zero for l >= 1."""
        total = self.trS[0].ring.zero()
        for j in range(l + 1):
            total = total + ((-1) ** j) * self.trS[l - j] * self.trLam[j]
        return total


def char_invariants(x, kmax: int) -> CharInvariants:
    """Characteristic invariants of a square matrix with Poly entries."""
    mat = x.matrix if isinstance(x, SliceMatrix) else x
    ring = None
    for row in mat:
        for entry in row:
            if isinstance(entry, Poly):
                ring = entry.ring
                break
        if ring is not None:
            break
    if ring is None:
        ring = PolyRing(())
        mat = [[ring.const(v) for v in row] for row in mat]
    else:
        mat = [[v if isinstance(v, Poly) else ring.const(v) for v in row]
               for row in mat]
    power = mat
    power_sums = [ring.const(len(mat))]
    for _ in range(kmax):
        power_sums.append(sum((power[i][i] for i in range(len(power))),
                              ring.zero()))
        power = mat_mul(power, mat)
    # Newton recursions: k e_k = sum (-1)^{i-1} e_{k-i} p_i;  k h_k = sum h_{k-i} p_i.
    e = [ring.one()]
    h = [ring.one()]
    for k in range(1, kmax + 1):
        ek = ring.zero()
        hk = ring.zero()
        for i in range(1, k + 1):
            ek = ek + ((-1) ** (i - 1)) * e[k - i] * power_sums[i]
            hk = hk + h[k - i] * power_sums[i]
        e.append(ek / k)
        h.append(hk / k)
    return CharInvariants(F=e, trS=h, trLam=list(e))


def det_series(mat: Sequence[Sequence[Poly]], ring: PolyRing, var: str,
               order: int) -> "TruncSeries":
    """det(1 + var*mat) as a truncated series (independent route, for oracles)."""
    from .exact import TruncSeries
    inv = char_invariants(mat, min(order - 1, len(mat)))
    coeffs = {k: inv.F[k] for k in range(len(inv.F)) if k < order}
    return TruncSeries(ring, var, coeffs, order)
