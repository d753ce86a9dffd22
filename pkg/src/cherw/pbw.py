"""Noncommutative normal ordering over an ordered generator set.

An algebra is presented by a totally ordered list of generators, a
commutative coefficient ring, and a rewrite table giving, for each
out-of-order pair ``g_i g_j`` (``i > j``), the normal-ordered tail ``L``
in ``g_i g_j = g_j g_i + L``.  Elements are stored as maps from sorted
exponent words to coefficient polynomials; multiplication straightens
the leftmost disordered pair one unit at a time.  Every tail must sit
strictly below the product in the weighted degree filtration (or on it
with at most one factor), which makes the rewriting terminate and the
associated graded algebra commutative.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, Sequence, Union

from .exact import Poly, PolyRing, poly_from_jsonable, poly_to_jsonable
from .report import Stopwatch, VerificationReport

# Exponent word: ((generator_index, exponent), ...) with strictly
# increasing indices and nonzero exponents.
Word = tuple[tuple[int, int], ...]

CoeffLike = Union["Poly", Fraction, int]

_STEP_CAP = 2_000_000


class Generator:
    """One generator: label, filtration degree, grading weight, flags."""

    __slots__ = ("label", "degree", "weight", "central", "invertible")

    def __init__(self, label: str, degree: int, weight: int = 0,
                 central: bool = False, invertible: bool = False):
        self.label = label
        self.degree = int(degree)
        self.weight = int(weight)
        self.central = central
        self.invertible = invertible

    def __repr__(self) -> str:
        flags = []
        if self.weight:
            flags.append(f"weight={self.weight}")
        if self.central:
            flags.append("central")
        if self.invertible:
            flags.append("invertible")
        extra = (", " + ", ".join(flags)) if flags else ""
        return f"Generator({self.label!r}, degree={self.degree}{extra})"


class PBWPresentation:
    """Presentation container plus the straightening machinery.

    Rewrites are registered with :meth:`add_rewrite` and may be added
    incrementally, so a builder can already multiply elements involving
    the pairs declared so far.  Registering a rewrite clears the caches.
    """

    def __init__(self, generators: Sequence[Generator], ring: PolyRing,
                 coeff_weights: Mapping[str, int] | None = None):
        labels = [g.label for g in generators]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate generator labels")
        self.generators = tuple(generators)
        self.ring = ring
        self.coeff_weights = dict(coeff_weights or {})
        for name in self.coeff_weights:
            if not ring.has(name):
                raise ValueError(f"weight given for unknown coefficient {name}")
        self._index = {g.label: i for i, g in enumerate(self.generators)}
        self.rewrite: dict[tuple[int, int], PBWElement] = {}
        self._swap_cache: dict[tuple[int, int, int, int], PBWElement] = {}
        self._prod_cache: dict[tuple[Word, Word], dict[Word, Poly]] = {}

    # -- construction ---------------------------------------------------

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown generator {label!r}") from None

    def add_rewrite(self, upper: str, lower: str,
                    tail: Union["PBWElement", Mapping, CoeffLike]) -> None:
        """Declare ``g_upper g_lower = g_lower g_upper + tail``."""
        i, j = self.index(upper), self.index(lower)
        if i <= j:
            raise ValueError(f"rewrite pair must be out of order, got "
                             f"{upper!r} <= {lower!r}")
        gi, gj = self.generators[i], self.generators[j]
        if gi.central or gj.central:
            raise ValueError("central generators cannot carry rewrites")
        elem = self._as_element(tail)
        if not elem.is_zero():
            # Termination certificate: each tail term must sit no higher than
            # the swapped pair in the weighted filtration, and carry strictly
            # smaller bare word degree unless it is at most a single letter.
            bound = gi.degree + gj.degree
            for word, coeff in elem.terms.items():
                bare = self._word_degree(word)
                full = bare + self._coeff_weight(coeff)
                if full > bound or (bare >= bound and len(word) > 1):
                    raise ValueError(
                        f"tail term {self._word_str(word)} of [{upper},{lower}] "
                        f"does not sit below degree {bound} in the filtration")
        self.rewrite[(i, j)] = elem
        self._swap_cache.clear()
        self._prod_cache.clear()

    def _as_element(self, value) -> PBWElement:
        if isinstance(value, PBWElement):
            if value.algebra is not self:
                raise ValueError("element belongs to a different algebra")
            return value
        if isinstance(value, (int, Fraction)):
            return self.scalar(value)
        if isinstance(value, Poly):
            return self.scalar(value)
        if isinstance(value, Mapping):
            out = self.zero()
            for word, coeff in value.items():
                out = out + PBWElement(self, {self._check_word(tuple(word)):
                                              self._coerce_coeff(coeff)})
            return out
        raise TypeError(f"cannot interpret {value!r} as an element")

    def _coerce_coeff(self, c) -> Poly:
        if isinstance(c, Poly):
            if c.ring is not self.ring and c.ring.vars != self.ring.vars:
                return c.cast(self.ring)
            return c
        return self.ring.const(c)

    def _check_word(self, word: Word) -> Word:
        prev = -1
        for idx, exp in word:
            if not 0 <= idx < len(self.generators):
                raise ValueError(f"generator index {idx} out of range")
            if idx <= prev:
                raise ValueError("word indices must strictly increase")
            if exp == 0:
                raise ValueError("zero exponent in word")
            if exp < 0 and not self.generators[idx].invertible:
                raise ValueError(
                    f"negative power of non-invertible generator "
                    f"{self.generators[idx].label}")
            prev = idx
        return word

    # -- element constructors --------------------------------------------

    def zero(self) -> PBWElement:
        return PBWElement(self, {})

    def one(self) -> PBWElement:
        return PBWElement(self, {(): self.ring.one()})

    def scalar(self, c: CoeffLike) -> PBWElement:
        coeff = self._coerce_coeff(c)
        if coeff.is_zero():
            return self.zero()
        return PBWElement(self, {(): coeff})

    def gen(self, label: str, exp: int = 1) -> PBWElement:
        if exp == 0:
            return self.one()
        idx = self.index(label)
        if exp < 0 and not self.generators[idx].invertible:
            raise ValueError(f"generator {label} is not invertible")
        return PBWElement(self, {((idx, exp),): self.ring.one()})

    def element(self, terms: Mapping) -> PBWElement:
        return self._as_element(terms)

    def from_labels(self, word: Iterable) -> PBWElement:
        """Product of generators given as labels or (label, exponent) pairs."""
        runs: list[tuple[int, int]] = []
        for item in word:
            if isinstance(item, str):
                label, exp = item, 1
            else:
                label, exp = item
            idx = self.index(label)
            if exp < 0 and not self.generators[idx].invertible:
                raise ValueError(f"generator {label} is not invertible")
            if exp:
                runs.append((idx, exp))
        terms = self._straighten(runs, self.ring.one())
        return PBWElement(self, terms)

    # -- degrees ----------------------------------------------------------

    def _word_degree(self, word: Word) -> int:
        return sum(exp * self.generators[idx].degree for idx, exp in word)

    def _coeff_weight(self, coeff: Poly) -> int:
        if not self.coeff_weights or coeff.is_zero():
            return 0
        return max(sum(self.coeff_weights.get(v, 0) * e
                       for v, e in zip(coeff.ring.vars, exps))
                   for exps in coeff.terms)

    def degree(self, elem: PBWElement) -> int:
        """Largest filtration degree among terms; -1 for the zero element."""
        if elem.is_zero():
            return -1
        return max(self._word_degree(w) + self._coeff_weight(c)
                   for w, c in elem.terms.items())

    def top_terms(self, elem: PBWElement) -> dict[Word, Poly]:
        """Terms of maximal filtration degree, coefficients filtered to match."""
        top = self.degree(elem)
        out: dict[Word, Poly] = {}
        for word, coeff in elem.terms.items():
            need = top - self._word_degree(word)
            if self.coeff_weights:
                part = coeff.homogeneous_component(need, self.coeff_weights)
            else:
                part = coeff if need == 0 else coeff.ring.zero()
            if not part.is_zero():
                out[word] = part
        return out

    # -- straightening core ------------------------------------------------

    def _unit_swap(self, a: int, sa: int, b: int, sb: int) -> PBWElement:
        """Normal-ordered form of ``g_a^sa g_b^sb`` for a single unit each,
        with ``a > b`` and signs in {1, -1}."""
        key = (a, sa, b, sb)
        cached = self._swap_cache.get(key)
        if cached is not None:
            return cached
        plain = PBWElement(self, {((b, sb), (a, sa)): self.ring.one()})
        tail = self.rewrite.get((a, b))
        if tail is None or tail.is_zero():
            result = plain
        elif sa == 1 and sb == 1:
            result = plain + tail
        elif sa == -1 and sb == -1:
            raise ValueError(
                f"cannot swap two inverted generators "
                f"{self.generators[a].label}, {self.generators[b].label} "
                f"with nonzero bracket")
        else:
            # Deriving the inverted swap needs the tail to commute with
            # the inverted generator.
            inv = a if sa == -1 else b
            probe = self.commutator(tail, self.gen(self.generators[inv].label))
            if not probe.is_zero():
                raise ValueError(
                    f"tail of [{self.generators[a].label},"
                    f"{self.generators[b].label}] does not commute with "
                    f"{self.generators[inv].label}; cannot invert")
            correction = self.mul(tail,
                                  self.gen(self.generators[inv].label, -2))
            result = plain - correction
        self._swap_cache[key] = result
        return result

    def _straighten(self, runs: Sequence[tuple[int, int]],
                    coeff: Poly) -> dict[Word, Poly]:
        out: dict[Word, Poly] = {}
        work: list[tuple[list[tuple[int, int]], Poly]] = [(list(runs), coeff)]
        steps = 0
        while work:
            steps += 1
            if steps > _STEP_CAP:
                raise RuntimeError(
                    "non-terminating rewrite: step cap exceeded while "
                    f"straightening {self._word_str(tuple(runs))}")
            w, c = work.pop()
            if c.is_zero():
                continue
            spot = -1
            for t in range(len(w) - 1):
                if w[t][0] >= w[t + 1][0]:
                    spot = t
                    break
            if spot < 0:
                word = tuple(p for p in w if p[1])
                acc = out.get(word)
                total = c if acc is None else acc + c
                if total.is_zero():
                    out.pop(word, None)
                else:
                    out[word] = total
                continue
            (ga, ea), (gb, eb) = w[spot], w[spot + 1]
            if ga == gb:
                e = ea + eb
                if e and e < 0 and not self.generators[ga].invertible:
                    raise ValueError(
                        f"negative power of non-invertible generator "
                        f"{self.generators[ga].label}")
                nw = w[:spot] + ([(ga, e)] if e else []) + w[spot + 2:]
                work.append((nw, c))
                continue
            sa = 1 if ea > 0 else -1
            sb = 1 if eb > 0 else -1
            swap = self._unit_swap(ga, sa, gb, sb)
            prefix = w[:spot] + ([(ga, ea - sa)] if ea != sa else [])
            suffix = ([(gb, eb - sb)] if eb != sb else []) + w[spot + 2:]
            for word, mc in swap.terms.items():
                work.append((prefix + list(word) + suffix, c * mc))
        return out

    def _mul_words(self, wa: Word, wb: Word) -> dict[Word, Poly]:
        key = (wa, wb)
        cached = self._prod_cache.get(key)
        if cached is None:
            cached = self._straighten(list(wa) + list(wb), self.ring.one())
            self._prod_cache[key] = cached
        return cached

    # -- arithmetic ---------------------------------------------------------

    def mul(self, a: PBWElement, b: PBWElement) -> PBWElement:
        if a.algebra is not self or b.algebra is not self:
            raise ValueError("elements belong to a different algebra")
        acc: dict[Word, Poly] = {}
        for wa, ca in a.terms.items():
            for wb, cb in b.terms.items():
                c = ca * cb
                if c.is_zero():
                    continue
                for word, mc in self._mul_words(wa, wb).items():
                    total = acc.get(word)
                    total = c * mc if total is None else total + c * mc
                    if total.is_zero():
                        acc.pop(word, None)
                    else:
                        acc[word] = total
        return PBWElement(self, acc)

    def commutator(self, a: PBWElement, b: PBWElement) -> PBWElement:
        return self.mul(a, b) - self.mul(b, a)

    def symmetrize(self, letters: Union[Mapping[str, int], Sequence[str]],
                   cap: int = 8) -> PBWElement:
        """Average of all orderings of a commutative monomial in the
        generators, given as label -> multiplicity or as a label list."""
        if isinstance(letters, Mapping):
            multiset: list[str] = []
            for label, mult in sorted(letters.items()):
                if mult < 0:
                    raise ValueError("symmetrize needs nonnegative powers")
                multiset.extend([label] * mult)
        else:
            multiset = list(letters)
        k = len(multiset)
        if k > cap:
            raise ValueError(f"symmetrization degree cap: {k} > {cap}")
        if k == 0:
            return self.one()
        for label in multiset:
            self.index(label)
        seen = set(permutations(multiset))
        weight = Fraction(len(seen), 1)
        acc = self.zero()
        for arrangement in seen:
            acc = acc + self.from_labels(arrangement)
        return acc * (1 / weight)

    # -- diagnostics --------------------------------------------------------

    def consistency_check(self, through_degree: int,
                          suite: str = "pbw") -> VerificationReport:
        """Compare the two association orders of ``g_a g_b g_c`` over all
        descending generator triples within the degree budget."""
        report = VerificationReport(
            suite=suite,
            params={"through_degree": through_degree,
                    "generators": len(self.generators)})
        n = len(self.generators)
        checked = 0
        failures = 0
        with Stopwatch() as sw:
            for a in range(n - 1, 1, -1):
                for b in range(a - 1, 0, -1):
                    for c in range(b - 1, -1, -1):
                        total = (self.generators[a].degree
                                 + self.generators[b].degree
                                 + self.generators[c].degree)
                        if total > through_degree:
                            continue
                        A = self.gen(self.generators[a].label)
                        B = self.gen(self.generators[b].label)
                        C = self.gen(self.generators[c].label)
                        left = self.mul(self.mul(A, B), C)
                        right = self.mul(A, self.mul(B, C))
                        checked += 1
                        if left != right:
                            failures += 1
                            if failures <= 5:
                                diff = left - right
                                report.add_fail(
                                    identity=f"associativity({self.generators[a].label},"
                                             f"{self.generators[b].label},"
                                             f"{self.generators[c].label})",
                                    anchor="straightening agrees for both "
                                           "association orders of a triple",
                                    witness={"difference": str(diff)})
        if failures == 0:
            report.add_pass(
                identity="associativity-overlaps",
                anchor="straightening agrees for both association orders "
                       "on all descending generator triples",
                witness={"triples_checked": checked},
                seconds=sw.seconds)
        elif failures > 5:
            report.add_fail(
                identity="associativity-overlaps",
                anchor="straightening agrees for both association orders "
                       "on all descending generator triples",
                witness={"failures": failures, "triples_checked": checked},
                seconds=sw.seconds)
        return report

    # -- display ------------------------------------------------------------

    def _word_str(self, word: Word) -> str:
        if not word:
            return "1"
        parts = []
        for idx, exp in word:
            label = self.generators[idx].label
            parts.append(label if exp == 1 else f"{label}^{exp}")
        return "*".join(parts)


class PBWElement:
    """Linear combination of sorted exponent words with Poly coefficients."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: PBWPresentation, terms: Mapping[Word, Poly]):
        clean: dict[Word, Poly] = {}
        for word, coeff in terms.items():
            if not coeff.is_zero():
                clean[word] = coeff
        self.algebra = algebra
        self.terms = clean

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word: Word) -> Poly:
        return self.terms.get(tuple(word), self.algebra.ring.zero())

    def constant(self) -> Poly:
        return self.terms.get((), self.algebra.ring.zero())

    def __add__(self, other):
        other = self.algebra._as_element(other)
        out = dict(self.terms)
        for word, coeff in other.terms.items():
            acc = out.get(word)
            total = coeff if acc is None else acc + coeff
            if total.is_zero():
                out.pop(word, None)
            else:
                out[word] = total
        return PBWElement(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return PBWElement(self.algebra,
                          {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self.algebra._as_element(other))

    def __rsub__(self, other):
        return self.algebra._as_element(other) + (-self)

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return self.algebra.mul(self, other)
        coeff = self.algebra._coerce_coeff(other)
        return PBWElement(self.algebra,
                          {w: c * coeff for w, c in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, PBWElement):
            return self.algebra.mul(other, self)
        return self.__mul__(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers only via invertible generators")
        out = self.algebra.one()
        base = self
        k = n
        while k:
            if k & 1:
                out = self.algebra.mul(out, base)
            base_needed = k >> 1
            if base_needed:
                base = self.algebra.mul(base, base)
            k = base_needed
        return out

    def bracket(self, other) -> "PBWElement":
        return self.algebra.commutator(self, self.algebra._as_element(other))

    def __eq__(self, other):
        if isinstance(other, PBWElement):
            return self.algebra is other.algebra and self.terms == other.terms
        if isinstance(other, (int, Fraction, Poly)):
            return self == self.algebra.scalar(other)
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        if not self.terms:
            return "0"
        ordered = sorted(
            self.terms.items(),
            key=lambda t: (-self.algebra._word_degree(t[0]), t[0]))
        parts = []
        for word, coeff in ordered:
            body = self.algebra._word_str(word)
            cs = coeff.canonical_str()
            if body == "1":
                parts.append(cs)
            elif cs == "1":
                parts.append(body)
            elif cs == "-1":
                parts.append(f"-{body}")
            elif "+" in cs or (cs.count("-") - cs.startswith("-")) > 0:
                parts.append(f"({cs})*{body}")
            else:
                parts.append(f"{cs}*{body}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    __repr__ = __str__


# -- serialization -------------------------------------------------------


def element_to_jsonable(elem: PBWElement) -> list:
    alg = elem.algebra
    items = []
    for word, coeff in elem.terms.items():
        named = [[alg.generators[i].label, e] for i, e in word]
        items.append([named, poly_to_jsonable(coeff)])
    items.sort(key=lambda t: t[0])
    return items


def element_from_jsonable(alg: PBWPresentation, data: Iterable) -> PBWElement:
    terms: dict[Word, Poly] = {}
    for named, coeff in data:
        word = tuple((alg.index(label), int(e)) for label, e in named)
        terms[alg._check_word(word)] = poly_from_jsonable(coeff, alg.ring)
    return PBWElement(alg, terms)


def presentation_to_jsonable(alg: PBWPresentation) -> dict:
    return {
        "generators": [[g.label, g.degree, g.weight, g.central, g.invertible]
                       for g in alg.generators],
        "ring": list(alg.ring.vars),
        "coeff_weights": dict(sorted(alg.coeff_weights.items())),
        "rewrite": sorted(
            ([alg.generators[i].label, alg.generators[j].label,
              element_to_jsonable(tail)]
             for (i, j), tail in alg.rewrite.items()),
            key=lambda t: (t[0], t[1])),
    }


def presentation_from_jsonable(data: Mapping) -> PBWPresentation:
    gens = [Generator(label, degree, weight=weight,
                      central=central, invertible=invertible)
            for label, degree, weight, central, invertible
            in data["generators"]]
    alg = PBWPresentation(gens, PolyRing(tuple(data["ring"])),
                          data.get("coeff_weights") or None)
    for upper, lower, tail in data["rewrite"]:
        alg.add_rewrite(upper, lower, element_from_jsonable(alg, tail))
    return alg


def enveloping(lie, ring: PolyRing | None = None, degree: int = 2,
               coeff_weights: Mapping[str, int] | None = None) -> PBWPresentation:
    """Presentation of the enveloping algebra of tabulated structure constants.

    Generator order follows the basis order of ``lie``; every generator gets
    the same filtration degree (2 by default, matching the convention that
    group-like directions weigh 2).
    """
    if ring is None:
        ring = PolyRing(())
    gens = [Generator(label, degree) for label in lie.basis]
    p = PBWPresentation(gens, ring, coeff_weights)
    for i, upper in enumerate(lie.basis):
        for lower in lie.basis[:i]:
            tail = {((p.index(lbl), 1),): ring.const(c)
                    for lbl, c in lie.bracket_table[(upper, lower)].items()
                    if c}
            if tail:
                p.add_rewrite(upper, lower, tail)
    return p


# -- module-level operations ----------------------------------------------


def normal_order(p: PBWPresentation, word: Iterable) -> PBWElement:
    """Product of the given generator word in the ordered-monomial basis."""
    return p.from_labels(word)


def commutator(p: PBWPresentation, a: PBWElement, b: PBWElement) -> PBWElement:
    return p.commutator(a, b)


def symmetrize(p: PBWPresentation, mono, cap: int = 8) -> PBWElement:
    return p.symmetrize(mono, cap=cap)


def consistency_check(p: PBWPresentation, through_degree: int,
                      suite: str = "pbw") -> VerificationReport:
    return p.consistency_check(through_degree, suite=suite)
