"""Formal characteristic-class calculus on bundles given by Chern classes.

A bundle is its rank plus the list c_1..c_rank of Chern classes living in
some ring; everything here (Segre classes, duals, line-bundle twists, Chern
character, Todd class, series square roots, Mukai vectors) is computed
exactly from those classes.  The functions are generic over the coefficient
ring: any ring handle exposing ``zero``/``one`` whose elements support
``+``, ``-``, ``*`` and ``grade_component`` works, so they apply equally to
free graded rings and to projective-bundle Chow rings.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .rings import GradedRing


def binomial(a: int, b: int) -> int:
    """Binomial coefficient with C(a, b) = 0 outside 0 <= b <= a."""
    if b < 0 or b > a:
        return 0
    return math.comb(a, b)


class BundleClass:
    """A formal vector bundle: rank plus Chern classes c_1..c_rank."""

    def __init__(self, ring, rank: int, chern):
        if rank < 1:
            raise ValueError(f"rank must be positive, got {rank}")
        chern = tuple(ring.one * c if isinstance(c, (int, Fraction)) else c for c in chern)
        if len(chern) != rank:
            raise ValueError(f"expected {rank} Chern classes, got {len(chern)}")
        for i, ci in enumerate(chern, start=1):
            if hasattr(ci, "is_homogeneous") and not ci.is_homogeneous(i):
                raise ValueError(f"c_{i} is not homogeneous of degree {i}")
        self.ring = ring
        self.rank = rank
        self.chern = chern

    def c(self, i: int):
        """c_i with the conventions c_0 = 1 and c_i = 0 for i > rank."""
        if i == 0:
            return self.ring.one
        if 1 <= i <= self.rank:
            return self.chern[i - 1]
        return self.ring.zero

    def total_chern(self):
        total = self.ring.one
        for ci in self.chern:
            total = total + ci
        return total

    def __eq__(self, other) -> bool:
        if not isinstance(other, BundleClass):
            return NotImplemented
        return self.rank == other.rank and self.chern == other.chern

    def __repr__(self) -> str:
        return f"BundleClass(rank={self.rank}, c={list(self.chern)!r})"


@dataclass
class CharClass:
    """An inhomogeneous class trusted up to degree ``max_deg``."""

    value: object
    max_deg: int

    def component(self, d: int):
        return self.value.grade_component(d)

    def __add__(self, other: "CharClass") -> "CharClass":
        max_deg = min(self.max_deg, other.max_deg)
        return CharClass(_truncate(self.value + other.value, max_deg), max_deg)

    def __mul__(self, other: "CharClass") -> "CharClass":
        max_deg = min(self.max_deg, other.max_deg)
        return CharClass(_truncate(self.value * other.value, max_deg), max_deg)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CharClass):
            return NotImplemented
        return self.max_deg == other.max_deg and self.value == other.value


def _truncate(x, max_deg: int):
    out = x.grade_component(0)
    for d in range(1, max_deg + 1):
        out = out + x.grade_component(d)
    return out


# ----------------------------------------------------------- basic calculus


def segre_classes(F: BundleClass, k_max: int) -> list:
    """Segre classes s_0..s_{k_max}, inverse of the total Chern class."""
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    s = [F.ring.one]
    for k in range(1, k_max + 1):
        acc = F.ring.zero
        for i in range(1, k + 1):
            acc = acc + F.c(i) * s[k - i]
        s.append(-acc)
    return s


def dual_bundle(F: BundleClass) -> BundleClass:
    """c_j of the dual bundle is (-1)^j c_j."""
    return BundleClass(
        F.ring, F.rank, [F.chern[j - 1] * ((-1) ** j) for j in range(1, F.rank + 1)]
    )


def tensor_by_line(F: BundleClass, l) -> BundleClass:
    """Chern classes of F tensored with a line bundle of first Chern class l."""
    if hasattr(l, "is_homogeneous") and not l.is_homogeneous(1):
        raise ValueError("line class must be homogeneous of degree 1")
    n = F.rank
    lpow = [F.ring.one]
    for _ in range(n):
        lpow.append(lpow[-1] * l)
    chern = []
    for i in range(1, n + 1):
        acc = F.ring.zero
        for j in range(0, i + 1):
            acc = acc + F.c(j) * lpow[i - j] * binomial(n - j, i - j)
        chern.append(acc)
    return BundleClass(F.ring, n, chern)


def whitney_sum(E: BundleClass, F: BundleClass) -> BundleClass:
    """Direct sum: ranks add, total Chern classes multiply."""
    rank = E.rank + F.rank
    chern = []
    for k in range(1, rank + 1):
        acc = E.ring.zero
        for i in range(0, k + 1):
            acc = acc + E.c(i) * F.c(k - i)
        chern.append(acc)
    return BundleClass(E.ring, rank, chern)


def power_sums(F: BundleClass, k_max: int) -> list:
    """Power sums of the Chern roots via Newton's identities (p_0 = rank)."""
    p = [F.ring.one * F.rank]
    for k in range(1, k_max + 1):
        acc = F.c(k) * ((-1) ** (k - 1) * k)
        for i in range(1, k):
            acc = acc + F.c(i) * p[k - i] * ((-1) ** (i - 1))
        p.append(acc)
    return p


def chern_character(F: BundleClass, max_deg: int) -> CharClass:
    """ch(F) = rank + sum_k p_k / k! up to ``max_deg``."""
    p = power_sums(F, max_deg)
    value = F.ring.one * F.rank
    for k in range(1, max_deg + 1):
        value = value + p[k] * Fraction(1, math.factorial(k))
    return CharClass(_truncate(value, max_deg), max_deg)


# ----------------------------------------------------------------- genera


def _inverse_unit_series(coeffs: list[Fraction]) -> list[Fraction]:
    """Multiplicative inverse of a power series with constant term 1."""
    assert coeffs[0] == 1
    inv = [Fraction(1)]
    for m in range(1, len(coeffs)):
        inv.append(-sum(coeffs[i] * inv[m - i] for i in range(1, m + 1)))
    return inv


def todd_series(k_max: int) -> list[Fraction]:
    """Coefficients of t / (1 - e^{-t}) up to t^k_max."""
    # (1 - e^{-t}) / t = sum_m (-1)^m t^m / (m+1)!
    g = [Fraction((-1) ** m, math.factorial(m + 1)) for m in range(k_max + 1)]
    return _inverse_unit_series(g)


def _symmetric_to_elementary(ring: GradedRing, poly, d: int, elementary: list):
    """Rewrite a homogeneous symmetric polynomial in terms of e_1..e_d.

    Standard leading-term elimination: the lex-leading exponent vector of a
    symmetric polynomial is non-increasing and determines a unique product
    of elementary symmetric polynomials with the same lead.
    """
    out = []
    p = poly
    while p.terms:
        lead = max(p.terms)
        coeff = p.terms[lead]
        mults = tuple(
            lead[i] - (lead[i + 1] if i + 1 < d else 0) for i in range(d)
        )
        out.append((mults, coeff))
        q = ring.one * coeff
        for i, m in enumerate(mults):
            if m:
                q = q * elementary[i] ** m
        p = p - q
    return out


@lru_cache(maxsize=None)
def todd_universal(d: int) -> tuple:
    """Degree-d Todd polynomial as (e-exponents, coefficient) pairs.

    Computed by the formal-roots method: adjoin d degree-1 roots, expand the
    genus series over each root, take the degree-d part and re-express it in
    the elementary symmetric polynomials of the roots.
    """
    ring = GradedRing([(f"x{i}", 1) for i in range(d)], dim_bound=d)
    roots = ring.gens()
    q = todd_series(d)
    total = ring.one
    for x in roots:
        factor = ring.zero
        xp = ring.one
        for m in range(d + 1):
            factor = factor + xp * q[m]
            xp = xp * x
        total = total * factor
    component = total.grade_component(d)
    elementary = []
    for k in range(1, d + 1):
        ek = ring.zero
        for subset in _combinations(d, k):
            term = ring.one
            for i in subset:
                term = term * roots[i]
            ek = ek + term
        elementary.append(ek)
    return tuple(_symmetric_to_elementary(ring, component, d, elementary))


def _combinations(n: int, k: int):
    import itertools

    return itertools.combinations(range(n), k)


def todd_class(F: BundleClass, max_deg: int) -> CharClass:
    """Todd class, the multiplicative genus of t / (1 - e^{-t})."""
    value = F.ring.one
    for d in range(1, max_deg + 1):
        for mults, coeff in todd_universal(d):
            term = F.ring.one * coeff
            zero = False
            for i, m in enumerate(mults):
                if m:
                    ci = F.c(i + 1)
                    if not ci:
                        zero = True
                        break
                    term = term * ci ** m
            if not zero:
                value = value + term
    return CharClass(_truncate(value, max_deg), max_deg)


def sqrt_one_series(a: CharClass, max_deg: int | None = None) -> CharClass:
    """Unique square root with constant term 1, degree by degree."""
    if max_deg is None:
        max_deg = a.max_deg
    ring = a.value.ring
    if a.value.grade_component(0) != ring.one:
        raise ValueError("degree-0 part must be 1")
    comps = [ring.one]
    for d in range(1, max_deg + 1):
        acc = a.value.grade_component(d)
        for i in range(1, d):
            acc = acc - comps[i] * comps[d - i]
        comps.append(acc * Fraction(1, 2))
    value = ring.zero
    for c in comps:
        value = value + c
    return CharClass(value, max_deg)


def mukai_vector(F: BundleClass, tangent: BundleClass, max_deg: int) -> CharClass:
    """ch(F) times the square root of the Todd class of the tangent bundle."""
    return chern_character(F, max_deg) * sqrt_one_series(todd_class(tangent, max_deg))
