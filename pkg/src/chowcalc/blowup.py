"""Chow rings of blow-ups along smoothly embedded projective centers.

A blow-up of X along P is described by an :class:`EmbeddingData`: ring
models for CH(X) and CH(P), the restriction i^* (generator images), the
pushforward i_* (a table on monomials), and the normal bundle N.  Classes on
the blown-up space are stored as a pair (ambient part, exceptional part),
where the exceptional part lives in CH(E) = CH(P(N)) and is normalized to
have zero pushforward to the center.  The normal bundle of E is O_{P(N)}(-1),
so the exceptional self-intersection multiplies by -xi.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .chern import BundleClass
from .errors import ConsistencyError
from .projbundle import PBElement, ProjBundleRing
from .rings import GradedElement, GradedRing


def cw_top(pb: ProjBundleRing) -> PBElement:
    """Top Chern class of the universal quotient W = pullback(N) / O(-1)
    on P(N), where N is the bundle the projective bundle is built from."""
    from .chern import dual_bundle

    r = pb.rank
    n_dual = dual_bundle(pb.bundle)
    coeffs = [n_dual.c(r - 1 - m) * ((-1) ** (r - 1) * (-1) ** m) for m in range(r)]
    return pb.element(coeffs)


def key_formula_check(bl: "BlowupRing", gamma: GradedElement) -> None:
    """Pulling back a pushed-forward center class must equal pushing the
    cW-twisted pullback in from the exceptional divisor."""
    lhs = bl.pull(bl.data.push(gamma))
    rhs = bl.exc_push(bl.cW * bl.E.pullback(gamma))
    if lhs != rhs:
        raise ConsistencyError(
            "key formula fails",
            witness=f"ambient {lhs.ambient - rhs.ambient}; "
            f"exceptional {lhs.exceptional - rhs.exceptional}",
        )


@dataclass
class EmbeddingData:
    """A codimension-r regular embedding P -> X presented algebraically."""

    ambient: GradedRing
    center: GradedRing
    codim: int
    pull_images: dict[str, GradedElement]
    push_table: dict[tuple[int, ...], GradedElement]
    normal: BundleClass

    def __post_init__(self):
        if self.codim < 1:
            raise ValueError(f"codimension must be >= 1, got {self.codim}")
        if self.normal.rank != self.codim:
            raise ValueError("normal bundle rank must equal the codimension")
        if self.normal.ring is not self.center:
            raise ValueError("normal bundle must live over the center ring")

    def pull(self, alpha: GradedElement) -> GradedElement:
        """i^*: restrict an ambient class to the center."""
        return alpha.substitute(self.pull_images, self.center)

    def push(self, gamma: GradedElement) -> GradedElement:
        """i_*: extend the monomial table linearly."""
        out = self.ambient.zero
        for exps, coeff in gamma.terms.items():
            if exps not in self.push_table:
                raise KeyError(f"pushforward table has no entry for monomial {exps}")
            out = out + self.push_table[exps] * coeff
        return out


@dataclass
class ValidationReport:
    ok: bool
    checks: int
    failures: list[str] = field(default_factory=list)


def embedding_validate(data: EmbeddingData, samples: int, seed: int = 0) -> ValidationReport:
    """Sample-check the homomorphism, projection and self-intersection laws."""
    rng = random.Random(seed)
    failures: list[str] = []
    amb_deg = data.ambient.dim_bound
    cen_deg = data.center.dim_bound
    if amb_deg is None or cen_deg is None:
        raise ValueError("validation sampling needs dimension-bounded rings")
    c_top = data.normal.c(data.codim)
    for _ in range(samples):
        a = data.ambient.random_element(rng, amb_deg)
        b = data.ambient.random_element(rng, amb_deg)
        g = data.center.random_element(rng, cen_deg)
        g2 = data.center.random_element(rng, cen_deg)
        lhs = data.pull(a * b)
        rhs = data.pull(a) * data.pull(b)
        if lhs != rhs:
            failures.append(f"i^* not multiplicative: diff {lhs - rhs}")
            break
        lhs = data.push(data.pull(a) * g)
        rhs = a * data.push(g)
        if lhs != rhs:
            failures.append(f"projection formula fails: diff {lhs - rhs}")
            break
        lhs = data.push(g) * data.push(g2)
        rhs = data.push(g * g2 * c_top)
        if lhs != rhs:
            failures.append(f"self-intersection fails: diff {lhs - rhs}")
            break
    return ValidationReport(not failures, samples, failures)


def linear_blowup(n: int, m: int) -> EmbeddingData:
    """A linear subspace P^m inside P^n, with N = O(1)^(n-m)."""
    if not 0 <= m < n:
        raise ValueError(f"need 0 <= m < n, got m={m}, n={n}")
    ambient = GradedRing([("t", 1)], dim_bound=n)
    center = GradedRing([("u", 1)], dim_bound=m)
    t, u = ambient.gen("t"), center.gen("u")
    r = n - m
    push_table = {(k,): t ** (k + r) for k in range(m + 1)}
    normal = BundleClass(
        center, r, [u ** i * Fraction(_comb(r, i)) for i in range(1, r + 1)]
    )
    return EmbeddingData(ambient, center, r, {"t": u}, push_table, normal)


def _comb(a: int, b: int) -> int:
    import math

    return math.comb(a, b)


class BlowupRing:
    """Arithmetic on the blow-up of X along P, in normalized coordinates."""

    def __init__(self, data: EmbeddingData, validate_samples: int = 0, seed: int = 0):
        self.data = data
        self.r = data.codim
        self.E = ProjBundleRing(data.center, data.normal, hyperplane="xi")
        self.xi = self.E.h
        self.cW = self.cW_top()
        if validate_samples:
            report = embedding_validate(data, validate_samples, seed)
            if not report.ok:
                raise ConsistencyError(
                    "embedding data rejected", witness="; ".join(report.failures)
                )

    # ----------------------------------------------------------- key class

    def cW_top(self) -> PBElement:
        """c_{r-1} of W = eta^*(N) / O(-1), the universal quotient bundle."""
        return cw_top(self.E)

    # ------------------------------------------------------------- classes

    def pull(self, alpha: GradedElement) -> "BlowupClass":
        """phi^*: ambient part alpha, no exceptional part."""
        return BlowupClass(self, alpha, self.E.zero)

    def push(self, a: "BlowupClass") -> GradedElement:
        """phi_*: the ambient part (the exceptional part pushes to zero)."""
        return a.ambient + self.data.push(self.E.pushforward(a.exceptional))

    def exc_push(self, eps: PBElement) -> "BlowupClass":
        """j_*: push a class on E into the blow-up, in normalized form."""
        eta_push = self.E.pushforward(eps)
        normalized = eps - self.cW * self.E.pullback(eta_push)
        return BlowupClass(self, self.data.push(eta_push), normalized)

    def delta_decompose(self, a: "BlowupClass") -> PBElement:
        """The unique eps with zero pushforward and j_*(eps) = a."""
        if self.push(a):
            raise ValueError("class does not push forward to zero")
        return a.exceptional

    def mul(self, a: "BlowupClass", b: "BlowupClass") -> "BlowupClass":
        if a.blowup is not self or b.blowup is not self:
            raise ValueError("classes belong to a different blow-up")
        restrict_a = self.E.pullback(self.data.pull(a.ambient))
        restrict_b = self.E.pullback(self.data.pull(b.ambient))
        # phi^*a.phi^*b + mixed projection-formula terms + E self-intersection
        exc = (
            restrict_a * b.exceptional
            + restrict_b * a.exceptional
            - self.xi * a.exceptional * b.exceptional
        )
        mixed = self.exc_push(exc)
        return BlowupClass(
            self, a.ambient * b.ambient + mixed.ambient, mixed.exceptional
        )


@dataclass
class BlowupClass:
    """phi^*(ambient) + j_*(exceptional), with eta_*(exceptional) = 0."""

    blowup: BlowupRing
    ambient: GradedElement
    exceptional: PBElement

    def __add__(self, other: "BlowupClass") -> "BlowupClass":
        if other.blowup is not self.blowup:
            raise ValueError("classes belong to a different blow-up")
        return BlowupClass(
            self.blowup,
            self.ambient + other.ambient,
            self.exceptional + other.exceptional,
        )

    def __sub__(self, other: "BlowupClass") -> "BlowupClass":
        return self + BlowupClass(self.blowup, -other.ambient, -other.exceptional)

    def __mul__(self, other: "BlowupClass") -> "BlowupClass":
        return self.blowup.mul(self, other)

    def __neg__(self) -> "BlowupClass":
        return BlowupClass(self.blowup, -self.ambient, -self.exceptional)

    def __pow__(self, k: int) -> "BlowupClass":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = self.blowup.pull(self.blowup.data.ambient.one)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, BlowupClass):
            return NotImplemented
        return self.ambient == other.ambient and self.exceptional == other.exceptional

    def is_zero(self) -> bool:
        return self.ambient.is_zero() and self.exceptional.is_zero()

    def __str__(self) -> str:
        return f"ambient: {self.ambient}; exceptional: {self.exceptional}"


# --------------------------------------------------------- declarative I/O


def load_embedding(text: str) -> EmbeddingData:
    """Parse an embedding from a declarative description.

    Sections ``[ambient]``, ``[center]``, ``[pull]``, ``[push]``, ``[normal]``.
    Ring sections take ``generators: name:deg, ...`` and ``dim_bound: k``;
    pull maps ambient generators to center expressions; push maps center
    monomials to ambient expressions; normal takes ``rank`` and ``c1``..``cr``.
    Lines starting with ``#`` are ignored.
    """
    sections: dict[str, list[tuple[str, str]]] = {}
    current = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = line[1:-1].strip().lower()
            sections[current] = []
            continue
        if current is None:
            raise ValueError(f"content before any section: {line!r}")
        for sep in (":", "="):
            if sep in line:
                key, value = line.split(sep, 1)
                sections[current].append((key.strip(), value.strip()))
                break
        else:
            raise ValueError(f"cannot parse line {line!r}")

    def build_ring(name: str) -> GradedRing:
        entries = dict(sections[name])
        gens = []
        for part in entries["generators"].split(","):
            gname, deg = part.strip().split(":")
            gens.append((gname.strip(), int(deg)))
        bound = entries.get("dim_bound")
        return GradedRing(gens, dim_bound=None if bound is None else int(bound))

    ambient = build_ring("ambient")
    center = build_ring("center")
    pull_images = {k: center.parse(v) for k, v in sections["pull"]}
    push_table = {}
    for mono_str, value in sections["push"]:
        mono = center.parse(mono_str)
        if len(mono.terms) != 1 or next(iter(mono.terms.values())) != 1:
            raise ValueError(f"push key must be a single monomial: {mono_str!r}")
        push_table[next(iter(mono.terms))] = ambient.parse(value)
    normal_entries = dict(sections["normal"])
    rank = int(normal_entries["rank"])
    chern = [center.parse(normal_entries[f"c{i}"]) for i in range(1, rank + 1)]
    return EmbeddingData(
        ambient, center, rank, pull_images, push_table, BundleClass(center, rank, chern)
    )
