"""Exact graded-commutative polynomial rings over the rationals.

Elements are sparse polynomials in named generators with assigned degrees.
Coefficients are `fractions.Fraction`, terms are kept in canonical form (no
zero coefficients), and an optional dimension bound truncates everything of
higher total degree after each operation.  All generators commute.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Exponents = tuple[int, ...]


@dataclass(frozen=True)
class RingSpec:
    """Declarative description of a graded ring.

    ``generators`` is a sequence of (name, degree) pairs; ``dim_bound``, when
    set, kills every homogeneous component of total degree above it;
    ``integral`` additionally asserts that all coefficients are integers.
    """

    generators: tuple[tuple[str, int], ...]
    dim_bound: int | None = None
    integral: bool = False


def ring_make(spec: RingSpec) -> "GradedRing":
    return GradedRing(spec.generators, dim_bound=spec.dim_bound, integral=spec.integral)


class GradedRing:
    """A free graded-commutative polynomial ring with rational coefficients."""

    def __init__(
        self,
        generators: Iterable[tuple[str, int]],
        dim_bound: int | None = None,
        integral: bool = False,
    ):
        gens = tuple((str(name), int(deg)) for name, deg in generators)
        names = [name for name, _ in gens]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator name in {names}")
        for name, deg in gens:
            if not name.isidentifier():
                raise ValueError(f"generator name {name!r} is not an identifier")
            if deg < 0:
                raise ValueError(f"generator {name} has negative degree {deg}")
        if dim_bound is not None and dim_bound < 0:
            raise ValueError(f"dim_bound must be >= 0, got {dim_bound}")
        self.generator_names = tuple(names)
        self.degrees = tuple(deg for _, deg in gens)
        self.dim_bound = dim_bound
        self.integral = integral
        self.nvars = len(gens)
        self._index = {name: i for i, name in enumerate(names)}
        self.zero = GradedElement(self, {})
        self.one = GradedElement(self, {(0,) * self.nvars: Fraction(1)})

    # -------------------------------------------------------------- basics

    def gen(self, name: str) -> "GradedElement":
        i = self._index[name]
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return GradedElement(self, {exps: Fraction(1)})

    def gens(self) -> list["GradedElement"]:
        return [self.gen(name) for name in self.generator_names]

    def scalar(self, c) -> "GradedElement":
        c = Fraction(c)
        if c == 0:
            return self.zero
        return GradedElement(self, {(0,) * self.nvars: c})

    def element(self, terms: Mapping[Exponents, object]) -> "GradedElement":
        """Build an element from an exponents -> coefficient mapping."""
        out: dict[Exponents, Fraction] = {}
        for exps, coeff in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != self.nvars or any(e < 0 for e in exps):
                raise ValueError(f"bad exponent tuple {exps}")
            coeff = Fraction(coeff)
            if coeff:
                out[exps] = out.get(exps, Fraction(0)) + coeff
        return self._canonical(out)

    def monomial_degree(self, exps: Exponents) -> int:
        return sum(e * d for e, d in zip(exps, self.degrees))

    def _canonical(self, terms: dict[Exponents, Fraction]) -> "GradedElement":
        bound = self.dim_bound
        clean = {
            exps: coeff
            for exps, coeff in terms.items()
            if coeff and (bound is None or self.monomial_degree(exps) <= bound)
        }
        if self.integral:
            for exps, coeff in clean.items():
                if coeff.denominator != 1:
                    raise ValueError(
                        f"non-integral coefficient {coeff} at {exps} in integral ring"
                    )
        return GradedElement(self, clean)

    def same_ring(self, other: "GradedRing") -> bool:
        return self is other

    def __repr__(self) -> str:
        gens = ", ".join(
            f"{n}:{d}" for n, d in zip(self.generator_names, self.degrees)
        )
        bound = "" if self.dim_bound is None else f", dim<={self.dim_bound}"
        return f"GradedRing({gens}{bound})"

    # ------------------------------------------------------------ sampling

    def monomials_of_degree(self, d: int) -> Iterator[Exponents]:
        """All monomials of weighted degree exactly d (positive-degree rings)."""
        if any(deg == 0 for deg in self.degrees):
            raise ValueError("monomial enumeration needs all generator degrees >= 1")

        def rec(i: int, remaining: int, prefix: tuple[int, ...]):
            if i == self.nvars:
                if remaining == 0:
                    yield prefix
                return
            deg = self.degrees[i]
            for e in range(remaining // deg + 1):
                yield from rec(i + 1, remaining - e * deg, prefix + (e,))

        yield from rec(0, d, ())

    def monomials_up_to(self, d: int) -> Iterator[Exponents]:
        for k in range(d + 1):
            yield from self.monomials_of_degree(k)

    def random_homogeneous(self, rng, degree: int, coeff_range=(-9, 9)) -> "GradedElement":
        lo, hi = coeff_range
        terms = {m: Fraction(rng.randint(lo, hi)) for m in self.monomials_of_degree(degree)}
        return self._canonical(terms)

    def random_element(self, rng, max_degree: int, coeff_range=(-9, 9)) -> "GradedElement":
        lo, hi = coeff_range
        terms = {m: Fraction(rng.randint(lo, hi)) for m in self.monomials_up_to(max_degree)}
        return self._canonical(terms)

    # ------------------------------------------------------------- parsing

    def parse(self, text: str) -> "GradedElement":
        """Inverse of ``str(element)`` for the canonical serialization."""
        text = text.strip()
        if text == "0":
            return self.zero
        terms: dict[Exponents, Fraction] = {}
        for chunk in text.split(" + "):
            chunk = chunk.strip()
            if " * " in chunk:
                coeff_str, mono_str = chunk.split(" * ", 1)
                coeff = Fraction(coeff_str)
            else:
                try:
                    coeff, mono_str = Fraction(chunk), None
                except ValueError:
                    coeff, mono_str = Fraction(1), chunk  # bare monomial
            if mono_str is None:
                key = (0,) * self.nvars
            else:
                exps = [0] * self.nvars
                for factor in mono_str.split("*"):
                    if "^" in factor:
                        name, power = factor.split("^")
                        e = int(power)
                    else:
                        name, e = factor, 1
                    exps[self._index[name.strip()]] += e
                key = tuple(exps)
            terms[key] = terms.get(key, Fraction(0)) + coeff
        return self._canonical(terms)


class GradedElement:
    """An element of a :class:`GradedRing` in canonical form."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: GradedRing, terms: dict[Exponents, Fraction]):
        self.ring = ring
        self.terms = terms

    # ----------------------------------------------------------- structure

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def degree(self) -> int:
        """Max weighted degree of a term (0 for the zero element)."""
        if not self.terms:
            return 0
        return max(self.ring.monomial_degree(e) for e in self.terms)

    def grade_component(self, d: int) -> "GradedElement":
        if d < 0:
            return self.ring.zero
        deg = self.ring.monomial_degree
        return GradedElement(
            self.ring, {e: c for e, c in self.terms.items() if deg(e) == d}
        )

    def is_homogeneous(self, d: int | None = None) -> bool:
        degs = {self.ring.monomial_degree(e) for e in self.terms}
        if d is None:
            return len(degs) <= 1
        return degs <= {d}

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    # ---------------------------------------------------------- arithmetic

    def _coerce(self, other) -> "GradedElement | None":
        if isinstance(other, GradedElement):
            if other.ring is not self.ring:
                raise ValueError("elements belong to different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return self.ring._canonical(terms)

    __radd__ = __add__

    def __neg__(self):
        return GradedElement(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return self.ring.zero
            return self.ring._canonical({e: k * c for e, k in self.terms.items()})
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        ring = self.ring
        bound = ring.dim_bound
        deg = ring.monomial_degree
        terms: dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                if bound is not None and deg(e) > bound:
                    continue
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return ring._canonical(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = self.ring.one
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ring.scalar(other)
        if not isinstance(other, GradedElement) or other.ring is not self.ring:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash((id(self.ring), frozenset(self.terms.items())))

    # -------------------------------------------------------- substitution

    def substitute(self, images: Mapping[str, object], target) -> object:
        """Evaluate the polynomial at ``images`` inside the ring ``target``.

        Images are required only for generators that actually occur; the
        result is canonical in the target ring.  ``target`` may be any ring
        handle whose elements support addition and multiplication.
        """
        ring = self.ring
        used = [i for i in range(ring.nvars) if any(e[i] for e in self.terms)]
        for i in used:
            if ring.generator_names[i] not in images:
                raise KeyError(
                    f"no image for generator {ring.generator_names[i]!r}"
                )
        powers: dict[int, list] = {}  # generator index -> cached powers

        def power(i: int, e: int):
            cache = powers.setdefault(i, [target.one])
            while len(cache) <= e:
                cache.append(cache[-1] * images[ring.generator_names[i]])
            return cache[e]

        result = target.zero
        for exps, coeff in self.terms.items():
            term = target.one * coeff
            for i in used:
                if exps[i]:
                    term = term * power(i, exps[i])
            result = result + term
        return result

    # ------------------------------------------------------- serialization

    def _sorted_terms(self):
        deg = self.ring.monomial_degree
        return sorted(self.terms.items(), key=lambda kv: (deg(kv[0]), kv[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        names = self.ring.generator_names
        parts = []
        for exps, coeff in self._sorted_terms():
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            if factors:
                parts.append(f"{coeff} * " + "*".join(factors))
            else:
                parts.append(str(coeff))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<{self}>"
