"""Chow rings of projective bundles as free modules over the base.

For a bundle F of rank n over a base S, CH(P(F)) is represented as the free
module with basis 1, h, ..., h^{n-1} over CH(S), where h is the relative
hyperplane class.  Products are reduced via the defining relation
h^n = -sum_j pull(c_j(F)) h^{n-j}; pushforwards are read off from the Segre
classes of F.  The base may itself be another projective-bundle ring, which
is how towers of bundles (e.g. the exceptional divisor of a blow-up over a
projective bundle) are modelled.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .chern import BundleClass, binomial, dual_bundle, segre_classes, tensor_by_line
from .errors import ConsistencyError


class ProjBundleRing:
    """CH(P(F)) for a bundle F presented by its Chern classes."""

    def __init__(self, base, bundle: BundleClass, hyperplane: str = "h"):
        if bundle.rank < 1:
            raise ValueError("bundle rank must be >= 1")
        if bundle.ring is not base:
            raise ValueError("bundle must live over the base ring")
        self.base = base
        self.bundle = bundle
        self.rank = bundle.rank  # rank of F; the fibre is P^{rank-1}
        self.hyperplane = hyperplane
        n = self.rank
        self.zero = PBElement(self, tuple(base.zero for _ in range(n)))
        self.one = PBElement(
            self, tuple(base.one if k == 0 else base.zero for k in range(n))
        )
        if n >= 2:
            coeffs = [base.zero] * n
            coeffs[1] = base.one
            self.h = PBElement(self, tuple(coeffs))
        else:
            self.h = self.element([base.zero, base.one])
        self._segre: list = [base.one]
        self._tau_rows: list[list] = [
            [base.one if j == 0 else base.zero for j in range(n)]
        ]
        self._h_reduced: list[list] = [list(self.one.coeffs)]

    # ------------------------------------------------------------ elements

    def element(self, coeffs: Sequence) -> "PBElement":
        """Build an element from base coefficients, reducing if over-long."""
        coeffs = [
            self.base.one * c if isinstance(c, (int, Fraction)) else c for c in coeffs
        ]
        return PBElement(self, self.reduce(coeffs))

    def pullback(self, a) -> "PBElement":
        """Ring pullback from the base: coefficient vector (a, 0, ..., 0)."""
        if isinstance(a, (int, Fraction)):
            a = self.base.one * a
        coeffs = [a] + [self.base.zero] * (self.rank - 1)
        return PBElement(self, tuple(coeffs))

    def random_element(self, rng, max_degree: int, coeff_range=(-9, 9)) -> "PBElement":
        coeffs = [
            self.base.random_element(rng, max_degree, coeff_range)
            for _ in range(self.rank)
        ]
        return PBElement(self, tuple(coeffs))

    def reduce(self, coeffs: Sequence) -> tuple:
        """Reduce a coefficient list of any length to the length-n basis."""
        n = self.rank
        work = list(coeffs) + [self.base.zero] * max(0, n - len(coeffs))
        for k in range(len(work) - 1, n - 1, -1):
            top = work[k]
            if top:
                for j in range(1, n + 1):
                    work[k - j] = work[k - j] - self.bundle.c(j) * top
        return tuple(work[:n])

    def mul(self, a: "PBElement", b: "PBElement") -> "PBElement":
        if a.ring is not self or b.ring is not self:
            raise ValueError("elements belong to a different projective-bundle ring")
        n = self.rank
        prod = [self.base.zero] * (2 * n - 1)
        for i, ai in enumerate(a.coeffs):
            if not ai:
                continue
            for j, bj in enumerate(b.coeffs):
                if bj:
                    prod[i + j] = prod[i + j] + ai * bj
        return PBElement(self, self.reduce(prod))

    # ------------------------------------------------- pushforward / Segre

    def segre(self, k: int):
        """s_k(F), with s_k = 0 for k < 0."""
        if k < 0:
            return self.base.zero
        while len(self._segre) <= k:
            self._segre = segre_classes(self.bundle, k)
        return self._segre[k]

    def pushforward(self, a: "PBElement"):
        """Projection pushforward: sum_k a_k s_{k-(n-1)}(F)."""
        n = self.rank
        out = self.base.zero
        for k, ak in enumerate(a.coeffs):
            if ak:
                out = out + ak * self.segre(k - (n - 1))
        return out

    def pushforward_power(self, k: int):
        """Pushforward of h^k computed directly from the Segre classes."""
        return self.segre(k - (self.rank - 1))

    def h_power_coeffs(self, i: int) -> list:
        """Basis coefficients of h^i, by iterated shift-and-reduce."""
        while len(self._h_reduced) <= i:
            prev = self._h_reduced[-1]
            shifted = [self.base.zero] + list(prev)
            self._h_reduced.append(list(self.reduce(shifted)))
        return list(self._h_reduced[i])

    # ----------------------------------------------------------- tau table

    def tau_rows(self, i_max: int) -> list[list]:
        """Rows tau_{i,0..n-1} for i <= i_max, via recursion and reduction.

        The two routes (the coefficient recursion driven by c_j(F), and
        direct basis reduction of h^i) are both computed and must agree.
        """
        n = self.rank
        r = n - 1
        while len(self._tau_rows) <= i_max:
            i = len(self._tau_rows)
            prev = self._tau_rows[-1]
            row = []
            for j in range(n):
                entry = prev[j - 1] if j >= 1 else self.base.zero
                row.append(entry - self.bundle.c(r + 1 - j) * prev[r])
            reduced = self.h_power_coeffs(i)
            for j in range(n):
                if row[j] != reduced[j]:
                    diff = row[j] - reduced[j]
                    raise ConsistencyError(
                        f"tau_{{{i},{j}}} recursion/reduction mismatch",
                        witness=str(diff),
                    )
            self._tau_rows.append(row)
        return [list(row) for row in self._tau_rows[: i_max + 1]]

    def tau(self, i: int, j: int):
        """tau_{i,j}, zero outside 0 <= j <= n-1."""
        if j < 0 or j >= self.rank:
            return self.base.zero
        self.tau_rows(i)
        return self._tau_rows[i][j]

    # ------------------------------------------------- cotangent formulas

    def cotangent_chern(self, i: int) -> "PBElement":
        """c_i of the relative cotangent bundle, in closed form."""
        if i < 0:
            raise ValueError("i must be >= 0")
        n = self.rank
        coeffs = [self.base.zero] * (i + 1)
        for j in range(0, i + 1):
            cj = self.bundle.c(j)
            if cj:
                coeffs[i - j] = coeffs[i - j] + cj * binomial(n - j, i - j)
        return self.element([c * (-1) ** i for c in coeffs])

    def cotangent_chern_via_euler(self, i: int) -> "PBElement":
        """Oracle route: c_i(pull(F dual) tensor O(-1)) from the Euler sequence."""
        if i == 0:
            return self.one
        pulled_dual = BundleClass(
            self,
            self.rank,
            [self.pullback(c) for c in dual_bundle(self.bundle).chern],
        )
        twisted = tensor_by_line(pulled_dual, -self.h)
        return twisted.c(i)

    def cotangent_twist_chern(self, i: int) -> "PBElement":
        """c_i of the cotangent bundle twisted by O(1), in closed form."""
        if i < 0:
            raise ValueError("i must be >= 0")
        dual = dual_bundle(self.bundle)
        coeffs = [self.base.zero] * (i + 1)
        for m in range(0, i + 1):
            coeffs[m] = dual.c(i - m) * (-1) ** m
        return self.element(coeffs)

    def cotangent_twist_via_tensor(self, i: int) -> "PBElement":
        """Oracle route: twist the cotangent classes with tensor_by_line."""
        n = self.rank
        if n == 1:
            return self.one if i == 0 else self.zero
        omega = BundleClass(
            self, n - 1, [self.cotangent_chern(k) for k in range(1, n)]
        )
        return tensor_by_line(omega, self.h).c(i)

    def __repr__(self) -> str:
        return f"ProjBundleRing(rank={self.rank}, {self.hyperplane}, base={self.base!r})"


class PBElement:
    """Element of CH(P(F)) as a length-n coefficient vector over the base."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: ProjBundleRing, coeffs: tuple):
        self.ring = ring
        self.coeffs = tuple(coeffs)

    # ----------------------------------------------------------- structure

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def grade_component(self, d: int) -> "PBElement":
        coeffs = [c.grade_component(d - k) for k, c in enumerate(self.coeffs)]
        return PBElement(self.ring, tuple(coeffs))

    def is_homogeneous(self, d: int | None = None) -> bool:
        if d is None:
            degs = {
                k + dd
                for k, c in enumerate(self.coeffs)
                for dd in range(c.degree() + 1)
                if c.grade_component(dd)
            }
            return len(degs) <= 1
        return all(
            c.is_homogeneous(d - k) or c.is_zero()
            for k, c in enumerate(self.coeffs)
        )

    def degree(self) -> int:
        return max(
            (k + c.degree() for k, c in enumerate(self.coeffs) if c), default=0
        )

    # ---------------------------------------------------------- arithmetic

    def _coerce(self, other) -> "PBElement | None":
        if isinstance(other, PBElement):
            if other.ring is not self.ring:
                raise ValueError("projective-bundle ring mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.pullback(other)
        if getattr(other, "ring", None) is self.ring.base:
            return self.ring.pullback(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return PBElement(
            self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return PBElement(self.ring, tuple(-c for c in self.coeffs))

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
            return PBElement(self.ring, tuple(c * other for c in self.coeffs))
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self.ring.mul(self, coerced)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = self.ring.one
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((id(self.ring), self.coeffs))

    def __str__(self) -> str:
        h = self.ring.hyperplane
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "1" if k == 0 else (h if k == 1 else f"{h}^{k}")
            parts.append(f"({c}) * {mono}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"<{self}>"


# ------------------------------------------------------- binomial identity


def binomial_identity_sum(r: int, i: int, k: int) -> int:
    """T^r_{i,k} = sum_j (-1)^{j+k} C(r-j, i-j) C(r+1-k, j-k)."""
    return sum(
        (-1) ** (j + k) * binomial(r - j, i - j) * binomial(r + 1 - k, j - k)
        for j in range(k, i + 1)
    )


def binomial_identity_check(r: int) -> tuple[bool, list[str]]:
    """Check T^r_{i,k} = (-1)^{i+k} for 0 <= k <= i <= r, plus the recursion
    step T^r_{i+1,k+1} = T^r_{i,k} for i < r.  Returns (ok, failures)."""
    if r < 0:
        raise ValueError("r must be >= 0")
    failures = []
    for i in range(r + 1):
        for k in range(i + 1):
            value = binomial_identity_sum(r, i, k)
            if value != (-1) ** (i + k):
                failures.append(f"T^{r}_{{{i},{k}}} = {value} != {(-1) ** (i + k)}")
            if i < r:
                step = binomial_identity_sum(r, i + 1, k + 1)
                if step != value:
                    failures.append(
                        f"T^{r}_{{{i + 1},{k + 1}}} = {step} != T^{r}_{{{i},{k}}} = {value}"
                    )
    return (not failures, failures)
