"""
Truncated Poincare series of graded vector spaces.

A series is a tuple of integer coefficients indexed by degree, kept up
to a truncation degree N. Products are Kunneth tensor products; the
free product of connected series follows 1/P = 1/P_A + 1/P_B - 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Tuple

from .algebras import build_algebra
from .complexes import ComplexSpec, betti
from .exceptions import ConfigurationError
from .types import RankStrategy


logger = logging.getLogger(__name__)

TARGETS = ("lie_sch", "leibniz_sch", "leibniz_galilei")
GAMMA_DEGREES = ("2n-2", "2n-1")


@dataclass(frozen=True, slots=True)
class PoincareSeries:
    coefficients: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coefficients:
            raise ConfigurationError("a series needs at least the degree-0 coefficient")
        if any(not isinstance(c, int) for c in self.coefficients):
            raise ConfigurationError("series coefficients must be integers")

    # ----------------------------------------
    # Construction
    # ----------------------------------------

    @classmethod
    def of(cls, coefficients: Iterable[int], truncation: int) -> "PoincareSeries":
        """
        Pad with zeros or cut so that degrees 0..truncation are present.
        """
        if truncation < 0:
            raise ConfigurationError("truncation must be >= 0")
        coeffs = [int(c) for c in coefficients][: truncation + 1]
        coeffs += [0] * (truncation + 1 - len(coeffs))
        return cls(tuple(coeffs))

    @classmethod
    def one(cls, truncation: int) -> "PoincareSeries":
        return cls.of([1], truncation)

    @classmethod
    def monomial(cls, degree: int, truncation: int, coefficient: int = 1) -> "PoincareSeries":
        return cls.of([0] * degree + [coefficient], truncation)

    @classmethod
    def geometric(cls, degree: int, truncation: int) -> "PoincareSeries":
        """
        1/(1 - t^degree): the tensor algebra on one generator of that degree.
        """
        if degree < 1:
            raise ConfigurationError("generator degree must be >= 1")
        return cls.of(
            [1 if i % degree == 0 else 0 for i in range(truncation + 1)], truncation
        )

    @classmethod
    def from_betti(
        cls, betti: Sequence[Optional[int]], truncation: Optional[int] = None
    ) -> "PoincareSeries":
        if any(b is None for b in betti):
            raise ConfigurationError("cannot build a series from skipped degrees")
        if truncation is None:
            truncation = len(betti) - 1
        return cls.of(betti, truncation)

    # ----------------------------------------
    # Derived properties
    # ----------------------------------------

    @property
    def truncation(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, degree: int) -> int:
        return self.coefficients[degree]

    def to_list(self) -> List[int]:
        return list(self.coefficients)

    def truncate(self, truncation: int) -> "PoincareSeries":
        return PoincareSeries.of(self.coefficients, truncation)

    def _common(self, other: "PoincareSeries") -> int:
        if not isinstance(other, PoincareSeries):
            raise ConfigurationError("expected a PoincareSeries")
        return min(self.truncation, other.truncation)

    # ----------------------------------------
    # Arithmetic
    # ----------------------------------------

    def __add__(self, other: "PoincareSeries") -> "PoincareSeries":
        N = self._common(other)
        return PoincareSeries.of(
            [self[i] + other[i] for i in range(N + 1)], N
        )

    def __sub__(self, other: "PoincareSeries") -> "PoincareSeries":
        N = self._common(other)
        return PoincareSeries.of(
            [self[i] - other[i] for i in range(N + 1)], N
        )

    def tensor(self, other: "PoincareSeries") -> "PoincareSeries":
        """
        Coefficient-wise convolution, truncated at the common degree.
        """
        N = self._common(other)
        out = [0] * (N + 1)
        for i in range(N + 1):
            if not self[i]:
                continue
            for j in range(N + 1 - i):
                out[i + j] += self[i] * other[j]
        return PoincareSeries(tuple(out))

    __mul__ = tensor

    def inverse(self) -> "PoincareSeries":
        """
        Truncated reciprocal; needs a constant term of 1 or -1.
        """
        c0 = self[0]
        if c0 not in (1, -1):
            raise ConfigurationError("only series with constant term ±1 invert over Z")
        N = self.truncation
        out = [0] * (N + 1)
        out[0] = c0
        for m in range(1, N + 1):
            total = sum(self[i] * out[m - i] for i in range(1, m + 1))
            out[m] = -total * c0
        return PoincareSeries(tuple(out))

    def free_product(self, other: "PoincareSeries") -> "PoincareSeries":
        """
        Series of the free product of two connected graded spaces.

        Raises:
            ConfigurationError: a factor is not connected (degree 0 != 1)
        """
        N = self._common(other)
        if self[0] != 1 or other[0] != 1:
            raise ConfigurationError("free products need connected series (P(0) = 1)")
        a, b = self.truncate(N), other.truncate(N)
        return (a.inverse() + b.inverse() - PoincareSeries.one(N)).inverse()

    def __repr__(self) -> str:
        terms = []
        for degree, c in enumerate(self.coefficients):
            if not c:
                continue
            if degree == 0:
                terms.append(str(c))
            else:
                coef = "" if c == 1 else f"{c}*"
                terms.append(f"{coef}t^{degree}")
        body = " + ".join(terms) or "0"
        return f"PoincareSeries({body} + O(t^{self.truncation + 1}))"


# ==========================================================
# Predictions
# ==========================================================

@lru_cache(maxsize=None)
def lie_homology(algebra: str, n: int) -> Tuple[int, ...]:
    """
    Full Betti vector of the trivial CE complex of a named algebra,
    computed directly.
    """
    L = build_algebra(algebra, n)
    spec = ComplexSpec(algebra=L, flavor="ce", max_degree=L.dim, weights="all")
    report = betti(spec, strategy=RankStrategy(field="rational"))
    return tuple(report.betti_numbers)


def _sum_of_powers(degrees: Iterable[int], N: int) -> PoincareSeries:
    out = [0] * (N + 1)
    for d in degrees:
        if d <= N:
            out[d] += 1
    return PoincareSeries(tuple(out))


def predicted_series(
    target: str,
    n: int,
    N: int,
    *,
    beta_included: bool = False,
    gamma_degree: str = "2n-2",
    beta_powers: bool = False,
) -> PoincareSeries:
    """
    Graded dimensions predicted for the Schrodinger and Galilei algebras.

    - ``lie_sch``: H(sl2) * H(so(n)) * (1 + [beta] t^2 + t^(2n-2) + t^(2n)),
      or with every wedge power of beta (1 + t^2 + ... + t^(2n)) when
      ``beta_powers`` is set
    - ``leibniz_sch``: (1 + t^(2n-2) + t^(2n)) / (1 - t^g)
    - ``leibniz_galilei``: leibniz_sch free product 1/(1 - t)

    Raises:
        ConfigurationError: unknown target or gamma degree, or n < 2
    """
    if target not in TARGETS:
        raise ConfigurationError(f"target must be one of {', '.join(TARGETS)}")
    if gamma_degree not in GAMMA_DEGREES:
        raise ConfigurationError(f"gamma_degree must be one of {', '.join(GAMMA_DEGREES)}")
    if not isinstance(n, int) or n < 2:
        raise ConfigurationError("n must be an integer >= 2")

    if target == "lie_sch":
        if beta_powers:
            invariants = _sum_of_powers(range(0, 2 * n + 1, 2), N)
        else:
            degrees = [0, 2 * n - 2, 2 * n] + ([2] if beta_included else [])
            invariants = _sum_of_powers(degrees, N)
        sl2 = PoincareSeries.from_betti(lie_homology("sl2", 2), N)
        so = PoincareSeries.from_betti(lie_homology("so", n), N)
        return sl2 * so * invariants

    g = 2 * n - 2 if gamma_degree == "2n-2" else 2 * n - 1
    if N < 2 * n - 1:
        logger.warning(
            "truncation %d cannot separate the gamma degrees %d and %d", N, 2 * n - 2, 2 * n - 1
        )
    sch = _sum_of_powers([0, 2 * n - 2, 2 * n], N) * PoincareSeries.geometric(g, N)
    if target == "leibniz_sch":
        return sch
    return sch.free_product(PoincareSeries.geometric(1, N))
