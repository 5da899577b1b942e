from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from .exceptions import ConfigurationError


BASIS_KINDS = ("rotation", "a", "b", "c", "d", "boost", "momentum")
STRATEGIES = ("auto", "dense", "sparse", "blackbox")
FIELDS = ("rational", "modular")


@dataclass(frozen=True, slots=True)
class BasisLabel:
    """
    Name of one basis vector field of the Schrodinger/Galilei family.

    ``boost(i)`` is y_i = x_i d/dx^{n+1}; ``momentum(i)`` is
    y_{n+i} = x_i d/dx^{n+2}.
    """

    kind: str
    n: int
    i: int = 0
    j: int = 0

    def __post_init__(self) -> None:
        if self.kind not in BASIS_KINDS:
            raise ConfigurationError(f"Unknown basis kind: {self.kind}")

        if self.n < 1:
            raise ConfigurationError("n must be a positive integer")

        if self.kind == "rotation" and not (1 <= self.i < self.j <= self.n):
            raise ConfigurationError(
                f"rotation requires 1 <= i < j <= n, got ({self.i},{self.j})"
            )

        if self.kind in ("boost", "momentum") and not (1 <= self.i <= self.n):
            raise ConfigurationError(
                f"{self.kind} requires 1 <= i <= n, got {self.i}"
            )

    # ----------------------------------------
    # Derived properties
    # ----------------------------------------

    @property
    def name(self) -> str:
        if self.kind == "rotation":
            sep = "," if self.n >= 10 else ""
            return f"X{self.i}{sep}{self.j}"
        if self.kind == "boost":
            return f"y{self.i}"
        if self.kind == "momentum":
            return f"y{self.n + self.i}"
        return self.kind

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class RankStrategy:
    """
    How ranks are computed: field, method ladder, primes and caps.
    """

    primes: int = 2
    seed: int = 0
    memory_cap: int = 8 * 2**30  # bytes
    strategy: str = "auto"
    field: str = "modular"
    dense_below: int = 512
    sparse_below: int = 200_000
    sparse_side_below: int = 20_000
    workers: int = 1

    def __post_init__(self) -> None:
        if self.primes < 1:
            raise ConfigurationError("primes must be >= 1")

        if self.memory_cap <= 0:
            raise ConfigurationError("memory_cap must be > 0")

        if self.strategy not in STRATEGIES:
            raise ConfigurationError(
                f"strategy must be one of {', '.join(STRATEGIES)}"
            )

        if self.field not in FIELDS:
            raise ConfigurationError("field must be 'rational' or 'modular'")

        if self.workers < 1:
            raise ConfigurationError("workers must be >= 1")

        if not 0 < self.dense_below <= self.sparse_below:
            raise ConfigurationError(
                "thresholds must satisfy 0 < dense_below <= sparse_below"
            )

        if self.sparse_side_below < 1:
            raise ConfigurationError("sparse_side_below must be >= 1")

    def method_for(self, cols: int, side: Optional[int] = None) -> str:
        """
        Pick a rank method for a matrix with ``cols`` columns.

        ``side`` is the smaller dimension; sparse elimination is only
        chosen while it stays below ``sparse_side_below``.
        """
        if self.strategy != "auto":
            return self.strategy
        if cols < self.dense_below:
            return "dense"
        if cols < self.sparse_below and (side is None or side < self.sparse_side_below):
            return "sparse"
        return "blackbox"


@dataclass(frozen=True, slots=True)
class RankCertificate:
    """
    Immutable record of one certified rank.

    Over the rationals ``agreement`` is vacuously true.
    """

    rank: int
    method: str
    field: str
    primes_used: Tuple[int, ...] = ()
    agreement: bool = True
    retries: int = 0
    peeled: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rank": self.rank,
            "method": self.method,
            "field": self.field,
            "primes": list(self.primes_used),
            "agreement": self.agreement,
            "retries": self.retries,
            "peeled": self.peeled,
        }


@dataclass(frozen=True, slots=True)
class DegreeRow:
    """
    One degree of a homology computation.

    betti = dim - rank_dk - rank_dk1
    """

    k: int
    dim: int
    rank_dk: Optional[int]
    rank_dk1: Optional[int]
    certificates: Tuple[RankCertificate, ...] = ()
    skipped: Optional[str] = None

    @property
    def betti(self) -> Optional[int]:
        if self.skipped or self.rank_dk is None or self.rank_dk1 is None:
            return None
        return self.dim - self.rank_dk - self.rank_dk1

    def to_dict(self) -> Dict[str, Any]:
        row = {
            "k": self.k,
            "dim": self.dim,
            "rank_dk": self.rank_dk,
            "rank_dk1": self.rank_dk1,
            "betti": self.betti,
        }
        if self.skipped:
            row["skipped"] = self.skipped
        return row


@dataclass(frozen=True, slots=True)
class HomologyReport:
    """
    Per-degree chain dimensions, boundary ranks and Betti numbers.
    """

    algebra: str
    n: int
    flavor: str
    degrees: Tuple[DegreeRow, ...]
    primes: Tuple[int, ...] = ()
    seed: int = 0
    weights: str = "all"
    elapsed_ms: Optional[int] = None
    extra: Dict[str, Any] = field(default_factory=dict)

    # ----------------------------------------
    # Derived properties
    # ----------------------------------------

    @property
    def betti_numbers(self) -> Tuple[Optional[int], ...]:
        return tuple(row.betti for row in self.degrees)

    @property
    def complete(self) -> bool:
        return all(row.betti is not None for row in self.degrees)

    def euler_identity(self, total_degree: int) -> Optional[bool]:
        """
        Check sum (-1)^k dim C_k == sum (-1)^k betti_k.

        Only meaningful when every degree 0..total_degree was computed
        (a full CE complex); returns None otherwise.
        """
        rows = {row.k: row for row in self.degrees}
        if any(
            k not in rows or rows[k].betti is None
            for k in range(total_degree + 1)
        ):
            return None
        dims = sum((-1) ** k * rows[k].dim for k in range(total_degree + 1))
        bettis = sum((-1) ** k * rows[k].betti for k in range(total_degree + 1))
        return dims == bettis

    # ----------------------------------------
    # Serialization Helpers
    # ----------------------------------------

    def to_dict(self, *, timings: bool = True) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "algebra": self.algebra,
            "n": self.n,
            "flavor": self.flavor,
            "weights": self.weights,
            "degrees": [row.to_dict() for row in self.degrees],
            "primes": list(self.primes),
            "seed": self.seed,
        }
        if timings:
            out["elapsed_ms"] = self.elapsed_ms
        out.update(self.extra)
        return out

    def to_csv_rows(self) -> list:
        rows = [["k", "dim", "rank_dk", "rank_dk1", "betti"]]
        for row in self.degrees:
            rows.append([row.k, row.dim, row.rank_dk, row.rank_dk1, row.betti])
        return rows
