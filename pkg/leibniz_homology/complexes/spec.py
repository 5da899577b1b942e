from dataclasses import dataclass
from typing import Optional, Tuple

from ..algebras import LieAlgebra
from ..exceptions import ConfigurationError


FLAVORS = ("ce", "ce_coefficients", "loday")
WEIGHT_MODES = ("all", "zero")

#: Loday degrees up to this many columns are assembled eagerly.
EAGER_COLUMNS = 3_000_000

#: Loday degrees up to this many columns are streamed to the black-box backend.
STREAMED_COLUMNS = 40_000_000


@dataclass(frozen=True)
class ComplexSpec:
    """
    Which complex to build over an algebra.

    ``wedge`` names the component spanning the exterior factors of a CE
    complex (None for the whole algebra); ``coefficients`` names the
    coefficient module of a ``ce_coefficients`` complex, acted on by
    bracketing (None for the adjoint module).
    """

    algebra: LieAlgebra
    flavor: str
    max_degree: int
    wedge: Optional[str] = None
    coefficients: Optional[str] = None
    weights: str = "all"
    eager_columns: int = EAGER_COLUMNS
    streamed_columns: int = STREAMED_COLUMNS

    def __post_init__(self) -> None:
        if self.flavor not in FLAVORS:
            raise ConfigurationError(
                f"flavor must be one of {', '.join(FLAVORS)}, got {self.flavor}"
            )

        if self.max_degree < 1:
            raise ConfigurationError("max_degree must be >= 1")

        if self.weights not in WEIGHT_MODES:
            raise ConfigurationError("weights must be 'all' or 'zero'")

        if self.flavor == "loday" and (self.wedge or self.coefficients):
            raise ConfigurationError("the Loday complex takes no wedge or coefficient module")

        if self.flavor == "ce" and self.coefficients:
            raise ConfigurationError("trivial CE complexes take no coefficient module")

        if self.flavor != "loday" and self.max_degree > len(self.wedge_indices):
            raise ConfigurationError(
                f"CE degrees stop at {len(self.wedge_indices)} for this wedge"
            )

        if self.weights == "zero" and not self._zero_mode_exact():
            raise ConfigurationError(
                "weights='zero' needs a diagonal element among the acting generators"
            )

    # ----------------------------------------
    # Derived properties
    # ----------------------------------------

    @property
    def wedge_indices(self) -> Tuple[int, ...]:
        if self.wedge is None:
            return tuple(range(self.algebra.dim))
        return self.algebra.subalgebra_indices(self.wedge)

    @property
    def coefficient_indices(self) -> Tuple[int, ...]:
        if self.coefficients is None:
            return tuple(range(self.algebra.dim))
        return self.algebra.subalgebra_indices(self.coefficients)

    def _zero_mode_exact(self) -> bool:
        # nonzero weight blocks are acyclic when a diagonal element acts
        # through the complex's own generators
        gens = (
            range(self.algebra.dim) if self.flavor == "loday" else self.wedge_indices
        )
        return any(self.algebra.basis[i].kind in ("a", "d") for i in gens)

    def describe(self) -> str:
        parts = [self.flavor, f"{self.algebra.name}(n={self.algebra.n})"]
        if self.wedge:
            parts.append(f"wedge={self.wedge}")
        if self.coefficients:
            parts.append(f"coefficients={self.coefficients}")
        return " ".join(parts)
