from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

from ..matrix import SparseMatrix


@dataclass(frozen=True)
class RankRun:
    """
    Outcome of one backend call: the rank and what it took to get it.
    """

    rank: int
    stats: Dict[str, Any] = field(default_factory=dict)


# ==========================================================
# Shared Backend Capabilities
# ==========================================================

class RankBackend(ABC):
    """
    Common rank backend contract.

    All backends MUST:
    - Compute the exact rank over the field they are asked for
    - Be deterministic for a fixed seed
    - Respect the memory cap they were built with
    - Keep no per-call state, so one instance serves concurrent primes
    """

    #: Method name recorded in rank certificates
    name: str

    #: "rational" or "modular"
    field: str

    def __init__(self, *, memory_cap: int, seed: int = 0):
        self.memory_cap = memory_cap
        self.seed = seed

    # ------------------------------------------------------
    # Required
    # ------------------------------------------------------

    @abstractmethod
    def run(self, matrix: SparseMatrix, prime: Optional[int] = None) -> RankRun:
        """
        Rank of ``matrix`` together with the statistics of this call.

        Args:
            matrix: exact sparse matrix (or a streamed one for black-box)
            prime: field characteristic; None for the rationals
        """
        raise NotImplementedError

    # ------------------------------------------------------
    # Optional
    # ------------------------------------------------------

    def rank(self, matrix: SparseMatrix, prime: Optional[int] = None) -> int:
        """
        The rank over the requested field.
        """
        return self.run(matrix, prime).rank

    def supports(self, prime: Optional[int]) -> bool:
        """
        Whether this backend can work over the requested field.
        """
        if self.field == "rational":
            return prime is None
        return prime is not None
