class HomologyError(Exception):
    """
    Base exception for all leibniz-homology errors.
    """

    pass


# ==========================================================
# Configuration Errors
# ==========================================================

class ConfigurationError(HomologyError):
    """
    Raised when an algebra, space, strategy or command is misconfigured.
    """

    pass


# ==========================================================
# Algebra Errors
# ==========================================================

class AlgebraError(HomologyError):
    """
    Base class for structural failures of algebras, elements and actions.
    """

    pass


class AlgebraMismatch(AlgebraError):
    """
    Raised when elements, chains or spaces belong to different algebras
    or have incompatible dimensions.
    """

    pass


class ClosureError(AlgebraError):
    """
    Raised when a bracket or an action leaves the span it must stay in.
    """

    pass


# ==========================================================
# Budget Errors
# ==========================================================

class BudgetError(HomologyError):
    """
    Base class for computations aborted by a configured cap.
    """

    pass


class BudgetExceeded(BudgetError):
    """
    Raised when a matrix or an elimination outgrows the memory cap.

    ``stats`` carries whatever partial elimination statistics were
    available when the computation was aborted.
    """

    def __init__(self, message: str, *, stats: dict | None = None):
        super().__init__(message)
        self.stats = dict(stats or {})


class FactorialCapExceeded(BudgetError):
    """
    Raised when an antisymmetrization would need more than cap! terms
    per monomial.
    """

    pass


# ==========================================================
# Rank Errors
# ==========================================================

class RankError(HomologyError):
    """
    Raised when a rank computation fails or returns invalid data.
    """

    pass


class PrimeDisagreement(RankError):
    """
    Raised when independent primes report different ranks for one matrix.
    """

    def __init__(self, message: str, *, ranks: dict[int, int] | None = None):
        super().__init__(message)
        self.ranks = dict(ranks or {})
