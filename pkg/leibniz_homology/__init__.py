from .engine import HomologyEngine
from .types import DegreeRow, HomologyReport, RankCertificate, RankStrategy
from .exceptions import (
    HomologyError,
    ConfigurationError,
    AlgebraError,
    AlgebraMismatch,
    ClosureError,
    BudgetError,
    BudgetExceeded,
    FactorialCapExceeded,
    RankError,
    PrimeDisagreement,
)
from .algebras import LieAlgebra, build_algebra, check_tables
from .multilinear import Chain, TensorSpace, WedgeSpace, CoeffWedgeSpace, named_chain
from .complexes import ComplexSpec, Convention, betti, ce_boundary, loday_boundary, claims_report
from .invariants import invariant_subspace, lemma_suite
from .series import PoincareSeries, predicted_series
from .verify import VerifyConfig, verify_all

__all__ = [
    "HomologyEngine",
    "RankStrategy",
    "RankCertificate",
    "DegreeRow",
    "HomologyReport",
    "HomologyError",
    "ConfigurationError",
    "AlgebraError",
    "AlgebraMismatch",
    "ClosureError",
    "BudgetError",
    "BudgetExceeded",
    "FactorialCapExceeded",
    "RankError",
    "PrimeDisagreement",
    "LieAlgebra",
    "build_algebra",
    "check_tables",
    "Chain",
    "TensorSpace",
    "WedgeSpace",
    "CoeffWedgeSpace",
    "named_chain",
    "ComplexSpec",
    "Convention",
    "betti",
    "ce_boundary",
    "loday_boundary",
    "claims_report",
    "invariant_subspace",
    "lemma_suite",
    "PoincareSeries",
    "predicted_series",
    "VerifyConfig",
    "verify_all",
]
