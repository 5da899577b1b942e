"""
Exterior and tensor powers over an algebra, chains and the right action.
"""

from .chains import (
    FACTORIAL_CAP,
    Chain,
    act,
    action_matrix,
    antisymmetrize,
    permutation_sign,
    wedge,
)
from .named import NAMED_CHAINS, beta_power, named_chain
from .spaces import (
    CoeffWedgeSpace,
    ModuleSpace,
    TensorSpace,
    WedgeSpace,
    bidegree,
    normalize_wedge,
)

__all__ = (
    "FACTORIAL_CAP",
    "NAMED_CHAINS",
    "Chain",
    "CoeffWedgeSpace",
    "ModuleSpace",
    "TensorSpace",
    "WedgeSpace",
    "act",
    "action_matrix",
    "antisymmetrize",
    "beta_power",
    "bidegree",
    "named_chain",
    "normalize_wedge",
    "permutation_sign",
    "wedge",
)
