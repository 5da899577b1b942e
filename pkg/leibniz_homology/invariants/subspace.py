"""
Invariant subspaces M^f = {m in M | m . g = 0 for every generator g}.

The action is linear in the acting element, so it suffices to stack the
action matrices of a basis of the acting algebra and take the exact
rational kernel.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..algebras import LieAlgebra
from ..engine import HomologyEngine
from ..exceptions import AlgebraMismatch, ConfigurationError
from ..matrix import SparseMatrix
from ..multilinear import Chain, CoeffWedgeSpace, ModuleSpace, TensorSpace, act, action_matrix
from ..types import RankStrategy


logger = logging.getLogger(__name__)

Acting = Union[str, LieAlgebra, Sequence[Union[int, str]]]


@dataclass(frozen=True, slots=True)
class InvariantReport:
    """
    Kernel of the stacked action of ``acting`` on one module.
    """

    module: str
    k: int
    bidegree: Optional[Tuple[int, int]]
    acting: Tuple[str, ...]
    basis: Tuple[Chain, ...]
    candidates: int
    verified: bool
    membership: Dict[str, bool] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, name: str) -> Optional[bool]:
        return self.membership.get(name)

    def to_dict(self, *, with_basis: bool = False) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "module": self.module,
            "k": self.k,
            "bidegree": list(self.bidegree) if self.bidegree else None,
            "acting": list(self.acting),
            "dim": self.dim,
            "candidates": self.candidates,
            "verified": self.verified,
            "membership": dict(self.membership),
        }
        if with_basis:
            out["basis"] = [chain.to_dict() for chain in self.basis]
        return out


# ==========================================================
# Helpers
# ==========================================================

def acting_indices(algebra: LieAlgebra, acting: Acting) -> Tuple[int, ...]:
    """
    Basis indices of the acting generators inside ``algebra``.

    Accepts a component name (``hbar``, ``so``, ``sl2``, ``I`` ...), a
    ``LieAlgebra`` with the same key (all of its basis), or explicit
    labels and indices.
    """
    if isinstance(acting, str):
        return algebra.subalgebra_indices(acting)
    if isinstance(acting, LieAlgebra):
        if acting.key != algebra.key:
            raise AlgebraMismatch(
                f"{acting.name} does not act on a space over {algebra.name}"
            )
        return tuple(range(algebra.dim))
    indices = tuple(sorted({algebra.index(g) for g in acting}))
    if not indices:
        raise ConfigurationError("at least one acting generator is required")
    return indices


def _describe(space: ModuleSpace) -> str:
    if isinstance(space, CoeffWedgeSpace):
        parts = _component_of(space.algebra, space.coefficients.indices)
        return "+".join(parts) + "⊗wedge"
    if isinstance(space, TensorSpace):
        return "tensor"
    return "wedge"


def _component_of(L: LieAlgebra, indices: Sequence[int]) -> List[str]:
    wanted = set(indices)
    for tag in ("I", "hbar"):
        if L.has_component(tag) and set(L.subalgebra_indices(tag)) == wanted:
            return [tag]
    parts = [tag for tag, idx in sorted(L.tags.items()) if set(idx) <= wanted and idx]
    return parts or ["custom"]


def _diagonal(matrix: SparseMatrix) -> bool:
    return bool(np.array_equal(matrix.rows, matrix.cols))


def _bidegree_columns(space: ModuleSpace, bidegree: Tuple[int, int]) -> np.ndarray:
    if not hasattr(space, "bidegree"):
        raise ConfigurationError(f"{space!r} has no bidegree splitting")
    return np.array(
        [i for i, m in enumerate(space.monomials()) if space.bidegree(m) == bidegree],
        dtype=np.int64,
    )


# ==========================================================
# Invariants
# ==========================================================

def invariant_subspace(
    acting: Acting,
    space: ModuleSpace,
    *,
    bidegree: Optional[Tuple[int, int]] = None,
    members: Optional[Mapping[str, Chain]] = None,
    engine: Optional[HomologyEngine] = None,
) -> InvariantReport:
    """
    Exact basis of the chains of ``space`` killed by every acting generator.

    Generators acting diagonally on the monomial basis are applied first:
    only monomials in their joint kernel stay candidates. The remaining
    actions are stacked and their rational kernel is taken on the
    candidates; every basis chain is then re-checked against every
    generator.

    Args:
        acting: component name, algebra or explicit generators
        space: module the action is computed on
        bidegree: restrict to monomials with this (#I1, #I2) split
        members: named chains to test for membership in the kernel

    Raises:
        ClosureError: a generator does not preserve ``space``
        AlgebraMismatch: a member lives in another space
    """
    engine = engine or HomologyEngine.from_strategy(RankStrategy(field="rational"))
    L = space.algebra
    generators = acting_indices(L, acting)
    matrices = {g: action_matrix(space, L.element(g)) for g in generators}

    if bidegree is not None:
        candidates = _bidegree_columns(space, bidegree)
    else:
        candidates = np.arange(space.dim, dtype=np.int64)

    # diagonal prefilter
    mask = np.ones(space.dim, dtype=bool)
    for g, matrix in matrices.items():
        if _diagonal(matrix):
            mask[matrix.cols] = False
    candidates = candidates[mask[candidates]]
    stacked = [m for m in matrices.values() if not _diagonal(m)]

    logger.debug(
        "invariants of %r under %d generators: %d candidate monomials",
        space,
        len(generators),
        len(candidates),
    )

    basis: List[Chain] = []
    if len(candidates):
        basis = _kernel(space, stacked, candidates, engine)

    verified = all(
        act(space, L.element(g), chain).is_zero() for chain in basis for g in generators
    )

    membership: Dict[str, bool] = {}
    for name, chain in (members or {}).items():
        if chain.space != space:
            raise AlgebraMismatch(f"{name} does not live in {space!r}")
        membership[name] = chain.is_zero() or engine.in_span(
            [dict(b.entries) for b in basis], dict(chain.entries), space.dim
        )

    return InvariantReport(
        module=_describe(space),
        k=space.k,
        bidegree=bidegree,
        acting=tuple(L.basis[g].name for g in generators),
        basis=tuple(basis),
        candidates=int(len(candidates)),
        verified=verified,
        membership=membership,
    )


def _kernel(
    space: ModuleSpace,
    matrices: List[SparseMatrix],
    candidates: np.ndarray,
    engine: HomologyEngine,
) -> List[Chain]:
    if not matrices:
        return [Chain(space, {int(c): 1}) for c in candidates]

    local = np.full(space.dim, -1, dtype=np.int64)
    local[candidates] = np.arange(len(candidates))

    rows, cols, data = [], [], []
    for offset, matrix in enumerate(matrices):
        keep = local[matrix.cols] >= 0
        rows.append(matrix.rows[keep] + offset * space.dim)
        cols.append(local[matrix.cols[keep]])
        data.append(matrix.data[keep])

    all_rows = np.concatenate(rows)
    used, compact = np.unique(all_rows, return_inverse=True)
    stacked = SparseMatrix.from_triplets(
        compact, np.concatenate(cols), np.concatenate(data), (max(len(used), 1), len(candidates))
    )

    kernel = engine.kernel(stacked)
    return [
        Chain(space, {int(candidates[c]): Fraction(v) for c, v in vector.items()})
        for vector in kernel
    ]
