"""
Chevalley–Eilenberg complexes V ⊗ Λ*(W) with the bracket action on V.

d(v⊗g_1∧…∧g_k) = sum_j (-1)^j [v,g_j] ⊗ g_1∧…ĝ_j…∧g_k
                + sum_{i<j} (-1)^{i+j-1} v ⊗ [g_i,g_j]∧g_1∧…ĝ_i…ĝ_j…∧g_k

V is the scalars for the trivial flavor, where only the second sum is
present. ``Convention`` variants differ from this formula by signs and
are used to weigh printed chain-level identities, never for homology.
"""

from __future__ import annotations

from enum import Enum
from typing import List, Optional

import numpy as np

from ..exceptions import ClosureError, ConfigurationError
from ..matrix import SparseMatrix
from ..multilinear import CoeffWedgeSpace, ModuleSpace, WedgeSpace
from .base import ChainComplex, Triplets, _concat
from .spec import ComplexSpec


class Convention(Enum):
    PRINTED = "printed"
    COEFFICIENT_REVERSED = "coefficient_reversed"
    SECOND_SUM_FLIPPED = "second_sum_flipped"
    BOTH = "both"

    @property
    def first_sign(self) -> int:
        return -1 if self in (Convention.COEFFICIENT_REVERSED, Convention.BOTH) else 1

    @property
    def second_sign(self) -> int:
        return -1 if self in (Convention.SECOND_SUM_FLIPPED, Convention.BOTH) else 1


class ChevalleyEilenbergComplex(ChainComplex):
    def __init__(self, spec: ComplexSpec, convention: Convention = Convention.PRINTED):
        super().__init__(spec)
        self.convention = convention
        self.flavor = spec.flavor
        self.head = 1 if spec.flavor == "ce_coefficients" else 0
        self.wedge_indices = spec.wedge_indices
        self.coefficient_indices = spec.coefficient_indices if self.head else ()
        self._check_closure()

    def _check_closure(self) -> None:
        L = self.algebra
        wedge = set(self.wedge_indices)
        for i in self.wedge_indices:
            for j in self.wedge_indices:
                if set(L.bracket_basis(i, j)) - wedge:
                    raise ClosureError(
                        f"[{L.basis[i].name}, {L.basis[j].name}] leaves the wedge generators"
                    )
        coefficients = set(self.coefficient_indices)
        for v in self.coefficient_indices:
            for g in self.wedge_indices:
                if set(L.bracket_basis(v, g)) - coefficients:
                    raise ClosureError(
                        f"[{L.basis[v].name}, {L.basis[g].name}] leaves the coefficient module"
                    )

    @property
    def top_degree(self) -> Optional[int]:
        return len(self.wedge_indices)

    def space(self, k: int) -> ModuleSpace:
        if self.head:
            return CoeffWedgeSpace(
                self.algebra, k, self.coefficient_indices, self.wedge_indices
            )
        return WedgeSpace(self.algebra, k, self.wedge_indices)

    def _terms(self, k: int, digits: np.ndarray) -> Triplets:
        target = self.space(k - 1)
        h = self.head
        parts: List[Triplets] = []

        # coefficient sum
        if h:
            for q in range(k):
                sign = self.convention.first_sign * (-1 if q % 2 == 0 else 1)
                source, c, coef = self.table.expand(digits[:, 0], digits[:, q + h])
                if not len(source):
                    continue
                new = np.delete(digits[source], q + h, axis=1)
                new[:, 0] = c
                parts.append((source, target.rank_array(new), sign * coef))

        # bracket sum
        for p in range(k):
            for q in range(p + 1, k):
                sign = self.convention.second_sign * (1 if (p + q) % 2 else -1)
                source, c, coef = self.table.expand(digits[:, p + h], digits[:, q + h])
                if not len(source):
                    continue
                rest = np.delete(digits[source], [p + h, q + h], axis=1)
                wedge_rest = rest[:, h:]
                keep = ~(wedge_rest == c[:, None]).any(axis=1)
                if not keep.any():
                    continue
                source, c, coef = source[keep], c[keep], coef[keep]
                rest, wedge_rest = rest[keep], wedge_rest[keep]

                # moving the bracket past the smaller factors
                shift = (wedge_rest < c[:, None]).sum(axis=1)
                merged = np.sort(np.hstack([wedge_rest, c[:, None]]), axis=1)
                new = np.hstack([rest[:, :h], merged])
                signs = sign * np.where(shift % 2 == 0, 1, -1)
                parts.append((source, target.rank_array(new), signs * coef))

        return _concat(parts, self.table.coefs)


def ce_boundary(
    spec: ComplexSpec, k: int, convention: Convention = Convention.PRINTED
) -> SparseMatrix:
    """
    Matrix of d_k: V⊗Λ^k -> V⊗Λ^{k-1} for a CE complex spec.

    Raises:
        ConfigurationError: k outside 1..dim of the wedge, or a Loday spec
        ClosureError: the wedge or coefficient module is not closed
    """
    if spec.flavor == "loday":
        raise ConfigurationError("ce_boundary needs a CE complex spec")
    return ChevalleyEilenbergComplex(spec, convention).boundary(k)
