"""
Enumerated bases of exterior powers, tensor powers and coefficient
wedges, with integer codecs.

Monomials are tuples of ambient basis indices of the underlying
``LieAlgebra``; a space only admits monomials built from its generators.
Every codec has a scalar form (``rank``/``unrank`` on tuples) and an
array form (``rank_array``/``unrank_array`` on int64 arrays) used by the
vectorized boundary assembly.

- Wedge: strictly increasing tuples, colexicographic rank
  ``sum_j C(t_j, j + 1)`` on generator positions ``t_j``.
- Tensor: arbitrary tuples, mixed radix with the first slot most
  significant.
- CoeffWedge: ``(g, w_1, ..., w_k)``, coefficient-major.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from math import comb
from typing import Iterator, Optional, Sequence, Tuple

import numpy as np

from ..algebras import LieAlgebra
from ..exceptions import AlgebraMismatch, ConfigurationError

Monomial = Tuple[int, ...]


def normalize_wedge(indices: Sequence[int]) -> Tuple[int, Optional[Monomial]]:
    """
    Sort a wedge monomial; returns ``(sign, sorted)`` or ``(0, None)`` when
    a factor repeats.
    """
    items = list(indices)
    if len(set(items)) != len(items):
        return 0, None

    sign = 1
    # insertion sort, counting transpositions
    for p in range(1, len(items)):
        q = p
        while q > 0 and items[q - 1] > items[q]:
            items[q - 1], items[q] = items[q], items[q - 1]
            sign = -sign
            q -= 1
    return sign, tuple(items)


class _Generators:
    """
    Sorted ambient indices spanning one factor, with a reverse lookup.
    """

    def __init__(self, algebra: LieAlgebra, generators: Optional[Sequence[int]]):
        if generators is None:
            generators = range(algebra.dim)
        gens = tuple(sorted(set(int(g) for g in generators)))
        if not gens:
            raise ConfigurationError("a space needs at least one generator")
        if gens[0] < 0 or gens[-1] >= algebra.dim:
            raise AlgebraMismatch(f"generator index out of range for {algebra.name}")

        self.indices = gens
        self.array = np.array(gens, dtype=np.int64)
        self.position = np.full(algebra.dim, -1, dtype=np.int64)
        self.position[self.array] = np.arange(len(gens))

    def __len__(self) -> int:
        return len(self.indices)

    def __contains__(self, index: int) -> bool:
        return 0 <= index < len(self.position) and self.position[index] >= 0

    def local(self, digits: np.ndarray) -> np.ndarray:
        pos = self.position[digits]
        if pos.size and pos.min() < 0:
            raise AlgebraMismatch("monomial uses a factor outside the space")
        return pos


# ==========================================================
# Base space
# ==========================================================

class ModuleSpace(ABC):
    """
    A finite basis with a bijective codec onto ``range(dim)``.
    """

    kind: str

    def __init__(self, algebra: LieAlgebra, k: int):
        if k < 0:
            raise ConfigurationError("degree must be >= 0")
        self.algebra = algebra
        self.k = k

    @property
    @abstractmethod
    def dim(self) -> int:
        raise NotImplementedError

    @property
    @abstractmethod
    def key(self) -> tuple:
        """
        Hashable identity: equal keys mean the same basis.
        """
        raise NotImplementedError

    @abstractmethod
    def rank(self, monomial: Sequence[int]) -> int:
        raise NotImplementedError

    @abstractmethod
    def unrank(self, index: int) -> Monomial:
        raise NotImplementedError

    @abstractmethod
    def rank_array(self, digits: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @abstractmethod
    def unrank_array(self, indices: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    @abstractmethod
    def label(self, index: int) -> str:
        raise NotImplementedError

    def monomials(self) -> Iterator[Monomial]:
        for index in range(self.dim):
            yield self.unrank(index)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModuleSpace):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.algebra.name}, n={self.algebra.n}, k={self.k}, dim={self.dim})"

    def _names(self, monomial: Sequence[int]) -> list:
        return [self.algebra.basis[i].name for i in monomial]


# ==========================================================
# Wedge
# ==========================================================

class WedgeSpace(ModuleSpace):
    """
    Lambda^k of the span of ``generators``.
    """

    kind = "wedge"

    def __init__(
        self,
        algebra: LieAlgebra,
        k: int,
        generators: Optional[Sequence[int]] = None,
    ):
        super().__init__(algebra, k)
        self.generators = _Generators(algebra, generators)
        m = len(self.generators)
        # binom[t, j] = C(t, j)
        self._binom = np.array(
            [[comb(t, j) for j in range(k + 2)] for t in range(m + 1)], dtype=np.int64
        )

    @property
    def dim(self) -> int:
        return comb(len(self.generators), self.k)

    @property
    def key(self) -> tuple:
        return ("wedge", self.algebra.key, self.generators.indices, self.k)

    def rank(self, monomial: Sequence[int]) -> int:
        if len(monomial) != self.k:
            raise AlgebraMismatch(f"expected {self.k} factors, got {len(monomial)}")
        local = [int(p) for p in self.generators.local(np.asarray(monomial, dtype=np.int64))]
        if any(a >= b for a, b in zip(local, local[1:])):
            raise AlgebraMismatch("wedge monomials must be strictly increasing")
        return sum(comb(t, j + 1) for j, t in enumerate(local))

    def unrank(self, index: int) -> Monomial:
        if not 0 <= index < self.dim:
            raise AlgebraMismatch(f"index {index} out of range for {self!r}")
        r, out = index, [0] * self.k
        m = len(self.generators)
        for j in range(self.k, 0, -1):
            t = j - 1
            while t + 1 < m and comb(t + 1, j) <= r:
                t += 1
            r -= comb(t, j)
            out[j - 1] = self.generators.indices[t]
        return tuple(out)

    def rank_array(self, digits: np.ndarray) -> np.ndarray:
        if self.k == 0:
            return np.zeros(len(digits), dtype=np.int64)
        local = self.generators.local(digits)
        out = np.zeros(len(digits), dtype=np.int64)
        for j in range(self.k):
            out += self._binom[local[:, j], j + 1]
        return out

    def unrank_array(self, indices: np.ndarray) -> np.ndarray:
        r = np.asarray(indices, dtype=np.int64).copy()
        out = np.zeros((len(r), self.k), dtype=np.int64)
        for j in range(self.k, 0, -1):
            t = np.searchsorted(self._binom[:, j], r, side="right") - 1
            r -= self._binom[t, j]
            out[:, j - 1] = self.generators.array[t]
        return out

    def label(self, index: int) -> str:
        monomial = self.unrank(index)
        return "∧".join(self._names(monomial)) if monomial else "1"

    def bidegree(self, monomial: Sequence[int]) -> Tuple[int, int]:
        return bidegree(self.algebra, monomial)


# ==========================================================
# Tensor
# ==========================================================

class TensorSpace(ModuleSpace):
    """
    The k-th tensor power of the span of ``generators``.
    """

    kind = "tensor"

    def __init__(
        self,
        algebra: LieAlgebra,
        k: int,
        generators: Optional[Sequence[int]] = None,
    ):
        super().__init__(algebra, k)
        self.generators = _Generators(algebra, generators)
        m = len(self.generators)
        self._place = np.array([m ** (k - 1 - p) for p in range(k)], dtype=np.int64)

    @property
    def dim(self) -> int:
        return len(self.generators) ** self.k

    @property
    def key(self) -> tuple:
        return ("tensor", self.algebra.key, self.generators.indices, self.k)

    def rank(self, monomial: Sequence[int]) -> int:
        if len(monomial) != self.k:
            raise AlgebraMismatch(f"expected {self.k} factors, got {len(monomial)}")
        m = len(self.generators)
        out = 0
        for t in self.generators.local(np.asarray(monomial, dtype=np.int64)).tolist():
            out = out * m + t
        return out

    def unrank(self, index: int) -> Monomial:
        if not 0 <= index < self.dim:
            raise AlgebraMismatch(f"index {index} out of range for {self!r}")
        m = len(self.generators)
        out = []
        for _ in range(self.k):
            index, t = divmod(index, m)
            out.append(self.generators.indices[t])
        return tuple(reversed(out))

    def rank_array(self, digits: np.ndarray) -> np.ndarray:
        if self.k == 0:
            return np.zeros(len(digits), dtype=np.int64)
        return self.generators.local(digits) @ self._place

    def unrank_array(self, indices: np.ndarray) -> np.ndarray:
        m = len(self.generators)
        r = np.asarray(indices, dtype=np.int64)
        local = (r[:, None] // self._place[None, :]) % m
        return self.generators.array[local]

    def label(self, index: int) -> str:
        monomial = self.unrank(index)
        return "⊗".join(self._names(monomial)) if monomial else "1"


# ==========================================================
# Coefficient wedge
# ==========================================================

class CoeffWedgeSpace(ModuleSpace):
    """
    V ⊗ Lambda^k(W) with V, W spanned by subsets of one algebra's basis.

    Monomials are ``(g, w_1, ..., w_k)``; the index is
    ``pos(g) * C(dim W, k) + wedge_rank``.
    """

    kind = "coeff_wedge"

    def __init__(
        self,
        algebra: LieAlgebra,
        k: int,
        coefficients: Optional[Sequence[int]] = None,
        generators: Optional[Sequence[int]] = None,
    ):
        super().__init__(algebra, k)
        self.coefficients = _Generators(algebra, coefficients)
        self.wedge = WedgeSpace(algebra, k, generators)
        self.generators = self.wedge.generators

    @property
    def dim(self) -> int:
        return len(self.coefficients) * self.wedge.dim

    @property
    def key(self) -> tuple:
        return (
            "coeff_wedge",
            self.algebra.key,
            self.coefficients.indices,
            self.generators.indices,
            self.k,
        )

    def rank(self, monomial: Sequence[int]) -> int:
        if len(monomial) != self.k + 1:
            raise AlgebraMismatch(f"expected {self.k + 1} factors, got {len(monomial)}")
        g = int(self.coefficients.local(np.asarray([monomial[0]], dtype=np.int64))[0])
        return g * self.wedge.dim + self.wedge.rank(monomial[1:])

    def unrank(self, index: int) -> Monomial:
        if not 0 <= index < self.dim:
            raise AlgebraMismatch(f"index {index} out of range for {self!r}")
        g, w = divmod(index, self.wedge.dim)
        return (self.coefficients.indices[g],) + self.wedge.unrank(w)

    def rank_array(self, digits: np.ndarray) -> np.ndarray:
        g = self.coefficients.local(digits[:, 0])
        return g * self.wedge.dim + self.wedge.rank_array(digits[:, 1:])

    def unrank_array(self, indices: np.ndarray) -> np.ndarray:
        g, w = np.divmod(np.asarray(indices, dtype=np.int64), self.wedge.dim)
        head = self.coefficients.array[g][:, None]
        return np.hstack([head, self.wedge.unrank_array(w)])

    def label(self, index: int) -> str:
        monomial = self.unrank(index)
        names = self._names(monomial)
        wedge = "∧".join(names[1:]) if len(names) > 1 else "1"
        return f"{names[0]}⊗{wedge}"

    def bidegree(self, monomial: Sequence[int]) -> Tuple[int, int]:
        return bidegree(self.algebra, monomial[1:])


def bidegree(algebra: LieAlgebra, factors: Sequence[int]) -> Tuple[int, int]:
    """
    Number of factors from the boosts and from the momenta.
    """
    boosts = set(algebra.tags.get("I1", ()))
    momenta = set(algebra.tags.get("I2", ()))
    return (
        sum(1 for f in factors if f in boosts),
        sum(1 for f in factors if f in momenta),
    )
