"""
Finite-dimensional Lie algebras with exact rational structure constants.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from types import MappingProxyType
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from ..backends.rational import fraction_rows, to_qq
from ..exceptions import AlgebraMismatch, ClosureError, ConfigurationError
from ..types import BasisLabel
from .realization import ALGEBRA_NAMES, KIND_TAGS, basis_labels, commutator, label_matrix


logger = logging.getLogger(__name__)

Structure = Dict[Tuple[int, int], Dict[int, Fraction]]

#: Basis kinds acting diagonally on the basis; they grade every complex.
WEIGHT_KINDS = ("a", "d")

#: Derived component tags.
DERIVED_TAGS = {"I": ("I1", "I2"), "hbar": ("so", "sl2")}


def _clean(coeffs: Mapping[int, Any]) -> Dict[int, Fraction]:
    return {int(i): Fraction(v) for i, v in sorted(coeffs.items()) if v != 0}


# ==========================================================
# Elements
# ==========================================================

class Element:
    """
    Sparse exact vector over the basis of a ``LieAlgebra``.
    """

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: "LieAlgebra", coeffs: Mapping[int, Any]):
        cleaned = _clean(coeffs)
        if any(not 0 <= i < algebra.dim for i in cleaned):
            raise AlgebraMismatch(
                f"coefficient index out of range for {algebra.name} (dim {algebra.dim})"
            )
        self.algebra = algebra
        self.coeffs: Mapping[int, Fraction] = MappingProxyType(cleaned)

    def _check(self, other: "Element") -> None:
        if not isinstance(other, Element):
            raise AlgebraMismatch("expected an Element")
        if other.algebra.key != self.algebra.key:
            raise AlgebraMismatch(
                f"elements of {self.algebra.key} and {other.algebra.key} do not mix"
            )

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        out = dict(self.coeffs)
        for i, v in other.coeffs.items():
            out[i] = out.get(i, 0) + v
        return Element(self.algebra, out)

    def __neg__(self) -> "Element":
        return Element(self.algebra, {i: -v for i, v in self.coeffs.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __mul__(self, scalar) -> "Element":
        s = Fraction(scalar)
        return Element(self.algebra, {i: s * v for i, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra.key == other.algebra.key and dict(self.coeffs) == dict(
            other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.algebra.key, tuple(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_dict(self) -> Dict[str, str]:
        return {self.algebra.basis[i].name: str(v) for i, v in self.coeffs.items()}

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(
            f"{v}*{self.algebra.basis[i].name}" for i, v in self.coeffs.items()
        )


# ==========================================================
# Algebras
# ==========================================================

class LieAlgebra:
    """
    Labeled basis, structure constants and component tags.

    ``structure[(i, j)]`` holds the nonzero coefficients of [e_i, e_j]
    for i < j; the other order follows by antisymmetry. Values are
    immutable once built and may be shared across workers.
    """

    def __init__(
        self,
        *,
        name: str,
        n: int,
        basis: Sequence[BasisLabel],
        structure: Structure,
        tags: Mapping[str, Sequence[int]],
        matrices: Optional[Sequence[np.ndarray]] = None,
    ):
        if not basis:
            raise ConfigurationError("an algebra needs a nonempty basis")

        self.name = name
        self.n = n
        self.basis: Tuple[BasisLabel, ...] = tuple(basis)
        self.dim = len(self.basis)
        self._structure: Structure = {
            key: dict(val) for key, val in structure.items() if val
        }
        for i, j in self._structure:
            if not 0 <= i < j < self.dim:
                raise AlgebraMismatch(f"structure key ({i},{j}) out of order or range")
        self.tags: Dict[str, Tuple[int, ...]] = {
            tag: tuple(indices) for tag, indices in tags.items()
        }
        self._matrices = tuple(matrices) if matrices is not None else None
        self._index = {label.name: idx for idx, label in enumerate(self.basis)}

    @property
    def key(self) -> Tuple[str, int]:
        return (self.name, self.n)

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name}, n={self.n}, dim={self.dim})"

    # -----------------------------------------------------
    # Lookup
    # -----------------------------------------------------

    def index(self, label: Union[str, BasisLabel, int]) -> int:
        if isinstance(label, int):
            if not 0 <= label < self.dim:
                raise AlgebraMismatch(f"basis index {label} out of range")
            return label
        name = label.name if isinstance(label, BasisLabel) else label
        try:
            return self._index[name]
        except KeyError:
            raise AlgebraMismatch(f"{name} is not a basis vector of {self.name}") from None

    def element(self, label: Union[str, BasisLabel, int], coef=1) -> Element:
        return Element(self, {self.index(label): coef})

    def zero(self) -> Element:
        return Element(self, {})

    def subalgebra_indices(self, component: str) -> Tuple[int, ...]:
        """
        Basis indices of a component tag (``so``, ``sl2``, ``I1``, ``I2``,
        ``dilation``) or of a derived one (``I``, ``hbar``).
        """
        if component in self.tags:
            return self.tags[component]
        if component in DERIVED_TAGS:
            out: List[int] = []
            for part in DERIVED_TAGS[component]:
                out.extend(self.tags.get(part, ()))
            if out:
                return tuple(sorted(out))
        raise ConfigurationError(f"{self.name} has no component {component}")

    def has_component(self, component: str) -> bool:
        try:
            return bool(self.subalgebra_indices(component))
        except ConfigurationError:
            return False

    # -----------------------------------------------------
    # Brackets
    # -----------------------------------------------------

    def bracket_basis(self, i: int, j: int) -> Dict[int, Fraction]:
        if i == j:
            return {}
        if i < j:
            return self._structure.get((i, j), {})
        return {k: -v for k, v in self._structure.get((j, i), {}).items()}

    def bracket(self, x: Element, y: Element) -> Element:
        """
        Bilinear extension of the structure constants.
        """
        for el in (x, y):
            if not isinstance(el, Element) or el.algebra.key != self.key:
                raise AlgebraMismatch(f"element does not belong to {self.name}")

        out: Dict[int, Fraction] = {}
        for i, u in x.coeffs.items():
            for j, v in y.coeffs.items():
                for k, c in self.bracket_basis(i, j).items():
                    out[k] = out.get(k, 0) + u * v * c
        return Element(self, out)

    def structure_constants(self) -> Iterator[Tuple[int, int, int, Fraction]]:
        for (i, j), row in sorted(self._structure.items()):
            for k, c in row.items():
                yield i, j, k, c

    def right_action(self, x: Element) -> List[Dict[int, Fraction]]:
        """
        Column ``i`` holds [e_i, x], the right action of ``x`` on basis vectors.
        """
        if x.algebra.key != self.key:
            raise AlgebraMismatch(f"element does not belong to {self.name}")
        columns: List[Dict[int, Fraction]] = []
        for i in range(self.dim):
            out: Dict[int, Fraction] = {}
            for h, v in x.coeffs.items():
                for k, c in self.bracket_basis(i, h).items():
                    out[k] = out.get(k, 0) + v * c
            columns.append({k: c for k, c in sorted(out.items()) if c})
        return columns

    # -----------------------------------------------------
    # Structure checks
    # -----------------------------------------------------

    def jacobi_violations(self) -> List[Tuple[int, int, int]]:
        bad = []
        for i, j, k in combinations(range(self.dim), 3):
            ei, ej, ek = (self.element(t) for t in (i, j, k))
            total = (
                self.bracket(self.bracket(ei, ej), ek)
                + self.bracket(self.bracket(ej, ek), ei)
                + self.bracket(self.bracket(ek, ei), ej)
            )
            if not total.is_zero():
                bad.append((i, j, k))
        return bad

    def realize(self, x: Element) -> np.ndarray:
        """
        Matrix of ``x`` in the vector-field realization.
        """
        if self._matrices is None:
            raise ConfigurationError(f"{self.name} has no matrix realization")
        out = np.zeros(self._matrices[0].shape, dtype=object)
        for i, v in x.coeffs.items():
            out = out + v * self._matrices[i].astype(object)
        return out

    def weights(self) -> Tuple[Tuple[Fraction, ...], ...]:
        """
        Eigenvalues of the right action of the diagonal elements (``a``,
        and ``d`` when present) on every basis vector.
        """
        return self._weight_table

    @cached_property
    def _weight_table(self) -> Tuple[Tuple[Fraction, ...], ...]:
        diagonal = [
            idx for idx, label in enumerate(self.basis) if label.kind in WEIGHT_KINDS
        ]
        rows = []
        for i in range(self.dim):
            row = []
            for h in diagonal:
                image = self.bracket_basis(i, h)
                if set(image) - {i}:
                    raise ClosureError(
                        f"{self.basis[h].name} does not act diagonally on {self.basis[i].name}"
                    )
                row.append(image.get(i, Fraction(0)))
            rows.append(tuple(row))
        return tuple(rows)


# ==========================================================
# Construction
# ==========================================================

class _Coordinates:
    """
    Decompose matrices in the span of the realized basis.
    """

    def __init__(self, matrices: Sequence[np.ndarray]):
        flat = np.array([m.ravel() for m in matrices], dtype=np.int64)
        dim, width = flat.shape
        dm = DomainMatrix(
            [[to_qq(int(v)) for v in row] for row in flat.tolist()], (dim, width), QQ
        )
        _, pivots = dm.rref()
        if len(pivots) != dim:
            raise ClosureError("realized basis matrices are linearly dependent")

        square = dm.extract(list(range(dim)), list(pivots))
        inverse = fraction_rows(square.inv())
        self.flat = flat.astype(object)
        self.pivots = list(pivots)
        self.inverse = np.array(
            [[row.get(j, Fraction(0)) for j in range(dim)] for row in inverse],
            dtype=object,
        )

    def solve(self, matrix: np.ndarray) -> Dict[int, Fraction]:
        v = matrix.ravel().astype(object)
        coords = v[self.pivots].dot(self.inverse)
        if not np.array_equal(coords.dot(self.flat), v):
            raise ClosureError("commutator leaves the span of the basis")
        return _clean(dict(enumerate(coords.tolist())))


@lru_cache(maxsize=None)
def build_algebra(name: str, n: int) -> LieAlgebra:
    """
    Build a named algebra from its matrix realization.

    Args:
        name: one of so, sl2, hbar, schrodinger, galilei, abelian_I
        n: dimension of the spatial factor, >= 2

    Raises:
        ConfigurationError: unknown name or n < 2
        ClosureError: the realized span is not closed under commutators
    """
    if name not in ALGEBRA_NAMES:
        raise ConfigurationError(
            f"Unknown algebra: {name} (expected one of {', '.join(ALGEBRA_NAMES)})"
        )
    if not isinstance(n, int) or n < 2:
        raise ConfigurationError("n must be an integer >= 2")

    labels = basis_labels(name, n)
    matrices = [label_matrix(label) for label in labels]
    coordinates = _Coordinates(matrices)

    structure: Structure = {}
    for i, j in combinations(range(len(labels)), 2):
        coeffs = coordinates.solve(commutator(matrices[i], matrices[j]))
        if coeffs:
            structure[(i, j)] = coeffs

    tags: Dict[str, List[int]] = {}
    for idx, label in enumerate(labels):
        tags.setdefault(KIND_TAGS[label.kind], []).append(idx)

    algebra = LieAlgebra(
        name=name,
        n=n,
        basis=labels,
        structure=structure,
        tags=tags,
        matrices=matrices,
    )
    logger.debug("built %r with %d nonzero brackets", algebra, len(structure))
    return algebra


def algebra_info(algebra: LieAlgebra) -> Dict[str, Any]:
    """
    JSON payload describing an algebra: dim, labels, tags and structure.
    """
    names = [label.name for label in algebra.basis]
    return {
        "name": algebra.name,
        "n": algebra.n,
        "dim": algebra.dim,
        "basis": names,
        "tags": {tag: [names[i] for i in idx] for tag, idx in algebra.tags.items()},
        "structure": [
            {"i": names[i], "j": names[j], "k": names[k], "c": str(c)}
            for i, j, k, c in algebra.structure_constants()
        ],
    }
