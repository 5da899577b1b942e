"""
Sparse exact chains and the right derivation action.

The right action of an algebra element X on a factor g is [g, X]. It
extends to wedge and tensor monomials slot by slot (Leibniz rule), and to
coefficient wedges as ``[g, X] ⊗ w + g ⊗ (w . X)``.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import permutations
from math import factorial
from types import MappingProxyType
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..algebras import Element
from ..exceptions import AlgebraMismatch, ClosureError, FactorialCapExceeded
from ..matrix import SparseMatrix
from .spaces import CoeffWedgeSpace, ModuleSpace, Monomial, TensorSpace, WedgeSpace, normalize_wedge


logger = logging.getLogger(__name__)

#: Largest k for which k! slot permutations are expanded.
FACTORIAL_CAP = 8


# ==========================================================
# Chains
# ==========================================================

class Chain:
    """
    Immutable sparse vector ``{basis index: coefficient}`` over a space.
    """

    __slots__ = ("space", "entries")

    def __init__(self, space: ModuleSpace, entries: Mapping[int, Any]):
        cleaned: Dict[int, Fraction] = {}
        for idx, value in sorted(entries.items()):
            if value == 0:
                continue
            if not 0 <= idx < space.dim:
                raise AlgebraMismatch(f"index {idx} out of range for {space!r}")
            cleaned[int(idx)] = Fraction(value)
        self.space = space
        self.entries: Mapping[int, Fraction] = MappingProxyType(cleaned)

    @classmethod
    def from_monomials(
        cls, space: ModuleSpace, terms: Mapping[Sequence[int], Any]
    ) -> "Chain":
        """
        Build from ``{monomial: coefficient}``; wedge factors may come in
        any order and are sorted with the matching sign.
        """
        acc: Dict[int, Fraction] = {}
        for monomial, coef in terms.items():
            sign, key = _canonical(space, tuple(monomial))
            if sign == 0:
                continue
            idx = space.rank(key)
            acc[idx] = acc.get(idx, 0) + sign * Fraction(coef)
        return cls(space, acc)

    @classmethod
    def zero(cls, space: ModuleSpace) -> "Chain":
        return cls(space, {})

    # -----------------------------------------------------
    # Arithmetic
    # -----------------------------------------------------

    def _check(self, other: "Chain") -> None:
        if not isinstance(other, Chain) or other.space != self.space:
            raise AlgebraMismatch("chains live in different spaces")

    def __add__(self, other: "Chain") -> "Chain":
        self._check(other)
        out = dict(self.entries)
        for idx, v in other.entries.items():
            out[idx] = out.get(idx, 0) + v
        return Chain(self.space, out)

    def __neg__(self) -> "Chain":
        return Chain(self.space, {i: -v for i, v in self.entries.items()})

    def __sub__(self, other: "Chain") -> "Chain":
        return self + (-other)

    def __mul__(self, scalar) -> "Chain":
        s = Fraction(scalar)
        return Chain(self.space, {i: s * v for i, v in self.entries.items()})

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Chain):
            return NotImplemented
        return self.space == other.space and dict(self.entries) == dict(other.entries)

    __hash__ = None  # type: ignore[assignment]

    def is_zero(self) -> bool:
        return not self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def terms(self) -> Iterator[Tuple[Monomial, Fraction]]:
        for idx, coef in self.entries.items():
            yield self.space.unrank(idx), coef

    def proportional_to(self, other: "Chain") -> Optional[Fraction]:
        """
        The scalar ``c`` with ``self == c * other``, or None.
        """
        self._check(other)
        if self.is_zero():
            return Fraction(0)
        if other.is_zero() or set(self.entries) != set(other.entries):
            return None
        first = next(iter(other.entries))
        ratio = self.entries[first] / other.entries[first]
        if all(self.entries[i] == ratio * v for i, v in other.entries.items()):
            return ratio
        return None

    # -----------------------------------------------------
    # Conversions
    # -----------------------------------------------------

    def embed(self, space: ModuleSpace) -> "Chain":
        """
        Re-express this chain in ``space`` over the same algebra and kind.
        """
        if space.kind != self.space.kind or space.k != self.space.k:
            raise AlgebraMismatch(f"cannot embed {self.space!r} into {space!r}")
        if space.algebra.key != self.space.algebra.key:
            raise AlgebraMismatch("embedding needs a common algebra")
        return Chain(space, {space.rank(m): c for m, c in self.terms()})

    def to_dict(self) -> Dict[str, Any]:
        return {
            "space": repr(self.space),
            "terms": [
                {"monomial": self.space.label(idx), "coef": str(coef)}
                for idx, coef in self.entries.items()
            ],
        }

    def __repr__(self) -> str:
        if not self.entries:
            return f"Chain(0 in {self.space!r})"
        body = " + ".join(f"{c}*{self.space.label(i)}" for i, c in self.entries.items())
        return f"Chain({body})"


def _canonical(space: ModuleSpace, monomial: Monomial) -> Tuple[int, Monomial]:
    if isinstance(space, WedgeSpace):
        sign, key = normalize_wedge(monomial)
        return sign, key or ()
    if isinstance(space, CoeffWedgeSpace):
        sign, key = normalize_wedge(monomial[1:])
        return sign, (monomial[0],) + (key or ())
    return 1, monomial


# ==========================================================
# Right action
# ==========================================================

def _image_table(space: ModuleSpace, X: Element, factors) -> Dict[int, Dict[int, Fraction]]:
    """
    [g, X] for every generator g of one factor, checked to stay inside it.
    """
    columns = X.algebra.right_action(X)
    table = {}
    for g in factors.indices:
        image = columns[g]
        outside = [h for h in image if h not in factors]
        if outside:
            raise ClosureError(
                f"[{X.algebra.basis[g].name}, X] leaves the factor of {space!r}"
            )
        table[g] = image
    return table


def _act_monomial(
    space: ModuleSpace, monomial: Monomial, tables
) -> Dict[Monomial, Fraction]:
    out: Dict[Monomial, Fraction] = {}
    slot_tables, first = tables
    for slot, g in enumerate(monomial):
        table = first if (slot == 0 and first is not None) else slot_tables
        for h, c in table[g].items():
            new = monomial[:slot] + (h,) + monomial[slot + 1:]
            out[new] = out.get(new, 0) + c
    return out


def _tables(space: ModuleSpace, X: Element):
    if X.algebra.key != space.algebra.key:
        raise AlgebraMismatch(
            f"element of {X.algebra.name} cannot act on a space over {space.algebra.name}"
        )
    slot_table = _image_table(space, X, space.generators)
    first = None
    if isinstance(space, CoeffWedgeSpace):
        first = _image_table(space, X, space.coefficients)
    return slot_table, first


def act(space: ModuleSpace, X: Element, w: Chain) -> Chain:
    """
    Right derivation action of ``X`` on the chain ``w`` of ``space``.

    Raises:
        AlgebraMismatch: ``X`` or ``w`` belongs to another algebra or space
        ClosureError: the action leaves the factors of ``space``
    """
    if w.space != space:
        raise AlgebraMismatch("chain does not belong to the acting space")
    if w.is_zero():
        return Chain.zero(space)

    tables = _tables(space, X)
    acc: Dict[Monomial, Fraction] = {}
    for monomial, coef in w.terms():
        for new, c in _act_monomial(space, monomial, tables).items():
            acc[new] = acc.get(new, 0) + coef * c
    return Chain.from_monomials(space, acc)


def action_matrix(space: ModuleSpace, X: Element) -> SparseMatrix:
    """
    Matrix of ``w -> w . X`` on the monomial basis of ``space``.
    """
    tables = _tables(space, X)
    rows: List[int] = []
    cols: List[int] = []
    data: List[Fraction] = []
    for col, monomial in enumerate(space.monomials()):
        for new, c in _act_monomial(space, monomial, tables).items():
            sign, key = _canonical(space, new)
            if sign == 0 or c == 0:
                continue
            rows.append(space.rank(key))
            cols.append(col)
            data.append(sign * c)

    if all(v.denominator == 1 for v in data):
        values = np.array([int(v) for v in data], dtype=np.int64)
    else:
        values = np.empty(len(data), dtype=object)
        values[:] = data
    return SparseMatrix.from_triplets(rows, cols, values, (space.dim, space.dim))


# ==========================================================
# Products and antisymmetrization
# ==========================================================

def wedge(x: Chain, y: Chain) -> Chain:
    """
    Exterior product of two wedge chains over the same generators.
    """
    if not isinstance(x.space, WedgeSpace) or not isinstance(y.space, WedgeSpace):
        raise AlgebraMismatch("wedge needs two wedge chains")
    if x.space.generators.indices != y.space.generators.indices:
        raise AlgebraMismatch("wedge factors must share generators")
    if x.space.algebra.key != y.space.algebra.key:
        raise AlgebraMismatch("wedge factors must share an algebra")

    target = WedgeSpace(
        x.space.algebra, x.space.k + y.space.k, x.space.generators.indices
    )
    acc: Dict[Monomial, Fraction] = {}
    for mx, cx in x.terms():
        for my, cy in y.terms():
            acc[mx + my] = acc.get(mx + my, 0) + cx * cy
    return Chain.from_monomials(target, acc)


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def antisymmetrize(
    w: Chain,
    *,
    target: Optional[TensorSpace] = None,
    cap: int = FACTORIAL_CAP,
) -> Chain:
    """
    Send v_1∧…∧v_k to (1/k!) Σ_σ sgn(σ) v_σ(1)⊗…⊗v_σ(k).

    Lands in ``target`` when given (same algebra, degree k), otherwise in
    the tensor power of the wedge's own generators. Coefficient wedges
    keep their coefficient in the first tensor slot.

    Raises:
        FactorialCapExceeded: k > cap
    """
    space = w.space
    if isinstance(space, WedgeSpace):
        k, head = space.k, 0
    elif isinstance(space, CoeffWedgeSpace):
        k, head = space.k, 1
    else:
        raise AlgebraMismatch("antisymmetrize needs a wedge or coefficient wedge chain")

    if k > cap:
        raise FactorialCapExceeded(f"{k}! permutations exceed the cap of {cap}!")

    if target is None:
        if head:
            gens = sorted(set(space.coefficients.indices) | set(space.generators.indices))
        else:
            gens = space.generators.indices
        target = TensorSpace(space.algebra, k + head, gens)
    elif target.k != k + head or target.algebra.key != space.algebra.key:
        raise AlgebraMismatch(f"{target!r} cannot hold the antisymmetrization")

    perms = [(p, permutation_sign(p)) for p in permutations(range(k))]
    scale = Fraction(1, factorial(k))
    acc: Dict[int, Fraction] = {}
    for monomial, coef in w.terms():
        prefix, factors = monomial[:head], monomial[head:]
        for perm, sign in perms:
            idx = target.rank(prefix + tuple(factors[p] for p in perm))
            acc[idx] = acc.get(idx, 0) + sign * scale * coef
    return Chain(target, acc)

