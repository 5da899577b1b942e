"""
Linear vector fields on R^{n+2} as matrices.

Coordinates are x_1..x_n, x_{n+1}, x_{n+2}; the field x_a d/dx^b is sent
to the elementary matrix E_ab. Under this correspondence the bracket of
vector fields is the matrix commutator, so every structure constant can be
read off from commutators.
"""

from typing import Dict, Tuple

import numpy as np

from ..exceptions import ConfigurationError
from ..types import BasisLabel


ALGEBRA_NAMES = ("so", "sl2", "hbar", "schrodinger", "galilei", "abelian_I")

#: Component tag of each basis kind.
KIND_TAGS: Dict[str, str] = {
    "rotation": "so",
    "a": "sl2",
    "b": "sl2",
    "c": "sl2",
    "boost": "I1",
    "momentum": "I2",
    "d": "dilation",
}

#: Components making up each named algebra, in basis order.
COMPONENTS: Dict[str, Tuple[str, ...]] = {
    "so": ("so",),
    "sl2": ("sl2",),
    "hbar": ("so", "sl2"),
    "schrodinger": ("so", "sl2", "I1", "I2"),
    "galilei": ("so", "sl2", "I1", "I2", "dilation"),
    "abelian_I": ("I1", "I2"),
}


def component_labels(component: str, n: int) -> Tuple[BasisLabel, ...]:
    if component == "so":
        return tuple(
            BasisLabel("rotation", n, i, j)
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
        )
    if component == "sl2":
        return tuple(BasisLabel(kind, n) for kind in ("a", "b", "c"))
    if component == "I1":
        return tuple(BasisLabel("boost", n, i) for i in range(1, n + 1))
    if component == "I2":
        return tuple(BasisLabel("momentum", n, i) for i in range(1, n + 1))
    if component == "dilation":
        return (BasisLabel("d", n),)
    raise ConfigurationError(f"Unknown component: {component}")


def basis_labels(name: str, n: int) -> Tuple[BasisLabel, ...]:
    """
    Basis of a named algebra: rotations (lex by (i, j)), a, b, c, boosts,
    momenta, then d.
    """
    if name not in COMPONENTS:
        raise ConfigurationError(
            f"Unknown algebra: {name} (expected one of {', '.join(ALGEBRA_NAMES)})"
        )
    labels: Tuple[BasisLabel, ...] = ()
    for component in COMPONENTS[name]:
        labels += component_labels(component, n)
    return labels


def field_matrix(n: int, terms) -> np.ndarray:
    """
    Matrix of sum c * x_a d/dx^b for ``terms`` = [(c, a, b), ...] (1-based).
    """
    out = np.zeros((n + 2, n + 2), dtype=np.int64)
    for coef, a, b in terms:
        out[a - 1, b - 1] += coef
    return out


def label_matrix(label: BasisLabel) -> np.ndarray:
    n = label.n
    t, s = n + 1, n + 2

    if label.kind == "rotation":
        # X_ij = -x_i d/dx^j + x_j d/dx^i
        return field_matrix(n, [(-1, label.i, label.j), (1, label.j, label.i)])
    if label.kind == "a":
        return field_matrix(n, [(-1, t, t), (1, s, s)])
    if label.kind == "b":
        return field_matrix(n, [(1, t, s)])
    if label.kind == "c":
        return field_matrix(n, [(-1, s, t)])
    if label.kind == "d":
        return field_matrix(n, [(1, t, t), (1, s, s)])
    if label.kind == "boost":
        return field_matrix(n, [(1, label.i, t)])
    return field_matrix(n, [(1, label.i, s)])


def commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    return x @ y - y @ x
