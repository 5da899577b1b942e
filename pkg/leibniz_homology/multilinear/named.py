"""
The distinguished chains of the Schrodinger algebra sch_n.

Indices follow the basis names: y_i (1 <= i <= n) are boosts, y_{n+i}
momenta, X_ij rotations with i < j.
"""

from fractions import Fraction
from typing import Dict, Tuple

from ..algebras import LieAlgebra, build_algebra
from ..exceptions import ConfigurationError
from ..types import BasisLabel
from .chains import FACTORIAL_CAP, Chain, antisymmetrize, wedge
from .spaces import CoeffWedgeSpace, TensorSpace, WedgeSpace


NAMED_CHAINS = (
    "alpha",
    "beta",
    "zeta",
    "rho",
    "rho_bar",
    "gamma",
    "alpha_tilde",
    "zeta_tilde",
    "gamma_tilde",
)


def _y(L: LieAlgebra, i: int) -> int:
    return L.index(f"y{i}")


def _X(L: LieAlgebra, i: int, j: int) -> int:
    return L.index(BasisLabel("rotation", L.n, i, j))


def _all_but(L: LieAlgebra, *skip: int) -> Tuple[int, ...]:
    return tuple(_y(L, t) for t in range(1, 2 * L.n + 1) if t not in skip)


def ideal_wedge(L: LieAlgebra, k: int) -> WedgeSpace:
    return WedgeSpace(L, k, L.subalgebra_indices("I"))


def rotation_wedge(L: LieAlgebra, k: int) -> CoeffWedgeSpace:
    return CoeffWedgeSpace(L, k, L.subalgebra_indices("so"), L.subalgebra_indices("I"))


def full_tensor(L: LieAlgebra, k: int) -> TensorSpace:
    return TensorSpace(L, k)


def _pair_sum(L: LieAlgebra, build) -> Dict[tuple, Fraction]:
    """
    sum_{i<j} build(i, n+j) - sum_{i<j} build(j, n+i) over rotation X_ij.
    """
    n = L.n
    terms: Dict[tuple, Fraction] = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for monomial, sign in (
                (build(_X(L, i, j), i, n + j), 1),
                (build(_X(L, i, j), j, n + i), -1),
            ):
                terms[monomial] = terms.get(monomial, 0) + sign
    return terms


def named_chain(name: str, n: int, *, cap: int = FACTORIAL_CAP) -> Chain:
    """
    One of the displayed chains of sch_n in its natural space.

    alpha, beta, zeta live in Lambda(I_n); rho and gamma in
    so(n) ⊗ Lambda(I_n); rho_bar in Lambda^3(sch_n); the tilde variants
    are antisymmetrizations inside the tensor powers of sch_n.

    Raises:
        ConfigurationError: unknown name or n < 2
        FactorialCapExceeded: a tilde variant would need more than cap! terms
    """
    if name not in NAMED_CHAINS:
        raise ConfigurationError(
            f"Unknown chain: {name} (expected one of {', '.join(NAMED_CHAINS)})"
        )
    if not isinstance(n, int) or n < 2:
        raise ConfigurationError("n must be an integer >= 2")

    L = build_algebra("schrodinger", n)

    if name == "alpha":
        return Chain.from_monomials(ideal_wedge(L, 2 * n), {_all_but(L): 1})

    if name == "beta":
        return Chain.from_monomials(
            ideal_wedge(L, 2),
            {(_y(L, i), _y(L, n + i)): 1 for i in range(1, n + 1)},
        )

    if name == "zeta":
        terms: Dict[tuple, int] = {}
        for i in range(1, n + 1):
            key = _all_but(L, i, n + i)
            terms[key] = terms.get(key, 0) + 1
        return Chain.from_monomials(ideal_wedge(L, 2 * n - 2), terms)

    if name == "rho":
        terms = _pair_sum(L, lambda x, p, q: (x, _y(L, p), _y(L, q)))
        return Chain.from_monomials(rotation_wedge(L, 2), terms)

    if name == "rho_bar":
        terms = _pair_sum(L, lambda x, p, q: (x, _y(L, p), _y(L, q)))
        return Chain.from_monomials(WedgeSpace(L, 3), terms)

    if name == "gamma":
        terms = _pair_sum(L, lambda x, p, q: (x,) + _all_but(L, p, q))
        return Chain.from_monomials(rotation_wedge(L, 2 * n - 2), terms)

    base = named_chain(name[: -len("_tilde")], n)
    k = base.space.k + (1 if name == "gamma_tilde" else 0)
    return antisymmetrize(base, target=full_tensor(L, k), cap=cap)


def beta_power(n: int, p: int) -> Chain:
    """
    The p-fold wedge power of beta_n (p = 0 gives the unit of Lambda^0).
    """
    if p < 0:
        raise ConfigurationError("p must be >= 0")
    L = build_algebra("schrodinger", n)
    out = Chain(ideal_wedge(L, 0), {0: 1})
    beta = named_chain("beta", n)
    for _ in range(p):
        out = wedge(out, beta)
    return out
