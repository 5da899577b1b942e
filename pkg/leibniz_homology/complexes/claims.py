"""
Evaluate the two printed chain-level boundary identities of sch_n under
each sign convention.

- d(rho_bar_n) = -2(n-1) beta_n in the trivial CE complex of sch_n
- d(rho_n) = -2(n-1) sum_i y_i ⊗ y_{n+i} in sch_n ⊗ Λ*(I_n)

Nothing is asserted: each row reports whether the boundary vanishes, is
a multiple of the expected chain (and whether the multiple is the
printed constant), or is something else.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from ..algebras import build_algebra
from ..exceptions import ConfigurationError
from ..multilinear import Chain, CoeffWedgeSpace, WedgeSpace, named_chain
from .chevalley_eilenberg import ChevalleyEilenbergComplex, Convention
from .spec import ComplexSpec


VERDICTS = ("zero", "multiple", "other")
IDENTITIES = ("d(rho_bar)", "d(rho)")


@dataclass(frozen=True, slots=True)
class ClaimRow:
    convention: str
    identity: str
    verdict: str
    factor: Optional[Fraction]
    matches_printed: bool
    boundary: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "convention": self.convention,
            "identity": self.identity,
            "verdict": self.verdict,
            "factor": None if self.factor is None else str(self.factor),
            "matches_printed": self.matches_printed,
            "boundary": self.boundary,
        }


@dataclass(frozen=True, slots=True)
class ClaimsReport:
    n: int
    printed_factor: int
    rows: Tuple[ClaimRow, ...]

    def row(self, convention: Convention, identity: str) -> ClaimRow:
        for row in self.rows:
            if row.convention == convention.value and row.identity == identity:
                return row
        raise KeyError((convention, identity))

    @property
    def any_matches(self) -> Dict[str, bool]:
        return {
            identity: any(r.matches_printed for r in self.rows if r.identity == identity)
            for identity in IDENTITIES
        }

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "printed_factor": self.printed_factor,
            "rows": [row.to_dict() for row in self.rows],
            "any_matches": self.any_matches,
        }


def _verdict(value: Chain, expected: Chain, printed: int) -> Tuple[str, Optional[Fraction], bool]:
    if value.is_zero():
        return "zero", Fraction(0), False
    ratio = value.proportional_to(expected)
    if ratio is None:
        return "other", None, False
    return "multiple", ratio, ratio == printed


def claims_report(n: int) -> ClaimsReport:
    """
    Four conventions times two identities for sch_n, 2 <= n <= 5.
    """
    if not isinstance(n, int) or not 2 <= n <= 5:
        raise ConfigurationError("claims_report needs 2 <= n <= 5")

    L = build_algebra("schrodinger", n)
    ideal = L.subalgebra_indices("I")
    printed = -2 * (n - 1)

    trivial = ComplexSpec(algebra=L, flavor="ce", max_degree=3)
    restricted = ComplexSpec(
        algebra=L, flavor="ce_coefficients", max_degree=2, wedge="I"
    )

    rho_bar = named_chain("rho_bar", n)
    rho = named_chain("rho", n).embed(CoeffWedgeSpace(L, 2, None, ideal))
    beta = named_chain("beta", n).embed(WedgeSpace(L, 2))
    pairing = Chain.from_monomials(
        CoeffWedgeSpace(L, 1, None, ideal),
        {(L.index(f"y{i}"), L.index(f"y{n + i}")): 1 for i in range(1, n + 1)},
    )

    rows: List[ClaimRow] = []
    for convention in Convention:
        for identity, spec, chain, expected in (
            ("d(rho_bar)", trivial, rho_bar, beta),
            ("d(rho)", restricted, rho, pairing),
        ):
            value = ChevalleyEilenbergComplex(spec, convention).apply(chain.space.k, chain)
            verdict, factor, matches = _verdict(value, expected, printed)
            rows.append(
                ClaimRow(
                    convention=convention.value,
                    identity=identity,
                    verdict=verdict,
                    factor=factor,
                    matches_printed=matches,
                    boundary=value.to_dict(),
                )
            )

    return ClaimsReport(n=n, printed_factor=printed, rows=tuple(rows))
