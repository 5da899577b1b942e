"""
Invariant dimensions of the hbar_n action on the modules built over I_n,
compared against the printed predictions.

Cells are (module, k) with module one of:

- ``wedge``: Λ^k(I_n)
- ``sl2``:   sl(2) ⊗ Λ^k(I_n)
- ``so``:    so(n) ⊗ Λ^k(I_n)
- ``I``:     I_n ⊗ Λ^k(I_n)

A mismatch never raises; it becomes a ``Finding`` carrying the computed
dimension and the named chains tested against the kernel.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Tuple

from ..algebras import LieAlgebra, build_algebra
from ..engine import HomologyEngine
from ..exceptions import ConfigurationError
from ..multilinear import Chain, CoeffWedgeSpace, ModuleSpace, act, beta_power, named_chain
from ..multilinear.named import ideal_wedge, rotation_wedge
from ..types import RankStrategy
from .subspace import InvariantReport, invariant_subspace


logger = logging.getLogger(__name__)

LEMMA_MODULES = ("wedge", "sl2", "so", "I")

SEVERITIES = ("hard", "soft")


@dataclass(frozen=True, slots=True)
class Finding:
    """
    One disagreement (or documented ambiguity) with evidence.
    """

    subject: str
    severity: str
    message: str
    expected: Any = None
    actual: Any = None
    evidence: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subject": self.subject,
            "severity": self.severity,
            "message": self.message,
            "expected": self.expected,
            "actual": self.actual,
            "evidence": self.evidence,
        }


@dataclass(frozen=True, slots=True)
class LemmaReport:
    n: int
    cells: Tuple[InvariantReport, ...]
    findings: Tuple[Finding, ...]
    ledger: Dict[str, Any] = field(default_factory=dict)

    def cell(self, module: str, k: int) -> InvariantReport:
        for report in self.cells:
            if report.module == _MODULE_LABELS[module] and report.k == k:
                return report
        raise KeyError((module, k))

    def dims(self, module: str) -> Dict[int, int]:
        label = _MODULE_LABELS[module]
        return {c.k: c.dim for c in self.cells if c.module == label}

    @property
    def hard_findings(self) -> Tuple[Finding, ...]:
        return tuple(f for f in self.findings if f.severity == "hard")

    @property
    def passed(self) -> bool:
        return not self.hard_findings

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "dims": {module: self.dims(module) for module in LEMMA_MODULES},
            "cells": [c.to_dict() for c in self.cells],
            "findings": [f.to_dict() for f in self.findings],
            "ledger": self.ledger,
            "passed": self.passed,
        }


_MODULE_LABELS = {"wedge": "wedge", "sl2": "sl2⊗wedge", "so": "so⊗wedge", "I": "I⊗wedge"}


# ==========================================================
# Predictions
# ==========================================================

def predicted_dim(module: str, n: int, k: int) -> int:
    """
    Printed invariant dimension of one cell.
    """
    if module == "wedge":
        return int(k in {0, 2, 2 * n - 2, 2 * n})
    if module == "so":
        return int(k in {2, 2 * n - 2})
    if module in ("sl2", "I"):
        return 0
    raise ConfigurationError(f"unknown module {module}")


def module_space(L: LieAlgebra, module: str, k: int) -> ModuleSpace:
    ideal = L.subalgebra_indices("I")
    if module == "wedge":
        return ideal_wedge(L, k)
    if module == "so":
        return rotation_wedge(L, k)
    if module == "sl2":
        return CoeffWedgeSpace(L, k, L.subalgebra_indices("sl2"), ideal)
    if module == "I":
        return CoeffWedgeSpace(L, k, ideal, ideal)
    raise ConfigurationError(f"unknown module {module}")


def _members(n: int, module: str, k: int) -> Dict[str, Chain]:
    members: Dict[str, Chain] = {}
    if module == "wedge":
        if k == 2:
            members["beta"] = named_chain("beta", n)
        if k == 2 * n - 2:
            members["zeta"] = named_chain("zeta", n)
        if k == 2 * n:
            members["alpha"] = named_chain("alpha", n)
        if k % 2 == 0 and 2 <= k <= 2 * n:
            members[f"beta^{k // 2}"] = beta_power(n, k // 2)
    elif module == "so":
        if k == 2:
            members["rho"] = named_chain("rho", n)
        if k == 2 * n - 2:
            members["gamma"] = named_chain("gamma", n)
    return members


def _offending(space: ModuleSpace, chain: Chain, generators: Iterable[int]) -> List[str]:
    L = space.algebra
    return [
        L.basis[g].name for g in generators if not act(space, L.element(g), chain).is_zero()
    ]


# ==========================================================
# Suite
# ==========================================================

def _cell(n: int, module: str, k: int, engine: HomologyEngine) -> InvariantReport:
    L = build_algebra("schrodinger", n)
    report = invariant_subspace(
        "hbar", module_space(L, module, k), members=_members(n, module, k), engine=engine
    )
    logger.info("n=%d %s k=%d: invariant dim %d", n, report.module, k, report.dim)
    return report


def bidegree_split(n: int, k: int, engine: Optional[HomologyEngine] = None) -> Dict[str, Any]:
    """
    Invariant dimension of Λ^k(I_n) against the sum over r + s = k of the
    bidegree-restricted kernels, plus the kernel of the weight element
    alone off the diagonal r == s.
    """
    L = build_algebra("schrodinger", n)
    space = ideal_wedge(L, k)
    full = invariant_subspace("hbar", space, engine=engine).dim
    parts: Dict[str, int] = {}
    weight_kernels: Dict[str, int] = {}
    for r in range(0, k + 1):
        s = k - r
        if r > n or s > n:
            continue
        parts[f"{r},{s}"] = invariant_subspace(
            "hbar", space, bidegree=(r, s), engine=engine
        ).dim
        if r != s:
            weight_kernels[f"{r},{s}"] = invariant_subspace(
                ["a"], space, bidegree=(r, s), engine=engine
            ).dim
    return {
        "k": k,
        "full": full,
        "split": parts,
        "consistent": full == sum(parts.values()),
        "weight_kernels": weight_kernels,
        "weight_argument": not any(weight_kernels.values()),
    }


def lemma_suite(
    n: int,
    *,
    degrees: Optional[Iterable[int]] = None,
    engine: Optional[HomologyEngine] = None,
    bidegrees: bool = True,
) -> LemmaReport:
    """
    Compute every (module, k) cell for sch_n and compare with the printed
    dimensions.

    Hard findings: dimension mismatches for n >= 3, printed chains outside
    the kernel, failed rechecks, inconsistent bidegree splittings. Soft
    findings: the n = 2 collision zeta_2 = beta_2, mismatches at n = 2
    (so(2) is abelian), and the so(n) cell at k = n - 2.

    Raises:
        ConfigurationError: n outside 2..5
    """
    if not isinstance(n, int) or not 2 <= n <= 5:
        raise ConfigurationError("lemma_suite needs 2 <= n <= 5")

    engine = engine or HomologyEngine.from_strategy(RankStrategy(field="rational"))
    degrees = list(range(2 * n + 1) if degrees is None else degrees)
    jobs = [(module, k) for module in LEMMA_MODULES for k in degrees]

    workers = engine.strategy.workers
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(lambda job: _cell(n, job[0], job[1], engine), jobs))
    else:
        cells = [_cell(n, module, k, engine) for module, k in jobs]

    L = build_algebra("schrodinger", n)
    hbar = L.subalgebra_indices("hbar")
    findings: List[Finding] = []
    ledger: Dict[str, Any] = {}

    for (module, k), cell in zip(jobs, cells):
        subject = f"{cell.module} k={k}"
        expected = predicted_dim(module, n, k)

        if not cell.verified:
            findings.append(
                Finding(subject, "hard", "kernel basis failed the invariance recheck")
            )

        if cell.dim != expected:
            witnesses = {
                name: inside for name, inside in cell.membership.items() if inside
            }
            findings.append(
                Finding(
                    subject,
                    "soft" if n == 2 else "hard",
                    "invariant dimension differs from the printed value",
                    expected=expected,
                    actual=cell.dim,
                    evidence={"members_in_kernel": witnesses},
                )
            )

        for name, inside in cell.membership.items():
            if inside or "^" in name:
                continue
            chain = _members(n, module, k)[name]
            findings.append(
                Finding(
                    subject,
                    "soft" if n == 2 else "hard",
                    f"{name}_{n} is not invariant",
                    expected=True,
                    actual=False,
                    evidence={"moved_by": _offending(module_space(L, module, k), chain, hbar)},
                )
            )

        if module == "so" and k == n - 2:
            ledger["so_k_n_minus_2"] = {"k": k, "dim": cell.dim}

    if n == 2:
        beta, zeta = named_chain("beta", 2), named_chain("zeta", 2)
        findings.append(
            Finding(
                "wedge k=2",
                "soft",
                "zeta_2 and beta_2 coincide; k = 2 and k = 2n - 2 are one cell",
                evidence={"ratio": str(zeta.proportional_to(beta))},
            )
        )

    if "so_k_n_minus_2" in ledger:
        findings.append(
            Finding(
                f"so⊗wedge k={n - 2}",
                "soft",
                "cell at k = n - 2 recorded; the comparison uses k = 2n - 2",
                actual=ledger["so_k_n_minus_2"]["dim"],
            )
        )

    if bidegrees:
        splits = [bidegree_split(n, k, engine) for k in degrees]
        ledger["bidegree"] = splits
        for split in splits:
            if not (split["consistent"] and split["weight_argument"]):
                findings.append(
                    Finding(
                        f"wedge k={split['k']}",
                        "hard",
                        "bidegree splitting disagrees with the full kernel",
                        evidence=split,
                    )
                )

    return LemmaReport(n=n, cells=tuple(cells), findings=tuple(findings), ledger=ledger)
