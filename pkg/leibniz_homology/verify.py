"""
End-to-end verification run: bracket tables, d∘d = 0, the lemma suite,
homology against the predicted series, the chain-level claims and the
Galilei free product.

Every step produces findings. Hard findings (unambiguous statements that
fail) make the run exit 1, budget aborts exit 75; documented ambiguities
are soft findings and never change the exit code.
"""

from __future__ import annotations

import json
import logging
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Tuple

from .algebras import LieAlgebra, build_algebra, check_tables
from .complexes import ComplexSpec, betti, boundary_squared, claims_report
from .engine import HomologyEngine
from .exceptions import BudgetExceeded, ConfigurationError
from .invariants import Finding, lemma_suite
from .series import PoincareSeries, predicted_series
from .types import HomologyReport, RankStrategy


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 64
EXIT_BUDGET = 75

STEPS = ("tables", "classical", "boundaries", "lemmas", "theorem", "claims", "galilei")
GROUPS = {
    "lemmas": ("tables", "lemmas"),
    "theorem": ("tables", "boundaries", "theorem", "claims"),
    "galilei": ("galilei",),
    "all": STEPS,
}
EMITS = ("json", "csv", "table")

#: Largest Loday boundary assembled by the d∘d step.
BOUNDARY_COLUMNS = 200_000

#: (algebra, n, flavor, Betti vector) checked by the classical step.
CLASSICAL = (
    ("sl2", 2, "ce", (1, 0, 0, 1)),
    ("so", 3, "ce", (1, 0, 0, 1)),
    ("so", 4, "ce", (1, 0, 0, 2, 0, 0, 1)),
    ("so", 3, "loday", (1, 0, 0, 0, 0)),
)


@dataclass(frozen=True, slots=True)
class VerifyConfig:
    """
    What a verification run covers and how ranks are computed.

    ``leibniz_degrees`` overrides ``leibniz_max_degree`` per n as
    ``(n, degree)`` pairs; degree 0 skips the Leibniz computation for
    that n.
    """

    ns: Tuple[int, ...] = (2, 3)
    steps: Tuple[str, ...] = STEPS
    boundary_max_degree: int = 4
    boundary_columns: int = BOUNDARY_COLUMNS
    leibniz_max_degree: int = 4
    leibniz_degrees: Tuple[Tuple[int, int], ...] = ()
    galilei_max_degree: int = 3
    lie_max_dim: int = 17
    primes: int = 2
    seed: int = 0
    memory_cap: int = 8 * 2**30
    strategy: str = "auto"
    field: str = "modular"
    workers: int = 1
    output: Optional[str] = None
    emit: str = "json"
    stable: bool = False

    def __post_init__(self) -> None:
        if not self.ns or any(not isinstance(n, int) or n < 2 for n in self.ns):
            raise ConfigurationError("every n must be an integer >= 2")

        unknown = set(self.steps) - set(STEPS)
        if unknown:
            raise ConfigurationError(f"unknown steps: {', '.join(sorted(unknown))}")

        caps = (
            self.boundary_max_degree,
            self.boundary_columns,
            self.leibniz_max_degree,
            self.galilei_max_degree,
            self.lie_max_dim,
        )
        if any(cap < 1 for cap in caps):
            raise ConfigurationError("degree caps must be >= 1")

        if any(n < 2 or top < 0 for n, top in self.leibniz_degrees):
            raise ConfigurationError("leibniz_degrees needs (n >= 2, degree >= 0) pairs")

        if self.emit not in EMITS:
            raise ConfigurationError(f"emit must be one of {', '.join(EMITS)}")

        # validated once here, reused by every engine of the run
        self.rank_strategy()

    @classmethod
    def acceptance(cls, **overrides: Any) -> "VerifyConfig":
        """
        The full acceptance ranges: d∘d for n = 2..4 up to degree 5,
        HL(sch_2) to degree 6, HL(sch_3) to degree 5 and HL of the
        Galilei algebra to degree 4.
        """
        values: Dict[str, Any] = dict(
            ns=(2, 3, 4),
            boundary_max_degree=5,
            boundary_columns=2_000_000,
            leibniz_max_degree=6,
            leibniz_degrees=((3, 5), (4, 0)),
            galilei_max_degree=4,
        )
        values.update(overrides)
        return cls(**values)

    def leibniz_top(self, n: int) -> int:
        return dict(self.leibniz_degrees).get(n, self.leibniz_max_degree)

    def rank_strategy(self, rank_field: Optional[str] = None) -> RankStrategy:
        return RankStrategy(
            primes=self.primes,
            seed=self.seed,
            memory_cap=self.memory_cap,
            strategy=self.strategy,
            field=rank_field or self.field,
            workers=self.workers,
        )

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out["ns"] = list(self.ns)
        out["steps"] = list(self.steps)
        out["leibniz_degrees"] = [list(pair) for pair in self.leibniz_degrees]
        return out


@dataclass
class StepResult:
    name: str
    findings: List[Finding] = field(default_factory=list)
    data: Dict[str, Any] = field(default_factory=dict)
    budget: bool = False
    elapsed_ms: Optional[int] = None

    @property
    def status(self) -> str:
        if any(f.severity == "hard" for f in self.findings):
            return "mismatch"
        if self.budget:
            return "budget"
        return "pass"

    def to_dict(self, *, timings: bool = True) -> Dict[str, Any]:
        out = {
            "name": self.name,
            "status": self.status,
            "findings": [f.to_dict() for f in self.findings],
            "data": self.data,
        }
        if timings:
            out["elapsed_ms"] = self.elapsed_ms
        return out


@dataclass(frozen=True)
class VerifyResult:
    exit_code: int
    report: Dict[str, Any]

    def dumps(self) -> str:
        return json.dumps(self.report, indent=2, sort_keys=True, default=str)


# ==========================================================
# Steps
# ==========================================================

class _Run:
    def __init__(self, cfg: VerifyConfig):
        self.cfg = cfg
        self.engine = HomologyEngine.from_strategy(cfg.rank_strategy())
        self.rational = HomologyEngine.from_strategy(cfg.rank_strategy("rational"))
        self.matched: Dict[int, List[str]] = {}
        self.claim_reports: Dict[int, Dict[str, Any]] = {}

    def homology(self, spec: ComplexSpec, step: StepResult) -> HomologyReport:
        report = betti(spec, engine=self.engine)
        if not report.complete:
            step.budget = True
        return report

    def emit(self, report: HomologyReport) -> Dict[str, Any]:
        return report.to_dict(timings=not self.cfg.stable)

    # ---------------- tables ----------------

    def tables(self, step: StepResult) -> None:
        for n in self.cfg.ns:
            for name in ("schrodinger", "galilei"):
                table = check_tables(build_algebra(name, n))
                step.data[f"{name}_{n}"] = {
                    "checks": len(table.checks),
                    "failures": len(table.failures),
                }
                for check in table.failures:
                    step.findings.append(
                        Finding(
                            f"{name}_{n}",
                            "hard",
                            f"bracket relation {check.relation} fails",
                            expected=check.expected,
                            actual=check.actual,
                        )
                    )

    # ---------------- classical ----------------

    def classical(self, step: StepResult) -> None:
        for name, n, flavor, expected in CLASSICAL:
            L = build_algebra(name, n)
            top = L.dim if flavor == "ce" else len(expected) - 1
            report = self.homology(
                ComplexSpec(algebra=L, flavor=flavor, max_degree=top), step
            )
            key = f"{flavor} {name}_{n}"
            step.data[key] = self.emit(report)
            if report.complete and report.betti_numbers != expected:
                step.findings.append(
                    Finding(
                        key,
                        "hard",
                        "Betti vector differs from the classical value",
                        expected=list(expected),
                        actual=list(report.betti_numbers),
                    )
                )

    # ---------------- d∘d ----------------

    def boundaries(self, step: StepResult) -> None:
        for n in self.cfg.ns:
            L = build_algebra("schrodinger", n)
            top = self.cfg.boundary_max_degree
            specs = [
                ComplexSpec(algebra=L, flavor="loday", max_degree=top),
                ComplexSpec(algebra=L, flavor="ce", max_degree=min(top, L.dim)),
                ComplexSpec(
                    algebra=L,
                    flavor="ce_coefficients",
                    max_degree=min(top, 2 * n),
                    wedge="I",
                ),
            ]
            for spec in specs:
                checked = []
                for k in range(2, spec.max_degree + 1):
                    columns = L.dim**k if spec.flavor == "loday" else 0
                    if columns > self.cfg.boundary_columns:
                        break
                    product = boundary_squared(spec, k)
                    checked.append(k)
                    if not product.is_zero():
                        step.findings.append(
                            Finding(
                                spec.describe(),
                                "hard",
                                f"d_{k - 1} d_{k} is not zero",
                                actual=product.nnz,
                            )
                        )
                step.data[spec.describe()] = {"degrees": checked}

    # ---------------- lemmas ----------------

    def lemmas(self, step: StepResult) -> None:
        for n in self.cfg.ns:
            if n > 5:
                continue
            report = lemma_suite(n, engine=self.rational)
            step.findings.extend(report.findings)
            data = report.to_dict()
            data.pop("cells")
            step.data[f"n={n}"] = data

    # ---------------- homology vs. series ----------------

    def theorem(self, step: StepResult) -> None:
        for n in self.cfg.ns:
            L = build_algebra("schrodinger", n)
            entry: Dict[str, Any] = {}

            if n >= 3 and L.dim <= self.cfg.lie_max_dim:
                entry["lie"] = self._lie(n, L, step)

            if self.cfg.leibniz_top(n):
                entry["leibniz"] = self._leibniz(n, L, step)
            step.data[f"n={n}"] = entry

    def _lie(self, n: int, L, step: StepResult) -> Dict[str, Any]:
        spec = ComplexSpec(algebra=L, flavor="ce", max_degree=L.dim, weights="zero")
        report = self.homology(spec, step)
        if not report.complete:
            return {"report": self.emit(report)}

        N = L.dim
        measured = PoincareSeries.from_betti(report.betti_numbers, N)
        candidates = {
            "theorem": predicted_series("lie_sch", n, N),
            "beta_retained": predicted_series("lie_sch", n, N, beta_included=True),
            "beta_powers": predicted_series("lie_sch", n, N, beta_powers=True),
        }
        matched = [name for name, series in candidates.items() if series == measured]
        self.matched[n] = matched

        if not matched:
            step.findings.append(
                Finding(
                    f"H^Lie(sch_{n})",
                    "hard",
                    "Betti vector matches none of the candidate series",
                    actual=measured.to_list(),
                    evidence={k: v.to_list() for k, v in candidates.items()},
                )
            )
        elif "theorem" not in matched:
            step.findings.append(
                Finding(
                    f"H^Lie(sch_{n})",
                    "soft",
                    "Betti vector matches a variant, not the stated isomorphism",
                    expected=candidates["theorem"].to_list(),
                    actual=measured.to_list(),
                    evidence={"matched": matched},
                )
            )
        return {
            "report": self.emit(report),
            "candidates": {k: v.to_list() for k, v in candidates.items()},
            "matched": matched,
        }

    def _leibniz(self, n: int, L, step: StepResult) -> Dict[str, Any]:
        top = self.cfg.leibniz_top(n)
        spec = ComplexSpec(algebra=L, flavor="loday", max_degree=top, weights="zero")
        report = self.homology(spec, step)
        out: Dict[str, Any] = {"report": self.emit(report)}
        if not report.complete:
            return out

        measured = PoincareSeries.from_betti(report.betti_numbers, top)
        options = {
            g: predicted_series("leibniz_sch", n, top, gamma_degree=g)
            for g in ("2n-2", "2n-1")
        }
        matched = [g for g, series in options.items() if series == measured]
        out.update(
            {
                "options": {g: s.to_list() for g, s in options.items()},
                "matched": matched,
            }
        )

        separable = top >= 2 * n - 1
        if n >= 3 and separable and len(matched) != 1:
            step.findings.append(
                Finding(
                    f"HL(sch_{n})",
                    "hard",
                    "Betti vector does not single out one gamma degree",
                    actual=measured.to_list(),
                    evidence={"matched": matched},
                )
            )
        elif len(matched) != 1:
            step.findings.append(
                Finding(
                    f"HL(sch_{n})",
                    "soft",
                    "gamma degree not decided at this n or truncation",
                    actual=measured.to_list(),
                    evidence={"matched": matched, "separable": separable},
                )
            )
        return out

    # ---------------- claims ----------------

    def claims(self, step: StepResult) -> None:
        for n in self.cfg.ns:
            if n > 5:
                continue
            report = claims_report(n)
            self.claim_reports[n] = report.to_dict()
            step.data[f"n={n}"] = self.claim_reports[n]

            for identity, found in report.any_matches.items():
                if not found:
                    step.findings.append(
                        Finding(
                            f"{identity} n={n}",
                            "soft",
                            "no sign convention reproduces the printed constant",
                            expected=report.printed_factor,
                        )
                    )

            # a boundary proportional to beta kills beta in homology
            matched = self.matched.get(n)
            if matched:
                kept = any(m != "theorem" for m in matched)
                verdict = next(
                    row for row in report.rows
                    if row.identity == "d(rho_bar)" and row.convention == "printed"
                )
                if kept and verdict.verdict == "multiple":
                    step.findings.append(
                        Finding(
                            f"beta_{n}",
                            "soft",
                            "beta survives in homology but d(rho_bar) is a multiple of it",
                            evidence={"matched": matched, "factor": str(verdict.factor)},
                        )
                    )

    # ---------------- Galilei ----------------

    def galilei(self, step: StepResult) -> None:
        top = self.cfg.galilei_max_degree
        galilei = build_algebra("galilei", 2)
        moved = dilation_moves(galilei)
        step.data["dilation_moves"] = moved
        if moved:
            step.findings.append(
                Finding(
                    "galilei_2",
                    "soft",
                    "d acts on the ideal, so galilei_2 is a semidirect product "
                    "and not sch_2 plus a central line",
                    evidence={"moved": moved},
                )
            )

        sch = self.homology(
            ComplexSpec(
                algebra=build_algebra("schrodinger", 2),
                flavor="loday",
                max_degree=top,
                weights="zero",
            ),
            step,
        )
        gal = self.homology(
            ComplexSpec(algebra=galilei, flavor="loday", max_degree=top, weights="zero"),
            step,
        )
        step.data["schrodinger_2"] = self.emit(sch)
        step.data["galilei_2"] = self.emit(gal)
        if not (sch.complete and gal.complete):
            return

        measured = PoincareSeries.from_betti(gal.betti_numbers, top)
        predicted = PoincareSeries.from_betti(sch.betti_numbers, top).free_product(
            PoincareSeries.geometric(1, top)
        )
        step.data["predicted"] = predicted.to_list()
        if measured != predicted:
            step.findings.append(
                Finding(
                    "HL(galilei_2)",
                    "hard",
                    "measured series differs from the free product prediction",
                    expected=predicted.to_list(),
                    actual=measured.to_list(),
                    evidence={"dilation_moves": moved},
                )
            )


def dilation_moves(algebra: LieAlgebra) -> Dict[str, str]:
    """
    Basis vectors with a nonzero bracket against ``d``, mapped to that
    bracket; empty when ``d`` is central or absent.
    """
    if not algebra.has_component("dilation"):
        return {}
    d = algebra.element("d")
    out: Dict[str, str] = {}
    for i, label in enumerate(algebra.basis):
        image = algebra.bracket(d, algebra.element(i))
        if not image.is_zero():
            out[label.name] = repr(image)
    return out


# ==========================================================
# Entry point
# ==========================================================

def verify_all(
    cfg: VerifyConfig, *, on_step: Optional[Callable[[StepResult], None]] = None
) -> VerifyResult:
    """
    Run the configured steps and build one JSON-ready report.

    The exit code is 1 when any hard finding exists, otherwise 75 when a
    step was cut short by the budget, otherwise 0.
    """
    run = _Run(cfg)
    results: List[StepResult] = []

    for name in STEPS:
        if name not in cfg.steps:
            continue
        step = StepResult(name)
        started = time.perf_counter()
        try:
            getattr(run, name)(step)
        except BudgetExceeded as exc:
            logger.warning("step %s aborted by the budget: %s", name, exc)
            step.budget = True
            step.data["aborted"] = str(exc)
        step.elapsed_ms = int((time.perf_counter() - started) * 1000)
        logger.info(
            "step %s: %s (%d findings)", name, step.status, len(step.findings)
        )
        if on_step:
            on_step(step)
        results.append(step)

    if any(r.status == "mismatch" for r in results):
        exit_code = EXIT_MISMATCH
    elif any(r.status == "budget" for r in results):
        exit_code = EXIT_BUDGET
    else:
        exit_code = EXIT_OK

    timings = not cfg.stable
    report: Dict[str, Any] = {
        "config": cfg.to_dict(),
        "seed": cfg.seed,
        "primes": list(run.engine.primes),
        "steps": [r.to_dict(timings=timings) for r in results],
        "verdict": {EXIT_OK: "pass", EXIT_MISMATCH: "mismatch", EXIT_BUDGET: "budget"}[exit_code],
        "exit_code": exit_code,
    }
    result = VerifyResult(exit_code=exit_code, report=report)

    if cfg.output:
        Path(cfg.output).write_text(result.dumps() + "\n", encoding="utf-8")
        logger.info("report written to %s", cfg.output)
    return result
