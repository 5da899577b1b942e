"""
Command-line front end.

    leibniz-homology algebra info --algebra schrodinger --n 3
    leibniz-homology chains show --name gamma --n 3
    leibniz-homology invariants --n 4 --acting hbar --module so --k 6
    leibniz-homology homology --algebra schrodinger --n 3 --complex leibniz --max-degree 5
    leibniz-homology series predict --target leibniz_sch --n 3 --gamma-degree both --max-degree 8
    leibniz-homology verify all --n 2 --n 3 --output report.json
    leibniz-homology verify all --acceptance --output acceptance.json
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import sys
from typing import Any, Dict, List, Optional, Sequence

from .algebras import ALGEBRA_NAMES, algebra_info, build_algebra, check_tables
from .complexes import ComplexSpec, betti
from .engine import HomologyEngine
from .exceptions import BudgetError, ConfigurationError, HomologyError
from .invariants import LEMMA_MODULES, invariant_subspace, module_space
from .multilinear import NAMED_CHAINS, named_chain
from .series import GAMMA_DEGREES, TARGETS, predicted_series
from .types import STRATEGIES, RankStrategy
from .verify import (
    EMITS,
    EXIT_BUDGET,
    EXIT_MISMATCH,
    EXIT_OK,
    EXIT_USAGE,
    GROUPS,
    VerifyConfig,
    verify_all,
)


logger = logging.getLogger("leibniz_homology")

COMPLEXES = {"ce": "ce", "ce_coefficients": "ce_coefficients", "loday": "loday", "leibniz": "loday"}


class _Parser(argparse.ArgumentParser):
    """
    argparse with the usage exit code.
    """

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# ==========================================================
# Output
# ==========================================================

def _write(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _emit(payload: Dict[str, Any], rows: Optional[List[List[Any]]], args) -> None:
    if args.emit == "json" or rows is None:
        _write(json.dumps(payload, indent=2, sort_keys=True, default=str), args.output)
        return

    if args.emit == "csv":
        out = open(args.output, "w", newline="", encoding="utf-8") if args.output else sys.stdout
        try:
            csv.writer(out).writerows(rows)
        finally:
            if args.output:
                out.close()
        return

    widths = [max(len(str(row[i])) for row in rows) for i in range(len(rows[0]))]
    lines = [
        "  ".join(str(cell).rjust(w) for cell, w in zip(row, widths)) for row in rows
    ]
    _write("\n".join(lines), args.output)


def _strategy(args) -> RankStrategy:
    return RankStrategy(
        primes=args.primes,
        seed=args.seed,
        memory_cap=args.memory_cap,
        strategy=args.strategy,
        field=args.field,
        workers=args.workers,
    )


# ==========================================================
# Commands
# ==========================================================

def cmd_algebra(args) -> int:
    L = build_algebra(args.algebra, args.n)
    payload = algebra_info(L)
    if args.check:
        payload["tables"] = check_tables(L).to_dict()
    _emit(payload, None, args)
    return EXIT_OK


def cmd_chains(args) -> int:
    chain = named_chain(args.name, args.n)
    _emit({"name": args.name, "n": args.n, **chain.to_dict()}, None, args)
    return EXIT_OK


def cmd_invariants(args) -> int:
    L = build_algebra("schrodinger", args.n)
    module = args.module.replace("⊗wedge", "")
    if module not in LEMMA_MODULES:
        raise ConfigurationError(f"module must be one of {', '.join(LEMMA_MODULES)}")
    bidegree = tuple(int(x) for x in args.bidegree.split(",")) if args.bidegree else None
    engine = HomologyEngine.from_strategy(RankStrategy(field="rational", workers=args.workers))
    report = invariant_subspace(
        args.acting, module_space(L, module, args.k), bidegree=bidegree, engine=engine
    )
    _emit({"n": args.n, **report.to_dict(with_basis=True)}, None, args)
    return EXIT_OK


def cmd_homology(args) -> int:
    L = build_algebra(args.algebra, args.n)
    spec = ComplexSpec(
        algebra=L,
        flavor=COMPLEXES[args.complex],
        max_degree=args.max_degree,
        wedge=args.wedge,
        coefficients=args.coefficients,
        weights=args.weights,
    )
    report = betti(spec, strategy=_strategy(args))
    _emit(report.to_dict(timings=not args.stable), report.to_csv_rows(), args)
    return EXIT_OK if report.complete else EXIT_BUDGET


def cmd_series(args) -> int:
    options = GAMMA_DEGREES if args.gamma_degree == "both" else (args.gamma_degree,)
    N = args.max_degree
    table: Dict[str, List[int]] = {}
    for g in options:
        key = args.target if len(options) == 1 else f"{args.target}[{g}]"
        table[key] = predicted_series(
            args.target,
            args.n,
            N,
            beta_included=args.beta_included,
            gamma_degree=g,
            beta_powers=args.beta_powers,
        ).to_list()
        if args.target == "lie_sch":
            break

    rows = [["k", *table]] + [[k, *(s[k] for s in table.values())] for k in range(N + 1)]
    _emit({"n": args.n, "max_degree": N, "series": table}, rows, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    values = dict(
        steps=GROUPS[args.group],
        primes=args.primes,
        seed=args.seed,
        memory_cap=args.memory_cap,
        strategy=args.strategy,
        field=args.field,
        workers=args.workers,
        output=args.output,
        emit=args.emit,
        stable=args.stable,
    )
    caps = {
        "boundary_max_degree": args.boundary_max_degree,
        "leibniz_max_degree": args.leibniz_max_degree,
        "galilei_max_degree": args.galilei_max_degree,
    }
    values.update({key: cap for key, cap in caps.items() if cap is not None})
    if args.n:
        values["ns"] = tuple(args.n)

    if args.acceptance:
        cfg = VerifyConfig.acceptance(**values)
    else:
        cfg = VerifyConfig(**values)

    result = verify_all(cfg)
    if not args.output:
        rows = [["step", "status", "findings"]] + [
            [s["name"], s["status"], len(s["findings"])] for s in result.report["steps"]
        ]
        _emit(result.report, rows, args)
    return result.exit_code


# ==========================================================
# Parser
# ==========================================================

def _common(p: argparse.ArgumentParser, *, ranks: bool = False) -> None:
    p.add_argument("--emit", choices=EMITS, default="json")
    p.add_argument("--output", default=None, help="Write to this file instead of stdout")
    p.add_argument("--workers", type=int, default=1)
    if ranks:
        p.add_argument("--primes", type=int, default=2)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--memory-cap", type=int, default=8 * 2**30, help="Bytes")
        p.add_argument("--strategy", choices=STRATEGIES, default="auto")
        p.add_argument("--field", choices=("modular", "rational"), default="modular")
        p.add_argument("--stable", action="store_true", help="Omit wall times")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="leibniz-homology",
        description="Lie and Leibniz homology of the Schrodinger and Galilei algebras",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("-q", "--quiet", action="store_true")
    subparsers = parser.add_subparsers(dest="command", parser_class=_Parser)

    # algebra info
    algebra_p = subparsers.add_parser("algebra", help="Basis, tags and structure constants")
    algebra_p.add_argument("action", choices=("info",))
    algebra_p.add_argument(
        "--algebra", "--name", dest="algebra", choices=ALGEBRA_NAMES, default="schrodinger"
    )
    algebra_p.add_argument("--n", type=int, required=True)
    algebra_p.add_argument("--check", action="store_true", help="Also check bracket tables")
    _common(algebra_p)

    # chains show
    chains_p = subparsers.add_parser("chains", help="Print a named chain")
    chains_p.add_argument("action", choices=("show",))
    chains_p.add_argument("--name", choices=NAMED_CHAINS, required=True)
    chains_p.add_argument("--n", type=int, required=True)
    _common(chains_p)

    # invariants
    inv_p = subparsers.add_parser("invariants", help="Invariant subspace of one module")
    inv_p.add_argument("--n", type=int, required=True)
    inv_p.add_argument("--acting", default="hbar")
    inv_p.add_argument("--module", default="wedge", help="wedge, sl2, so or I (optionally ⊗wedge)")
    inv_p.add_argument("--k", type=int, required=True)
    inv_p.add_argument("--bidegree", default=None, help="r,s")
    _common(inv_p)

    # homology
    hom_p = subparsers.add_parser("homology", help="Betti numbers of a complex")
    hom_p.add_argument(
        "--algebra", "--name", dest="algebra", choices=ALGEBRA_NAMES, default="schrodinger"
    )
    hom_p.add_argument("--n", type=int, required=True)
    hom_p.add_argument("--complex", choices=sorted(COMPLEXES), default="ce")
    hom_p.add_argument("--max-degree", type=int, required=True)
    hom_p.add_argument("--wedge", default=None, help="Component spanning the wedge factors")
    hom_p.add_argument("--coefficients", default=None, help="Coefficient component")
    hom_p.add_argument("--weights", choices=("all", "zero"), default="all")
    _common(hom_p, ranks=True)

    # series predict
    series_p = subparsers.add_parser("series", help="Predicted Poincare series")
    series_p.add_argument("action", choices=("predict",))
    series_p.add_argument("--target", choices=TARGETS, required=True)
    series_p.add_argument("--n", type=int, required=True)
    series_p.add_argument("--gamma-degree", choices=(*GAMMA_DEGREES, "both"), default="2n-2")
    series_p.add_argument("--max-degree", type=int, default=8)
    series_p.add_argument("--beta-included", action="store_true")
    series_p.add_argument("--beta-powers", action="store_true")
    _common(series_p)

    # verify
    verify_p = subparsers.add_parser("verify", help="Run the verification report")
    verify_p.add_argument("group", choices=sorted(GROUPS))
    verify_p.add_argument(
        "--n", type=int, action="append",
        help="Repeatable; default 2 and 3, or 2 to 4 with --acceptance",
    )
    verify_p.add_argument(
        "--acceptance", action="store_true",
        help="Full ranges: d(d) to degree 5, HL(sch_2) to 6, HL(sch_3) to 5, Galilei to 4",
    )
    verify_p.add_argument("--boundary-max-degree", type=int, default=None, help="Default 4")
    verify_p.add_argument("--leibniz-max-degree", type=int, default=None, help="Default 4")
    verify_p.add_argument("--galilei-max-degree", type=int, default=None, help="Default 3")
    _common(verify_p, ranks=True)

    return parser


COMMANDS = {
    "algebra": cmd_algebra,
    "chains": cmd_chains,
    "invariants": cmd_invariants,
    "homology": cmd_homology,
    "series": cmd_series,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(format="%(name)s:%(levelname)s:%(message)s", level=level)

    if args.command is None:
        parser.print_help()
        return EXIT_USAGE

    try:
        return COMMANDS[args.command](args)
    except ConfigurationError as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except BudgetError as exc:
        logger.error("budget exceeded: %s", exc)
        return EXIT_BUDGET
    except HomologyError as exc:
        logger.error("%s", exc)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
