"""
Printed bracket relations of the Schrodinger and Galilei algebras,
evaluated against derived structure constants.
"""

from dataclasses import dataclass
from itertools import permutations
from typing import Any, Dict, List, Optional, Tuple

from ..types import BasisLabel
from .lie_algebra import Element, LieAlgebra


@dataclass(frozen=True, slots=True)
class TableCheck:
    relation: str
    expected: str
    actual: str
    passed: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "relation": self.relation,
            "expected": self.expected,
            "actual": self.actual,
            "passed": self.passed,
        }


@dataclass(frozen=True, slots=True)
class TableReport:
    algebra: str
    n: int
    checks: Tuple[TableCheck, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> Tuple[TableCheck, ...]:
        return tuple(check for check in self.checks if not check.passed)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "algebra": self.algebra,
            "n": self.n,
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
        }


class _Symbols:
    """
    Named elements of an algebra, with X_ji = -X_ij.
    """

    def __init__(self, algebra: LieAlgebra):
        self.algebra = algebra
        self.n = algebra.n

    def has(self, *kinds: str) -> bool:
        present = {label.kind for label in self.algebra.basis}
        return all(kind in present for kind in kinds)

    def X(self, i: int, j: int) -> Element:
        if i < j:
            return self.algebra.element(BasisLabel("rotation", self.n, i, j))
        return -self.algebra.element(BasisLabel("rotation", self.n, j, i))

    def y(self, i: int) -> Element:
        return self.algebra.element(f"y{i}")

    def __getattr__(self, kind: str) -> Element:
        if kind in ("a", "b", "c", "d"):
            return self.algebra.element(kind)
        raise AttributeError(kind)


def _xname(i: int, j: int) -> str:
    return f"X{i},{j}"


def check_tables(algebra: LieAlgebra) -> TableReport:
    """
    Evaluate every printed relation that makes sense in ``algebra``.

    Relations quantified over indices are checked for every admissible
    choice, with X_ji read as -X_ij.
    """
    s = _Symbols(algebra)
    n = algebra.n
    checks: List[TableCheck] = []

    def expect(relation: str, x: Element, y: Element, value: Optional[Element]) -> None:
        actual = algebra.bracket(x, y)
        target = value if value is not None else algebra.zero()
        checks.append(
            TableCheck(
                relation=relation,
                expected=repr(target),
                actual=repr(actual),
                passed=actual == target,
            )
        )

    has_so = s.has("rotation")
    has_sl2 = s.has("a", "b", "c")
    has_I = s.has("boost", "momentum")
    has_d = s.has("d")
    idx = range(1, n + 1)

    # ---------------- hbar ----------------
    if has_so:
        for i, j, k in permutations(idx, 3):
            expect(f"[{_xname(i, j)},{_xname(i, k)}]={_xname(j, k)}", s.X(i, j), s.X(i, k), s.X(j, k))

    if has_so and has_sl2:
        for i, j in permutations(idx, 2):
            if i < j:
                for name in ("a", "b", "c"):
                    expect(f"[{_xname(i, j)},{name}]=0", s.X(i, j), getattr(s, name), None)

    if has_sl2:
        expect("[a,b]=-2b", s.a, s.b, -2 * s.b)
        expect("[a,c]=2c", s.a, s.c, 2 * s.c)
        expect("[b,c]=a", s.b, s.c, s.a)

    # ---------------- I_n ----------------
    if has_so and has_I:
        for i, j in permutations(idx, 2):
            expect(f"[{_xname(i, j)},y{i}]=y{j}", s.X(i, j), s.y(i), s.y(j))
            expect(
                f"[{_xname(i, j)},y{n + i}]=y{n + j}", s.X(i, j), s.y(n + i), s.y(n + j)
            )

    if has_sl2 and has_I:
        for i in idx:
            expect(f"[a,y{i}]=y{i}", s.a, s.y(i), s.y(i))
            expect(f"[a,y{n + i}]=-y{n + i}", s.a, s.y(n + i), -s.y(n + i))
            expect(f"[b,y{i}]=-y{n + i}", s.b, s.y(i), -s.y(n + i))
            expect(f"[b,y{n + i}]=0", s.b, s.y(n + i), None)
            expect(f"[c,y{i}]=0", s.c, s.y(i), None)
            expect(f"[c,y{n + i}]=y{i}", s.c, s.y(n + i), s.y(i))

    if has_I:
        for i in range(1, 2 * n + 1):
            for j in range(i + 1, 2 * n + 1):
                expect(f"[y{i},y{j}]=0", s.y(i), s.y(j), None)

    # ---------------- dilation ----------------
    if has_d:
        if has_so:
            for i in idx:
                for j in range(i + 1, n + 1):
                    expect(f"[{_xname(i, j)},d]=0", s.X(i, j), s.d, None)
        if has_sl2:
            for name in ("a", "b", "c"):
                expect(f"[{name},d]=0", getattr(s, name), s.d, None)
        if has_I:
            for i in idx:
                expect(f"[d,y{i}]=-y{i}", s.d, s.y(i), -s.y(i))
                expect(f"[d,y{n + i}]=-y{n + i}", s.d, s.y(n + i), -s.y(n + i))

    return TableReport(algebra=algebra.name, n=n, checks=tuple(checks))
