"""Two-phase primal simplex over the rationals with Bland's rule."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .matrix import Scalar


class LPStatus(enum.Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LPProblem:
    """maximize c.x subject to A x <= b, x_j >= 0 unless j is in ``free``."""

    A: Sequence[Sequence[Scalar]]
    b: Sequence[Scalar]
    c: Sequence[Scalar]
    free: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        n = len(self.c)
        if len(self.A) != len(self.b):
            raise ValueError(f"{len(self.A)} constraint rows but {len(self.b)} right-hand sides")
        for i, row in enumerate(self.A):
            if len(row) != n:
                raise ValueError(f"row {i} has {len(row)} entries, expected {n}")
        if any(not 0 <= j < n for j in self.free):
            raise ValueError("free variable index out of range")

    @property
    def num_vars(self) -> int:
        return len(self.c)

    def violations(self, x: Sequence[Scalar]) -> list[str]:
        """Exact re-substitution of a candidate point; empty when feasible."""
        bad = []
        for j, xj in enumerate(x):
            if j not in self.free and xj < 0:
                bad.append(f"x[{j}] = {xj} < 0")
        for i, (row, bi) in enumerate(zip(self.A, self.b)):
            lhs = sum(Fraction(a) * xj for a, xj in zip(row, x))
            if lhs > bi:
                bad.append(f"row {i}: {lhs} > {bi}")
        return bad


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    value: Fraction | None = None
    x: tuple[Fraction, ...] | None = None

    @property
    def optimal(self) -> bool:
        return self.status is LPStatus.OPTIMAL


class _Tableau:
    """Dense tableau for max c.x, A x = b, x >= 0, b >= 0."""

    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis

    def pivot(self, r: int, c: int, obj: list[Fraction]) -> None:
        row = self.rows[r]
        inv = 1 / row[c]
        row[:] = [x * inv for x in row]
        self.rhs[r] *= inv
        for i, other in enumerate(self.rows):
            if i != r:
                f = other[c]
                if f:
                    other[:] = [x - f * y for x, y in zip(other, row)]
                    self.rhs[i] -= f * self.rhs[r]
        f = obj[c]
        if f:
            obj[:] = [x - f * y for x, y in zip(obj, row)]
        self.basis[r] = c

    def run(self, obj: list[Fraction], allowed: int) -> bool:
        """Drive the reduced-cost row ``obj`` to optimality; False if unbounded.

        Only columns below ``allowed`` may enter the basis.
        """
        while True:
            # Bland: lowest-index improving column enters, lowest-index basic leaves on ties
            enter = next((j for j in range(allowed) if obj[j] > 0), None)
            if enter is None:
                return True
            best, leave = None, None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if (best is None or ratio < best
                            or (ratio == best and self.basis[i] < self.basis[leave])):
                        best, leave = ratio, i
            if leave is None:
                return False
            self.pivot(leave, enter, obj)


def lp_max(prob: LPProblem) -> LPResult:
    """Solve ``prob`` exactly; the returned point is always re-verified."""
    n = prob.num_vars
    m = len(prob.b)
    # free variables are split as x_j = x_j+ - x_j-
    col_map: list[tuple[int, int]] = [(j, 1) for j in range(n)]
    col_map += [(j, -1) for j in sorted(prob.free)]
    nx = len(col_map)
    width = nx + m
    rows, rhs, basis, needs_art = [], [], [], []
    for i in range(m):
        row = [Fraction(prob.A[i][j]) * s for j, s in col_map] + [Fraction(0)] * m
        row[nx + i] = Fraction(1)
        bi = Fraction(prob.b[i])
        if bi < 0:
            row = [-x for x in row]
            bi = -bi
            needs_art.append(i)
        rows.append(row)
        rhs.append(bi)
        basis.append(nx + i)
    n_art = len(needs_art)
    for r in rows:
        r.extend([Fraction(0)] * n_art)
    for k, i in enumerate(needs_art):
        rows[i][width + k] = Fraction(1)
        basis[i] = width + k
    tab = _Tableau(rows, rhs, basis)

    if n_art:
        # phase 1: maximize -sum(artificials)
        p1 = [Fraction(0)] * (width + n_art)
        for i in needs_art:
            p1 = [x + y for x, y in zip(p1, rows[i])]
        for k in range(n_art):
            p1[width + k] = Fraction(0)
        tab.run(p1, width)
        if any(b >= width and r != 0 for b, r in zip(tab.basis, tab.rhs)):
            return LPResult(LPStatus.INFEASIBLE)
        # pivot degenerate artificials out; rows that cannot move are redundant
        for i in range(len(tab.rows)):
            if tab.basis[i] >= width:
                col = next((c for c in range(width) if tab.rows[i][c] != 0), None)
                if col is not None:
                    tab.pivot(i, col, p1)
        keep = [i for i in range(len(tab.rows)) if tab.basis[i] < width]
        tab.rows = [tab.rows[i][:width] for i in keep]
        tab.rhs = [tab.rhs[i] for i in keep]
        tab.basis = [tab.basis[i] for i in keep]

    cost = [Fraction(prob.c[j]) * s for j, s in col_map] + [Fraction(0)] * m
    for i, bcol in enumerate(tab.basis):
        cb = cost[bcol]
        if cb:
            cost = [x - cb * y for x, y in zip(cost, tab.rows[i])]
    if not tab.run(cost, width):
        return LPResult(LPStatus.UNBOUNDED)

    y = [Fraction(0)] * width
    for i, bcol in enumerate(tab.basis):
        y[bcol] = tab.rhs[i]
    x = [Fraction(0)] * n
    for k, (j, s) in enumerate(col_map):
        x[j] += s * y[k]
    bad = prob.violations(x)
    if bad:
        raise AssertionError("simplex returned an infeasible point: " + "; ".join(bad))
    value = sum((Fraction(cj) * xj for cj, xj in zip(prob.c, x)), Fraction(0))
    return LPResult(LPStatus.OPTIMAL, value, tuple(x))
