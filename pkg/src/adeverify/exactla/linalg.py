"""Exact rank, kernels and Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .matrix import Matrix, Scalar


def _integer_rows(m: Matrix) -> list[list[int]]:
    rows = []
    for r in m:
        den = 1
        for x in r:
            if isinstance(x, Fraction):
                den = den * x.denominator // _gcd(den, x.denominator)
        rows.append([int(x * den) for x in r])
    return rows


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def rank(m: Matrix) -> int:
    """Rank over the rationals using fraction-free integer elimination."""
    rows = [r for r in _integer_rows(m) if any(r)]
    rk = 0
    for col in range(m.cols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        prow = rows[rk]
        a = prow[col]
        for i in range(rk + 1, len(rows)):
            b = rows[i][col]
            if b:
                g = _gcd(a, b)
                fa, fb = a // g, b // g
                new = [fa * x - fb * y for x, y in zip(rows[i], prow)]
                c = 0
                for x in new:
                    if x:
                        c = _gcd(c, x)
                        if c == 1:
                            break
                rows[i] = [x // c for x in new] if c > 1 else new
        rk += 1
        if rk == len(rows):
            break
    return rk


def rref(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals and its pivot columns."""
    a = [[Fraction(x) for x in r] for r in m]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a[:r], pivots


def rational_nullspace(m: Matrix) -> list[tuple[Scalar, ...]]:
    """Basis of {v : m v = 0}, one vector per free column, primitive integral scaling."""
    red, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        den = 1
        for x in v:
            den = den * x.denominator // _gcd(den, x.denominator)
        ints = [int(x * den) for x in v]
        g = 0
        for x in ints:
            g = _gcd(g, x)
        basis.append(tuple(x // g for x in ints))
    return basis


@dataclass(frozen=True)
class SmithForm:
    """``left @ m @ right == diag`` with unimodular ``left`` and ``right``."""

    divisors: tuple[int, ...]
    diag: Matrix
    left: Matrix
    right: Matrix


def smith_normal_form(m: Matrix) -> SmithForm:
    """Smith normal form over the integers.

    Pivots on the entry of smallest nonzero absolute value in the remaining
    block, which keeps intermediate entries small for Cartan-type input.
    ``divisors`` lists the nonzero invariant factors (positive, each dividing
    the next); zero diagonal entries of ``diag`` trail them.
    """
    if not m.is_integral():
        raise ValueError("Smith normal form needs an integer matrix")
    rows, cols = m.shape
    a = m.tolist()
    u = Matrix.identity(rows).tolist()
    v = Matrix.identity(cols).tolist()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, k):  # col_dst += k * col_src
        for r in a:
            r[dst] += k * r[src]
        for r in v:
            r[dst] += k * r[src]

    t = 0
    while t < min(rows, cols):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a smaller remainder appeared in the pivot row/column
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, rows) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j]]
                _, ci, cj = min(cand)
                if ci != t:
                    swap_rows(t, ci)
                else:
                    swap_cols(t, cj)
                continue
            # pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    divisors = tuple(a[i][i] for i in range(min(rows, cols)) if a[i][i])
    return SmithForm(divisors, Matrix(a, cols), Matrix(u, rows), Matrix(v, cols))
