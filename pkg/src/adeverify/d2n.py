"""Explicit model of the stable involution of type D_2n.

V is Hom(W2, W1) written as 2n x 2n matrices A in the bases
e_1..e_n, e_n*..e_1* and f_1..f_n, f_n*..f_1*. The matching element of
so(W) is D = [[0, A], [-A*, 0]] with A* the antidiagonal reflection.

Weights of V are +-t_i +- s_j. A weight is stored by its matrix position
(row, col), 1-based: row r carries t_r (r <= n) or -t_{2n+1-r}, column c
carries -s_c (c <= n) or +s_{2n+1-c}; the top right corner is t_1 + s_1.
Coordinates over S_G = {beta_1..beta_n} u {gamma_1..gamma_n} are exact
rationals with denominators dividing 2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from .exactla import Matrix, Poly, charpoly, poly_disc, rank

TS = tuple[int, ...]  # (t_1..t_n, s_1..s_n) coefficients


# --- matrices ----------------------------------------------------------


def antitranspose(a: Matrix) -> Matrix:
    if not a.is_square:
        raise ValueError(f"antitranspose needs a square matrix, got {a.shape}")
    n = a.rows
    return Matrix.from_function(n, n, lambda i, j: a[n - 1 - j, n - 1 - i])


@dataclass(frozen=True)
class VMatrix:
    n: int
    A: Matrix

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("the D_2n model needs n >= 2")
        if self.A.shape != (2 * self.n, 2 * self.n):
            raise ValueError(f"expected a {2 * self.n}x{2 * self.n} matrix, got {self.A.shape}")

    @classmethod
    def of(cls, rows) -> VMatrix:
        a = rows if isinstance(rows, Matrix) else Matrix(rows)
        return cls(a.rows // 2, a)

    @property
    def A_star(self) -> Matrix:
        return antitranspose(self.A)

    @property
    def AAstar(self) -> Matrix:
        return self.A @ self.A_star

    def D(self) -> Matrix:
        z = Matrix.zeros(2 * self.n)
        return Matrix.block([[z, self.A], [-self.A_star, z]])


def form_gram(n: int) -> Matrix:
    """Gram matrix of b = b1 + b2 on W (4n-dimensional)."""
    size = 4 * n
    half = 2 * n
    return Matrix.from_function(
        size, size,
        lambda i, j: 1 if (i < half) == (j < half) and (i % half) + (j % half) == half - 1 else 0,
    )


def adjoint(x: Matrix) -> Matrix:
    """Adjoint for b on a 4n x 4n matrix: [[A, B], [C, D]] -> [[A*, C*], [B*, D*]]."""
    h = x.rows // 2
    blk = lambda r, c: x.submatrix(range(r * h, (r + 1) * h), range(c * h, (c + 1) * h))
    return Matrix.block([
        [antitranspose(blk(0, 0)), antitranspose(blk(1, 0))],
        [antitranspose(blk(0, 1)), antitranspose(blk(1, 1))],
    ])


def disc_delta(v: VMatrix):
    """disc(chi_{AA*}); zero exactly when v is not regular semisimple."""
    return poly_disc(charpoly(v.AAstar))


@dataclass(frozen=True)
class DiscIdentity:
    """Outcome of comparing disc(chi_D) with disc(chi_{AA*}) and det(A).

    ``disc_ok`` checks |disc chi_D| = 2^(4n) disc(chi_{AA*})^2 det(A)^2,
    which follows from disc(g(x^2)) = (-4)^deg(g) g(0) disc(g)^2.
    ``ratio`` is |disc chi_D| / (disc(chi_{AA*})^2 det(A)^2) when the
    denominator is nonzero.
    """

    charpoly_ok: bool
    disc_ok: bool
    disc_chi_d: int
    disc_aa: int
    det_a: int
    ratio: Fraction | None
    message: str = ""

    @property
    def ok(self) -> bool:
        return self.charpoly_ok and self.disc_ok


def verify_disc_identity(v: VMatrix) -> DiscIdentity:
    chi_d = charpoly(v.D())
    chi_neg = charpoly(-v.AAstar)
    cp_ok = chi_d == chi_neg.compose_square()
    dd = poly_disc(chi_d)
    da = poly_disc(charpoly(v.AAstar))
    det = v.A.det()
    rhs = da * da * det * det
    d_ok = abs(dd) == 2 ** (4 * v.n) * rhs
    ratio = Fraction(abs(dd), rhs) if rhs else None
    msg = ""
    if not cp_ok:
        msg = "chi_D(x) != chi_{-AA*}(x^2)"
    elif not d_ok:
        msg = f"|disc chi_D| = {abs(dd)} but 2^{4 * v.n} disc^2 det^2 = {2 ** (4 * v.n) * rhs}"
    return DiscIdentity(cp_ok, d_ok, dd, da, det, ratio, msg)


def _commutator_system(d: Matrix) -> list[list[int]]:
    """Columns: [X, D] flattened for X running over a basis of so(W, b)."""
    size = d.rows
    half = size // 2
    sigma = [(k // half) * half + (half - 1 - k % half) for k in range(size)]
    drows = [list(d.row(i)) for i in range(size)]
    dcols = [list(d.column(j)) for j in range(size)]
    cols = []
    # so(W, b) = {Jb Y : Y antisymmetric}; Jb (E_ij - E_ji) = E_{s(i) j} - E_{s(j) i}
    for i in range(size):
        for j in range(i + 1, size):
            out = [0] * (size * size)
            si, sj = sigma[i], sigma[j]
            for k in range(size):
                # X D: row s(i) += D[j, :], row s(j) -= D[i, :]
                out[si * size + k] += drows[j][k]
                out[sj * size + k] -= drows[i][k]
                # - D X: column j -= D[:, s(i)], column i += D[:, s(j)]
                out[k * size + j] -= dcols[si][k]
                out[k * size + i] += dcols[sj][k]
            cols.append(out)
    return cols


def centralizer_dim(v: VMatrix) -> int:
    """dim {Y in so(W, b) : [Y, D] = 0}; equals 2n exactly when v is regular."""
    cols = _commutator_system(v.D())
    m = Matrix(zip(*cols))
    return len(cols) - rank(m)


def so_dim(n: int) -> int:
    return (4 * n) * (4 * n - 1) // 2


# --- samples ------------------------------------------------------------

SAMPLE_RANGE = 9


def random_vmatrix(n: int, rng: random.Random, lo: int = -SAMPLE_RANGE, hi: int = SAMPLE_RANGE) -> VMatrix:
    size = 2 * n
    return VMatrix(n, Matrix([[rng.randint(lo, hi) for _ in range(size)] for _ in range(size)]))


def kostant_ones(n: int) -> set[tuple[int, int]]:
    """Positions of E = sum of X_alpha over the simple roots S_H."""
    return {position(n, w) for w in simple_roots_h(n)}


def kostant_stars(n: int) -> set[tuple[int, int]]:
    """Positions of weights that are negative for Phi_H^+ (free entries of the section)."""
    return {w.position for w in all_weights(n) if not is_positive_h(w.ts)}


def kostant_sample(n: int, seed: int, *, zero_stars: bool = False) -> VMatrix:
    rng = random.Random(seed)
    ones = kostant_ones(n)
    stars = kostant_stars(n)
    size = 2 * n
    rows = []
    for r in range(1, size + 1):
        row = []
        for c in range(1, size + 1):
            if (r, c) in ones:
                row.append(1)
            elif (r, c) in stars and not zero_stars:
                row.append(rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE))
            else:
                row.append(0)
        rows.append(row)
    return VMatrix(n, Matrix(rows))


@dataclass(frozen=True)
class TopRight:
    i: int


@dataclass(frozen=True)
class Pair:
    i: int
    j: int


@dataclass(frozen=True)
class Reducible:
    pass


Pattern = Union[TopRight, Pair, Reducible]


def pattern_zeros(n: int, pattern: Pattern) -> set[tuple[int, int]]:
    size = 2 * n

    def top_right(h: int, w: int) -> set[tuple[int, int]]:
        return {(r, c) for r in range(1, h + 1) for c in range(size - w + 1, size + 1)}

    if isinstance(pattern, TopRight):
        if not 1 <= pattern.i <= size:
            raise ValueError(f"TopRight({pattern.i}) needs 1 <= i <= {size}")
        return top_right(pattern.i, size + 1 - pattern.i)
    if isinstance(pattern, Pair):
        i, j = pattern.i, pattern.j
        if i < 1 or j < 1 or i + j != size:
            raise ValueError(f"Pair({i}, {j}) needs i, j >= 1 and i + j = {size}")
        return top_right(i, j) | top_right(j, i)
    if isinstance(pattern, Reducible):
        return top_right(n - 1, n + 1) | top_right(n, n - 1)
    raise TypeError(f"unknown pattern {pattern!r}")


def block_zero_sample(n: int, pattern: Pattern, seed: int) -> VMatrix:
    """Zeros exactly on the pattern; every other entry is a nonzero integer in [-9, 9]."""
    zeros = pattern_zeros(n, pattern)
    rng = random.Random(seed)
    size = 2 * n
    nonzero = [k for k in range(-SAMPLE_RANGE, SAMPLE_RANGE + 1) if k]
    rows = [
        [0 if (r, c) in zeros else rng.choice(nonzero)
         for c in range(1, size + 1)]
        for r in range(1, size + 1)
    ]
    return VMatrix(n, Matrix(rows))


def isotropic_span_holds(v: VMatrix) -> bool:
    """span{X, AA*(X)} with X = span{e*_{n-1}..e*_1} is n-dimensional and isotropic."""
    n, size = v.n, 2 * v.n
    aa = v.AAstar
    x_vecs = [tuple(int(k == idx) for k in range(size)) for idx in range(n + 1, size)]
    vecs = x_vecs + [aa.apply(x) for x in x_vecs]
    span = Matrix(vecs)
    if rank(span) != n:
        return False
    gram = Matrix.from_function(size, size, lambda i, j: int(i + j == size - 1))
    return (span @ gram @ span.T).is_zero()


# --- weights -------------------------------------------------------------


def _t(n: int, r: int) -> TS:
    v = [0] * (2 * n)
    if r <= n:
        v[r - 1] = 1
    else:
        v[2 * n - r] = -1
    return tuple(v)


def _s(n: int, c: int) -> TS:
    v = [0] * (2 * n)
    if c <= n:
        v[n + c - 1] = -1
    else:
        v[n + 2 * n - c] = 1
    return tuple(v)


@dataclass(frozen=True, order=True)
class WeightD2n:
    n: int
    row: int
    col: int

    @property
    def position(self) -> tuple[int, int]:
        return self.row, self.col

    @property
    def index(self) -> int:
        """0-based position in row-major weight-matrix order."""
        return (self.row - 1) * 2 * self.n + (self.col - 1)

    @property
    def ts(self) -> TS:
        return tuple(a + b for a, b in zip(_t(self.n, self.row), _s(self.n, self.col)))

    def __str__(self) -> str:
        return ts_str(self.n, self.ts)


def ts_str(n: int, v: Iterable[int]) -> str:
    v = list(v)
    parts = []
    for k, c in enumerate(v):
        if c:
            name = f"t{k + 1}" if k < n else f"s{k - n + 1}"
            coef = "" if abs(c) == 1 else str(abs(c))
            parts.append(("-" if c < 0 else "+") + coef + name)
    s = "".join(parts) or "0"
    return s[1:] if s.startswith("+") else s


def weight_at(n: int, row: int, col: int) -> WeightD2n:
    size = 2 * n
    if not (1 <= row <= size and 1 <= col <= size):
        raise ValueError(f"position ({row}, {col}) outside the {size}x{size} weight matrix")
    return WeightD2n(n, row, col)


@lru_cache(maxsize=None)
def all_weights(n: int) -> tuple[WeightD2n, ...]:
    size = 2 * n
    return tuple(WeightD2n(n, r, c) for r in range(1, size + 1) for c in range(1, size + 1))


@lru_cache(maxsize=None)
def _position_table(n: int) -> dict[TS, tuple[int, int]]:
    return {w.ts: w.position for w in all_weights(n)}


def position(n: int, ts: TS) -> tuple[int, int]:
    try:
        return _position_table(n)[tuple(ts)]
    except KeyError:
        raise ValueError(f"{ts_str(n, ts)} is not a weight of V") from None


def weight_of(n: int, ts: TS) -> WeightD2n:
    return WeightD2n(n, *position(n, ts))


@lru_cache(maxsize=None)
def _t_in_beta(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Row i: t_{i+1} expressed over beta_1..beta_n."""
    half = Fraction(1, 2)
    rows = []
    for i in range(1, n + 1):
        row = [Fraction(0)] * n
        if i <= n - 2:
            for k in range(i, n - 1):
                row[k - 1] = Fraction(1)
            row[n - 2] += half
            row[n - 1] += half
        elif i == n - 1:
            row[n - 2] = half
            row[n - 1] = half
        else:
            row[n - 2] = -half
            row[n - 1] = half
        rows.append(tuple(row))
    return tuple(rows)


SGVector = tuple[Fraction, ...]


def sg_coords(n: int, ts: TS | WeightD2n) -> SGVector:
    """Coordinates over (beta_1..beta_n, gamma_1..gamma_n)."""
    if isinstance(ts, WeightD2n):
        ts = ts.ts
    table = _t_in_beta(n)
    out = []
    for part in (ts[:n], ts[n:]):
        out.extend(sum((c * table[i][k] for i, c in enumerate(part) if c), Fraction(0))
                   for k in range(n))
    return tuple(out)


def from_sg(n: int, coords: SGVector) -> tuple[Fraction, ...]:
    """Inverse of sg_coords: beta_i = t_i - t_{i+1}, beta_n = t_{n-1} + t_n."""
    out = []
    for part in (coords[:n], coords[n:]):
        t = [Fraction(0)] * n
        for k, c in enumerate(part[: n - 1]):
            t[k] += c
            t[k + 1] -= c
        t[n - 2] += part[n - 1]
        t[n - 1] += part[n - 1]
        out.extend(t)
    return tuple(out)


def leq(a: WeightD2n, b: WeightD2n) -> bool:
    """a <= b iff b - a has nonnegative S_G coordinates."""
    if a.n != b.n:
        raise ValueError("weights from different models")
    diff = tuple(y - x for x, y in zip(a.ts, b.ts))
    return all(c >= 0 for c in sg_coords(a.n, diff))


@lru_cache(maxsize=None)
def order_masks(n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Bitmasks over weight indices: (up[i] = {j : w_i <= w_j}, down[i] = {j : w_j <= w_i})."""
    ws = all_weights(n)
    sg = [sg_coords(n, w) for w in ws]
    k = len(ws)
    up = [0] * k
    down = [0] * k
    for i in range(k):
        for j in range(k):
            if all(y >= x for x, y in zip(sg[i], sg[j])):
                up[i] |= 1 << j
                down[j] |= 1 << i
    return tuple(up), tuple(down)


def _row_level(n: int, c: int) -> int:
    """Rank of column c inside a row's Hasse diagram (larger is higher)."""
    if c <= n - 1:
        return c
    if c in (n, n + 1):
        return n
    return c - 1


def _col_level(n: int, r: int) -> int:
    """Rank of row r inside a column's Hasse diagram (larger is higher)."""
    if r <= n - 1:
        return 2 * n - r
    if r in (n, n + 1):
        return n
    return 2 * n + 1 - r


def hasse_closure(n: int) -> tuple[int, ...]:
    """Up-masks of the order generated by the row and column diagrams alone."""
    ws = all_weights(n)
    k = len(ws)
    up = [1 << i for i in range(k)]
    for a in ws:
        for b in ws:
            if a.row == b.row and _row_level(n, a.col) < _row_level(n, b.col):
                up[a.index] |= 1 << b.index
            if a.col == b.col and _col_level(n, a.row) < _col_level(n, b.row):
                up[a.index] |= 1 << b.index
    # Warshall on bitmasks
    for m in range(k):
        bit = 1 << m
        for i in range(k):
            if up[i] & bit:
                up[i] |= up[m]
    return tuple(up)


OMEGA = ("id", "w1", "w2", "w1w2")


def omega_act(g: str, w: WeightD2n) -> WeightD2n:
    """Action of Omega on weight positions.

    w1 reflects the weight matrix in its antidiagonal (t_i <-> s_i); w2 swaps
    the two middle rows and the two middle columns (t_n -> -t_n, s_n -> -s_n).
    """
    n, size = w.n, 2 * w.n
    r, c = w.row, w.col

    def swap_mid(k: int) -> int:
        return {n: n + 1, n + 1: n}.get(k, k)

    if g == "id":
        return w
    if g == "w1":
        return WeightD2n(n, size + 1 - c, size + 1 - r)
    if g == "w2":
        return WeightD2n(n, swap_mid(r), swap_mid(c))
    if g in ("w1w2", "w2w1"):
        return omega_act("w1", omega_act("w2", w))
    raise ValueError(f"unknown element of Omega: {g!r}")


def omega_act_ts(g: str, n: int, ts: TS) -> TS:
    """Same action written on t/s coordinates, for cross-checking."""
    v = list(ts)
    if g in ("w2", "w1w2", "w2w1"):
        v[n - 1] = -v[n - 1]
        v[2 * n - 1] = -v[2 * n - 1]
    if g in ("w1", "w1w2", "w2w1"):
        v = v[n:] + v[:n]
    return tuple(v)


# --- roots of H and G ---------------------------------------------------


def simple_roots_h(n: int) -> list[TS]:
    """S_H = {t1-s1, s1-t2, ..., s_{n-1}-t_n, t_n-s_n, t_n+s_n}."""
    out = []

    def vec(**kw) -> TS:
        v = [0] * (2 * n)
        for key, val in kw.items():
            kind, idx = key[0], int(key[1:])
            v[(idx - 1) if kind == "t" else (n + idx - 1)] += val
        return tuple(v)

    for i in range(1, n):
        out.append(vec(**{f"t{i}": 1, f"s{i}": -1}))
        out.append(vec(**{f"s{i}": 1, f"t{i + 1}": -1}))
    out.append(vec(**{f"t{n}": 1, f"s{n}": -1}))
    out.append(vec(**{f"t{n}": 1, f"s{n}": 1}))
    return out


def is_positive_h(ts: TS) -> bool:
    """Positivity for S_H: order coordinates t1, s1, t2, s2, ... (type D_2n);
    u_i +- u_j with i < j is positive exactly when the earlier coefficient is +1."""
    n = len(ts) // 2
    interleaved = [x for k in range(n) for x in (ts[k], ts[n + k])]
    lead = next(x for x in interleaved if x)
    return lead > 0


def positive_roots_g(n: int) -> list[TS]:
    """Phi_G^+: roots +-t_i+-t_j and +-s_i+-s_j with nonnegative S_G coordinates."""
    out = []
    for offset in (0, n):
        for i in range(n):
            for j in range(i + 1, n):
                for si in (1, -1):
                    for sj in (1, -1):
                        v = [0] * (2 * n)
                        v[offset + i] = si
                        v[offset + j] = sj
                        if all(c >= 0 for c in sg_coords(n, tuple(v))):
                            out.append(tuple(v))
    return out


def sum_pos_roots_g(n: int) -> SGVector:
    """2(n-1)t_1 + ... + 2t_{n-1} plus the same in s, over S_G."""
    if n < 2:
        raise ValueError("n >= 2 required")
    ts = [2 * (n - i) for i in range(1, n + 1)]
    return sg_coords(n, tuple(ts + ts))


def sum_pos_roots_g_direct(n: int) -> SGVector:
    roots = positive_roots_g(n)
    total = tuple(sum(r[k] for r in roots) for k in range(2 * n))
    return sg_coords(n, total)
