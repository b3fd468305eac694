"""The families of plane curves C_b attached to each simply laced type.

Each family is y-and-x polynomial F(x, y; b) = lhs - rhs with coefficients
that are either integers or one of the invariants p_d. Heights, integral
point counts in B(Z), discriminants for A-type families and a brute-force
singular point scan mod p are provided.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Optional, Sequence

from . import mod2, rootsys
from .exactla import Poly, poly_disc

BPoint = tuple[int, ...]

# term: (constant, parameter slot or None, x exponent, y exponent)
Term = tuple[int, Optional[int], int, int]


@dataclass(frozen=True)
class CurveFamily:
    """F(x, y; b) = lhs - rhs of the affine model.

    ``degrees[k]`` is the degree of the k-th parameter of b; D_{2g+2} has two
    distinct parameters of degree 2g+2, the second being the one in
    y(xy + p). Weights (p_d, x, y) = (d * p_scale, x_weight, y_weight) make
    F weighted homogeneous.
    """

    label: str
    degrees: tuple[int, ...]
    marked_points: int
    terms: tuple[Term, ...]
    x_weight: int
    y_weight: int
    p_scale: int = 1

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def family(self) -> str:
        return rootsys.parse_label(self.label)[0]

    @property
    def genus(self) -> int:
        return mod2.genus(rootsys.build(self.label))

    def term_weight(self, term: Term) -> int:
        _, k, i, j = term
        d = self.degrees[k] if k is not None else 0
        return d * self.p_scale + self.x_weight * i + self.y_weight * j

    def coefficients(self, b: Sequence[int]) -> dict[tuple[int, int], int]:
        """F(x, y; b) as {(i, j): coefficient of x^i y^j}."""
        if len(b) != self.rank:
            raise ValueError(f"{self.label} takes {self.rank} invariants, got {len(b)}")
        out: dict[tuple[int, int], int] = {}
        for c, k, i, j in self.terms:
            v = c * (b[k] if k is not None else 1)
            if v:
                out[(i, j)] = out.get((i, j), 0) + v
        return {key: v for key, v in out.items() if v}

    def evaluate(self, x: int, y: int, b: Sequence[int]) -> int:
        return sum(c * x ** i * y ** j for (i, j), c in self.coefficients(b).items())

    def describe(self) -> str:
        """The equation as lhs = rhs (terms with constant -1 go to the right)."""
        def term_str(c: int, k: Optional[int], i: int, j: int) -> str:
            parts = []
            if k is not None:
                name = f"p{self.degrees[k]}"
                if self.degrees.count(self.degrees[k]) > 1 and k == len(self.degrees) - 1:
                    name += "'"
                parts.append(name)
            if i:
                parts.append("x" if i == 1 else f"x^{i}")
            if j:
                parts.append("y" if j == 1 else f"y^{j}")
            return "*".join(parts) or "1"

        lhs = [term_str(*t) for t in self.terms if t[0] > 0]
        rhs = [term_str(*t) for t in self.terms if t[0] < 0]
        return " + ".join(lhs) + " = " + " + ".join(rhs)


def _a_family(rank: int) -> tuple[list[int], list[Term]]:
    # y^2 = x^(rank+1) + p_2 x^(rank-1) + ... + p_(rank+1)
    top = rank + 1
    degrees = list(range(2, top + 1))
    terms: list[Term] = [(1, None, 0, 2), (-1, None, top, 0)]
    terms += [(-1, k, top - d, 0) for k, d in enumerate(degrees)]
    return degrees, terms


def _d_family(rank: int) -> tuple[list[int], list[Term]]:
    # y(xy + p_rank) = x^(rank-1) + p_2 x^(rank-2) + ... + p_(2 rank - 2)
    top = rank - 1
    degrees = list(range(2, 2 * rank - 1, 2)) + [rank]
    terms: list[Term] = [(1, None, 1, 2), (1, len(degrees) - 1, 0, 1), (-1, None, top, 0)]
    terms += [(-1, k, top - (k + 1), 0) for k in range(len(degrees) - 1)]
    return degrees, terms


# E-type rows: (constant, degree of p or 0, x exponent, y exponent)
_E: dict[int, list[tuple[int, int, int, int]]] = {
    6: [(1, 0, 0, 3), (-1, 0, 4, 0),
        (-1, 2, 2, 1), (-1, 5, 1, 1), (-1, 8, 0, 1),
        (-1, 6, 2, 0), (-1, 9, 1, 0), (-1, 12, 0, 0)],
    7: [(1, 0, 0, 3), (-1, 0, 3, 1), (-1, 10, 2, 0),
        (-1, 2, 1, 2), (-1, 8, 1, 1), (-1, 14, 1, 0),
        (-1, 6, 0, 2), (-1, 12, 0, 1), (-1, 18, 0, 0)],
    8: [(1, 0, 0, 3), (-1, 0, 5, 0),
        (-1, 2, 3, 1), (-1, 8, 2, 1), (-1, 14, 1, 1), (-1, 20, 0, 1),
        (-1, 12, 3, 0), (-1, 18, 2, 0), (-1, 24, 1, 0), (-1, 30, 0, 0)],
}

_E_WEIGHTS = {6: (3, 4), 7: (4, 6), 8: (6, 10)}


@lru_cache(maxsize=None)
def curve_family(label: str) -> CurveFamily:
    fam, rank = rootsys.parse_label(label)
    lab = f"{fam}{rank}"
    if fam == "A":
        if rank < 2:
            raise ValueError("A1 has no curve family here")
        degrees, terms = _a_family(rank)
        if rank % 2 == 0:
            # y^2 = x^(2g+1) + ...: p_d, x, y of weights 2d, 2, 2g+1
            return CurveFamily(lab, tuple(degrees), 1, tuple(terms), 2, rank + 1, 2)
        return CurveFamily(lab, tuple(degrees), 2, tuple(terms), 1, (rank + 1) // 2)
    if fam == "D":
        degrees, terms = _d_family(rank)
        marked = 3 if rank % 2 == 0 else 2
        return CurveFamily(lab, tuple(degrees), marked, tuple(terms), 2, rank - 2)
    rows = _E[rank]
    degrees = sorted({d for _, d, _, _ in rows if d})
    terms = tuple((c, degrees.index(d) if d else None, i, j) for c, d, i, j in rows)
    xw, yw = _E_WEIGHTS[rank]
    return CurveFamily(lab, tuple(degrees), 2 if rank == 7 else 1, terms, xw, yw)


TABLE_LABELS = ("A2", "A3", "D4", "D5", "E6", "E7", "E8")


def is_weighted_homogeneous(fam: CurveFamily) -> bool:
    return len({fam.term_weight(t) for t in fam.terms}) == 1


# --- heights and census -------------------------------------------------------


def _lcm(values) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def height_power(fam: CurveFamily, b: Sequence[int]) -> tuple[int, int]:
    """(ht(b)^L, L) with L the lcm of the degrees; exact."""
    L = _lcm(fam.degrees)
    return max(abs(p) ** (L // d) for p, d in zip(b, fam.degrees)), L


def height(fam: CurveFamily, b: Sequence[int]) -> float:
    value, L = height_power(fam, b)
    if value == 0:
        return 0.0
    root = round(value ** (1.0 / L))
    if root ** L == value:
        return float(root)
    return value ** (1.0 / L)


def height_below(fam: CurveFamily, b: Sequence[int], X: int) -> bool:
    """ht(b) < X, decided as |p_d| < X^d for every d."""
    return all(abs(p) < X ** d for p, d in zip(b, fam.degrees))


def scale(fam: CurveFamily, lam: int, b: Sequence[int]) -> BPoint:
    return tuple(lam ** d * p for p, d in zip(b, fam.degrees))


def census(fam: CurveFamily, X: int) -> int:
    if X < 1:
        raise ValueError("X must be a positive integer")
    out = 1
    for d in fam.degrees:
        out *= 2 * X ** d - 1
    return out


def census_enumerate(fam: CurveFamily, X: int) -> int:
    """Count b with ht(b) < X by walking the box |p_d| <= X^d."""
    boxes = [range(-X ** d, X ** d + 1) for d in fam.degrees]
    return sum(1 for b in itertools.product(*boxes) if height_below(fam, b, X))


def census_main_term(fam: CurveFamily, X: int) -> int:
    return 2 ** fam.rank * X ** sum(fam.degrees)


# --- discriminants -------------------------------------------------------------


def a_polynomial(fam: CurveFamily, b: Sequence[int]) -> Poly:
    """The monic f(x) with C_b : y^2 = f(x)."""
    if fam.family != "A":
        raise NotImplementedError(f"no monic model for {fam.label}")
    coeffs = fam.coefficients(b)
    top = max(i for (i, j) in coeffs if j == 0)
    return Poly([-coeffs.get((i, 0), 0) for i in range(top + 1)])


def family_disc(fam: CurveFamily, b: Sequence[int]) -> int:
    return int(poly_disc(a_polynomial(fam, b)))


def ord_p(value: int, p: int) -> float:
    if value == 0:
        return math.inf
    k = 0
    while value % p == 0:
        value //= p
        k += 1
    return k


# --- singular points mod p --------------------------------------------------------


NODE = "NODE"
WORSE = "WORSE"


@dataclass(frozen=True)
class SingularPoint:
    x: int
    y: int
    kind: str


@dataclass(frozen=True)
class SingularFiberReport:
    label: str
    b: BPoint
    p: int
    points: tuple[SingularPoint, ...]

    @property
    def smooth(self) -> bool:
        return not self.points

    @property
    def unique_node(self) -> bool:
        return len(self.points) == 1 and self.points[0].kind == NODE


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


def _deriv(coeffs: dict[tuple[int, int], int], dx: int, dy: int) -> dict[tuple[int, int], int]:
    out = {}
    for (i, j), c in coeffs.items():
        if i >= dx and j >= dy:
            k = c * math.perm(i, dx) * math.perm(j, dy)
            if k:
                out[(i - dx, j - dy)] = k
    return out


def _eval_mod(coeffs: dict[tuple[int, int], int], x: int, y: int, p: int) -> int:
    return sum(c * pow(x, i, p) * pow(y, j, p) for (i, j), c in coeffs.items()) % p


def singular_scan(fam: CurveFamily, b: Sequence[int], p: int) -> SingularFiberReport:
    """All (x, y) in F_p^2 with F = F_x = F_y = 0, each marked NODE or WORSE.

    A point is a node when the quadratic part of F there is a nondegenerate
    binary form, i.e. F_xy^2 - F_xx F_yy is nonzero mod p.
    """
    if p <= 3 or not _is_prime(p):
        raise ValueError(f"p must be a prime > 3, got {p}")
    F = fam.coefficients(b)
    Fx, Fy = _deriv(F, 1, 0), _deriv(F, 0, 1)
    Fxx, Fxy, Fyy = _deriv(F, 2, 0), _deriv(F, 1, 1), _deriv(F, 0, 2)
    points = []
    for x in range(p):
        for y in range(p):
            if _eval_mod(F, x, y, p) or _eval_mod(Fx, x, y, p) or _eval_mod(Fy, x, y, p):
                continue
            hess = (_eval_mod(Fxy, x, y, p) ** 2
                    - _eval_mod(Fxx, x, y, p) * _eval_mod(Fyy, x, y, p)) % p
            points.append(SingularPoint(x, y, NODE if hess else WORSE))
    return SingularFiberReport(fam.label, tuple(b), p, tuple(points))


def _has_rational_repeated_root(f: Poly, p: int) -> bool:
    df = f.derivative()
    return any(f(x) % p == 0 and df(x) % p == 0 for x in range(p))


@dataclass(frozen=True)
class DiscScanCheck:
    disc_zero_mod_p: bool
    scan_singular: bool
    rational_repeated_root: bool

    @property
    def agree(self) -> bool:
        return self.disc_zero_mod_p == self.scan_singular

    @property
    def explained(self) -> bool:
        """A disagreement is explained when the repeated root is not F_p-rational."""
        return self.agree or (self.disc_zero_mod_p and not self.rational_repeated_root)


def disc_scan_check(fam: CurveFamily, b: Sequence[int], p: int) -> DiscScanCheck:
    f = a_polynomial(fam, b)
    return DiscScanCheck(
        family_disc(fam, b) % p == 0,
        not singular_scan(fam, b, p).smooth,
        _has_rational_repeated_root(f, p),
    )


@dataclass
class NodalSummary:
    label: str
    p: int
    seed: int
    attempts: int
    kept: int
    nodes: int
    failures: list[SingularFiberReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.kept > 0 and self.nodes == self.kept and not self.failures


def random_b(fam: CurveFamily, p: int, rng: random.Random) -> BPoint:
    return tuple(rng.randint(-p * p, p * p) for _ in fam.degrees)


def nodal_statistics(fam: CurveFamily, p: int, trials: int, seed: int,
                     *, max_attempts: Optional[int] = None) -> NodalSummary:
    """Sample b until ``trials`` of them have ord_p(disc) = 1; each must give a unique node."""
    if fam.family != "A":
        raise NotImplementedError("discriminants are only available for A-type families")
    rng = random.Random(seed)
    limit = max_attempts if max_attempts is not None else 1000 * trials
    summary = NodalSummary(fam.label, p, seed, 0, 0, 0)
    while summary.kept < trials and summary.attempts < limit:
        summary.attempts += 1
        b = random_b(fam, p, rng)
        if ord_p(family_disc(fam, b), p) != 1:
            continue
        summary.kept += 1
        rep = singular_scan(fam, b, p)
        if rep.unique_node:
            summary.nodes += 1
        else:
            summary.failures.append(rep)
    return summary
