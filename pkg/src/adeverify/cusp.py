"""Cusp-cutting combinatorics for D_2n.

C is the set of nonempty upward-closed subsets M of the weights of V under
the S_G order; C^good is the part of C surviving the four reducibility
conditions. For each M in C^good we look for an exact certificate: a
nonnegative rational weighting f on the weights outside M with
sum(f) < #M and residual + sum f(a) a strictly positive over S_G.
Strictness is handled by maximising a common margin lambda.
"""

from __future__ import annotations

import json
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from . import d2n
from .d2n import OMEGA, WeightD2n, all_weights, omega_act, order_masks, sg_coords
from .exactla import LPProblem, LPStatus, lp_max

DEFAULT_CAP = 1_000_000


class PartialEnumeration(RuntimeError):
    def __init__(self, n: int, cap: int, count: int):
        super().__init__(f"enumeration of C at n={n} exceeded cap {cap} after {count} subsets")
        self.n = n
        self.cap = cap
        self.count = count


# --- subsets -------------------------------------------------------------


@dataclass(frozen=True)
class CuspSubset:
    """A subset of the weights, bit k = k-th weight in row-major matrix order."""

    n: int
    bits: int

    @property
    def size(self) -> int:
        return bin(self.bits).count("1")

    def __len__(self) -> int:
        return self.size

    def __contains__(self, w: WeightD2n) -> bool:
        return bool(self.bits >> w.index & 1)

    def weights(self) -> list[WeightD2n]:
        ws = all_weights(self.n)
        return [w for w in ws if self.bits >> w.index & 1]

    def complement(self) -> list[WeightD2n]:
        ws = all_weights(self.n)
        return [w for w in ws if not self.bits >> w.index & 1]

    @property
    def hex(self) -> str:
        return f"{self.bits:0{(4 * self.n * self.n + 3) // 4}x}"

    def is_upward_closed(self) -> bool:
        up, _ = order_masks(self.n)
        return all(up[w.index] & ~self.bits == 0 for w in self.weights())

    @classmethod
    def from_weights(cls, n: int, weights) -> CuspSubset:
        bits = 0
        for w in weights:
            bits |= 1 << w.index
        return cls(n, bits)

    @classmethod
    def up_closure(cls, n: int, weights) -> CuspSubset:
        up, _ = order_masks(n)
        bits = 0
        for w in weights:
            bits |= up[w.index]
        return cls(n, bits)


def omega_perm(n: int, g: str) -> tuple[int, ...]:
    return tuple(omega_act(g, w).index for w in all_weights(n))


def omega_subset(g: str, m: CuspSubset) -> CuspSubset:
    perm = omega_perm(m.n, g)
    bits = 0
    for k, target in enumerate(perm):
        if m.bits >> k & 1:
            bits |= 1 << target
    return CuspSubset(m.n, bits)


def enumerate_c(n: int, cap: Optional[int] = DEFAULT_CAP) -> Iterator[CuspSubset]:
    """Every nonempty upward-closed subset, once each.

    An up-set is the up-closure of its antichain of minimal elements, so we
    run a DFS over antichains with members chosen in increasing index order.
    """
    up, down = order_masks(n)
    k = len(up)
    comparable = [up[i] | down[i] for i in range(k)]
    count = 0
    # explicit stack of (next index, blocked mask, up-set bits)
    stack = [(0, 0, 0)]
    while stack:
        start, blocked, bits = stack.pop()
        for i in range(k - 1, start - 1, -1):
            if blocked >> i & 1:
                continue
            new_bits = bits | up[i]
            count += 1
            if cap is not None and count > cap:
                raise PartialEnumeration(n, cap, count - 1)
            yield CuspSubset(n, new_bits)
            stack.append((i + 1, blocked | comparable[i], new_bits))


# --- the four conditions ------------------------------------------------


def _ts(n: int, **coeffs: int) -> tuple[int, ...]:
    v = [0] * (2 * n)
    for key, val in coeffs.items():
        kind, idx = key[0], int(key[1:])
        v[(idx - 1) if kind == "t" else (n + idx - 1)] += val
    return tuple(v)


def _w(n: int, **coeffs: int) -> WeightD2n:
    return d2n.weight_of(n, _ts(n, **coeffs))


@dataclass(frozen=True)
class CGoodVerdict:
    passed: bool
    condition: Optional[int] = None
    witnesses: tuple[WeightD2n, ...] = ()

    def __bool__(self) -> bool:
        return self.passed

    def describe(self) -> str:
        if self.passed:
            return "good"
        return f"condition {self.condition}: " + ", ".join(str(w) for w in self.witnesses)


def is_cgood(m: CuspSubset) -> CGoodVerdict:
    n = m.n
    # 1. t_i - s_i and s_i - t_i outside M for i <= n-1
    for i in range(1, n):
        hit = tuple(w for w in (_w(n, **{f"t{i}": 1, f"s{i}": -1}),
                                _w(n, **{f"s{i}": 1, f"t{i}": -1})) if w in m)
        if hit:
            return CGoodVerdict(False, 1, hit)
    # 2. the four +-t_n +- s_n outside M
    hit = tuple(w for a in (1, -1) for b in (1, -1)
                if (w := _w(n, **{f"t{n}": a, f"s{n}": b})) in m)
    if hit:
        return CGoodVerdict(False, 2, hit)
    # 3. t_i - s_{i+1} or s_i - t_{i+1} outside M for i <= n-2
    for i in range(1, n - 1):
        pair = (_w(n, **{f"t{i}": 1, f"s{i + 1}": -1}), _w(n, **{f"s{i}": 1, f"t{i + 1}": -1}))
        if all(w in m for w in pair):
            return CGoodVerdict(False, 3, pair)
    # 4. at most two of the four mixed weights at level n-1
    quad = (
        _w(n, **{f"t{n - 1}": 1, f"s{n}": -1}),
        _w(n, **{f"t{n - 1}": 1, f"s{n}": 1}),
        _w(n, **{f"t{n}": 1, f"s{n - 1}": 1}),
        _w(n, **{f"t{n}": -1, f"s{n - 1}": 1}),
    )
    hit = tuple(w for w in quad if w in m)
    if len(hit) > 2:
        return CGoodVerdict(False, 4, hit)
    return CGoodVerdict(True)


def simple_roots_g(n: int) -> list[tuple[str, tuple[int, ...]]]:
    """(name, t/s vector) for beta_1..beta_n, gamma_1..gamma_n."""
    out = []
    for kind, name in (("t", "beta"), ("s", "gamma")):
        for i in range(1, n):
            out.append((f"{name}{i}", _ts(n, **{f"{kind}{i}": 1, f"{kind}{i + 1}": -1})))
        out.append((f"{name}{n}", _ts(n, **{f"{kind}{n - 1}": 1, f"{kind}{n}": 1})))
    return out


class DecompositionFailure(AssertionError):
    pass


def simple_root_decomposition(m: CuspSubset) -> dict[str, tuple[WeightD2n, WeightD2n]]:
    """Write each simple root of G as a sum of two weights outside M."""
    outside = m.complement()
    by_ts = {w.ts: w for w in outside}
    out = {}
    for name, root in simple_roots_g(m.n):
        found = None
        for a in outside:
            rest = tuple(x - y for x, y in zip(root, a.ts))
            b = by_ts.get(rest)
            if b is not None:
                found = (a, b)
                break
        if found is None:
            raise DecompositionFailure(f"{name} is not a sum of two weights outside M = {m.hex}")
        out[name] = found
    return out


# --- certificates ---------------------------------------------------------


@dataclass(frozen=True)
class LPCertificate:
    f: dict[WeightD2n, Fraction]
    margin: Fraction
    budget: int
    target: tuple[Fraction, ...]

    @property
    def sum_f(self) -> Fraction:
        return sum(self.f.values(), Fraction(0))

    @property
    def slack(self) -> Fraction:
        return self.budget - self.sum_f

    @property
    def support(self) -> list[WeightD2n]:
        return [a for a, v in self.f.items() if v]


INFEASIBLE = None  # returned in place of a certificate when the best margin is <= 0


@dataclass(frozen=True)
class LPOutcome:
    """Optimal margin of the max-margin LP together with the certificate, if any."""

    margin: Fraction
    certificate: Optional[LPCertificate]


def _max_margin(m: CuspSubset, residual_ts: Sequence[int], budget: int) -> LPOutcome:
    n = m.n
    outside = m.complement()
    res = sg_coords(n, tuple(residual_ts))
    coords = [sg_coords(n, a.ts) for a in outside]
    k = len(outside)
    rows, rhs = [], []
    for j in range(2 * n):
        rows.append([-c[j] for c in coords] + [1])
        rhs.append(res[j])
    rows.append([1] * k + [1])
    rhs.append(budget)
    prob = LPProblem(rows, rhs, [0] * k + [1], free=frozenset({k}))
    sol = lp_max(prob)
    if sol.status is not LPStatus.OPTIMAL:
        raise AssertionError(f"margin LP for {m.hex} returned {sol.status.value}")
    lam = sol.value
    if lam <= 0:
        return LPOutcome(lam, INFEASIBLE)
    f = {a: sol.x[idx] for idx, a in enumerate(outside)}
    target = tuple(res[j] + sum((coords[i][j] * sol.x[i] for i in range(k)), Fraction(0))
                   for j in range(2 * n))
    return LPOutcome(lam, LPCertificate(f, lam, budget, target))


def main_residual(m: CuspSubset) -> tuple[int, ...]:
    """sum of Phi_G^+ minus sum of M, in t/s coordinates."""
    n = m.n
    half = [2 * (n - i) for i in range(1, n + 1)]
    total = half + half
    for w in m.weights():
        total = [x - y for x, y in zip(total, w.ts)]
    return tuple(total)


def first_layer(m: CuspSubset) -> CuspSubset:
    """M^[1]: the part of M in the first/last rows and columns."""
    size = 2 * m.n
    return CuspSubset.from_weights(
        m.n, [w for w in m.weights() if w.row in (1, size) or w.col in (1, size)]
    )


def induction_residual(m: CuspSubset) -> tuple[int, ...]:
    n = m.n
    total = [0] * (2 * n)
    total[0] = 2 * n - 2
    total[n] = 2 * n - 2
    for w in first_layer(m).weights():
        total = [x - y for x, y in zip(total, w.ts)]
    return tuple(total)


def cusp_lp(m: CuspSubset) -> LPOutcome:
    return _max_margin(m, main_residual(m), m.size)


def induction_lp(m: CuspSubset) -> LPOutcome:
    if m.n < 3:
        raise ValueError("the induction step needs n >= 3")
    return _max_margin(m, induction_residual(m), first_layer(m).size)


def solve_cusp_lp(m: CuspSubset) -> Optional[LPCertificate]:
    """Certificate for the main inequality system, or INFEASIBLE (None).

    The LP optimum already satisfies both strict inequalities with margin
    lambda*, so no rescaling is needed.
    """
    return cusp_lp(m).certificate


def solve_induction_lp(m: CuspSubset) -> Optional[LPCertificate]:
    return induction_lp(m).certificate


def _beta_coords(n: int, v: Sequence[Fraction]) -> list[Fraction]:
    """S_G coordinates from partial sums; deliberately separate from d2n.sg_coords."""
    out = []
    for part in (v[:n], v[n:]):
        partial = [sum(part[: k + 1], Fraction(0)) for k in range(n)]
        out.extend(partial[: n - 2])
        out.append(Fraction(partial[n - 2] - part[n - 1], 2))
        out.append(Fraction(partial[n - 2] + part[n - 1], 2))
    return out


def recheck_certificate(m: CuspSubset, cert: LPCertificate, *, induction: bool = False) -> list[str]:
    """Independent substitution check; returns a list of problems (empty when sound)."""
    n = m.n
    size = 2 * n
    problems = []
    inside = {(w.row, w.col) for w in m.weights()}
    if induction:
        layer = [p for p in inside if p[0] in (1, size) or p[1] in (1, size)]
        vec = [Fraction(0)] * (2 * n)
        vec[0] = vec[n] = Fraction(2 * n - 2)
        budget = len(layer)
    else:
        layer = list(inside)
        vec = [Fraction(2 * (n - (k % n) - 1)) for k in range(2 * n)]
        budget = len(inside)

    def ts_of(r: int, c: int) -> list[int]:
        v = [0] * (2 * n)
        if r <= n:
            v[r - 1] += 1
        else:
            v[size - r] -= 1
        if c <= n:
            v[n + c - 1] -= 1
        else:
            v[n + size - c] += 1
        return v

    for r, c in layer:
        vec = [x - y for x, y in zip(vec, ts_of(r, c))]
    total_f = Fraction(0)
    for a, val in cert.f.items():
        if (a.row, a.col) in inside:
            problems.append(f"f is supported on {a}, which lies in M")
        if val < 0:
            problems.append(f"f({a}) = {val} < 0")
        total_f += val
        vec = [x + val * y for x, y in zip(vec, ts_of(a.row, a.col))]
    if not total_f < budget:
        problems.append(f"sum f = {total_f} is not below {budget}")
    coords = _beta_coords(n, vec)
    for j, c in enumerate(coords):
        if c <= 0:
            problems.append(f"coordinate {j} of the target is {c} <= 0")
    return problems


# --- the full run -----------------------------------------------------------


@dataclass
class CuspRecord:
    subset: CuspSubset
    verdict: CGoodVerdict
    main: LPOutcome
    induction: Optional[LPOutcome] = None
    decomposition_ok: Optional[bool] = None
    problems: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def certified(self) -> bool:
        ok = self.main.certificate is not None
        if self.induction is not None:
            ok = ok and self.induction.certificate is not None
        return ok and not self.problems

    def to_json(self, *, with_time: bool = True) -> dict:
        cert = self.main.certificate
        rec = {
            "bitset": self.subset.hex,
            "size": self.subset.size,
            "verdict": self.verdict.describe(),
            "margin": str(self.main.margin),
            "sum_f": str(cert.sum_f) if cert else None,
        }
        if self.induction is not None:
            icert = self.induction.certificate
            rec["induction_margin"] = str(self.induction.margin)
            rec["induction_sum_f"] = str(icert.sum_f) if icert else None
        if with_time:
            rec["seconds"] = round(self.seconds, 6)
        return rec


@dataclass
class CuspReport:
    n: int
    total: int
    good: int
    certified: int
    failures: list[str]
    decomposition_failures: list[str]
    max_sum_f: Fraction
    min_margin: Optional[Fraction]
    min_induction_margin: Optional[Fraction]
    orbit_sizes: Counter
    orbit_consistent: bool
    non_good_outcomes: Counter
    records: list[CuspRecord] = field(repr=False, default_factory=list)

    @property
    def passed(self) -> bool:
        return (not self.failures and not self.decomposition_failures and self.orbit_consistent
                and self.certified == self.good)

    def summary(self) -> dict:
        return {
            "n": self.n,
            "C": self.total,
            "C_good": self.good,
            "certified": self.certified,
            "failures": len(self.failures),
            "decomposition_failures": len(self.decomposition_failures),
            "max_sum_f_over_size": str(self.max_sum_f),
            "min_margin": str(self.min_margin) if self.min_margin is not None else None,
            "min_induction_margin": (str(self.min_induction_margin)
                                     if self.min_induction_margin is not None else None),
            "omega_orbits": sum(self.orbit_sizes.values()),
            "omega_orbit_sizes": {str(k): v for k, v in sorted(self.orbit_sizes.items())},
            "omega_consistent": self.orbit_consistent,
            "non_good_lp": dict(sorted(self.non_good_outcomes.items())),
        }


def verify_all(n: int, *, cap: Optional[int] = DEFAULT_CAP, allow_large: bool = False,
               budget_seconds: Optional[float] = None) -> CuspReport:
    """Enumerate C, classify C^good and certify every good member."""
    if n < 2:
        raise ValueError("n >= 2 required")
    if n > 3 and not allow_large:
        raise ValueError(f"n = {n} is beyond the default range; pass allow_large=True")
    start = time.perf_counter()
    records: list[CuspRecord] = []
    failures, decomposition_failures = [], []
    non_good = Counter()
    max_ratio = Fraction(0)
    min_margin: Optional[Fraction] = None
    min_ind: Optional[Fraction] = None
    for m in enumerate_c(n, cap):
        if budget_seconds is not None and time.perf_counter() - start > budget_seconds:
            raise TimeoutError(f"cusp verification at n={n} exceeded {budget_seconds}s "
                               f"after {len(records)} subsets")
        t0 = time.perf_counter()
        verdict = is_cgood(m)
        main = cusp_lp(m)
        rec = CuspRecord(m, verdict, main)
        if verdict.passed:
            try:
                simple_root_decomposition(m)
                rec.decomposition_ok = True
            except DecompositionFailure as exc:
                rec.decomposition_ok = False
                decomposition_failures.append(str(exc))
            if main.certificate is not None:
                rec.problems += recheck_certificate(m, main.certificate)
                max_ratio = max(max_ratio, main.certificate.sum_f / m.size)
                min_margin = main.margin if min_margin is None else min(min_margin, main.margin)
            if n >= 3:
                rec.induction = induction_lp(m)
                icert = rec.induction.certificate
                if icert is not None:
                    rec.problems += recheck_certificate(m, icert, induction=True)
                    min_ind = (rec.induction.margin if min_ind is None
                               else min(min_ind, rec.induction.margin))
            if not rec.certified():
                failures.append(f"{m.hex}: main margin {main.margin}"
                                + (f", induction margin {rec.induction.margin}"
                                   if rec.induction else "")
                                + ("; " + "; ".join(rec.problems) if rec.problems else ""))
        else:
            non_good["certificate" if main.certificate is not None else "no certificate"] += 1
        rec.seconds = time.perf_counter() - t0
        records.append(rec)

    by_bits = {r.subset.bits: r for r in records}
    seen: set[int] = set()
    orbit_sizes: Counter = Counter()
    consistent = True
    for r in records:
        if r.subset.bits in seen or not r.verdict.passed:
            continue
        orbit = {omega_subset(g, r.subset).bits for g in OMEGA}
        seen |= orbit
        orbit_sizes[len(orbit)] += 1
        members = [by_bits.get(b) for b in orbit]
        if any(x is None or not x.verdict.passed for x in members):
            consistent = False
            continue
        if len({x.certified() for x in members}) != 1:
            consistent = False
    good = sum(1 for r in records if r.verdict.passed)
    certified = sum(1 for r in records if r.verdict.passed and r.certified())
    return CuspReport(n, len(records), good, certified, failures, decomposition_failures, max_ratio,
                      min_margin, min_ind, orbit_sizes, consistent, non_good, records)


def write_ledger(report: CuspReport, path) -> None:
    """One JSON object per line, one line per subset in C."""
    with open(path, "w", encoding="utf-8") as fh:
        for rec in report.records:
            fh.write(json.dumps(rec.to_json()) + "\n")
