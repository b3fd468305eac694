"""Command line entry point: ``adeverify <command> [flags]``.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 on usage errors. ``--json`` prints a versioned report whose bytes depend
only on the command, its parameters and the seed.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Optional, Sequence

from . import __version__, cusp, d2n, mod2, rootsys
from . import curves as curves_mod

SCHEMA_VERSION = 1

TABLE_TYPES = (
    [f"A{r}" for r in range(2, 10)] + [f"D{r}" for r in range(4, 8)] + ["E6", "E7", "E8"]
)


@dataclass
class Report:
    command: str
    params: dict[str, Any]
    records: list[dict[str, Any]] = field(default_factory=list)
    passed: int = 0
    failed: int = 0
    extra: dict[str, Any] = field(default_factory=dict)
    first_failure: Optional[str] = None
    seed: Optional[int] = None
    elapsed: float = 0.0

    def check(self, ok: bool, what: str) -> bool:
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.first_failure is None:
                self.first_failure = what
        return ok

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def to_json(self) -> str:
        summary = {"pass": self.passed, "fail": self.failed, **self.extra}
        if self.first_failure is not None:
            summary["first_failure"] = self.first_failure
        doc = {
            "command": self.command,
            "params": self.params,
            "records": self.records,
            "summary": summary,
            "meta": {"seed": self.seed, "version": __version__, "schema": SCHEMA_VERSION},
        }
        return json.dumps(doc, indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = [f"== {self.command} " + " ".join(f"{k}={v}" for k, v in self.params.items())]
        if self.records:
            keys = list(self.records[0])
            widths = {k: max(len(k), *(len(_fmt(r.get(k))) for r in self.records)) for k in keys}
            lines.append("  ".join(k.ljust(widths[k]) for k in keys))
            for r in self.records:
                lines.append("  ".join(_fmt(r.get(k)).ljust(widths[k]) for k in keys))
        for k, v in self.extra.items():
            lines.append(f"{k}: {_fmt(v)}")
        lines.append(f"pass {self.passed}  fail {self.failed}  ({self.elapsed:.2f}s)")
        if self.first_failure:
            lines.append(f"first failure: {self.first_failure}")
        return "\n".join(lines)


def _fmt(v: Any) -> str:
    if isinstance(v, (list, tuple)):
        return "(" + ",".join(_fmt(x) for x in v) + ")"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return "-" if v is None else str(v)


# --- commands -----------------------------------------------------------------


def cmd_tables(args: argparse.Namespace) -> Report:
    rep = Report("tables", {})
    for label in TABLE_TYPES:
        rs = rootsys.build(label)
        degrees = rootsys.invariant_degrees(rs)
        cg = mod2.component_group(rs)
        consts = mod2.derived_constants(rs)
        fam = curves_mod.curve_family(label)
        rec = {
            "type": label,
            "degrees": list(degrees),
            "dim_V": rootsys.dim_v(rs),
            "roots": len(rs.roots),
            "genus": mod2.genus(rs),
            "pi0": cg.describe(),
            "m": cg.marked_points,
            "tamagawa": consts.tamagawa,
            "selmer_bound": consts.selmer_bound,
        }
        rep.records.append(rec)
        rep.check(sum(degrees) == rootsys.dim_v(rs), f"{label}: sum of degrees != dim V")
        rep.check(sorted(fam.degrees) == list(degrees), f"{label}: curve degrees differ")
        rep.check(fam.marked_points == cg.marked_points, f"{label}: marked points differ")
        rep.check(curves_mod.is_weighted_homogeneous(fam), f"{label}: equation not homogeneous")
    return rep


def cmd_monodromy(args: argparse.Namespace) -> Report:
    label = args.type
    rep = Report("monodromy", {"type": label})
    r = mod2.monodromy_report(label)
    rows = [
        ("no_invariants", r.no_invariants),
        ("absolutely_irreducible", r.absolutely_irreducible),
        ("anisotropic_element", r.anisotropic_rank == r.dim),
        ("pairing_nondegenerate", r.pairing_nondegenerate),
        ("roots_nonzero", r.roots_nonzero),
    ]
    for name, ok in rows:
        rep.records.append({"property": name, "holds": ok})
        rep.check(ok, f"{r.label}: {name} fails")
    rep.extra = {"dim_N": r.dim, "anisotropic_word": list(r.anisotropic_word)}
    return rep


def cmd_cusp(args: argparse.Namespace) -> Report:
    n = args.n
    rep = Report("cusp", {"n": n, "cap": args.cap})
    report = cusp.verify_all(n, cap=args.cap, allow_large=args.allow_large,
                             budget_seconds=args.budget_seconds)
    for rec in report.records:
        if rec.verdict.passed:
            rep.records.append(rec.to_json(with_time=False))
    rep.check(not report.failures, report.failures[0] if report.failures else "")
    rep.check(not report.decomposition_failures,
              report.decomposition_failures[0] if report.decomposition_failures else "")
    rep.check(report.orbit_consistent, "certificate existence differs inside an Omega-orbit")
    rep.extra = report.summary()
    if args.ledger:
        cusp.write_ledger(report, args.ledger)
    return rep


def cmd_disc(args: argparse.Namespace) -> Report:
    n, trials, seed = args.n, args.trials, args.seed
    rep = Report("disc", {"n": n, "trials": trials}, seed=seed)
    rng = random.Random(seed)
    literal = 0
    for t in range(trials):
        v = d2n.random_vmatrix(n, rng)
        res = d2n.verify_disc_identity(v)
        literal += res.ratio == 1
        rep.records.append({
            "trial": t,
            "charpoly_identity": res.charpoly_ok,
            "disc_identity": res.disc_ok,
            "ratio": str(res.ratio) if res.ratio is not None else None,
        })
        rep.check(res.ok, f"trial {t}: {res.message}")
    rep.extra = {
        "identity": f"|disc chi_D| = 2^{4 * n} * disc(chi_AA*)^2 * det(A)^2",
        "unscaled_identity_holds": f"{literal}/{trials}",
    }
    return rep


def _family(args: argparse.Namespace) -> curves_mod.CurveFamily:
    return curves_mod.curve_family(args.type)


def cmd_curves(args: argparse.Namespace) -> Report:
    fam = _family(args)
    sub = args.curves_cmd
    if sub == "census":
        X = args.X
        rep = Report("curves census", {"type": fam.label, "X": X})
        formula = curves_mod.census(fam, X)
        rec = {"X": X, "product_formula": formula,
               "ratio_to_main_term": f"{formula / curves_mod.census_main_term(fam, X):.6f}"}
        if args.enumerate:
            counted = curves_mod.census_enumerate(fam, X)
            rec["enumerated"] = counted
            rep.check(counted == formula, f"enumeration {counted} != formula {formula}")
        rep.records.append(rec)
        return rep
    if sub == "scan":
        b = tuple(args.b)
        rep = Report("curves scan", {"type": fam.label, "b": list(b), "p": args.p})
        scan = curves_mod.singular_scan(fam, b, args.p)
        for pt in scan.points:
            rep.records.append({"x": pt.x, "y": pt.y, "kind": pt.kind})
        extra: dict[str, Any] = {"smooth": scan.smooth}
        if fam.family == "A":
            disc = curves_mod.family_disc(fam, b)
            ordp = curves_mod.ord_p(disc, args.p)
            extra.update(disc=disc, ord_p=str(ordp))
            if ordp == 1:
                rep.check(scan.unique_node, "ord_p(disc) = 1 but the fibre is not a unique node")
        rep.extra = extra
        return rep
    if sub == "nodal":
        rep = Report("curves nodal", {"type": fam.label, "p": args.p, "trials": args.trials},
                     seed=args.seed)
        s = curves_mod.nodal_statistics(fam, args.p, args.trials, args.seed)
        rep.check(s.kept == args.trials, f"only {s.kept} of {args.trials} samples kept")
        rep.check(s.passed, "; ".join(f"b={f.b}: {len(f.points)} singular points"
                                      for f in s.failures[:3]) or "no kept samples")
        rep.extra = {"attempts": s.attempts, "kept": s.kept, "unique_nodes": s.nodes}
        for f in s.failures:
            rep.records.append({"b": list(f.b), "points": [[p.x, p.y, p.kind] for p in f.points]})
        return rep
    raise AssertionError(sub)


# --- parsing ----------------------------------------------------------------------


def _label(value: str) -> str:
    try:
        fam, rank = rootsys.parse_label(value)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return f"{fam}{rank}"


def _positive(value: str) -> int:
    k = int(value)
    if k < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return k


def _int_list(value: str) -> list[int]:
    try:
        return [int(x) for x in value.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {value}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")

    parser = argparse.ArgumentParser(prog="adeverify", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("tables", parents=[common], help="degrees, component groups and constants")

    p = sub.add_parser("monodromy", parents=[common], help="mod-2 monodromy checks for one type")
    p.add_argument("type_pos", nargs="?", type=_label, metavar="TYPE")
    p.add_argument("--type", type=_label, dest="type_flag")

    p = sub.add_parser("cusp", parents=[common], help="certify every member of C^good")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--cap", type=_positive, default=cusp.DEFAULT_CAP)
    p.add_argument("--budget-seconds", type=float, default=None)
    p.add_argument("--allow-large", action="store_true", help="permit n > 3")
    p.add_argument("--ledger", default=None, help="write a JSON-lines certificate ledger here")

    p = sub.add_parser("disc", parents=[common], help="discriminant identities on random A")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--trials", type=_positive, default=100)

    p = sub.add_parser("curves", help="curve family utilities")
    csub = p.add_subparsers(dest="curves_cmd", required=True)
    c = csub.add_parser("census", parents=[common])
    c.add_argument("--type", type=_label, default="A2")
    c.add_argument("--X", type=_positive, required=True)
    c.add_argument("--enumerate", action="store_true", help="also count by enumeration")
    c = csub.add_parser("scan", parents=[common])
    c.add_argument("--type", type=_label, default="A2")
    c.add_argument("--b", type=_int_list, required=True, help="comma-separated invariants")
    c.add_argument("--p", type=int, required=True)
    c = csub.add_parser("nodal", parents=[common])
    c.add_argument("--type", type=_label, default="A2")
    c.add_argument("--p", type=int, default=7)
    c.add_argument("--trials", type=_positive, default=100)
    return parser


COMMANDS: dict[str, Callable[[argparse.Namespace], Report]] = {
    "tables": cmd_tables,
    "monodromy": cmd_monodromy,
    "cusp": cmd_cusp,
    "disc": cmd_disc,
    "curves": cmd_curves,
}


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if args.command == "monodromy":
        label = args.type_flag or args.type_pos
        if label is None:
            parser.error("monodromy needs a TYPE")
        if label == "A1":
            parser.error("A1 is not supported")
        args.type = label
    if args.command in ("cusp", "disc") and args.n < 2:
        parser.error("--n must be at least 2")
    if args.command == "cusp" and args.n > 3 and not args.allow_large:
        parser.error("--n above 3 needs --allow-large")
    if args.command == "curves":
        if args.type == "A1":
            parser.error("A1 has no curve family")
        if args.curves_cmd in ("scan", "nodal") and (args.p <= 3 or not curves_mod._is_prime(args.p)):
            parser.error("--p must be a prime > 3")
        if args.curves_cmd == "scan":
            rank = curves_mod.curve_family(args.type).rank
            if len(args.b) != rank:
                parser.error(f"--b needs {rank} integers for {args.type}")
        if args.curves_cmd == "nodal" and args.type[0] != "A":
            parser.error("nodal statistics need an A-type family")


def _glue_b(argv: Sequence[str]) -> list[str]:
    """Turn ``--b -1,0`` into ``--b=-1,0`` so argparse does not read -1,0 as a flag."""
    out: list[str] = []
    it = iter(argv)
    for tok in it:
        if tok == "--b":
            value = next(it, None)
            out.append(tok if value is None else f"--b={value}")
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_b(sys.argv[1:] if argv is None else argv))
    _validate(parser, args)
    start = time.perf_counter()
    try:
        rep = COMMANDS[args.command](args)
    except (AssertionError, cusp.DecompositionFailure, cusp.PartialEnumeration, TimeoutError) as exc:
        print(f"adeverify: check failed: {exc}", file=sys.stderr)
        return 1
    rep.elapsed = time.perf_counter() - start
    print(rep.to_json() if args.json else rep.to_text())
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
