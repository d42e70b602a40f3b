"""Command-line front end.

Subcommands:

* ``verify``   -- run a verification suite on one algebra, emit a report;
* ``critical`` -- print the two critical twist values;
* ``moyal``    -- emit the quantization-lab tables (components, pairing);
* ``show``     -- print one operator in the canonical text format;
* ``algebras`` -- list the built-in algebra selectors.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or
configuration error.  All randomness flows from ``--seed``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import jordan, moyal, rep, verify
from .weyl import diffop_str, polyop_str

RANK_LIMITS = {"sym": 3, "full": 3, "spin": 6}

USAGE_ERROR = 2
CHECK_FAILURE = 1


class UsageError(Exception):
    pass


def _load_algebra(selector: str, force: bool = False) -> jordan.JordanAlgebra:
    try:
        kind, _, size = selector.partition(":")
        value = int(size)
    except ValueError:
        raise UsageError(f"bad algebra selector {selector!r}; expected sym:<r>|full:<r>|spin:<p>")
    if kind not in RANK_LIMITS:
        raise UsageError(f"unknown algebra kind {kind!r}; expected sym|full|spin")
    limit = RANK_LIMITS[kind]
    if value > limit and not force:
        raise UsageError(
            f"{selector} exceeds the desk-scale limit {kind}:{limit}; pass --force to override")
    if value < (2 if kind == "spin" else 1):
        raise UsageError(f"size too small in {selector!r}")
    return jordan.from_selector(selector)


def _parse_twist(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad twist value {text!r}; expected a rational like 5/7")


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_verify(args) -> int:
    J = _load_algebra(args.algebra, args.force)
    lam = _parse_twist(args.lam) if args.lam else rep.GENERIC_TWIST
    try:
        report = verify.run_suite(J, selection=args.suite, seed=args.seed,
                                  lam_value=lam, parallel=args.parallel)
    except ValueError as exc:
        raise UsageError(str(exc))
    if args.format == "json":
        _emit(report.to_json(), args.output)
    else:
        _emit(report.to_text(), args.output)
    return 0 if report.overall == "pass" else CHECK_FAILURE


def cmd_critical(args) -> int:
    J = _load_algebra(args.algebra, args.force)
    try:
        lo, hi = verify.critical_values(J)
    except verify.VerifyError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return CHECK_FAILURE
    if args.format == "json":
        _emit(json.dumps({"algebra": J.selector, "critical": [str(lo), str(hi)]}) + "\n",
              args.output)
    else:
        _emit(f"{lo}, {hi}\n", args.output)
    return 0


def cmd_moyal(args) -> int:
    which = args.check
    payload: dict = {}
    if which in ("pairing", "all"):
        payload["pairing"] = moyal.pairing_table(args.max_degree)
    if which in ("components", "all"):
        payload["components"] = moyal.component_table(args.max_degree)
    if not payload:
        raise UsageError(f"unknown moyal table {which!r}; expected pairing|components|all")
    if args.format == "json":
        _emit(json.dumps(payload, indent=2) + "\n", args.output)
        ok = all(row["matches_closed_form"] for row in payload.get("pairing", [{"matches_closed_form": True}]))
        return 0 if ok else CHECK_FAILURE
    lines = []
    if "pairing" in payload:
        lines.append("Q(xi^p, zeta^q)")
        for row in payload["pairing"]:
            if row["Q"] != "0":
                lines.append(f"  p={row['p']} q={row['q']}  Q = {row['Q']}")
        if all(row["matches_closed_form"] for row in payload["pairing"]):
            lines.append("  all values match 2^-p p! on the diagonal, 0 off it")
    if "components" in payload:
        lines.append("graded components of the circle product")
        for row in payload["components"]:
            comps = ", ".join(f"C{p}={v}" for p, v in row["components"].items())
            lines.append(f"  {row['phi']} o {row['psi']}:  {comps if comps else '0'}")
    _emit("\n".join(lines) + "\n", args.output)
    if "pairing" in payload and not all(r["matches_closed_form"] for r in payload["pairing"]):
        return CHECK_FAILURE
    return 0


def cmd_show(args) -> int:
    J = _load_algebra(args.algebra, args.force)
    sel = args.op
    lam = None
    if args.lam:
        lam = _parse_twist(args.lam)
    try:
        if sel.startswith("eta:"):
            gen = rep.generator_from_selector(J, sel[4:])
            op = rep.eta_operator(J, gen, lam)
            text = polyop_str(op)
        else:
            gen = rep.generator_from_selector(J, sel)
            op = rep.pi_operator(J, gen, lam)
            text = diffop_str(op)
    except ValueError as exc:
        raise UsageError(str(exc))
    _emit(text + "\n", args.output)
    return 0


def cmd_algebras(args) -> int:
    if args.action != "list":
        raise UsageError(f"unknown algebras action {args.action!r}; expected 'list'")
    lines = ["selector  n  r  m  (limit)"]
    entries = (
        [f"sym:{r}" for r in range(1, RANK_LIMITS["sym"] + 1)]
        + [f"full:{r}" for r in range(1, RANK_LIMITS["full"] + 1)]
        + [f"spin:{p}" for p in range(2, RANK_LIMITS["spin"] + 1)]
    )
    for sel in entries:
        J = jordan.from_selector(sel)
        lines.append(f"{sel:<8}  {J.n}  {J.r}  {J.m}")
    _emit("\n".join(lines) + "\n", args.output)
    return 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistedops",
        description="exact verification of twisted-operator identities on Jordan-algebra coordinates",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, algebra=True):
        if algebra:
            p.add_argument("--algebra", required=True, help="sym:<r> | full:<r> | spin:<p>")
            p.add_argument("--force", action="store_true", help="override the desk-scale rank limits")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--output", help="write to a file instead of stdout")
        p.add_argument("--seed", type=int, default=0, help="seed for the random point checks")

    pv = sub.add_parser("verify", help="run a verification suite")
    common(pv)
    pv.add_argument("--suite", default="all",
                    help="comma list of: jordan, brackets, critical, innw, delta, ft, closure, hmodule, lowest (or 'all')")
    pv.add_argument("--lam", help="rational twist for span/witness computations (default 5/7)")
    pv.add_argument("--parallel", action="store_true", help="run independent blocks concurrently")
    pv.set_defaults(fn=cmd_verify)

    pc = sub.add_parser("critical", help="print the two critical twist values")
    common(pc)
    pc.set_defaults(fn=cmd_critical)

    pm = sub.add_parser("moyal", help="quantization-lab tables")
    common(pm, algebra=False)
    pm.add_argument("--max-degree", type=int, default=4)
    pm.add_argument("--check", default="all", help="pairing | components | all")
    pm.set_defaults(fn=cmd_moyal)

    ps = sub.add_parser("show", help="print one operator in canonical text form")
    common(ps)
    ps.add_argument("--op", required=True, help="p+:<i> | p-:<j> | idem | eta:<same>")
    ps.add_argument("--lam", help="specialize the twist to a rational value")
    ps.set_defaults(fn=cmd_show)

    pa = sub.add_parser("algebras", help="list the built-in algebras")
    pa.add_argument("action", nargs="?", default="list")
    pa.add_argument("--format", choices=("text", "json"), default="text")
    pa.add_argument("--output")
    pa.set_defaults(fn=cmd_algebras)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors already; normalize others
        return USAGE_ERROR if exc.code not in (0,) else 0
    try:
        return args.fn(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return USAGE_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
