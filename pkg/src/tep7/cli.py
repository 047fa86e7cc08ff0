"""Command line front end: ``tep7 <command> [flags]``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence, TextIO

from . import fixtures, pipeline, verifier
from .poly import Poly, PolyError, parse, var
from .tep_model import (
    DegenerateInstance,
    SolutionFamily,
    TepError,
    builtin_family,
    family_to_json,
    instantiate,
    load_family,
    scan_line,
    verify_family,
)

OUTPUT_DIR_ENV = "TEP7_OUTPUT_DIR"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


# -- argument parsing helpers ---------------------------------------------------------


def parse_range(text: str) -> List[int]:
    """``"1..7"``, ``"8"`` or ``"1,2,4"``; ranges are inclusive."""
    out: List[int] = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..")
                lo, hi = int(lo), int(hi)
                if hi < lo:
                    raise UsageError(f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise UsageError(f"bad range {text!r}") from None
    return sorted(set(out))


def parse_param(text: str) -> Optional[Fraction]:
    if text == "free":
        return None
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"expected a rational or 'free', got {text!r}") from None


def resolve_family(spec: str) -> SolutionFamily:
    if spec.startswith("builtin:"):
        try:
            return builtin_family(int(spec.split(":", 1)[1]))
        except (KeyError, ValueError):
            raise UsageError(f"no builtin family {spec!r} (use builtin:1 to builtin:4)") from None
    try:
        return load_family(spec)
    except OSError as exc:
        raise UsageError(f"cannot read {spec}: {exc.strerror}") from None
    except (json.JSONDecodeError, TepError, PolyError) as exc:
        raise UsageError(f"bad family file {spec}: {exc}") from None


def parse_branch(text: str) -> pipeline.BranchChoice:
    """``f=-2``, ``g=1`` or ``f=2*g+1`` style branch selectors."""
    if "=" not in text:
        raise UsageError(f"branch must look like f=-2 or g=2*f+1, got {text!r}")
    lhs, rhs = (s.strip() for s in text.split("=", 1))
    if lhs not in ("f", "g"):
        raise UsageError(f"branch must fix f or g, got {lhs!r}")
    free = "g" if lhs == "f" else "f"
    try:
        value = parse(rhs)
    except (PolyError, SyntaxError, ValueError) as exc:
        raise UsageError(f"cannot parse branch value {rhs!r}: {exc}") from None
    if set(value.gens) - {free}:
        raise UsageError(f"branch value may only involve {free}")
    factor = var(lhs) - value
    return pipeline.BranchChoice(str(factor), factor, lhs, value, free)


def _emit(out: TextIO, args, payload: dict, text: str) -> None:
    if args.json:
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


# -- commands -------------------------------------------------------------------------


def cmd_verify(args, out: TextIO) -> int:
    fam = resolve_family(args.family)
    degrees = parse_range(args.degrees)
    if any(r < 1 for r in degrees):
        raise UsageError("degrees must be positive")
    report = verify_family(fam, degrees)
    numeric = {r: verifier.numeric_identity_check(p) for r, p in report.residuals.items()}
    ok = report.passed and all(numeric.values())
    payload = report.to_json()
    payload["numeric"] = {str(r): v for r, v in numeric.items()}
    payload["seed"] = verifier.SEED
    lines = [f"family {fam.label or args.family}  degree {fam.degree}", "  r  symbolic  numeric"]
    for r in degrees:
        lines.append(f"{r:3d}  {'zero' if report.zero[r] else 'NONZERO':8s}  {'zero' if numeric[r] else 'NONZERO'}")
    if report.trivial:
        lines.append("warning: the two sides coincide as multisets (trivial family)")
    if not report.passed:
        lines.append(f"residual at r = {report.first_failure}:")
        lines.append(f"  {report.first_residual}")
    lines.append("PASS" if ok else "FAIL")
    _emit(out, args, payload, "\n".join(lines))
    return EXIT_OK if ok else EXIT_FAIL


def _derive_both(f: Fraction, g: Fraction, args, out: TextIO) -> int:
    label = f"derived f={f},g={g}"
    try:
        asm = pipeline.assemble(f, g, label)
    except pipeline.PipelineError as exc:
        status = {
            pipeline.TrivialFamily: "trivial",
            pipeline.NoRationalPoint: "no-rational-point",
            pipeline.DegenerateBranch: "degenerate",
        }.get(type(exc), "failed")
        payload = {"f": str(f), "g": str(g), "status": status, "detail": str(exc)}
        _emit(out, args, payload, f"f = {f}, g = {g}: {status}\n  {exc}")
        return EXIT_OK
    fam = asm.family
    report = verify_family(fam, range(1, 9))
    matches = [k for k in range(1, 5) if pipeline.equivalent(fam, builtin_family(k))]
    payload = {
        "f": str(f),
        "g": str(g),
        "status": "family",
        "sextic": str(asm.sextic),
        "square_part": str(asm.square_part),
        "conic": str(asm.conic),
        "alpha": [str(p) for p in asm.alpha],
        "y": str(asm.y),
        "family": family_to_json(fam),
        "verification": report.to_json(),
        "equivalent_builtins": matches,
    }
    lines = [
        f"f = {f}, g = {g}",
        f"square part   {asm.square_part}",
        f"conic         {asm.conic}",
        f"a1, a2, a3    {', '.join(str(p) for p in asm.alpha)}",
        f"y             {asm.y}",
        "family (first half of each side):",
    ]
    for i, p in enumerate(fam.xs[:4], start=1):
        lines.append(f"  x{i} = {p}")
    for i, p in enumerate(fam.ys[:4], start=1):
        lines.append(f"  y{i} = {p}")
    zero = report.zero
    lines.append("r = 1..7 identically zero: " + ("yes" if all(zero[r] for r in range(1, 8)) else "NO"))
    lines.append("equivalent to builtin: " + (", ".join(f"builtin:{k}" for k in matches) or "none"))
    _emit(out, args, payload, "\n".join(lines))
    return EXIT_OK


def _derive_one(choice: pipeline.BranchChoice, args, out: TextIO) -> int:
    trace = pipeline.trace_branch(choice)
    payload = trace.to_json()
    lines = [f"branch {choice.fixed} = {choice.value}, {choice.free} free: {trace.status} {trace.detail}".rstrip()]
    if trace.square_part is not None:
        lines.append(f"square part  {trace.square_part}")
        lines.append(f"cofactor     {trace.cofactor}")
    if trace.condition is not None:
        form = verifier.product_form(trace.condition, [p for p, _ in fixtures.SECOND_FACTORS_F_MINUS_2])
        payload["condition_product"] = form.to_json()
        lines.append(f"second condition  {form.text()}")
        lines.append("rational roots    " + (", ".join(str(r) for r in trace.roots) or "none"))
        for o in trace.outcomes:
            lines.append(f"  {o.choice.name:24s} {o.status} {o.detail}".rstrip())
    _emit(out, args, payload, "\n".join(lines))
    return EXIT_OK


def _derive_none(args, out: TextIO) -> int:
    cond = pipeline.first_condition()
    form = verifier.product_form(cond, [p for p, _ in fixtures.FIRST_FACTORS])
    menu = pipeline.linear_factor_choices()
    payload = {
        "condition": str(cond),
        "condition_product": form.to_json(),
        "branches": [{"factor": c.label, "substitution": {c.fixed: str(c.value)}, "free": c.free} for c in menu],
    }
    lines = ["first condition:", f"  {form.text()}", "linear branches:"]
    for i, c in enumerate(menu, start=1):
        lines.append(f"  {i:2d}. ({c.label})^2  ->  {c.fixed} = {c.value}")
    _emit(out, args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_derive(args, out: TextIO) -> int:
    f, g = parse_param(args.f), parse_param(args.g)
    if f is not None and g is not None:
        return _derive_both(f, g, args, out)
    if f is None and g is None:
        return _derive_none(args, out)
    fixed = f if f is not None else g
    if fixed.denominator != 1:
        raise UsageError("with one parameter free the fixed one must be an integer")
    return _derive_one(pipeline.choice_for(f, g), args, out)


def _parse_t(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad value of t: {text!r}") from None


def cmd_instantiate(args, out: TextIO) -> int:
    fam = resolve_family(args.family)
    t = _parse_t(args.t)
    try:
        inst = instantiate(fam, t)
    except DegenerateInstance as exc:
        raise UsageError(str(exc)) from None
    payload = {"t": str(t), **inst.to_json()}
    text = f"t = {t}\n  x: {' '.join(map(str, inst.xs))}\n  y: {' '.join(map(str, inst.ys))}"
    _emit(out, args, payload, text)
    return EXIT_OK


def _scan_target(args) -> Optional[Path]:
    if args.out:
        return Path(args.out)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base:
        name = args.family.replace(":", "").replace("/", "_")
        return Path(base) / f"scan_{name}_{args.t_range.replace('..', '_')}.jsonl"
    return None


def cmd_scan(args, out: TextIO, err: TextIO) -> int:
    fam = resolve_family(args.family)
    ts = parse_range(args.t_range)
    report = verifier.genericity_scan(fam, ts)
    lines = []
    failed = False
    for row in report.rows:
        if row.degenerate:
            err.write(f"t = {row.t}: degenerate, skipped\n")
            continue
        if not all(row.degrees[r] for r in range(1, 8)):
            failed = True
        lines.append(scan_line(row.t, row.instance))
    target = _scan_target(args)
    if target is None:
        out.write("".join(line + "\n" for line in lines))
    else:
        try:
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text("".join(line + "\n" for line in lines))
        except OSError as exc:
            raise UsageError(f"cannot write {target}: {exc.strerror}") from None
        counts = report.counts
        payload = {"path": str(target), "lines": len(lines), "counts": counts}
        text = f"wrote {len(lines)} lines to {target}\n" + "  ".join(f"{k}={v}" for k, v in counts.items())
        _emit(out, args, payload, text)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_conditions(args, out: TextIO) -> int:
    if args.stage == "first":
        return _derive_none(args, out)
    if not args.branch:
        raise UsageError("--stage second needs --branch, e.g. --branch f=-2")
    choice = parse_branch(args.branch)
    try:
        red = pipeline.reduce_once(choice)
        cond = pipeline.second_condition(choice, red)
    except (pipeline.NoSquaredFactor, pipeline.DegenerateBranch) as exc:
        raise UsageError(f"unknown branch {args.branch}: {exc}") from None
    cands = [p for p, _ in fixtures.SECOND_FACTORS_F_MINUS_2]
    form = verifier.product_form(cond, cands)
    roots = pipeline.second_roots(cond)
    payload = {
        "branch": args.branch,
        "condition": str(cond),
        "condition_product": form.to_json(),
        "roots": [str(r) for r in roots],
    }
    text = f"second condition on {choice.fixed} = {choice.value}:\n  {form.text()}\nrational roots: " + (
        ", ".join(map(str, roots)) or "none"
    )
    _emit(out, args, payload, text)
    return EXIT_OK


def cmd_fixtures(args, out: TextIO) -> int:
    report = verifier.fixture_regression()
    payload = report.to_json()
    payload["checksums"] = fixtures.checksums()
    _emit(out, args, payload, report.table())
    return EXIT_OK if report.ok else EXIT_FAIL


# -- entry point ------------------------------------------------------------------------


_VALUE_FLAGS = ("--t-range", "--t", "--f", "--g", "--degrees", "--branch")


def _glue_negative_values(argv: Sequence[str]) -> List[str]:
    """argparse reads ``--t-range -10..10`` as two options; glue such pairs."""
    out: List[str] = []
    it = iter(argv)
    for tok in it:
        if tok in _VALUE_FLAGS:
            nxt = next(it, None)
            if nxt is not None and nxt.startswith("-") and nxt[1:2].isdigit():
                out.append(f"{tok}={nxt}")
                continue
            out.append(tok)
            if nxt is not None:
                out.append(nxt)
        else:
            out.append(tok)
    return out


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = _Parser(prog="tep7", description="Degree-7 Tarry-Escott families: derive, verify, instantiate.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", parents=[common], help="check power-sum identities of a family")
    v.add_argument("--family", required=True, help="builtin:1..4 or a family JSON file")
    v.add_argument("--degrees", default="1..7", help="e.g. 1..7, 8 or 1,2,4 (default 1..7)")

    d = sub.add_parser("derive", parents=[common], help="run the discriminant pipeline")
    d.add_argument("--f", default="free", help="rational value or 'free'")
    d.add_argument("--g", default="free", help="rational value or 'free'")

    i = sub.add_parser("instantiate", parents=[common], help="canonical instance at one t")
    i.add_argument("--family", required=True)
    i.add_argument("--t", required=True, help="integer or p/q")

    s = sub.add_parser("scan", parents=[common], help="instances over a t range as JSONL")
    s.add_argument("--family", required=True)
    s.add_argument("--t-range", required=True, help="a..b inclusive")
    s.add_argument("--out", help=f"output file (default: ${OUTPUT_DIR_ENV}/..., else stdout)")

    c = sub.add_parser("conditions", parents=[common], help="print a discriminant condition")
    c.add_argument("--stage", choices=("first", "second"), required=True)
    c.add_argument("--branch", help="for --stage second, e.g. f=-2")

    sub.add_parser("fixtures", parents=[common], help="regress every stage against stored fixtures")
    return p


def main(argv: Optional[Sequence[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        argv = sys.argv[1:] if argv is None else list(argv)
        args = build_parser().parse_args(_glue_negative_values(argv))
        if args.command == "verify":
            return cmd_verify(args, out)
        if args.command == "derive":
            return cmd_derive(args, out)
        if args.command == "instantiate":
            return cmd_instantiate(args, out)
        if args.command == "scan":
            return cmd_scan(args, out, err)
        if args.command == "conditions":
            return cmd_conditions(args, out)
        return cmd_fixtures(args, out)
    except UsageError as exc:
        err.write(f"tep7: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
