"""Command-line entry point.

Exit codes: 0 on success, 1 when a verification fails, 2 on malformed input
or configuration. Reports are deterministic JSON with sorted keys and always
carry the configuration that produced them.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import InputError, MissingRule, MotzetaError, UnassignedSymbol
from .graded import GradedElement
from .k0 import (
    FreeSymRule,
    K0Expr,
    PeriodicSymRule,
    SymRuleSet,
    TableSymRule,
    count_assignment,
    counting_specialize,
    expr_counts,
    kapranov_zeta,
    set_L_zero,
    severi_brauer_zeta,
    verify_sb_closed_form,
)
from .measures import HodgeData, mu1_sym_sequence
from .rationality import AnalysisContext, analyze
from .selftest import FAIL, Limits, format_table, run_selftest
from .series import exp_from_log_counts
from .zm import MElement

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _load_json(path: str, what: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{what}: cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _emit(report: dict, args) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    if args.json_out:
        Path(args.json_out).write_text(text + "\n")


def _context(args, growth_constant=None) -> AnalysisContext:
    return AnalysisContext(
        horizon=args.horizon,
        p_max=args.p_max,
        i0_max=args.i0_max,
        bounded_coefficients=args.bounded_coefficients,
        growth_constant=growth_constant,
    )


def _verdict_report(command: str, ctx: AnalysisContext, seq: list[MElement], extra: dict) -> dict:
    verdict = analyze(seq, ctx)
    print(verdict.summary(), file=sys.stderr)
    return {
        "command": command,
        "config": ctx.to_json(),
        **extra,
        "sequence": [g.poly.to_json() for g in seq],
        "verdict": verdict.to_json(),
    }


def cmd_zeta_mu1(args) -> int:
    h = HodgeData.from_json(_load_json(args.input, "input"))
    # 2i-forms force deg mu1(Sym^m X) >= 2im
    forms = [i for i in range(1, h.dim // 2 + 1) if h.h0[2 * i] > 0]
    ctx = _context(args, growth_constant=max(forms) if forms else None)
    seq = mu1_sym_sequence(h, ctx.horizon)
    _emit(_verdict_report("zeta-mu1", ctx, seq, {"input": h.to_json()}), args)
    return EXIT_OK


def _parse_sequence(obj) -> list[MElement]:
    if isinstance(obj, dict):
        if "sequence" not in obj:
            raise InputError("sequence: missing required field")
        obj = obj["sequence"]
    if not isinstance(obj, list) or not obj:
        raise InputError("sequence: expected a nonempty list of coefficient lists")
    out = []
    for i, g in enumerate(obj):
        if not isinstance(g, list):
            raise InputError(f"sequence[{i}]: expected a list of integers")
        try:
            coeffs = [int(c) for c in g]
        except (TypeError, ValueError):
            raise InputError(f"sequence[{i}]: entries must be integers") from None
        try:
            out.append(MElement(GradedElement(coeffs)))
        except ValueError as exc:
            raise InputError(f"sequence[{i}]: {exc}") from None
    return out


def cmd_analyze(args) -> int:
    seq = _parse_sequence(_load_json(args.input, "input"))
    if args.horizon is None:
        args.horizon = len(seq) - 1
    if len(seq) < args.horizon + 1:
        raise InputError(f"sequence: {len(seq)} terms given, horizon {args.horizon} needs {args.horizon + 1}")
    ctx = _context(args, growth_constant=args.growth_constant)
    _emit(_verdict_report("analyze", ctx, seq[: ctx.horizon + 1], {}), args)
    return EXIT_OK


def cmd_sb_zeta(args) -> int:
    if args.d < 1:
        raise InputError(f"d: must be positive, got {args.d}")
    if args.horizon < 2 * args.d:
        raise InputError(f"horizon: must be at least 2d = {2 * args.d}")
    zeta = severi_brauer_zeta(args.d, args.horizon)
    ok = verify_sb_closed_form(args.d, args.horizon)
    _emit(
        {
            "command": "sb-zeta",
            "config": {"d": args.d, "horizon": args.horizon},
            "coefficients": [c.to_json() for c in zeta.coeffs],
            "closed_form_verified": ok,
        },
        args,
    )
    return EXIT_OK if ok else EXIT_FAIL


def _parse_rules(obj, symbols: list[str]) -> SymRuleSet:
    if not isinstance(obj, dict):
        raise InputError("sym_rules: expected an object keyed by symbol")
    rules = {}
    for name, entry in obj.items():
        where = f"sym_rules.{name}"
        if name not in symbols:
            raise InputError(f"{where}: symbol not declared in symbols")
        if not isinstance(entry, dict) or "kind" not in entry:
            raise InputError(f"{where}: expected an object with a kind")
        kind = entry["kind"]
        if kind == "free":
            rules[name] = FreeSymRule(name)
        elif kind == "periodic":
            period = entry.get("period")
            if not isinstance(period, int) or period < 2:
                raise InputError(f"{where}.period: expected an integer >= 2")
            rules[name] = PeriodicSymRule(name, period)
        elif kind == "table":
            values = entry.get("values")
            if not isinstance(values, dict):
                raise InputError(f"{where}.values: expected an object mapping n to expressions")
            try:
                table = {int(n): K0Expr.from_json(v) for n, v in values.items()}
            except ValueError as exc:
                raise InputError(f"{where}.values: {exc}") from None
            try:
                rules[name] = TableSymRule(name, table)
            except ValueError as exc:
                raise InputError(f"{where}: {exc}") from None
        else:
            raise InputError(f"{where}.kind: unknown rule kind {kind!r}")
    return SymRuleSet(rules)


def _counting_check(expr: K0Expr, zeta, counts, q: int) -> dict:
    length = min(len(v) for v in counts.values()) if counts else zeta.horizon
    horizon = min(zeta.horizon, length)
    try:
        expected = exp_from_log_counts(expr_counts(expr, counts, q, horizon), horizon)
        assignment = count_assignment(counts, horizon)
        got = [counting_specialize(zeta[n], assignment, q) for n in range(horizon + 1)]
    except UnassignedSymbol as exc:
        return {"q": q, "skipped": f"no count for {exc.symbol}"}
    return {
        "q": q,
        "horizon": horizon,
        "specialized": [str(v) for v in got],
        "expected": [str(v) for v in expected.coeffs],
        "ok": got == list(expected.coeffs),
    }


def cmd_k0_zeta(args) -> int:
    manifest = _load_json(args.manifest, "manifest")
    if not isinstance(manifest, dict):
        raise InputError("manifest: expected a JSON object")
    symbols = manifest.get("symbols", [])
    if not isinstance(symbols, list) or not all(isinstance(s, str) for s in symbols):
        raise InputError("symbols: expected a list of names")
    if "expr" not in manifest:
        raise InputError("expr: missing required field")
    expr = K0Expr.from_json(manifest["expr"])
    undeclared = sorted(expr.generators() - set(symbols))
    if undeclared:
        raise InputError(f"expr: undeclared symbols {undeclared}")
    rules = _parse_rules(manifest.get("sym_rules", {}), symbols)
    try:
        zeta = kapranov_zeta(expr, rules, args.horizon)
    except MissingRule as exc:
        raise InputError(f"sym_rules: no rule for {exc.symbol}") from None

    report = {
        "command": "k0-zeta",
        "config": {"horizon": args.horizon, "manifest": manifest},
        "coefficients": [c.to_json() for c in zeta.coeffs],
        "mod_L": [set_L_zero(c).to_json() for c in zeta.coeffs],
    }
    status = EXIT_OK
    counts = manifest.get("counts")
    if counts is not None:
        if "q" not in manifest:
            raise InputError("q: required when counts are given")
        q = manifest["q"]
        if not isinstance(q, int) or q < 2:
            raise InputError("q: expected an integer >= 2")
        if not isinstance(counts, dict) or not all(
            isinstance(v, list) and v and all(isinstance(c, int) for c in v) for v in counts.values()
        ):
            raise InputError("counts: expected an object mapping symbols to nonempty integer lists")
        check = _counting_check(expr, zeta, counts, q)
        report["counting_check"] = check
        if check.get("ok") is False:
            status = EXIT_FAIL
    _emit(report, args)
    return status


def cmd_selftest(args) -> int:
    limits = Limits(
        horizon=args.horizon,
        p_max=args.p_max,
        i0_max=args.i0_max,
        oracle_max_tuples=args.oracle_max_tuples,
        seed=args.seed,
    )
    results = run_selftest(limits)
    print(format_table(results))
    if args.json_out:
        report = {"command": "selftest", "config": limits.__dict__, "suites": results}
        Path(args.json_out).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return EXIT_FAIL if any(r["status"] == FAIL for r in results) else EXIT_OK


def _add_analysis_flags(p, horizon_default, bounded_default):
    p.add_argument("--horizon", type=int, default=horizon_default, help="number of coefficients beyond t^0")
    p.add_argument("--p-max", type=int, default=8)
    p.add_argument("--i0-max", type=int, default=12)
    p.add_argument(
        "--bounded-coefficients",
        action=argparse.BooleanOptionalAction,
        default=bounded_default,
        help="declare that coefficient magnitudes stay bounded, enabling the irrationality certificate",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="motzeta", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeta-mu1", help="mu1 zeta series of a variety from its Hodge data")
    p.add_argument("input", help="HodgeData JSON file, or - for stdin")
    _add_analysis_flags(p, 60, True)
    p.set_defaults(func=cmd_zeta_mu1)

    p = sub.add_parser("analyze", help="rationality analysis of a raw Z[M]-basis sequence")
    p.add_argument("input", help="JSON list of coefficient lists, or {\"sequence\": [...]}")
    _add_analysis_flags(p, None, False)
    p.add_argument("--growth-constant", type=float, default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sb-zeta", help="Severi-Brauer zeta modulo L and its closed form")
    p.add_argument("--d", type=int, required=True, help="index")
    p.add_argument("--horizon", type=int, default=60)
    p.set_defaults(func=cmd_sb_zeta)

    p = sub.add_parser("k0-zeta", help="Kapranov zeta of a symbolic K0 expression")
    p.add_argument("manifest", help="manifest JSON file, or - for stdin")
    p.add_argument("--horizon", type=int, default=12)
    p.set_defaults(func=cmd_k0_zeta)

    p = sub.add_parser("selftest", help="run the oracle and invariant suites")
    p.add_argument("--horizon", type=int, default=60)
    p.add_argument("--p-max", type=int, default=8)
    p.add_argument("--i0-max", type=int, default=12)
    p.add_argument("--oracle-max-tuples", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_selftest)

    for command in sub.choices.values():
        command.add_argument("--json-out", default=None, help="also write the report to this path")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MotzetaError as exc:
        # HorizonTooSmall and friends are configuration problems, not failures
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
