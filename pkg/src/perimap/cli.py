"""Command-line entry point: ``perimap <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget
exceeded.  JSON output is key-sorted so identical invocations give
byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import biquad, elim, maps, moebius, normalform, verify
from .parse import ParseError, parse_poly
from .poly import VarTable

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

BIQUAD_LABELS = ("lv3", "qp4", "generic", "qrt")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers


def _number(text: str):
    """Exact rational when possible, complex otherwise (``1+2j`` or ``1+2i``)."""
    try:
        return Fraction(text)
    except ValueError:
        pass
    try:
        return complex(text.replace("i", "j").replace(" ", ""))
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None


def _tuple6(text: str | None, default):
    if text is None:
        return default
    vals = [Fraction(v) for v in text.split(",")]
    if len(vals) != 6:
        raise UsageError("QRT coefficients need six comma-separated values")
    return tuple(vals)


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"expected integers, got {text!r}") from None


# ``qp4c`` and friends name the parameter choices used by the variety catalog.
_ALIASES = {
    "qp4c": lambda: maps.qp4_map(*verify.QP4_CONSTRAINED_ALPHA),
    "qp5c": lambda: maps.qp5_map(*verify.QP5_CONSTRAINED_ALPHA),
    "lift2": lambda: maps.lift_example(*verify.LIFT_AB, 0),
}


def resolve_map(label: str, args=None) -> maps.RationalMap:
    path = Path(label)
    if label.endswith(".json") or path.is_file():
        if not path.is_file():
            raise UsageError(f"map-spec file not found: {label}")
        return maps.load_map_spec(path)
    if label in _ALIASES:
        return _ALIASES[label]()
    if label == "qrt" and args is not None:
        return maps.qrt_map(_tuple6(getattr(args, "q1", None), maps.DEFAULT_QRT[0]),
                            _tuple6(getattr(args, "q2", None), maps.DEFAULT_QRT[1]))
    try:
        return maps.get_map(label)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None


def _plain(v):
    """JSON fallback for numpy scalars and exact rationals."""
    if hasattr(v, "item"):
        return v.item()
    if isinstance(v, Fraction):
        return str(v)
    raise TypeError(f"cannot serialize {type(v).__name__}")


def _emit(args, payload, text_lines=None, rows=None, header=None):
    fmt = args.format
    out = sys.stdout
    if fmt == "json":
        out.write(json.dumps(payload, sort_keys=True, indent=2, default=_plain) + "\n")
    elif fmt == "csv":
        if rows is None:
            rows = [payload] if isinstance(payload, dict) else payload
        header = header or sorted(rows[0])
        w = csv.DictWriter(out, fieldnames=header, lineterminator="\n", extrasaction="ignore")
        w.writeheader()
        for r in rows:
            w.writerow({k: (json.dumps(v) if isinstance(v, (list, dict)) else v)
                        for k, v in r.items()})
    else:
        if text_lines is None:
            text_lines = [json.dumps(payload, sort_keys=True, default=_plain)]
        for line in text_lines:
            out.write(line + "\n")


def _budget(args) -> elim.Budget:
    return elim.Budget(args.max_degree, args.max_basis, args.timeout)


# ---------------------------------------------------------------------------
# subcommands


def cmd_catalog(args) -> int:
    labels = [l for l in maps.CATALOG_LABELS if l != "lvN"]
    entries = []
    cases = verify.catalog_varieties(include_generated=args.generated)
    for label in labels:
        m = maps.get_map(label)
        entries.append({
            "map": label,
            "dim": m.dim,
            "vars": list(m.vars.names),
            "invariants": list(m.invariant_names),
            "varieties": [c.key for c in cases if c.key.split("/")[0] == label],
        })
    extra = sorted({c.key.split("/")[0] for c in cases} - set(labels))
    for label in extra:
        m = resolve_map(label)
        entries.append({
            "map": label,
            "dim": m.dim,
            "vars": list(m.vars.names),
            "invariants": list(m.invariant_names),
            "varieties": [c.key for c in cases if c.key.split("/")[0] == label],
        })
    lines = [f"{e['map']:<12} d={e['dim']}  invariants: {', '.join(e['invariants']) or '-'}"
             + (f"  varieties: {', '.join(e['varieties'])}" if e["varieties"] else "")
             for e in entries]
    lines.append("lvN          Lotka-Volterra family for any d >= 3 (lv6, lv7, ...)")
    _emit(args, {"maps": entries}, lines, rows=entries,
          header=["map", "dim", "vars", "invariants", "varieties"])
    return EXIT_OK


def cmd_invariants(args) -> int:
    m = resolve_map(args.map, args)
    checks = maps.verify_invariants(m) if not args.no_check else {}
    payload = {
        "map": m.label,
        "vars": list(m.vars.names),
        "components": [str(f) for f in m.components],
        "invariants": {n: str(f) for n, f in m.invariants},
    }
    if checks:
        payload["verified"] = checks
    lines = [f"{n} = {f}" + (f"    [{'ok' if checks[n] else 'FAILED'}]" if checks else "")
             for n, f in m.invariants]
    rows = [{"name": n, "expression": str(f), "verified": checks.get(n, "")} for n, f in m.invariants]
    _emit(args, payload, lines, rows=rows, header=["name", "expression", "verified"])
    return EXIT_OK if all(checks.values()) else EXIT_FAIL


def gamma_for(label: str, n: int, args=None, source: str = "auto") -> tuple[list[str], str]:
    """Defining polynomials of the period-n variety and where they came from."""
    if n < 2:
        raise UsageError("period must be at least 2")
    if source in ("auto", "biquad") and label in BIQUAD_LABELS:
        if label == "qrt":
            q = biquad.reduce_qrt(_tuple6(getattr(args, "q1", None), maps.DEFAULT_QRT[0]),
                                  _tuple6(getattr(args, "q2", None), maps.DEFAULT_QRT[1]))
        else:
            q = biquad.reduction(label)
        series = biquad.gamma_series(q, max(3, n))
        return [str(series[n])], "biquad"
    if source == "biquad":
        raise UsageError(f"no biquadratic reduction for {label!r}")
    if label == "lift2" and source == "auto":
        g = moebius.periodicity_poly(n).subs({"a": verify.LIFT_AB[0], "b": verify.LIFT_AB[1]})
        return [str(g.to_vars(VarTable(["h"])))], "moebius"
    try:
        case = verify.find_case(label, n)
    except KeyError as exc:
        raise UsageError(exc.args[0]) from None
    return case.variety.strings(), case.variety.provenance


def cmd_gamma(args) -> int:
    gammas, provenance = gamma_for(args.map, args.period, args, args.source)
    value = gammas[0] if len(gammas) == 1 else gammas
    payload = {"gamma": value}
    if args.provenance:
        payload["provenance"] = provenance
    lines = gammas + ([f"# provenance: {provenance}"] if args.provenance else [])
    _emit(args, payload, lines, rows=[{"gamma": g} for g in gammas], header=["gamma"])
    return EXIT_OK


def cmd_moebius(args) -> int:
    gamma = moebius.periodicity_poly(args.period)
    payload = {"period": args.period, "gamma": str(gamma)}
    lines = [str(gamma)]
    code = EXIT_OK
    if args.verify:
        checks = moebius.numeric_suite(args.period, args.samples, args.starts, args.seed,
                                       args.tol, args.guard)
        passed = sum(c.ok for c in checks)
        payload["checks"] = {
            "total": len(checks),
            "passed": passed,
            "worst_residual": max(c.residual for c in checks),
            "min_divisor_margin": min(c.divisor_margin for c in checks),
        }
        lines.append(f"numeric suite: {passed}/{len(checks)} points of exact period {args.period}")
        code = EXIT_OK if passed == len(checks) else EXIT_FAIL
    _emit(args, payload, lines)
    return code


def _elim_system(args) -> elim.PolySystem:
    if args.gens:
        if not args.vars:
            raise UsageError("--gens needs --vars (elimination order, largest first)")
        names = args.vars.split(",")
        vt = VarTable(names)
        gens = tuple(parse_poly(g, vt) for g in args.gens)
        return elim.PolySystem(gens, tuple(names), args.eliminate or 0)
    if not args.map:
        raise UsageError("give either --gens/--vars or --map")
    m = resolve_map(args.map, args)
    if args.period:
        return elim.periodicity_system(m, args.period, saturate=args.saturate,
                                       avoid_fixed=not args.keep_fixed)
    return elim.reduction_system(m)


def cmd_elim(args) -> int:
    system = _elim_system(args)
    try:
        basis = system.groebner(_budget(args))
    except elim.BudgetExceeded as exc:
        payload = {"error": "budget exceeded", "kind": exc.kind,
                   "partial_size": len(exc.partial), "order": list(system.order)}
        _emit(args, payload, [f"budget exceeded ({exc.kind}) with "
                              f"{len(exc.partial)} partial basis elements"])
        return EXIT_BUDGET
    ideal = elim.elimination_ideal(basis, system.eliminate)
    payload = {
        "order": list(system.order),
        "eliminated": system.eliminate,
        "basis_size": len(basis),
        "ideal": [str(g) for g in ideal],
    }
    if args.member:
        vt = VarTable(system.order)
        payload["member"] = {p: elim.reduce_mod(parse_poly(p, vt), basis).is_zero()
                             for p in args.member}
    lines = [str(g) for g in ideal] or ["(zero ideal)"]
    for p, ok in payload.get("member", {}).items():
        lines.append(f"# {p} {'in' if ok else 'not in'} ideal")
    _emit(args, payload, lines, rows=[{"generator": g} for g in payload["ideal"]],
          header=["generator"])
    if args.member and not all(payload["member"].values()):
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.gamma:
        m = resolve_map(args.map, args)
        v = maps.InvariantVariety.parse(args.period, args.gamma, m.invariant_names,
                                        note="command line")
    else:
        if Path(args.map).is_file():
            raise UsageError("a map-spec file needs --gamma")
        try:
            case = verify.find_case(args.map, args.period)
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
        m, v = case.map, case.variety
    try:
        rep = verify.variety_report(m, v, args.samples, args.seed, args.tol, args.guard)
    except verify.SamplingError as exc:
        raise UsageError(str(exc)) from None
    payload = rep.as_dict()
    payload["seed"] = args.seed
    payload["samples"] = args.samples
    lines = [f"{args.map} period {args.period}: {rep.passed}/{rep.sampled} verified"
             f" (pole failures {rep.pole_failures}, worst residual {rep.worst_residual:.2e},"
             f" max drift {rep.max_drift:.2e})"]
    _emit(args, payload, lines)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_nf_count(args) -> int:
    lam, lp = _number(args.lam), _number(args.lam_prime)
    m = normalform.NormalFormMap(lam, lp)
    rows = []
    cache: dict = {}
    for n in _ints(args.n):
        ps = normalform.periodic_points(m, n, seed=args.seed, _cache=cache)
        row = {"n": n, "count": ps.count, **ps.metadata}
        if isinstance(lam, Fraction) and isinstance(lp, Fraction):
            row["exact_count"] = normalform.exact_period_count(lam, lp, n)
        rows.append(row)
    payload = {"lambda": args.lam, "lambda_prime": args.lam_prime, "counts": rows}
    lines = [str(r["count"]) if len(rows) == 1 else f"{r['n']} {r['count']}" for r in rows]
    for r in rows:
        if r.get("disputed"):
            lines.append(f"# n={r['n']}: published count {r['published']} disputed,"
                         f" predicted {r['predicted']}")
    _emit(args, payload, lines, rows=rows,
          header=["n", "count", "exact_count", "predicted", "published", "disputed"])
    return EXIT_OK


def cmd_nf_collapse(args) -> int:
    lam = _number(args.lam)
    eps = []
    for tok in args.eps_list.split(","):
        try:
            eps.append(Fraction(tok) if "/" in tok else float(tok))
        except ValueError:
            raise UsageError(f"bad eps value {tok!r}") from None
    rows = [{"eps": r.eps, "n": r.n, "count": r.count, "fossil_distance": r.fossil_distance}
            for r in normalform.collapse(lam, eps, args.n, args.seed)]
    if args.format == "text":
        args.format = "csv"
    _emit(args, {"lambda": args.lam, "rows": rows}, rows=rows,
          header=["eps", "n", "count", "fossil_distance"])
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")
    common.add_argument("--json", dest="format", action="store_const", const="json",
                        help="shorthand for --format json")

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--max-degree", type=int, default=elim.Budget.max_degree)
    budget.add_argument("--max-basis", type=int, default=elim.Budget.max_basis)
    budget.add_argument("--timeout", type=float, default=elim.Budget.timeout)

    qrt = argparse.ArgumentParser(add_help=False)
    qrt.add_argument("--q1", help="six comma-separated QRT coefficients q'")
    qrt.add_argument("--q2", help="six comma-separated QRT coefficients q''")

    p = argparse.ArgumentParser(prog="perimap", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("catalog", parents=[common], help="list catalog maps and varieties")
    c.add_argument("--generated", action="store_true",
                   help="include varieties generated by the Möbius and biquadratic recursions")
    c.set_defaults(func=cmd_catalog)

    c = sub.add_parser("invariants", parents=[common, qrt], help="print and check invariants")
    c.add_argument("--map", required=True)
    c.add_argument("--no-check", action="store_true", help="skip the exact invariance check")
    c.set_defaults(func=cmd_invariants)

    c = sub.add_parser("gamma", parents=[common, qrt], help="defining polynomials of a variety")
    c.add_argument("--map", required=True)
    c.add_argument("--period", type=int, required=True)
    c.add_argument("--source", choices=("auto", "biquad", "catalog"), default="auto")
    c.add_argument("--provenance", action="store_true")
    c.set_defaults(func=cmd_gamma)

    c = sub.add_parser("moebius", parents=[common], help="periodicity polynomial in (a, b, h)")
    c.add_argument("--period", type=int, required=True)
    c.add_argument("--verify", action="store_true")
    c.add_argument("--samples", type=int, default=20)
    c.add_argument("--starts", type=int, default=5)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--tol", type=float, default=1e-9)
    c.add_argument("--guard", type=float, default=verify.GUARD)
    c.set_defaults(func=cmd_moebius)

    c = sub.add_parser("elim", parents=[common, budget, qrt], help="lex Gröbner elimination")
    c.add_argument("--gens", nargs="+", help="generator polynomials")
    c.add_argument("--vars", help="comma-separated variable order, eliminated variables first")
    c.add_argument("--eliminate", type=int, help="number of leading variables to eliminate")
    c.add_argument("--map", help="reduce a map to one variable, or with --period build "
                                 "its periodicity ideal")
    c.add_argument("--period", type=int)
    c.add_argument("--saturate", action="store_true", help="also remove the pole locus")
    c.add_argument("--keep-fixed", action="store_true",
                   help="do not remove points whose first coordinate is fixed")
    c.add_argument("--member", nargs="+", help="polynomials to test for ideal membership")
    c.set_defaults(func=cmd_elim)

    c = sub.add_parser("verify", parents=[common, qrt], help="numeric check of a variety")
    c.add_argument("--map", required=True, help="catalog label or map-spec JSON file")
    c.add_argument("--period", type=int, required=True)
    c.add_argument("--gamma", nargs="+", help="variety polynomials in the invariant symbols")
    c.add_argument("--samples", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--tol", type=float, default=verify.TOL)
    c.add_argument("--guard", type=float, default=verify.GUARD)
    c.set_defaults(func=cmd_verify)

    nf = sub.add_parser("nf", help="degree-2 normal form experiments")
    nsub = nf.add_subparsers(dest="nf_command", required=True)
    c = nsub.add_parser("count", parents=[common], help="count points of exact period n")
    c.add_argument("--lambda", dest="lam", required=True)
    c.add_argument("--lambda-prime", dest="lam_prime", required=True)
    c.add_argument("--n", required=True, help="period or comma-separated periods")
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_nf_count)
    c = nsub.add_parser("collapse", parents=[common],
                        help="periodic points as lambda*lambda' -> 1 (CSV)")
    c.add_argument("--lambda", dest="lam", default="2")
    c.add_argument("--eps-list", required=True, help="comma-separated values of lambda*lambda'-1")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_nf_collapse)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, ParseError, KeyError, ValueError) as exc:
        msg = exc.args[0] if exc.args else type(exc).__name__
        print(f"perimap: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    except elim.BudgetExceeded as exc:
        print(f"perimap: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
