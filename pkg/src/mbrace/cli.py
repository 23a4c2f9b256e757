"""Command line front end (``mbrace``).

Exit codes: 0 when every requested check passes, 1 when an identity fails
or the engine and the oracle disagree, 2 on I/O, parse or evaluation errors.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import List, Optional

from . import __version__
from . import dsl, instances, oracle
from .algfile import AlgebraFile, AlgFileError, load
from .checks import SUITES, Options, REPORT_VERSION, run
from .cochains import Cochain
from .engine import BraceError, evaluate, infer_degrees
from .fuzz import corpus, _same
from .phi import PhiTower
from .scalars import format_terms

ALIASES = {
    "bv-check": ["bv"],
    "ainf-check": ["ainf"],
    "linf-check": ["linf"],
    "bor-check": ["bor"],
    "bialg-check": ["bialg"],
}


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _show(value) -> str:
    if isinstance(value, Cochain):
        return value.describe()
    return str(value)


def load_algebra(ref: str) -> AlgebraFile:
    """A path, or the name of a shipped file (``exterior.alg.json`` or ``exterior``)."""
    path = Path(ref)
    if path.exists():
        return load(path)
    stem = path.name[:-len(".alg.json")] if path.name.endswith(".alg.json") else path.name
    for name in instances.ALGEBRAS:
        if stem in (name, instances.FILES.get(name, name)):
            return instances.algebra(name)
    raise OSError(f"no such algebra file: {ref}")


def _expressions(args) -> List[tuple]:
    if args.expr is not None:
        return [(1, dsl.parse(args.expr))]
    text = Path(args.file).read_text()
    return dsl.parse_program(text)


# --- subcommands ------------------------------------------------------------------

def cmd_eval(args) -> int:
    alg = load_algebra(args.algebra)
    env = alg.environment()
    status = 0
    for line, expr in _expressions(args):
        value = evaluate(expr, env, strict=args.strict)
        if not args.oracle:
            print(_show(value))
            continue
        ref = oracle.evaluate(expr, env).value
        agree = _same(value, ref)
        print(_show(value))
        if not agree:
            print(f"line {line}: oracle disagrees:\n{_show(ref)}", file=sys.stderr)
            status = 1
    return status


def cmd_degrees(args) -> int:
    env = load_algebra(args.algebra).environment()
    for _, expr in _expressions(args):
        d = infer_degrees(expr, env)
        print(f"D={d.D} R={d.R} d={d.d} |.|={d.super} ||.||={d.super + d.d}")
    return 0


def cmd_oracle_diff(args) -> int:
    env = load_algebra(args.algebra).environment()
    out = []
    status = 0
    for line, expr in _expressions(args):
        res = oracle.evaluate(expr, env, keep_terms=True)
        space = env.space
        value = evaluate(expr, env)
        agree = _same(value, res.value)
        status |= not agree
        out.append({
            "line": line,
            "expression": dsl.to_text(expr),
            "engine": _show(value),
            "oracle": _show(res.value),
            "agree": agree,
            "terms": [{"sign": t.sign, "reading": " ".join(f"{a}.{b}" for a, b in t.reading), "value": format_terms(space, t.row)}
                      for t in res.terms],
        })
    print(_dump({"version": REPORT_VERSION, "results": out}))
    return int(status)


def cmd_fuzz(args) -> int:
    seed = _seed(args)
    results = corpus(seed, args.count, max_depth=args.max_depth)
    bad = [r.__dict__ for r in results if not r.agree]
    report = {"version": REPORT_VERSION, "seed": seed, "count": len(results),
              "nonzero": sum(not r.zero for r in results), "mismatches": bad}
    if args.verbose:
        report["cases"] = [r.__dict__ for r in results]
    print(_dump(report))
    return 1 if bad else 0


def cmd_phi(args) -> int:
    alg = load_algebra(args.algebra)
    if args.op not in alg.maps or args.product not in alg.maps:
        raise UsageError(f"{alg.name} needs maps {args.op!r} and {args.product!r}")
    tower = PhiTower(alg.maps[args.op], alg.maps[args.product])
    for r in range(1, args.r_max + 1):
        print(f"Phi^{r}:")
        print("  " + _show(tower.level(r)).replace("\n", "\n  "))
    order = tower.order(args.r_max)
    print(f"order: {order if order is not None else f'> {args.r_max}'}")
    return 0


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("MBRACE_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"MBRACE_SEED must be an integer, got {env!r}")


def _run_one(name, opts):
    return run([name], opts)


def _report(names, opts: Options, jobs: int) -> dict:
    names = sorted(SUITES) if "all" in names else sorted(set(names))
    if jobs <= 1:
        return run(names, opts)
    with ProcessPoolExecutor(jobs) as pool:
        parts = list(pool.map(_run_one, names, [opts] * len(names)))
    checks = [c for p in parts for c in p["checks"]]
    totals = {k: sum(p["totals"][k] for p in parts) for k in ("pass", "fail", "discrepancy")}
    return {"version": REPORT_VERSION, "seed": opts.seed, "checks": checks, "totals": totals,
            "ok": totals["fail"] == 0}


def _text(report: dict) -> str:
    lines = []
    for c in report["checks"]:
        lines.append(f"[{c['name']}] {c['anchor']}")
        for it in c["items"]:
            lines.append(f"  {it['status'].upper():<11} {it['label']} ({it['instance']}, {it['cases']} cases)")
            if it["status"] != "pass" and it["detail"]:
                lines.append("    " + json.dumps(it["detail"], sort_keys=True))
    t = report["totals"]
    lines.append(f"{'PASS' if report['ok'] else 'FAIL'}: {t['pass']} passed, {t['fail']} failed, "
                 f"{t['discrepancy']} discrepancies ({sum(t.values())} checks)")
    return "\n".join(lines)


def cmd_check(args, names=None) -> int:
    names = names or args.names
    unknown = [n for n in names if n != "all" and n not in SUITES]
    if unknown:
        raise UsageError(f"unknown check {unknown[0]!r}; choose from all, {', '.join(sorted(SUITES))}")
    if args.instance and args.instance not in instances.BIALGEBRAS:
        raise UsageError(f"--instance must be one of {', '.join(instances.BIALGEBRAS)}")
    opts = Options(seed=_seed(args), cases=args.cases, dim=args.dim, n_max=args.n_max,
                   degree_max=args.degree_max, instance=args.instance, mutate=args.mutate)
    report = _report(names, opts, args.jobs)
    if args.json:
        print(_dump(report))
    else:
        print(_text(report))
    return 0 if report["ok"] else 1


# --- argument parsing -------------------------------------------------------------

def _add_source(p, need_algebra=True):
    p.add_argument("-a", "--algebra", required=need_algebra, help="algebra file (.alg.json) or shipped name")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("-e", "--expr", help="expression text")
    src.add_argument("-f", "--file", help=".brace file, one expression per line")


def _add_check_flags(p):
    p.add_argument("--seed", type=int, default=None, help="RNG seed (falls back to MBRACE_SEED, then 0)")
    p.add_argument("--cases", type=int, default=20, help="random cases per check")
    p.add_argument("--dim", type=int, default=2, choices=range(1, 5), metavar="{1..4}")
    p.add_argument("--n-max", type=int, default=4, choices=range(1, 7), metavar="{1..6}")
    p.add_argument("--degree-max", type=int, default=3, help="largest i+j for the bialgebra complex")
    p.add_argument("--instance", default=None, help="bialgebra instance (default: all)")
    p.add_argument("--mutate", action="store_true", help="also check that perturbed structures are rejected")
    p.add_argument("--jobs", type=int, default=1, help="run suites in parallel processes")
    p.add_argument("--json", action="store_true", help="print the JSON report")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mbrace", description="Coupled brace evaluation and identity checks.")
    ap.add_argument("--version", action="version", version=f"mbrace {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate expressions")
    _add_source(p)
    p.add_argument("--oracle", action="store_true", help="also evaluate definitionally and diff")
    p.add_argument("--strict", action="store_true", help="reject results with open slots")
    p.set_defaults(fn=cmd_eval)

    p = sub.add_parser("degrees", help="bidegree of expressions")
    _add_source(p)
    p.set_defaults(fn=cmd_degrees)

    p = sub.add_parser("oracle-diff", help="engine against oracle, with the oracle's term list")
    _add_source(p)
    p.set_defaults(fn=cmd_oracle_diff)

    p = sub.add_parser("fuzz", help="seeded random engine/oracle comparison")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--max-depth", type=int, default=3)
    p.add_argument("--verbose", action="store_true", help="list every case")
    p.set_defaults(fn=cmd_fuzz)

    p = sub.add_parser("phi", help="print the tower of higher order defects")
    p.add_argument("-a", "--algebra", default="bv")
    p.add_argument("--op", default="Delta", help="operator map name")
    p.add_argument("--product", default="m")
    p.add_argument("--r-max", type=int, default=4)
    p.set_defaults(fn=cmd_phi)

    p = sub.add_parser("check", help="run identity suites")
    p.add_argument("names", nargs="+", help=f"all or any of: {', '.join(sorted(SUITES))}")
    _add_check_flags(p)
    p.set_defaults(fn=cmd_check)

    for alias, names in ALIASES.items():
        p = sub.add_parser(alias, help=f"same as check {' '.join(names)}")
        _add_check_flags(p)
        p.set_defaults(fn=lambda a, names=names: cmd_check(a, names))
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except dsl.ParseError as err:
        for d in err.diagnostics:
            print(f"error: {d}", file=sys.stderr)
    except (OSError, AlgFileError, UsageError, BraceError, oracle.OracleError, KeyError) as err:
        print(f"error: {err}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
