"""Command line driver: ``cyclicmon compute | verify | explain``.

Exit codes: 0 success, 1 a mathematical check failed (pipelines disagree,
a suite instance fails, a structural identity breaks), 2 usage or config
error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from .config import SCHEMA_VERSION, ConfigError, parse_config
from .contratrace import lift_FA
from .cyclic import (BudgetExceeded, StructuralFailure, build_new_precocyclic, build_old_cocyclic,
                     cohomology, make_admissible_pair, new_ambient, old_ambient)
from .suites import SUITES, run_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
EXPLAIN_CAP = 64


def _pair_label(flavor, Q):
    return "new[canonical]" if flavor == "canonical" else f"new[free,dimQ={Q.dim}]"


def _row(label, build):
    try:
        rep = cohomology(build())
    except (StructuralFailure, BudgetExceeded) as exc:
        return {"pipeline": label, "HH": None, "HC": None, "checks": {}, "error": str(exc)}
    return {"pipeline": label, "HH": list(rep.hh), "HC": list(rep.hc),
            "checks": dict(rep.checks), "provenance": rep.provenance}


def compute_instance(inst, N, budget, pipeline):
    F, A = inst.trace, inst.algebra
    rows = []
    if pipeline in ("old", "all"):
        rows.append(_row("old", lambda: build_old_cocyclic(F, A, N, budget)))
    if pipeline in ("new", "all"):
        Flift = lift_FA(F, A)
        for flavor, Q in inst.pairs:
            pair = make_admissible_pair(A, flavor, Q=Q)
            rows.append(_row(_pair_label(flavor, Q),
                             lambda pair=pair: build_new_precocyclic(Flift, pair, N, budget)))
    ok = all("error" not in r for r in rows)
    agree = ok and len({(tuple(r["HH"]), tuple(r["HC"])) for r in rows}) <= 1
    return {"name": inst.name, "rows": rows, "agree": agree}


def cmd_compute(config) -> dict:
    """Run the configured pipelines; the only non-deterministic field is wall_time."""
    t0 = time.perf_counter()
    out = [compute_instance(i, config.max_degree, config.budget, config.pipeline)
           for i in config.instances]
    return {"schema": SCHEMA_VERSION, "command": "compute", "max_degree": config.max_degree,
            "budget": config.budget, "pipeline": config.pipeline, "instances": out,
            "passed": all(i["agree"] for i in out),
            "wall_time": round(time.perf_counter() - t0, 3)}


def cmd_verify(names=None, N=4, budget=10 ** 5) -> tuple:
    """Returns (exit status, report). Unknown names raise KeyError."""
    t0 = time.perf_counter()
    results = run_all(names, N, budget)
    report = {"schema": SCHEMA_VERSION, "command": "verify", "max_degree": N,
              "suites": [r.to_dict() for r in results],
              "passed": all(r.passed for r in results),
              "wall_time": round(time.perf_counter() - t0, 3)}
    return (EXIT_OK if report["passed"] else EXIT_FAIL), report


def parse_report(text: str) -> dict:
    rep = json.loads(text)
    if rep.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported report schema {rep.get('schema')!r}")
    return rep


def _fmt(v):
    return "-" if v is None else " ".join(str(x) for x in v)


def _table(header, rows):
    widths = [max(len(str(r[c])) for r in [header] + rows) for c in range(len(header))]
    lines = ["  ".join(str(x).ljust(w) for x, w in zip(r, widths)).rstrip() for r in [header] + rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def format_text(report: dict) -> str:
    if report["command"] == "compute":
        rows = []
        for t, inst in enumerate(report["instances"]):
            name = inst["name"] or f"#{t}"
            for r in inst["rows"]:
                status = r.get("error") or ("ok" if inst["agree"] else "DISAGREE")
                rows.append([name, r["pipeline"], _fmt(r["HH"]), _fmt(r["HC"]), status])
        head = f"N = {report['max_degree']}, pipeline = {report['pipeline']}"
        body = _table(["instance", "pipeline", "HH", "HC", "status"], rows)
    else:
        rows = []
        for s in report["suites"]:
            for i in s["instances"]:
                rows.append([s["suite"], i["description"], _fmt(i["left"]), _fmt(i["right"]),
                             "pass" if i["passed"] else ("FAIL " + i["note"]).strip()])
        head = f"N = {report['max_degree']}"
        body = _table(["suite", "instance", "left", "right", "status"], rows)
    tail = "all passed" if report["passed"] else "FAILURES"
    return f"{head}\n{body}\n{tail}\n"


def _print_matrix(name, m, out):
    out.write(f"{name}  ({m.nrows}x{m.ncols})\n")
    for row in m.to_lists():
        out.write("  [" + " ".join(f"{str(x):>5}" for x in row) + "]\n")


def explain(config, out=None) -> int:
    """Print the cosimplicial data of small instances."""
    out = out or sys.stdout
    N = config.max_degree
    for t, inst in enumerate(config.instances):
        F, A = inst.trace, inst.algebra
        objs = []
        if config.pipeline in ("old", "all"):
            objs.append(("old", old_ambient(F, A, N), lambda: build_old_cocyclic(F, A, N, None)))
        if config.pipeline in ("new", "all"):
            for flavor, Q in inst.pairs:
                pair = make_admissible_pair(A, flavor, Q=Q)
                objs.append((_pair_label(flavor, Q), new_ambient(F, pair, N),
                             lambda pair=pair: build_new_precocyclic(lift_FA(F, A), pair, N, None)))
        out.write(f"== instance {inst.name or t}: {F!r}, algebra {A.name} (dim {A.dim})\n")
        for label, amb, build in objs:
            if amb > EXPLAIN_CAP:
                out.write(f"-- {label}: ambient {amb} exceeds the explain cap {EXPLAIN_CAP}\n")
                return EXIT_USAGE
            obj = build()
            out.write(f"-- {label}: dims {obj.dims()}\n")
            for n, sp in enumerate(obj.spaces):
                out.write(f"C^{n}: dim {sp.dim} in ambient {sp.ambient_dim}\n")
                for j, v in enumerate(sp.space.vectors):
                    out.write(f"  e{j} = {dict(sorted((k, str(x)) for k, x in v.items()))}\n")
            for n in range(N):
                for i, d in enumerate(obj.cofaces[n]):
                    _print_matrix(f"delta_{i}: C^{n} -> C^{n + 1}", d, out)
            for n, tm in enumerate(obj.cyclic):
                _print_matrix(f"tau_{n}", tm, out)
    return EXIT_OK


def _read_config(path):
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def build_parser():
    p = argparse.ArgumentParser(prog="cyclicmon", description="Exact cyclic cohomology of algebras "
                                "in Rep(G) and Vec_G with Hom-type coefficients.")
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp):
        sp.add_argument("--max-degree", type=int, default=None, help="N; degrees 0..N-1 are reported")
        sp.add_argument("--budget", type=int, default=None, help="largest ambient dimension allowed")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--out", default=None, help="write the report here instead of stdout")

    c = sub.add_parser("compute", help="compute HH and HC for a config")
    c.add_argument("config", nargs="?", default="-", help="JSON config file, '-' for stdin")
    c.add_argument("--pipeline", choices=("old", "new", "all"), default=None)
    common(c)
    v = sub.add_parser("verify", help="run theorem suites")
    v.add_argument("--suite", action="append", default=None,
                   help=f"suite name (repeatable, default all): {', '.join(SUITES)}")
    common(v)
    e = sub.add_parser("explain", help="print spaces and matrices of a small instance")
    e.add_argument("config", nargs="?", default="-")
    e.add_argument("--pipeline", choices=("old", "new", "all"), default=None)
    e.add_argument("--max-degree", type=int, default=None)
    e.add_argument("--budget", type=int, default=None)
    return p


def _emit(report, fmt, path):
    text = json.dumps(report, indent=2, sort_keys=True) + "\n" if fmt == "json" else format_text(report)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.max_degree is not None and args.max_degree < 1:
        print("error: --max-degree must be >= 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.verb == "verify":
            status, report = cmd_verify(args.suite, args.max_degree or 4,
                                        args.budget if args.budget is not None else 10 ** 5)
            _emit(report, args.format, args.out)
            return status
        config = parse_config(_read_config(args.config), args.max_degree, args.budget, args.pipeline)
        if args.verb == "explain":
            return explain(config)
        report = cmd_compute(config)
        _emit(report, args.format, args.out)
        return EXIT_OK if report["passed"] else EXIT_FAIL
    except (ConfigError, KeyError, OSError) as exc:
        print(f"error: {exc.args[0] if isinstance(exc, KeyError) else exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
