"""``bettibounds`` command line.

Exit statuses: 0 when every check passes or skips, 2 on any FAIL, 3 on an
unstable reconstruction, 1 on usage errors.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .. import bounds as B
from .. import verify as V
from ..ffcount.cache import cache_gc
from ..ffcount.counting import DEFAULT_BUDGET, Domain
from ..ffcount.fields import make_field
from ..polygon import an_hodge_polygon, hodge_numbers, hodge_polygon
from ..polytope import convex_hull, mixed_volume, newton_polytope
from .jobs import JobError, bound_to_json, execute, load_job, render, render_bound
from .textpoly import parse_polynomial

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_UNSTABLE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="emit JSON")
    fmt.add_argument("--csv", action="store_true", help="emit CSV")
    common.add_argument("--cache", metavar="DIR", help="count cache directory")
    common.add_argument("--mmax", metavar="K", type=int, help="largest extension degree m")
    common.add_argument("--budget", metavar="N", type=int, help="max evaluations per count")
    common.add_argument("--jobs", metavar="J", type=int, help="worker threads for counting")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="bettibounds",
                                 description="Explicit Betti-number bounds and finite-field checks.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", parents=[common], help="evaluate a closed-form bound")
    p.add_argument("kind", help="bound kind (see --list)", nargs="?")
    p.add_argument("params", nargs="*", metavar="NAME=VALUE")
    p.add_argument("--list", action="store_true", help="list bound kinds and parameters")

    p = sub.add_parser("polytope", parents=[common], help="volumes, mixed volumes, Newton polytopes")
    p.add_argument("op", choices=["info", "mixed", "newton", "khovanskii",
                                  "as_original", "as_improved", "toric_total", "power_as"])
    p.add_argument("polytopes", nargs="*", metavar="POINTS",
                   help="JSON array of integer vectors, e.g. '[[0,0],[1,0],[0,1]]'")
    p.add_argument("--poly", help="polynomial text (for newton)")
    p.add_argument("--nvars", type=int, help="number of variables of --poly")
    p.add_argument("--infinity", action="store_true", help="adjoin the origin (newton)")
    p.add_argument("--mult", type=int, nargs="*", help="multiplicities for mixed")
    p.add_argument("-d", type=int, help="degree d for power_as")

    p = sub.add_parser("hodge", parents=[common], help="Hodge polygons")
    p.add_argument("polytope", nargs="?", metavar="POINTS")
    p.add_argument("--an", nargs=3, type=int, metavar=("N", "J", "D"),
                   help="polygon for a degree-D polynomial on A^N, cohomology shift J")

    for name, helptext in (("zeta", "zeta function of a variety by point counting"),
                           ("expsum", "L-function of an exponential sum")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("--field", required=True, help="p or p^k")
        p.add_argument("--domain", default=None, help="affine(n), toric(n) or projective(n)")
        p.add_argument("--system", action="append", default=[], metavar="POLY")
        if name == "expsum":
            p.add_argument("--f", required=True, metavar="POLY")
            p.add_argument("--np", action="store_true", help="also compare Newton polygons")
        p.add_argument("--ci", action="store_true", help="assert complete intersection")
        p.add_argument("-d", type=int, help="declared degree bound")

    for name in ("verify", "run"):
        p = sub.add_parser(name, parents=[common], help="run job files")
        p.add_argument("files", nargs="+", metavar="JOB")

    p = sub.add_parser("cache", help="cache maintenance")
    csub = p.add_subparsers(dest="cache_cmd", required=True)
    g = csub.add_parser("gc", parents=[common], help="evict least recently used records")
    g.add_argument("--max-bytes", type=int, required=True)
    g.add_argument("dir", nargs="?")
    return ap


def _fmt(args) -> str:
    return "json" if args.json else "csv" if args.csv else "table"


def _parse_field(text: str):
    try:
        if "^" in text:
            p, k = text.split("^", 1)
            return make_field(int(p), int(k))
        return make_field(int(text), 1)
    except ValueError as exc:
        raise UsageError(f"bad field {text!r}: {exc}") from None


def _points(text: str):
    try:
        pts = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"bad polytope literal: {exc}") from None
    if not isinstance(pts, list) or not pts or not all(isinstance(v, list) for v in pts):
        raise UsageError("a polytope is a JSON array of integer vectors")
    return convex_hull(pts, len(pts[0]))


def _engine(args, cache_dir=None, budget=None, workers=None) -> V.Engine:
    return V.Engine(args.cache or cache_dir,
                    args.budget or budget or DEFAULT_BUDGET,
                    args.jobs if args.jobs is not None else workers)


def _emit(text: str, path: str | None = None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_bound(args) -> int:
    if args.list or not args.kind:
        for kind, (_, formula) in sorted(B.BOUND_KINDS.items()):
            print(f"{kind:20s} {','.join(B.bound_parameters(kind)):14s} {formula}")
        return EXIT_OK
    params = {}
    for item in args.params:
        if "=" not in item:
            raise UsageError(f"expected NAME=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        try:
            params[k] = [int(x) for x in v.split(",")] if k == "ds" else int(v)
        except ValueError:
            raise UsageError(f"parameter {k} must be an integer") from None
    value = B.scalar_bound(args.kind, **params)
    _emit(render_bound(value, _fmt(args)))
    return EXIT_OK


def _polytope_json(poly) -> dict:
    return {"vertices": [list(v) for v in poly.vertices], "dim": poly.dim,
            "facets": [[list(a), b] for a, b in poly.integer_facets],
            "volume": str(poly.volume()), "normalized_volume": str(poly.normalized_volume())}


def cmd_polytope(args) -> int:
    fmt = _fmt(args)
    if args.op == "newton":
        if not args.poly or args.nvars is None:
            raise UsageError("newton needs --poly and --nvars")
        polys = [newton_polytope(parse_polynomial(args.poly, args.nvars), args.infinity)]
    else:
        polys = [_points(t) for t in args.polytopes]
    if args.op in ("info", "newton"):
        if len(polys) != 1:
            raise UsageError(f"{args.op} takes one polytope")
        out = _polytope_json(polys[0])
    elif args.op == "mixed":
        mult = args.mult or [1] * len(polys)
        if len(mult) != len(polys) or not polys:
            raise UsageError("give one multiplicity per polytope")
        out = {"mixed_volume": str(mixed_volume(list(zip(polys, mult))))}
    elif args.op == "khovanskii":
        out = {"khovanskii_chi": str(B.khovanskii_chi(polys))}
    else:
        delta = polys[0] if polys and args.op != "power_as" else None
        s = polys[1] if len(polys) > 1 else (polys[0] if args.op == "power_as" and polys else None)
        out = bound_to_json(B.polytope_bound(args.op, delta, s, args.d))
    if fmt == "json":
        _emit(json.dumps(out, sort_keys=True, indent=2) + "\n")
    elif fmt == "csv":
        _emit("key,value\n" + "".join(f"{k},{json.dumps(v) if isinstance(v, list) else v}\n"
                                      for k, v in sorted(out.items())))
    else:
        _emit("".join(f"{k}: {v}\n" for k, v in sorted(out.items())))
    return EXIT_OK


def cmd_hodge(args) -> int:
    if args.an:
        n, j, d = args.an
        poly = an_hodge_polygon(n, j, d)
        out = {"vertices": poly.to_json()}
    elif args.polytope:
        delta = _points(args.polytope)
        poly = hodge_polygon(delta)
        D, w = hodge_numbers(delta)
        out = {"vertices": poly.to_json(), "denominator": D, "hodge_numbers": w}
    else:
        raise UsageError("hodge needs POINTS or --an N J D")
    # horizontal lengths of lattice polygons are integers
    out["slopes"] = [[str(s), int(m)] for s, m in poly.slopes()]
    if _fmt(args) == "json":
        _emit(json.dumps(out, sort_keys=True, indent=2) + "\n")
    elif _fmt(args) == "csv":
        _emit("x,y\n" + "".join(f"{x},{y}\n" for x, y in out["vertices"]))
    else:
        _emit("vertices: " + " ".join(f"({x},{y})" for x, y in out["vertices"]) + "\n"
              + "slopes: " + " ".join(f"{s}x{m}" for s, m in out["slopes"]) + "\n")
    return EXIT_OK


def cmd_count(args) -> int:
    spec = _parse_field(args.field)
    f_text = getattr(args, "f", None)
    nvars_guess = max([int(t[1:]) for s in args.system + ([f_text] if f_text else [])
                       for t in re.findall(r"x\d+", s)] or [1])
    try:
        domain = Domain.parse(args.domain) if args.domain else Domain("affine", nvars_guess)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    nv = domain.nvars
    system = tuple(parse_polynomial(s, nv) for s in args.system)
    f = parse_polynomial(f_text, nv) if f_text else None
    sc = V.Scenario(f"{args.command} {domain}", spec, domain, system, f, d=args.d,
                    m_max=args.mmax or 8, complete_intersection=args.ci)
    engine = _engine(args)
    try:
        reports = [V.verify_total_degree(sc, engine)]
        if f is not None and args.np:
            reports.append(V.verify_np_dominance(sc, engine))
    finally:
        engine.close()
    _emit(render(reports, _fmt(args)))
    return V.exit_status(reports)


def run_job(path, args=None) -> int:
    """Run one job file and write its report; returns the exit status."""
    job = load_job(path)
    fmt = job.output_format
    if args is not None and (args.json or args.csv):
        fmt = _fmt(args)
    if args is not None and args.mmax and job.scenario is not None:
        job.scenario.m_max = args.mmax
    if job.bound is not None:
        reports, value = execute(job, V.Engine(None))
        _emit(render_bound(value, fmt), job.output_path)
        return EXIT_OK
    if args is not None:
        engine = _engine(args, job.cache_dir, job.budget, job.workers)
    else:
        engine = V.Engine(job.cache_dir, job.budget, job.workers)
    try:
        reports, _ = execute(job, engine)
    finally:
        engine.close()
    _emit(render(reports, fmt), job.output_path)
    return V.exit_status(reports)


def cmd_verify(args) -> int:
    statuses = [run_job(path, args) for path in args.files]
    if EXIT_FAIL in statuses:
        return EXIT_FAIL
    if EXIT_UNSTABLE in statuses:
        return EXIT_UNSTABLE
    return EXIT_OK


def cmd_cache(args) -> int:
    directory = args.dir or args.cache
    if not directory:
        raise UsageError("cache gc needs a directory (positional or --cache)")
    summary = cache_gc(directory, args.max_bytes)
    out = summary.to_json()
    if _fmt(args) == "json":
        _emit(json.dumps(out, sort_keys=True, indent=2) + "\n")
    else:
        _emit(f"scanned {summary.scanned} records, {summary.bytes_before} -> {summary.bytes_after} bytes\n"
              + "".join(f"evicted {k}\n" for k in summary.evicted)
              + "".join(f"kept (pinned) {k}\n" for k in summary.kept_pinned))
    return EXIT_OK


COMMANDS = {"bound": cmd_bound, "polytope": cmd_polytope, "hodge": cmd_hodge,
            "zeta": cmd_count, "expsum": cmd_count, "verify": cmd_verify, "run": cmd_verify,
            "cache": cmd_cache}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (UsageError, JobError, ValueError, FileNotFoundError) as exc:
        print(f"bettibounds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
