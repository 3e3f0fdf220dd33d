"""Job files (TOML or JSON): one bound request or one verification scenario."""
from __future__ import annotations

import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from .. import bounds as B
from ..ffcount.counting import DEFAULT_BUDGET, Domain
from ..ffcount.fields import make_field
from ..polytope import convex_hull
from .. import verify as V
from .textpoly import parse_polynomial

TOP_KEYS = {"version", "name", "kind", "bound", "field", "domain", "system", "f", "params",
            "m_max", "window", "checks", "assertions", "lang_weil_bound", "family",
            "cache_dir", "budget", "jobs", "output"}
PARAM_KEYS = {"n", "r", "s", "d", "e", "epsilon", "j"}
ASSERTION_KEYS = {"geometrically_irreducible", "complete_intersection"}
FAMILY_KEYS = {"f0", "f1", "samples", "specials"}
OUTPUT_KEYS = {"format", "path"}
FORMATS = ("json", "csv", "table")
CHECKS = ("total_degree", "zeta", "expsum", "cayley", "lang_weil", "np_dominance", "family_np")
POLYTOPE_KINDS = ("as_original", "as_improved", "toric_total", "power_as")


class JobError(ValueError):
    """Malformed or inconsistent job file (exit status 1)."""


def _reject_unknown(section: str, got: dict, allowed: set) -> None:
    extra = sorted(set(got) - allowed)
    if extra:
        raise JobError(f"{section}: unknown keys {extra}")


def _table(data: dict, key: str) -> dict:
    v = data.get(key, {})
    if not isinstance(v, dict):
        raise JobError(f"{key} must be a table")
    return v


@dataclass
class BoundRequest:
    kind: str
    params: dict

    def evaluate(self) -> B.BoundValue:
        if self.kind in POLYTOPE_KINDS:
            p = dict(self.params)
            delta = _polytope(p.pop("delta", None))
            s = _polytope(p.pop("s", None))
            d = p.pop("d", None)
            if p:
                raise JobError(f"{self.kind}: unexpected parameters {sorted(p)}")
            return B.polytope_bound(self.kind, delta, s, d)
        return B.scalar_bound(self.kind, **self.params)


def _polytope(points):
    if points is None:
        return None
    if not points or not all(isinstance(v, list) for v in points):
        raise JobError("polytope literals are non-empty arrays of integer vectors")
    return convex_hull(points, len(points[0]))


@dataclass
class Job:
    name: str
    bound: BoundRequest | None = None
    scenario: V.Scenario | None = None
    checks: tuple[str, ...] = ()
    family: dict | None = None
    cache_dir: str | None = None
    budget: int = DEFAULT_BUDGET
    workers: int | None = None
    output_format: str = "table"
    output_path: str | None = None


def load_text(text: str, suffix: str) -> dict:
    """Decode a job document; JSON for ``.json``, TOML otherwise."""
    try:
        if suffix == ".json":
            data = json.loads(text)
        else:
            data = tomllib.loads(text)
    except (json.JSONDecodeError, tomllib.TOMLDecodeError) as exc:
        raise JobError(f"cannot parse job file: {exc}") from None
    if not isinstance(data, dict):
        raise JobError("a job file must be a table / object")
    return data


def parse_job(data: dict, default_name: str = "job") -> Job:
    if "kind" in data:
        # flat bound job: {kind = "order", n = 3, r = 2, d = 4}
        flat = {k: v for k, v in data.items() if k not in ("version", "name", "output")}
        kind = flat.pop("kind")
        job = Job(data.get("name", default_name), bound=BoundRequest(kind, flat))
        _output(job, data)
        _check_bound(job.bound)
        return job
    _reject_unknown("job", data, TOP_KEYS)
    if data.get("version", 1) != 1:
        raise JobError(f"unsupported job version {data.get('version')!r}")
    name = str(data.get("name", default_name))
    job = Job(name)
    _output(job, data)
    job.cache_dir = data.get("cache_dir")
    job.budget = int(data.get("budget", DEFAULT_BUDGET))
    job.workers = data.get("jobs")
    if "bound" in data:
        b = dict(_table(data, "bound"))
        if "kind" not in b:
            raise JobError("bound: missing kind")
        job.bound = BoundRequest(b.pop("kind"), b)
        _check_bound(job.bound)
        return job
    job.scenario = _scenario(data, name)
    checks = data.get("checks")
    if checks is None:
        checks = ["total_degree"]
    if not isinstance(checks, list) or not checks:
        raise JobError("checks must be a non-empty list")
    for c in checks:
        if c not in CHECKS:
            raise JobError(f"unknown check {c!r}; choose from {', '.join(CHECKS)}")
    job.checks = tuple(checks)
    if "family_np" in job.checks:
        fam = _table(data, "family")
        _reject_unknown("family", fam, FAMILY_KEYS)
        if "f1" not in fam or "samples" not in fam:
            raise JobError("family needs f1 and samples")
        nv = job.scenario.domain.nvars
        f0 = _poly(fam.get("f0", "0"), nv) if "f0" in fam else job.scenario.f
        if f0 is None:
            raise JobError("family needs f0 (or f)")
        job.family = {"f0": f0, "f1": _poly(fam["f1"], nv),
                      "samples": [int(t) for t in fam["samples"]],
                      "specials": [int(t) for t in fam.get("specials", [])]}
    return job


def _output(job: Job, data: dict) -> None:
    out = _table(data, "output")
    _reject_unknown("output", out, OUTPUT_KEYS)
    fmt = out.get("format", "table")
    if fmt not in FORMATS:
        raise JobError(f"output.format must be one of {FORMATS}")
    job.output_format = fmt
    job.output_path = out.get("path")


def _check_bound(req: BoundRequest) -> None:
    if req.kind not in B.BOUND_KINDS and req.kind not in POLYTOPE_KINDS:
        raise JobError(f"unknown bound kind {req.kind!r}")


def _poly(text: Any, nvars: int):
    if not isinstance(text, str):
        raise JobError("polynomials are given as strings")
    try:
        return parse_polynomial(text, nvars)
    except ValueError as exc:
        raise JobError(f"polynomial {text!r}: {exc}") from None


def _scenario(data: dict, name: str) -> V.Scenario:
    fld = _table(data, "field")
    _reject_unknown("field", fld, {"p", "k"})
    if "p" not in fld:
        raise JobError("field.p is required")
    if "domain" not in data:
        raise JobError("domain is required")
    try:
        spec = make_field(int(fld["p"]), int(fld.get("k", 1)))
        domain = Domain.parse(str(data["domain"]))
    except ValueError as exc:
        raise JobError(str(exc)) from None
    nv = domain.nvars
    system = [_poly(g, nv) for g in data.get("system", [])]
    f = _poly(data["f"], nv) if "f" in data else None
    params = _table(data, "params")
    _reject_unknown("params", params, PARAM_KEYS)
    if "n" in params and params["n"] != domain.n:
        raise JobError(f"params.n = {params['n']} disagrees with domain {domain}")
    assertions = _table(data, "assertions")
    _reject_unknown("assertions", assertions, ASSERTION_KEYS)
    try:
        return V.Scenario(
            name, spec, domain, tuple(system), f,
            r=params.get("r"), s=params.get("s"), d=params.get("d"),
            epsilon=params.get("epsilon"), j=params.get("j"),
            m_max=int(data.get("m_max", 8)), window=int(data.get("window", 4)),
            geometrically_irreducible=bool(assertions.get("geometrically_irreducible", False)),
            complete_intersection=bool(assertions.get("complete_intersection", False)),
            lang_weil_kind=data.get("lang_weil_bound", "lw_affine_coarse"))
    except ValueError as exc:
        raise JobError(str(exc)) from None


def load_job(path: str | Path) -> Job:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise JobError(f"cannot read {path}: {exc}") from None
    return parse_job(load_text(text, path.suffix.lower()), path.stem)


# -- execution -------------------------------------------------------------

def bound_to_json(value: B.BoundValue) -> dict:
    return {"kind": value.kind, "value": str(value.value), "formula": value.formula,
            "params": {k: str(v) for k, v in value.params.items()}}


def execute(job: Job, engine: V.Engine) -> tuple[list[V.Report], B.BoundValue | None]:
    if job.bound is not None:
        try:
            return [], job.bound.evaluate()
        except ValueError as exc:
            raise JobError(str(exc)) from None
    sc = job.scenario
    reports = []
    for check in job.checks:
        try:
            reports.append(_run_check(check, sc, job, engine))
        except JobError:
            raise
        except ValueError as exc:
            raise JobError(f"{check}: {exc}") from None
    return reports, None


def _run_check(check: str, sc: V.Scenario, job: Job, engine: V.Engine) -> V.Report:
    if check in ("total_degree", "zeta", "expsum"):
        if check == "zeta" and sc.f is not None:
            raise JobError("zeta check takes no f; use expsum")
        if check == "expsum" and sc.f is None:
            raise JobError("expsum check needs f")
        return V.verify_total_degree(sc, engine)
    if check == "cayley":
        if sc.domain.kind != "affine":
            raise JobError("cayley needs an affine domain")
        return V.verify_cayley(sc.system, sc.n, sc.field, sc.m_max, engine, name=sc.name)
    if check == "lang_weil":
        return V.verify_lang_weil(sc, engine)
    if check == "np_dominance":
        return V.verify_np_dominance(sc, engine)
    if check == "family_np":
        fam = job.family
        members = [(t, fam["f0"] + fam["f1"] * t) for t in fam["samples"]]
        return V.verify_family_np(sc, members, fam["specials"], engine)
    raise AssertionError(check)  # pragma: no cover


def render(reports: list[V.Report], fmt: str) -> str:
    if fmt == "json":
        if len(reports) == 1:
            return reports[0].dumps()
        docs = [r.to_json() for r in reports]
        return json.dumps(docs, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["scenario", "check", "verdict", "lhs", "rhs"])
        for r in reports:
            for c in r.checks:
                d = c.to_json()
                w.writerow([r.scenario, d["name"], d["verdict"],
                            json.dumps(d["lhs"]) if isinstance(d["lhs"], list) else d["lhs"],
                            json.dumps(d["rhs"]) if isinstance(d["rhs"], list) else d["rhs"]])
        return buf.getvalue()
    return "\n".join(r.table() for r in reports) + "\n"


def render_bound(value: B.BoundValue, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(bound_to_json(value), sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return f"kind,value\n{value.kind},{value.value}\n"
    return f"{value.value}\n"
