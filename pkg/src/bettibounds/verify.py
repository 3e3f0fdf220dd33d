"""Scenario harness: compare computed counts and L-functions against the bounds.

Every check ends in one verdict: PASS, FAIL, SKIP(<reason>) or UNSTABLE.
A FAIL means the implementation disagrees with a proved inequality, so it
points at a bug here rather than at the mathematics.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Sequence

from . import bounds as B
from .exactmath.cyclotomic import Cyclotomic
from .exactmath.reconstruct import UNSTABLE
from .exactmath.surd import QuadraticSurd
from .ffcount.cache import CountCache, record_key
from .ffcount.counting import DEFAULT_BUDGET, BudgetExceeded, Domain, char_sum, count_points
from .ffcount.fields import FieldSpec, make_field
from .ffcount.lfunctions import NonIntegralCoefficients, l_function, l_newton_polygon, zeta_function
from .laurent import LaurentPolynomial
from .polygon import ConvexPolygon, an_hodge_polygon, coincides_on, dominates, lower_hull

PASS, FAIL, UNSTABLE_VERDICT = "PASS", "FAIL", "UNSTABLE"

SKIP_MIXED = "mixed L-function"
SKIP_BUDGET = "budget"
SKIP_UNSTABLE = "unstable reconstruction"
SKIP_PRECONDITION = "precondition (d,q)≠1"
SKIP_UNVERIFIED = "unverified hypothesis"
SKIP_REASONS = (SKIP_MIXED, SKIP_BUDGET, SKIP_UNSTABLE, SKIP_PRECONDITION, SKIP_UNVERIFIED)

FAIL_NOTE = ("a FAIL contradicts a proved inequality and therefore indicates an "
             "implementation bug, not a counterexample")


def skip(reason: str) -> str:
    if reason not in SKIP_REASONS:
        raise ValueError(f"unknown skip reason {reason!r}")
    return f"SKIP({reason})"


def _text(x: Any) -> Any:
    if x is None or isinstance(x, (bool, str)):
        return x
    if isinstance(x, int):
        return str(x)
    if isinstance(x, (Fraction, QuadraticSurd, Cyclotomic)):
        return str(x)
    if isinstance(x, ConvexPolygon):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k): _text(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_text(v) for v in x]
    return str(x)


@dataclass
class Check:
    name: str
    verdict: str
    lhs: Any = None
    rhs: Any = None
    artifacts: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "verdict": self.verdict, "lhs": _text(self.lhs),
                "rhs": _text(self.rhs), "artifacts": _text(self.artifacts)}


@dataclass
class Report:
    scenario: str
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check

    def verdicts(self) -> list[str]:
        return [c.verdict for c in self.checks]

    @property
    def any_fail(self) -> bool:
        return FAIL in self.verdicts()

    @property
    def any_unstable(self) -> bool:
        return UNSTABLE_VERDICT in self.verdicts()

    def to_json(self) -> dict:
        notes = list(self.notes)
        if self.any_fail:
            notes.append(FAIL_NOTE)
        return {"scenario": self.scenario, "checks": [c.to_json() for c in self.checks],
                "notes": notes}

    def dumps(self) -> str:
        """Canonical bytes: sorted keys, no timestamps or worker counts."""
        return json.dumps(self.to_json(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def table(self) -> str:
        rows = [("check", "verdict", "lhs", "rhs")]
        for c in self.checks:
            rows.append((c.name, c.verdict, str(_text(c.lhs)), str(_text(c.rhs))))
        widths = [max(len(r[i]) for r in rows) for i in range(4)]
        lines = [f"scenario: {self.scenario}"]
        for r in rows:
            lines.append("  ".join(s.ljust(w) for s, w in zip(r, widths)).rstrip())
        if self.any_fail:
            lines.append("note: " + FAIL_NOTE)
        return "\n".join(lines)


@dataclass
class Scenario:
    """One variety (and optional function on it) plus the claimed parameters.

    ``geometrically_irreducible``, ``complete_intersection`` (``dim V = n - r``)
    and ``epsilon`` are user assertions; they are echoed into reports
    and never checked.
    """

    name: str
    field: FieldSpec
    domain: Domain
    system: tuple[LaurentPolynomial, ...] = ()
    f: LaurentPolynomial | None = None
    r: int | None = None
    s: int | None = None
    d: int | None = None
    epsilon: int | None = None
    j: int | None = None
    m_max: int = 8
    window: int = 4
    geometrically_irreducible: bool = False
    complete_intersection: bool = False
    lang_weil_kind: str = "lw_affine_coarse"

    def __post_init__(self):
        self.system = tuple(self.system)
        degs = [g.degree for g in self.system]
        if self.f is not None:
            degs.append(self.f.degree)
        need_d = max([x for x in degs if x >= 0], default=1)
        if self.d is None:
            self.d = max(need_d, 1)
        elif self.d < need_d:
            raise ValueError(f"declared d = {self.d} is below the actual degree {need_d}")
        if self.r is None:
            self.r = len(self.system)
        elif self.r < len(self.system):
            raise ValueError("declared r is smaller than the number of equations")
        if self.m_max < 2:
            raise ValueError("m_max must be at least 2")

    @property
    def n(self) -> int:
        return self.domain.n

    @property
    def q(self) -> int:
        return self.field.q

    def hypotheses(self) -> dict:
        return {"geometrically_irreducible": self.geometrically_irreducible,
                "complete_intersection": self.complete_intersection,
                "epsilon": self.epsilon}


class Engine:
    """Counting backend shared by the checks: budget, workers and cache."""

    def __init__(self, cache_dir=None, budget: int = DEFAULT_BUDGET, workers: int | None = None):
        self.cache = CountCache(cache_dir)
        self.budget = budget
        self.workers = workers

    def count(self, spec: FieldSpec, domain: Domain, system, m: int) -> int:
        key = record_key(spec, domain, system, None, None, m)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        value = count_points(system, domain, spec, m, self.budget, self.workers).count
        self.cache.put(key, "count", m, value)
        return value

    def char_sum(self, spec: FieldSpec, domain: Domain, system, f, m: int, a: int = 1) -> Cyclotomic:
        key = record_key(spec, domain, system, f, a, m)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        value = char_sum(f, system, domain, spec, m, a, self.budget, self.workers).value
        self.cache.put(key, "charsum", m, value)
        return value

    def close(self) -> None:
        self.cache.release()


def _engine(engine: Engine | None) -> Engine:
    return engine if engine is not None else Engine()


def _fill_skips(report: Report, names: Iterable[str], verdict: str, artifacts=None) -> Report:
    for name in names:
        report.add(Check(name, verdict, artifacts=dict(artifacts or {})))
    return report


def _compare(report: Report, name: str, lhs, rhs, artifacts=None) -> Check:
    verdict = PASS if lhs <= rhs else FAIL
    return report.add(Check(name, verdict, lhs, rhs, dict(artifacts or {})))


def _rational_artifacts(F) -> dict:
    return {"numerator": [str(c) for c in F.numerator.coeffs],
            "denominator": [str(c) for c in F.denominator.coeffs],
            "total_degree": F.total_degree}


def _bombieri_total(n: int, d: int) -> int:
    return sum((d - 1) ** i for i in range(n + 1))


# -- total degree --------------------------------------------------------------

def _zeta_bound_names(sc: Scenario) -> list[str]:
    return ["order", "katz", "kronecker_total", "ci_total"]


def _l_bound_names(sc: Scenario) -> list[str]:
    names = ["expsum_subvariety", "expsum_kronecker", "expsum_ci_total"]
    if sc.r == 0:
        names.append("an_total")
    return names


def verify_total_degree(sc: Scenario, engine: Engine | None = None) -> Report:
    """Total degree of Z_V or L_f against every applicable closed-form bound."""
    eng = _engine(engine)
    if sc.domain.kind != "affine":
        raise ValueError("total-degree checks need an affine domain")
    report = Report(sc.name)
    n, r, d = sc.n, sc.r, sc.d
    names = _zeta_bound_names(sc) if sc.f is None else _l_bound_names(sc)
    checks = [f"total_degree<={k}" for k in names]
    try:
        if sc.f is None:
            data = [eng.count(sc.field, sc.domain, sc.system, m) for m in range(1, sc.m_max + 1)]
            F, total = zeta_function(data, sc.window)
        else:
            data = [eng.char_sum(sc.field, sc.domain, sc.system, sc.f, m) for m in range(1, sc.m_max + 1)]
            F, total = l_function(data, sc.window)
    except BudgetExceeded as exc:
        return _fill_skips(report, checks, skip(SKIP_BUDGET), {"required": exc.required})
    base_art = {"sequence": data, "m_max": sc.m_max, "hypotheses": sc.hypotheses()}
    if F is UNSTABLE:
        return _fill_skips(report, checks, UNSTABLE_VERDICT, base_art)
    art = dict(base_art, **_rational_artifacts(F))
    r_eff = max(r, 1)  # A^n is the zero set of the zero polynomial
    for kind in names:
        name = f"total_degree<={kind}"
        if kind == "order":
            rhs = B.scalar_bound("order", n=n, r=r_eff, d=d).value
        elif kind == "katz":
            rhs = B.scalar_bound("katz", n=n, r=r_eff, d=d).value
        elif kind == "kronecker_total":
            rhs = B.scalar_bound("kronecker_total", n=n, d=d).value
        elif kind == "ci_total":
            if r == 0 or not sc.complete_intersection or r > n:
                report.add(Check(name, skip(SKIP_UNVERIFIED), total, None, art))
                continue
            rhs = B.scalar_bound("ci_total", n=n, r=r, d=d).value
        elif kind == "expsum_subvariety":
            rhs = B.scalar_bound("expsum_subvariety", n=n, r=r, d=d).value
        elif kind == "expsum_kronecker":
            rhs = B.scalar_bound("expsum_kronecker", n=n, d=d).value
        elif kind == "expsum_ci_total":
            if r > n or (r > 0 and not sc.complete_intersection):
                report.add(Check(name, skip(SKIP_UNVERIFIED), total, None, art))
                continue
            rhs = B.scalar_bound("expsum_ci_total", n=n, r=r, d=d).value
        elif kind == "an_total":
            df = sc.f.degree
            if df < 2 or df % sc.field.p == 0:
                report.add(Check(name, skip(SKIP_PRECONDITION), total, None, art))
                continue
            rhs = _bombieri_total(n, df)
        else:  # pragma: no cover
            raise AssertionError(kind)
        _compare(report, name, total, rhs, art)
    return report


# -- Cayley identity ------------------------------------------------------------

def cayley_function(fs: Sequence[LaurentPolynomial], n: int) -> LaurentPolynomial:
    """``g = sum_i x_{n+i} f_i`` in ``n + r`` variables."""
    r = len(fs)
    g = LaurentPolynomial(n + r)
    for i, fi in enumerate(fs):
        if fi.n != n:
            raise ValueError("every f_i must have n variables")
        g = g + fi.extend(n + r) * LaurentPolynomial.variable(n + r, n + i)
    return g


def verify_cayley(fs: Sequence[LaurentPolynomial], n: int, spec: FieldSpec, m_max: int,
                  engine: Engine | None = None, name: str = "cayley") -> Report:
    """``S_m(g on A^{n+r}) = q^{rm} N_m(V)`` for ``m = 1..m_max``."""
    eng = _engine(engine)
    fs = tuple(fs)
    r = len(fs)
    report = Report(name)
    g = cayley_function(fs, n)
    big = Domain("affine", n + r)
    small = Domain("affine", n)
    for m in range(1, m_max + 1):
        cname = f"cayley m={m}"
        try:
            s = eng.char_sum(spec, big, (), g, m)
            count = eng.count(spec, small, fs, m)
        except BudgetExceeded as exc:
            report.add(Check(cname, skip(SKIP_BUDGET), artifacts={"required": exc.required}))
            continue
        rhs = spec.q ** (r * m) * count
        verdict = PASS if s == rhs else FAIL
        report.add(Check(cname, verdict, s, rhs, {"N_m": count}))
    return report


# -- Lang-Weil --------------------------------------------------------------------

def verify_lang_weil(sc: Scenario, engine: Engine | None = None) -> Report:
    eng = _engine(engine)
    report = Report(sc.name)
    kind = sc.lang_weil_kind
    names = [f"lang_weil m={m}" for m in range(1, sc.m_max + 1)]
    hyp = sc.hypotheses()
    if not sc.geometrically_irreducible:
        return _fill_skips(report, names, skip(SKIP_UNVERIFIED), {"hypotheses": hyp})
    projective = sc.domain.kind == "projective"
    if projective and kind not in ("lw_projective",):
        kind = "lw_projective"
    if sc.domain.kind == "toric":
        raise ValueError("Lang-Weil checks need an affine or projective domain")
    if kind in ("lw_projective", "lw_affine_refined") and sc.epsilon is None:
        return _fill_skips(report, names, skip(SKIP_UNVERIFIED), {"hypotheses": hyp})
    n, r, d = sc.n, sc.r, sc.d
    for m, name in zip(range(1, sc.m_max + 1), names):
        qm = sc.q ** m
        try:
            count = eng.count(sc.field, sc.domain, sc.system, m)
        except BudgetExceeded as exc:
            report.add(Check(name, skip(SKIP_BUDGET), artifacts={"required": exc.required}))
            continue
        if projective:
            main = sum(qm ** j for j in range(n - r + 1))
        else:
            main = qm ** (n - r)
        params = {"n": n, "r": r, "d": d, "q": qm}
        if kind in ("lw_projective", "lw_affine_refined"):
            params["epsilon"] = sc.epsilon
        rhs = B.scalar_bound(kind, **params).value
        lhs = abs(count - main)
        _compare(report, name, QuadraticSurd(lhs), rhs,
                 {"N_m": count, "main_term": main, "bound": kind, "hypotheses": hyp})
    return report


# -- Newton polygon vs Hodge polygon ------------------------------------------------

def _pure_side(F):
    """``("numerator"|"denominator"|None, degree)``; ``None`` marks a mixed L-function."""
    dn, dd = F.numerator.degree, F.denominator.degree
    if dn > 0 and dd > 0:
        return None, 0
    if dd > 0:
        return "denominator", dd
    return "numerator", max(dn, 0)


def infer_cohomological_shift(n: int, d: int, side: str, degree: int) -> int | None:
    """Smallest ``j`` with ``H^{n+j}`` on ``side`` and room for ``degree`` roots.

    ``H^i`` contributes to the numerator of ``L`` exactly when ``i`` is odd.
    """
    for j in range(n + 1):
        odd = (n + j) % 2 == 1
        if odd != (side == "numerator"):
            continue
        if (d - 1) ** (n - j) >= degree:
            return j
    return None


def _member_polygon(sc: Scenario, f: LaurentPolynomial, eng: Engine):
    """``(status, payload)`` where status is ``ok`` or a verdict string."""
    try:
        sums = [eng.char_sum(sc.field, sc.domain, sc.system, f, m) for m in range(1, sc.m_max + 1)]
    except BudgetExceeded as exc:
        return skip(SKIP_BUDGET), {"required": exc.required}
    L, _ = l_function(sums, sc.window)
    if L is UNSTABLE:
        return UNSTABLE_VERDICT, {"sums": sums}
    side, degree = _pure_side(L)
    art = dict(_rational_artifacts(L), sums=sums)
    if side is None:
        return skip(SKIP_MIXED), art
    try:
        num_np, den_np = l_newton_polygon(L, sc.q)
    except NonIntegralCoefficients as exc:
        return FAIL, dict(art, error=str(exc))
    np_poly = num_np if side == "numerator" else den_np
    return "ok", dict(art, side=side, degree=degree, newton_polygon=np_poly,
                      slopes=[(s, m) for s, m in np_poly.slopes()])


def verify_np_dominance(sc: Scenario, engine: Engine | None = None) -> Report:
    """Newton polygon of ``L_f`` on A^n against the explicit Hodge-type polygon."""
    eng = _engine(engine)
    report = Report(sc.name)
    name = "np_dominance"
    if sc.f is None:
        raise ValueError("Newton-polygon checks need a function f")
    if sc.domain.kind != "affine" or sc.system:
        raise ValueError("Newton-polygon checks apply to f on the whole affine space")
    d = sc.f.degree
    if d < 2:
        raise ValueError("Newton-polygon checks need deg f >= 2")
    if math.gcd(d, sc.q) != 1:
        report.add(Check(name, skip(SKIP_PRECONDITION), artifacts={"d": d, "q": sc.q}))
        return report
    status, art = _member_polygon(sc, sc.f, eng)
    if status != "ok":
        report.add(Check(name, status, artifacts=art))
        return report
    n = sc.n
    degree = art["degree"]
    if degree == 0:
        report.add(Check(name, PASS, art["newton_polygon"], None, dict(art, vacuous=True)))
        return report
    j = sc.j if sc.j is not None else infer_cohomological_shift(n, d, art["side"], degree)
    if j is None:
        report.add(Check(name, FAIL, art["newton_polygon"], None,
                         dict(art, error="degree exceeds every admissible cohomology bound")))
        return report
    hodge = an_hodge_polygon(n, j, d)
    np_poly = art["newton_polygon"]
    ok = dominates(np_poly, hodge)
    art.update(j=j, hodge_polygon=hodge, hodge_slopes=hodge.slopes(),
               equality=coincides_on(np_poly, hodge) and np_poly.length == hodge.length)
    report.add(Check(name, PASS if ok else FAIL, np_poly, hodge, art))
    return report


def verify_family_np(base: Scenario, members: Sequence[tuple[Any, LaurentPolynomial]],
                     special: Sequence[Any], engine: Engine | None = None) -> Report:
    """Best-effort probe: special members' polygons on or above the generic ones.

    ``Gamma`` is the lower convex hull of all generic members' polygons (the
    largest convex function below each of them).  Members whose degree drops
    below the family degree are skipped.
    """
    eng = _engine(engine)
    report = Report(base.name)
    special = list(special)
    char = base.field.p
    # degrees are read after reduction mod p
    fam_degree = max(f.mod(char).degree for _, f in members)
    polys: dict = {}
    for label, f in members:
        cname = f"member t={label}"
        if f.mod(char).degree < fam_degree:
            report.add(Check(cname, skip(SKIP_PRECONDITION),
                             artifacts={"degree": f.mod(char).degree}))
            continue
        status, art = _member_polygon(base, f, eng)
        if status != "ok":
            report.add(Check(cname, status, artifacts=art))
            continue
        polys[label] = art["newton_polygon"]
        report.add(Check(cname, PASS, art["newton_polygon"], None, art))
    generic = [polys[t] for t, _ in members if t not in special and t in polys]
    for t in special:
        cname = f"special t={t} above Gamma"
        if t not in polys:
            continue
        if not generic:
            report.add(Check(cname, PASS, polys[t], None, {"vacuous": True}))
            continue
        gamma = lower_hull(v for poly in generic for v in poly.vertices)
        ok = dominates(polys[t], gamma)
        report.add(Check(cname, PASS if ok else FAIL, polys[t], gamma))
    if not special:
        report.add(Check("family", PASS, artifacts={"vacuous": True}))
    return report


def exit_status(reports: Sequence[Report]) -> int:
    """0 when everything passes or skips, 2 on any FAIL, 3 on UNSTABLE."""
    if any(r.any_fail for r in reports):
        return 2
    if any(r.any_unstable for r in reports):
        return 3
    return 0


def field_for(p: int, k: int = 1) -> FieldSpec:
    return make_field(p, k)
