import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bettibounds import verify as V
from bettibounds.exactmath import Cyclotomic
from bettibounds.ffcount import Domain, make_field
from bettibounds.laurent import LaurentPolynomial

X2 = [LaurentPolynomial.variable(2, i) for i in range(2)]
x1 = LaurentPolynomial.variable(1, 0)
CURVE = X2[1] ** 2 + X2[1] - X2[0] ** 3


def scenario(name, p, domain, **kw):
    return V.Scenario(name, make_field(p), Domain.parse(domain), **kw)


def verdicts(report):
    return {c.name: c.verdict for c in report.checks}


# -- total degree ---------------------------------------------------------------------

def test_zeta_total_degree_of_curve():
    sc = scenario("curve", 2, "affine(2)", system=(CURVE,), complete_intersection=True)
    rep = V.verify_total_degree(sc)
    v = verdicts(rep)
    assert set(v.values()) == {"PASS"}
    ci = next(c for c in rep.checks if c.name == "total_degree<=ci_total")
    assert (ci.lhs, ci.rhs) == (3, 16)
    order = next(c for c in rep.checks if c.name == "total_degree<=order")
    assert order.rhs == 147


def test_ci_bound_skipped_without_assertion():
    sc = scenario("curve", 2, "affine(2)", system=(CURVE,))
    assert verdicts(V.verify_total_degree(sc))["total_degree<=ci_total"] == "SKIP(unverified hypothesis)"


def test_expsum_total_degree():
    sc = scenario("gauss", 3, "affine(1)", f=x1 * x1)
    v = verdicts(V.verify_total_degree(sc))
    assert v["total_degree<=an_total"] == "PASS"
    assert all(x == "PASS" for x in v.values())
    sc = scenario("wild", 2, "affine(1)", f=x1 * x1)
    assert verdicts(V.verify_total_degree(sc))["total_degree<=an_total"] == "SKIP(precondition (d,q)≠1)"


def test_unstable_and_budget_verdicts():
    sc = scenario("short", 2, "affine(2)", system=(CURVE,), m_max=3)
    rep = V.verify_total_degree(sc)
    assert rep.any_unstable and V.exit_status([rep]) == 3
    sc = scenario("big", 2, "affine(2)", system=(CURVE,))
    rep = V.verify_total_degree(sc, V.Engine(budget=10))
    assert set(verdicts(rep).values()) == {"SKIP(budget)"}
    assert V.exit_status([rep]) == 0


def test_declared_degree_validation():
    with pytest.raises(ValueError):
        scenario("bad", 2, "affine(2)", system=(CURVE,), d=2)
    with pytest.raises(ValueError):
        scenario("bad", 2, "affine(2)", system=(CURVE, CURVE), r=1)


# -- Cayley identity ---------------------------------------------------------------------

def test_cayley_examples():
    rep = V.verify_cayley([x1], 1, make_field(2), 3)
    assert set(verdicts(rep).values()) == {"PASS"}
    f1 = X2[0] ** 2 + X2[1]
    f2 = X2[0] * X2[1] - 1
    rep = V.verify_cayley([f1, f2], 2, make_field(3), 2)
    assert set(verdicts(rep).values()) == {"PASS"}
    rep = V.verify_cayley([], 2, make_field(3), 2)
    assert [c.lhs for c in rep.checks] == [9, 81]


def polys(n, max_deg):
    exps = st.tuples(*[st.integers(0, max_deg)] * n).filter(lambda e: sum(e) <= max_deg)
    return st.dictionaries(exps, st.integers(-2, 2), max_size=3).map(lambda t: LaurentPolynomial(n, t))


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 2), st.sampled_from([2, 3]), st.data())
def test_cayley_identity_on_random_systems(n, p, data):
    fs = data.draw(st.lists(polys(n, 2), min_size=1, max_size=2))
    rep = V.verify_cayley(fs, n, make_field(p), 2)
    assert set(verdicts(rep).values()) == {"PASS"}


# -- Lang-Weil ------------------------------------------------------------------------------

def test_lang_weil_examples():
    sc = scenario("curve", 2, "affine(2)", system=(CURVE,), geometrically_irreducible=True, m_max=4)
    rep = V.verify_lang_weil(sc)
    assert set(verdicts(rep).values()) == {"PASS"}
    assert str(rep.checks[0].rhs) == "16*sqrt(2)"
    line = scenario("line", 3, "affine(2)", system=(X2[1],), geometrically_irreducible=True, m_max=2)
    assert [c.lhs for c in V.verify_lang_weil(line).checks] == [0, 0]
    X3 = [LaurentPolynomial.variable(3, i) for i in range(3)]
    conic = X3[0] ** 2 + X3[1] ** 2 - X3[2] ** 2
    sc = scenario("conic", 3, "projective(2)", system=(conic,), geometrically_irreducible=True,
                  epsilon=-1, m_max=2)
    rep = V.verify_lang_weil(sc)
    assert set(verdicts(rep).values()) == {"PASS"}
    assert rep.checks[0].artifacts["N_m"] == 4


def test_lang_weil_needs_assertions():
    sc = scenario("curve", 2, "affine(2)", system=(CURVE,), m_max=2)
    assert set(verdicts(V.verify_lang_weil(sc)).values()) == {"SKIP(unverified hypothesis)"}
    X3 = [LaurentPolynomial.variable(3, i) for i in range(3)]
    sc = scenario("conic", 3, "projective(2)", system=(X3[0] ** 2 - X3[1] * X3[2],),
                  geometrically_irreducible=True, m_max=2)
    assert set(verdicts(V.verify_lang_weil(sc)).values()) == {"SKIP(unverified hypothesis)"}


# -- Newton polygons ------------------------------------------------------------------------

def test_gauss_sum_polygon_equality():
    rep = V.verify_np_dominance(scenario("gauss", 3, "affine(1)", f=x1 * x1))
    c = rep.checks[0]
    assert c.verdict == "PASS"
    assert c.artifacts["equality"] is True
    assert c.artifacts["slopes"] == [(Fraction(1, 2), 1)]


def test_cubic_over_f2_dominates_strictly():
    c = V.verify_np_dominance(scenario("cubic", 2, "affine(1)", f=x1 ** 3)).checks[0]
    assert c.verdict == "PASS"
    assert c.artifacts["degree"] == 2
    assert c.artifacts["slopes"] == [(Fraction(1, 2), 2)]
    assert c.artifacts["hodge_slopes"] == [(Fraction(1, 3), 1), (Fraction(2, 3), 1)]
    assert c.artifacts["equality"] is False


def test_precondition_skip_and_usage_errors():
    c = V.verify_np_dominance(scenario("wild", 2, "affine(1)", f=x1 * x1)).checks[0]
    assert c.verdict == "SKIP(precondition (d,q)≠1)"
    with pytest.raises(ValueError):
        V.verify_np_dominance(scenario("linear", 3, "affine(1)", f=x1))
    with pytest.raises(ValueError):
        V.verify_np_dominance(scenario("nof", 3, "affine(1)"))


class PresetEngine(V.Engine):
    """Hands back fixed character sums: those of L = (1 - 3t) / (1 - 9t)."""

    def char_sum(self, spec, domain, system, f, m, a=1):
        return Cyclotomic(3, [9 ** m - 3 ** m])


def test_mixed_l_function_is_skipped():
    sc = scenario("mixed", 3, "affine(2)", f=X2[0] ** 2 + X2[1] ** 2)
    c = V.verify_np_dominance(sc, PresetEngine()).checks[0]
    assert c.verdict == "SKIP(mixed L-function)"


def test_cohomological_shift_inference():
    # numerator side carries odd cohomological degrees
    assert V.infer_cohomological_shift(1, 3, "numerator", 2) == 0
    assert V.infer_cohomological_shift(2, 3, "denominator", 4) == 0
    assert V.infer_cohomological_shift(2, 3, "numerator", 2) == 1
    assert V.infer_cohomological_shift(2, 3, "numerator", 3) is None


def test_family_probe():
    fam = [(t, x1 * x1 + x1 * t) for t in range(3)]
    rep = V.verify_family_np(scenario("fam", 3, "affine(1)"), fam, [0])
    assert set(verdicts(rep).values()) == {"PASS"}
    dropped = [(t, x1 * x1 * (1 + t) + x1) for t in range(3)]
    v = verdicts(V.verify_family_np(scenario("drop", 3, "affine(1)"), dropped, [0]))
    assert v["member t=2"] == "SKIP(precondition (d,q)≠1)"
    single = V.verify_family_np(scenario("one", 3, "affine(1)"), fam[:1], [0])
    assert verdicts(single)["special t=0 above Gamma"] == "PASS"
    assert single.checks[-1].artifacts == {"vacuous": True}


# -- reports ----------------------------------------------------------------------------------

def test_report_json_shape_and_determinism(tmp_path):
    sc = scenario("curve", 2, "affine(2)", system=(CURVE,), complete_intersection=True)
    a = V.verify_total_degree(sc, V.Engine(workers=1)).dumps()
    b = V.verify_total_degree(sc, V.Engine(tmp_path, workers=16)).dumps()
    c = V.verify_total_degree(sc, V.Engine(tmp_path, workers=4)).dumps()  # warm cache
    assert a == b == c
    doc = json.loads(a)
    assert set(doc) == {"scenario", "checks", "notes"}
    assert set(doc["checks"][0]) == {"name", "verdict", "lhs", "rhs", "artifacts"}


def test_fail_reports_carry_the_note():
    rep = V.Report("x", [V.Check("c", V.FAIL, 2, 1)])
    assert "implementation bug" in rep.dumps()
    assert V.exit_status([rep]) == 2
    with pytest.raises(ValueError):
        V.skip("because")
