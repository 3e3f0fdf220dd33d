"""Acceptance criteria 1-12, one test each (criterion 9 is split in two).

Each test asserts its own wall-clock limit; the terminal summary lists one
pass/fail line per criterion.
"""
import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from bettibounds import bounds as B
from bettibounds import verify as V
from bettibounds.exactmath import Cyclotomic
from bettibounds.ffcount import Domain, char_sum, l_function, l_newton_polygon, make_field
from bettibounds.laurent import LaurentPolynomial
from bettibounds.polygon import an_hodge_polygon, coincides_on, dominates, hodge_polygon
from bettibounds.polytope import (box, convex_hull, minkowski_sum, mixed_volume, segment,
                                  simplex)

from oracles import lower_hull_slopes, naive_char_sum

C = math.comb
X2 = [LaurentPolynomial.variable(2, i) for i in range(2)]
x1 = LaurentPolynomial.variable(1, 0)
CURVE = X2[1] ** 2 + X2[1] - X2[0] ** 3


@contextmanager
def within(label, seconds):
    start = time.perf_counter()
    yield
    took = time.perf_counter() - start
    print(f"{label}: PASS in {took:.2f}s")
    assert took < seconds, f"{label} took {took:.1f}s, limit {seconds}s"


def scenario(name, p, domain, **kw):
    return V.Scenario(name, make_field(p), Domain.parse(domain), **kw)


def random_polytope(rng, n, lo=-2, hi=2):
    while True:
        pts = [[rng.randint(lo, hi) for _ in range(n)] for _ in range(rng.randint(n + 1, n + 5))]
        P = convex_hull(pts, n)
        if P.dim == n:
            return P


# 1 -------------------------------------------------------------------------------------

def test_criterion_01_formula_identities():
    with within("criterion 1", 1.0):
        for n in range(1, 7):
            for r in range(1, n + 1):
                for d in range(1, 6):
                    m = B.m_coefficient(n, [d] * r)
                    assert m == B.m_coefficient_closed(n, r, d)
                    c = B.c_coefficient(n, r, d)
                    assert c == B.c_coefficient_closed(n, r, d)
                    assert C(n - 1, r - 1) * (d - 1) ** n <= m <= C(n - 1, r - 1) * d ** n
                    assert C(n, r) * (d - 1) ** n <= c <= C(n, r) * d ** n
                    if n == r:
                        assert m == d ** r


# 2 -------------------------------------------------------------------------------------

def test_criterion_02_order_improves_katz():
    with within("criterion 2", 1.0):
        for n in range(1, 7):
            for r in range(1, 7):
                for d in range(2, 101):
                    order = B.scalar_bound("order", n=n, r=r, d=d).value
                    katz = B.scalar_bound("katz", n=n, r=r, d=d).value
                    assert order < katz
        # one order of d better: katz / order grows linearly in d at sampled points
        for n, r in ((2, 1), (3, 2), (6, 6)):
            ratios = [Fraction(B.scalar_bound("katz", n=n, r=r, d=d).value,
                               B.scalar_bound("order", n=n, r=r, d=d).value) for d in (10, 100)]
            assert 5 < ratios[1] / ratios[0] < 20


# 3 -------------------------------------------------------------------------------------

def test_criterion_03_mixed_volume_oracle():
    rng = random.Random(3)
    with within("criterion 3", 10.0):
        for i in range(50):
            n = 1 + i % 3
            P = random_polytope(rng, n)
            assert mixed_volume([(P, n)]) == P.volume()
        assert mixed_volume([(segment(2, 0), 1), (segment(2, 1), 1)]) == Fraction(1, 2)
        for _ in range(25):
            A, Bp, Cp = (random_polytope(rng, 2) for _ in range(3))
            assert mixed_volume([(A, 1), (Bp, 1)]) == mixed_volume([(Bp, 1), (A, 1)])
            assert mixed_volume([(minkowski_sum(A, Bp), 1), (Cp, 1)]) == \
                mixed_volume([(A, 1), (Cp, 1)]) + mixed_volume([(Bp, 1), (Cp, 1)])
        for P in (simplex(2), box([1, 2]), simplex(3, 2), random_polytope(rng, 3)):
            n = P.dim_ambient
            assert B.polytope_bound("as_improved", P, P).value == 2 ** n * math.factorial(n) * P.volume()


# 4 -------------------------------------------------------------------------------------

def test_criterion_04_cayley_volume_claims():
    with within("criterion 4", 30.0):
        for n in range(1, 5):
            for r in range(1, 4):
                for d in range(1, 5):
                    vol, claim = B.cayley_volume_claim(n, r, d)
                    assert vol <= claim
                    vol, claim = B.cayley_volume_claim(n, r, d, with_f=True)
                    assert vol <= claim
        assert B.cayley_volume_claim(1, 1, 2) == (2, 2)


# 5 -------------------------------------------------------------------------------------

def test_criterion_05_hodge_endpoints():
    with within("criterion 5", 5.0):
        for d in range(1, 5):
            for P in (convex_hull([[0], [d]], 1), simplex(2, d), box([d, d])):
                assert hodge_polygon(P).length == P.normalized_volume()
            assert hodge_polygon(convex_hull([[0], [d]], 1)).slopes() == \
                [(Fraction(m, d), 1) for m in range(d)]


# 6 -------------------------------------------------------------------------------------

def test_criterion_06_khovanskii_values():
    with within("criterion 6", 1.0):
        for d in range(1, 6):
            assert B.khovanskii_chi([convex_hull([[0], [d]], 1)]) == d
            assert B.khovanskii_chi([box([d, d])]) == -2 * d * d
        for n in range(1, 5):
            assert B.khovanskii_chi([segment(n, i) for i in range(n)]) == 1


# 7 -------------------------------------------------------------------------------------

def criterion_7_report(engine):
    sc = scenario("supersingular curve", 2, "affine(2)", system=(CURVE,), m_max=8, window=4,
                  complete_intersection=True)
    return V.verify_total_degree(sc, engine)


def test_criterion_07_zeta_desk_experiment():
    with within("criterion 7", 30.0):
        rep = criterion_7_report(V.Engine(budget=4 ** 16))
        checks = {c.name: c for c in rep.checks}
        assert set(rep.verdicts()) == {"PASS"}
        art = checks["total_degree<=ci_total"].artifacts
        assert art["sequence"] == [2, 8, 8, 8, 32, 80, 128, 224]
        assert art["total_degree"] == 3
        assert (checks["total_degree<=ci_total"].lhs, checks["total_degree<=ci_total"].rhs) == (3, 16)
        assert checks["total_degree<=order"].rhs == 147 == 3 * 1 * 7 ** 2


# 8 -------------------------------------------------------------------------------------

def criterion_8_reports(engine):
    sc = scenario("gauss", 3, "affine(1)", f=x1 * x1, m_max=6)
    return [V.verify_total_degree(sc, engine), V.verify_np_dominance(sc, engine)]


def test_criterion_08_gauss_sum():
    with within("criterion 8", 5.0):
        S1 = char_sum(x1 * x1, [], Domain("affine", 1), make_field(3)).value
        assert S1 * S1.conjugate() == 3
        total, np_rep = criterion_8_reports(V.Engine())
        an = next(c for c in total.checks if c.name == "total_degree<=an_total")
        assert (an.verdict, an.lhs, an.rhs) == ("PASS", 1, 2)
        c = np_rep.checks[0]
        assert c.verdict == "PASS"
        assert c.artifacts["slopes"] == [(Fraction(1, 2), 1)]
        assert c.artifacts["equality"] is True
        assert coincides_on(c.lhs, an_hodge_polygon(1, 0, 2))


# 9 -------------------------------------------------------------------------------------

def criterion_9_report(engine):
    return V.verify_np_dominance(scenario("cubic", 2, "affine(1)", f=x1 ** 3, m_max=8), engine)


def cubic_l_slopes_by_oracle():
    """Slopes of L for x^3 over F_2 from complex sums: reciprocal roots have |a|^2 = 2."""
    sums = [naive_char_sum({(3,): 1}, [], 1, 2, m) for m in range(1, 5)]
    # S_m = -(a^m + b^m); the sums are real integers here
    s = [round(z.real) for z in sums]
    e1 = -s[0]
    e2 = (e1 * e1 + s[1]) // 2
    # L = 1 - e1 t + e2 t^2 with e1 = 0, e2 = 2: both 2-adic slopes are 1/2
    return lower_hull_slopes([(0, 0), (2, Fraction(int(e2).bit_length() - 1))]), (e1, e2)


def test_criterion_09_cubic_dominates():
    with within("criterion 9 (degree, dominance)", 10.0):
        c = criterion_9_report(V.Engine()).checks[0]
        assert c.artifacts["degree"] == 2
        assert c.artifacts["side"] == "numerator"
        assert c.verdict == "PASS"
        assert dominates(c.lhs, an_hodge_polygon(1, 0, 3))
        slopes, coeffs = cubic_l_slopes_by_oracle()
        assert coeffs == (0, 2)
        assert slopes == [Fraction(1, 2)] * 2


@pytest.mark.xfail(strict=True, reason="L = 1 + 2t^2 for x^3 over F_2, so the slopes are "
                                       "{1/2, 1/2}, not {1/3, 2/3}; dominance holds without equality")
def test_criterion_09_slopes_equal_hodge():
    c = criterion_9_report(V.Engine()).checks[0]
    assert c.artifacts["slopes"] == [(Fraction(1, 3), 1), (Fraction(2, 3), 1)]
    assert c.artifacts["equality"] is True


# 10 ------------------------------------------------------------------------------------

def random_systems(count=20, seed=10):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n, r, p = rng.randint(1, 2), rng.randint(1, 2), rng.choice([2, 3])
        fs = []
        for _ in range(r):
            terms = {}
            for _ in range(rng.randint(1, 3)):
                e = tuple(rng.randint(0, 2) for _ in range(n))
                if sum(e) <= 2:
                    terms[e] = rng.randint(-2, 2)
            fs.append(LaurentPolynomial(n, terms))
        if any(f.degree > 2 for f in fs):
            continue
        out.append((fs, n, p))
    return out


def criterion_10_reports(engine):
    return [V.verify_cayley(fs, n, make_field(p), 2, engine, name=f"cayley #{i}")
            for i, (fs, n, p) in enumerate(random_systems())]


def test_criterion_10_cayley_identity():
    with within("criterion 10", 60.0):
        reports = criterion_10_reports(V.Engine())
        assert len(reports) == 20
        for rep in reports:
            assert set(rep.verdicts()) == {"PASS"}
            assert [c.name for c in rep.checks] == ["cayley m=1", "cayley m=2"]


# 11 ------------------------------------------------------------------------------------

def test_criterion_11_lang_weil():
    plane = [
        ("parabola", 2, X2[1] - X2[0] ** 2),
        ("hyperbola", 3, X2[0] * X2[1] - 1),
        ("elliptic", 3, X2[1] ** 2 - X2[0] ** 3 - X2[0]),
        ("circle", 3, X2[0] ** 2 + X2[1] ** 2 - 1),
        ("artin-schreier", 2, X2[1] ** 2 + X2[1] - X2[0] ** 5),
    ]
    with within("criterion 11", 30.0):
        curves = [("supersingular", 2, CURVE)] + plane
        for name, p, g in curves:
            sc = scenario(name, p, "affine(2)", system=(g,), geometrically_irreducible=True, m_max=2)
            rep = V.verify_lang_weil(sc)
            assert set(rep.verdicts()) == {"PASS"}, name
            first = rep.checks[0]
            bound = B.scalar_bound("lw_affine_coarse", n=2, r=1, d=sc.d, q=p).value
            assert first.rhs == bound
            assert first.lhs == abs(first.artifacts["N_m"] - p)


# 12 ------------------------------------------------------------------------------------

def all_reports(workers, cache_dir=None):
    engine = V.Engine(cache_dir, budget=4 ** 16, workers=workers)
    reports = [criterion_7_report(engine), *criterion_8_reports(engine),
               criterion_9_report(engine), *criterion_10_reports(engine)]
    engine.close()
    return "".join(r.dumps() for r in reports)


def test_criterion_12_determinism():
    with within("criterion 12", 120.0):
        outputs = {w: all_reports(w) for w in (1, 4, 16)}
        assert outputs[1] == outputs[4] == outputs[16]
        assert len(outputs[1]) > 1000
