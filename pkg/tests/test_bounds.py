import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bettibounds import bounds as B
from bettibounds.exactmath import QuadraticSurd
from bettibounds.polytope import box, convex_hull, scale, segment, simplex

C = math.comb


def compositions(total, parts):
    """All ``(a_1..a_parts)`` with nonnegative entries summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for a in range(total + 1):
        for rest in compositions(total - a, parts - 1):
            yield (a,) + rest


def n_by_definition(n, ds):
    r = len(ds)
    total = 0
    for e in range(n - r + 1):
        inner = sum(math.prod(d ** a for d, a in zip(ds, comp))
                    for comp in compositions(n - r - e, r))
        total += (-1) ** e * C(n, e) * inner
    return math.prod(ds) * total


def c_by_binomials(n, r, d):
    """Coefficient of h^(n-r) in (-1)^(n-r) d^r (1+h)^n / (1+dh)^(r+1), term by term."""
    k = n - r
    total = 0
    for i in range(k + 1):
        # [h^(k-i)] (1 + d h)^-(r+1) = C(-(r+1), k-i) d^(k-i)
        neg = (-1) ** (k - i) * C(r + k - i, k - i)
        total += C(n, i) * neg * d ** (k - i)
    return (-1) ** k * d ** r * total


# -- coefficients ---------------------------------------------------------------------

@given(st.integers(1, 6), st.data())
def test_n_coefficient_matches_definition(n, data):
    r = data.draw(st.integers(1, n))
    ds = data.draw(st.lists(st.integers(1, 5), min_size=r, max_size=r))
    assert B.n_coefficient(n, ds) == n_by_definition(n, ds)


def test_m_coefficient_examples():
    assert B.m_coefficient(3, [2]) == 1
    assert B.m_coefficient(2, [2, 3]) == 6
    assert B.m_coefficient(3, [2, 2]) == 5
    for n in range(2, 7):
        for d in range(1, 6):
            assert B.m_coefficient(n, [d]) == (d - 1) ** n
    for r in range(1, 5):
        assert B.m_coefficient(r, [3] * r) == B.m_coefficient_closed(r, r, 3) == 3 ** r


def test_all_coefficient_routes_agree():
    for n in range(0, 7):
        for r in range(0, n + 1):
            for d in range(1, 6):
                c = B.c_coefficient(n, r, d)
                assert c == B.c_coefficient_closed(n, r, d) == c_by_binomials(n, r, d)
                if r >= 1:
                    m = B.m_coefficient(n, [d] * r)
                    assert m == B.m_coefficient_closed(n, r, d)
                    assert C(n - 1, r - 1) * (d - 1) ** n <= m <= C(n - 1, r - 1) * d ** n
                assert C(n, r) * (d - 1) ** n <= c <= C(n, r) * d ** n
    assert B.c_coefficient(2, 1, 2) == 4
    assert B.c_coefficient(4, 0, 3) == 16


def test_u_coefficient_small_cases():
    assert [B.u_coefficient(m, 4, 3) for m in range(5)] == [C(4, m) for m in range(5)]
    assert B.u_coefficient(0, 3, 2) == 1 and B.u_coefficient(1, 3, 2) == 0
    # brute-force expansion of (1 + x + x^2)^3
    poly = [1]
    for _ in range(3):
        poly = [sum(poly[i - t] for t in range(3) if 0 <= i - t < len(poly))
                for i in range(len(poly) + 2)]
    assert [B.u_coefficient(m, 3, 4) for m in range(7)] == poly


def test_errors():
    with pytest.raises(ValueError):
        B.n_coefficient(2, [1, 1, 1])
    with pytest.raises(ValueError):
        B.scalar_bound("order", n=3, r=2)
    with pytest.raises(ValueError):
        B.scalar_bound("order", n=3, r=2, d=4, q=5)
    with pytest.raises(ValueError):
        B.scalar_bound("nonsense", n=1)
    with pytest.raises(ValueError):
        B.scalar_bound("ci_total", n=2, r=3, d=1)


# -- scalar bounds -----------------------------------------------------------------------

def test_scalar_examples():
    assert B.scalar_bound("order", n=3, r=2, d=4).value == 26244
    assert B.scalar_bound("katz", n=3, r=2, d=4).value == 351384
    assert B.scalar_bound("ci_total", n=3, r=2, d=4).value == 250
    assert B.scalar_bound("expsum_ci_lower", n=3, r=2, d=4).value == 81
    assert B.scalar_bound("expsum_ci_total", n=3, r=2, d=4).value == 375
    assert B.scalar_bound("ci_total", n=2, r=1, d=3).value == 16
    assert B.scalar_bound("order", n=2, r=1, d=3).value == 147


def test_every_kind_evaluates():
    sample = {"n": 3, "r": 2, "d": 3, "q": 5, "j": 0, "s": 1, "e": 2, "epsilon": 0}
    for kind in B.BOUND_KINDS:
        params = {k: sample[k] for k in B.bound_parameters(kind) if k in sample}
        if kind == "ci_degree":
            params = {"n": 3, "j": 0, "ds": [2, 3]}
        value = B.scalar_bound(kind, **params).value
        assert value > 0, kind


def test_sqrt_bounds_are_exact_surds():
    v = B.scalar_bound("lw_affine_coarse", n=2, r=1, d=3, q=2).value
    assert isinstance(v, QuadraticSurd)
    assert v == QuadraticSurd(0, 16, 2)
    assert B.scalar_bound("tame_curve", n=1, d=2, q=9).value == 6


def test_ci_degree_total_sums_degrees():
    ds = [2, 3]
    assert B.ci_degree_total(4, ds) == sum(B.m_coefficient(4 - j, ds) for j in range(3))
    assert B.scalar_bound("ci_degree", n=4, j=1, ds=ds).value == B.m_coefficient(3, ds)


@given(st.integers(1, 6), st.integers(1, 6), st.integers(2, 100))
def test_order_below_katz(n, r, d):
    assert B.scalar_bound("order", n=n, r=r, d=d).value < B.scalar_bound("katz", n=n, r=r, d=d).value


# -- polytope bounds --------------------------------------------------------------------

@pytest.mark.parametrize("poly", [simplex(2), box([1, 2]), convex_hull([[0, 0], [3, 1], [1, 2]], 2),
                                  simplex(3, 2)])
def test_improved_bound_with_itself(poly):
    n = poly.dim_ambient
    v = B.polytope_bound("as_improved", poly, poly).value
    assert v == 2 ** n * poly.normalized_volume()


def test_power_bound_equals_dilated_improved_bound():
    S = simplex(2)
    assert B.polytope_bound("power_as", s=S, d=4).value == 22
    assert B.polytope_bound("as_improved", scale(S, 4), S).value == 22
    with pytest.raises(ValueError):
        B.polytope_bound("power_as", s=S, d=2)


def test_original_bound_encloses():
    for d in (1, 2, 3):
        v = B.polytope_bound("as_original", convex_hull([[0], [d]], 1)).value
        assert v.upper >= 10 * d and v.upper - 10 * d < Fraction(1, 10 ** 15)
    v = B.polytope_bound("as_original", simplex(2)).value
    assert v.upper > 4 * (1 + 2 ** 1.5) ** 2 - 1e-9


def test_two_power_enclosure_is_upper():
    for n in range(1, 7):
        up = B.two_power_upper(n)
        assert up ** n >= 2 ** (n + 1)
        assert (up - Fraction(1, 2 ** 64)) ** n < 2 ** (n + 1)


# -- series in polytopes ----------------------------------------------------------------

def test_khovanskii_values():
    for d in range(1, 5):
        assert B.khovanskii_chi([convex_hull([[0], [d]], 1)]) == d
        assert B.khovanskii_chi([box([d, d])]) == -2 * d * d
    for n in range(1, 4):
        assert B.khovanskii_chi([segment(n, i) for i in range(n)]) == 1


def test_khovanskii_plane_curve_genus():
    # a generic cubic in the 2-torus: genus 1 minus 9 points at the toric boundary
    assert B.khovanskii_chi([simplex(2, 3)]) == -9


def test_ultimate_and_chern():
    # degree-2 part of T1 / ((1 + T0)(1 + T1)) is -T0 T1 - T1^2; both evaluate to 9 at 3S
    S = simplex(2, 3)
    assert B.ultimate_as(S, [S], None, 0) == 18
    # on a line, only T1 survives: d points
    for d in (1, 2, 5):
        seg = convex_hull([[0], [d]], 1)
        assert B.ultimate_as(seg, [seg], None, 0) == d
    assert B.chern_integral_pn(2, 3, [3]) == B.c_coefficient(2, 1, 3)
    assert B.chern_integral_pn(4, 3, [3, 3]) == B.c_coefficient(4, 2, 3)


@pytest.mark.parametrize("n,r,d", [(1, 1, 2), (2, 1, 2), (2, 2, 3), (3, 1, 2)])
def test_cayley_volume_claims(n, r, d):
    vol, claim = B.cayley_volume_claim(n, r, d)
    assert vol <= claim
    vol_f, claim_f = B.cayley_volume_claim(n, r, d, with_f=True)
    assert vol_f <= claim_f
    assert B.cayley_volume_claim(1, 1, 2) == (2, 2)
