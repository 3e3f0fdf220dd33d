import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.spatial import ConvexHull

from bettibounds.exactmath import INF
from bettibounds.laurent import LaurentPolynomial
from bettibounds.polytope import (LatticePolytope, box, convex_hull, gauge_weight, lattice_points,
                                  minkowski_sum, mixed_volume, newton_polytope, normalized_volume,
                                  scale, segment, simplex, volume, weight_denominator)

from oracles import permutation_det


def point_sets(n, lo=-3, hi=3, min_size=None, max_size=8):
    pt = st.tuples(*[st.integers(lo, hi)] * n)
    return st.lists(pt, min_size=min_size or n + 1, max_size=max_size, unique=True)


def scipy_volume(points):
    arr = np.array(points, dtype=float)
    try:
        return ConvexHull(arr).volume
    except Exception:
        return 0.0


# -- hulls -----------------------------------------------------------------------

def test_square_with_interior_point():
    P = convex_hull([[0, 0], [2, 0], [0, 2], [2, 2], [1, 1]], 2)
    assert P.vertices == ((0, 0), (0, 2), (2, 0), (2, 2))
    assert P.dim == 2 and P.volume() == 4


def test_lower_dimensional_hull_has_equations():
    P = convex_hull([[0, 0, 0], [1, 1, 0], [2, 2, 0]], 3)
    assert P.dim == 1
    assert P.vertices == ((0, 0, 0), (2, 2, 0))
    assert P.volume() == 0
    assert P.contains((1, 1, 0)) and not P.contains((1, 0, 0))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 3).flatmap(lambda n: st.tuples(st.just(n), point_sets(n))))
def test_vertices_agree_with_scipy(data):
    n, pts = data
    P = convex_hull(pts, n)
    if P.dim < n:
        return
    hull = ConvexHull(np.array(pts, dtype=float))
    assert set(P.vertices) == {tuple(pts[i]) for i in hull.vertices}
    # every input point satisfies every facet inequality
    for x in pts:
        assert P.contains(x)


# -- volumes ---------------------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_simplex_volumes(n):
    for d in (1, 2, 3):
        assert simplex(n, d).volume() == Fraction(d ** n, math.factorial(n))
        assert normalized_volume(simplex(n, d)) == d ** n


def test_box_volume():
    assert box([2, 3, 4]).volume() == 24


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), point_sets(n, max_size=n + 1, min_size=n + 1))))
def test_simplex_volume_is_determinant(data):
    n, pts = data
    rows = [[a - b for a, b in zip(p, pts[0])] for p in pts[1:]]
    assert volume(convex_hull(pts, n)) == Fraction(abs(permutation_det(rows)), math.factorial(n))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 3).flatmap(lambda n: st.tuples(st.just(n), point_sets(n))))
def test_two_triangulation_routes_and_scipy_agree(data):
    n, pts = data
    P = convex_hull(pts, n)
    assert P.volume() == P.volume_alternative()
    assert abs(float(P.volume()) - scipy_volume(pts)) < 1e-7


@settings(max_examples=25, deadline=None)
@given(point_sets(2, max_size=5), st.integers(1, 3))
def test_volume_is_homogeneous(pts, k):
    P = convex_hull(pts, 2)
    assert scale(P, k).volume() == k ** 2 * P.volume()


def test_triangulation_covers_pyramid():
    P = convex_hull([[0, 0, 0], [1, 0, 0], [0, 1, 0], [1, 1, 0], [0, 0, 3]], 3)
    assert P.volume() == 1
    for apex in ("min", "max"):
        tri = P.triangulation(apex)
        assert all(len(s) == 4 for s in tri)


# -- mixed volumes -----------------------------------------------------------------

def test_unit_segments():
    assert mixed_volume([(segment(2, 0), 1), (segment(2, 1), 1)]) == Fraction(1, 2)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), point_sets(n, -2, 2, max_size=6))))
def test_diagonal_mixed_volume_is_volume(data):
    n, pts = data
    P = convex_hull(pts, n)
    assert mixed_volume([(P, n)]) == P.volume()


@settings(max_examples=20, deadline=None)
@given(point_sets(2, -2, 2, max_size=4), point_sets(2, -2, 2, max_size=4),
       point_sets(2, -2, 2, max_size=4))
def test_mixed_volume_symmetric_and_multilinear(a, b, c):
    A, B, C = (convex_hull(x, 2) for x in (a, b, c))
    assert mixed_volume([(A, 1), (B, 1)]) == mixed_volume([(B, 1), (A, 1)])
    assert mixed_volume([(minkowski_sum(A, B), 1), (C, 1)]) == \
        mixed_volume([(A, 1), (C, 1)]) + mixed_volume([(B, 1), (C, 1)])
    # polarization: Vol(A+B) = Vol A + 2 V(A,B) + Vol B
    assert minkowski_sum(A, B).volume() == A.volume() + 2 * mixed_volume([(A, 1), (B, 1)]) + B.volume()


def test_bernstein_count_for_generic_quadrics():
    # two generic quadrics in the plane meet in 4 = 2! V(2S, 2S) points
    S2 = simplex(2, 2)
    assert 2 * mixed_volume([(S2, 1), (S2, 1)]) == 4


def test_mixed_volume_rejects_bad_multiplicities():
    with pytest.raises(ValueError):
        mixed_volume([(simplex(2), 1)])


# -- Newton polytopes, gauge, lattice points ---------------------------------------

def test_newton_polytope_with_and_without_origin():
    x = LaurentPolynomial.variable(2, 0)
    y = LaurentPolynomial.variable(2, 1)
    f = x * x * y + y ** 3
    assert newton_polytope(f).dim == 1
    assert newton_polytope(f, at_infinity=True).vertices == ((0, 0), (0, 3), (2, 1))


def test_gauge_weights():
    P = box([2, 2])
    assert gauge_weight(P, (1, 1)) == Fraction(1, 2)
    assert gauge_weight(P, (2, 1)) == 1
    assert gauge_weight(P, (-1, 0)) == INF
    S = simplex(2, 3)
    assert gauge_weight(S, (1, 1)) == Fraction(2, 3)
    assert weight_denominator(S) == 3


@settings(max_examples=30, deadline=None)
@given(point_sets(2, 0, 3, max_size=5), st.integers(0, 3))
def test_lattice_points_match_brute_force(pts, k):
    P = convex_hull(pts, 2)
    got = lattice_points(P, k)
    if k == 0:
        assert got == [(0, 0)]
        return
    ref = [pt for pt in itertools.product(range(-1, 3 * k + 2), repeat=2)
           if P.contains(tuple(Fraction(c, k) for c in pt))]
    assert got == ref


def test_ehrhart_counts_of_simplex():
    S = simplex(3)
    for k in range(5):
        assert len(lattice_points(S, k)) == math.comb(k + 3, 3)


def test_full_dimension_and_origin_requirements():
    with pytest.raises(ValueError):
        gauge_weight(segment(2, 0), (0, 0))
    with pytest.raises(ValueError):
        gauge_weight(convex_hull([[1, 1], [2, 1], [1, 2]], 2), (1, 1))
