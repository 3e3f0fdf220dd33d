"""Lower-convex polygons: Newton polygons, Hodge polygons, dominance."""
from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from typing import Iterable, Sequence

from .exactmath.cyclotomic import INF
from .polytope import LatticePolytope, gauge_weight, lattice_points, weight_denominator

Vertex = tuple[Fraction, Fraction]
SlopeMultiset = list[tuple[Fraction, Fraction]]


def _cross(o: Vertex, a: Vertex, b: Vertex) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


class ConvexPolygon:
    """Piecewise-linear lower-convex function given by its breakpoints.

    Collinear breakpoints are removed, so slopes strictly increase and two
    polygons are equal exactly when their vertex lists are.
    """

    __slots__ = ("vertices",)

    def __init__(self, vertices: Iterable[tuple]):
        pts = [(Fraction(x), Fraction(y)) for x, y in vertices]
        if not pts:
            raise ValueError("a polygon needs at least one vertex")
        for a, b in zip(pts, pts[1:]):
            if b[0] <= a[0]:
                raise ValueError("x coordinates must strictly increase")
        out: list[Vertex] = []
        for p in pts:
            while len(out) >= 2 and _cross(out[-2], out[-1], p) <= 0:
                if _cross(out[-2], out[-1], p) < 0:
                    raise ValueError("vertices are not lower convex")
                out.pop()
            out.append(p)
        self.vertices: tuple[Vertex, ...] = tuple(out)

    @classmethod
    def from_slopes(cls, slopes: Iterable[tuple], start: tuple = (0, 0)) -> "ConvexPolygon":
        """Polygon with the given ``(slope, multiplicity)`` segments in slope order."""
        x, y = Fraction(start[0]), Fraction(start[1])
        pts = [(x, y)]
        for s, m in sorted((Fraction(s), Fraction(m)) for s, m in slopes):
            if m < 0:
                raise ValueError("negative multiplicity")
            if m == 0:
                continue
            x, y = x + m, y + s * m
            pts.append((x, y))
        return cls(pts)

    @property
    def start(self) -> Fraction:
        return self.vertices[0][0]

    @property
    def end(self) -> Fraction:
        return self.vertices[-1][0]

    @property
    def length(self) -> Fraction:
        return self.end - self.start

    def slopes(self) -> SlopeMultiset:
        out = []
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            out.append(((y1 - y0) / (x1 - x0), x1 - x0))
        return out

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        vs = self.vertices
        if x < vs[0][0] or x > vs[-1][0]:
            raise ValueError(f"{x} outside [{vs[0][0]}, {vs[-1][0]}]")
        for (x0, y0), (x1, y1) in zip(vs, vs[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        return vs[0][1]

    def shifted(self, dy) -> "ConvexPolygon":
        return ConvexPolygon([(x, y + dy) for x, y in self.vertices])

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ConvexPolygon) and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash(self.vertices)

    def __repr__(self) -> str:
        return "ConvexPolygon([" + ", ".join(f"({x}, {y})" for x, y in self.vertices) + "])"

    def to_json(self) -> list[list[str]]:
        return [[str(x), str(y)] for x, y in self.vertices]


def lower_hull(points: Iterable[tuple]) -> ConvexPolygon:
    """Lower convex hull of points in the plane (at most one per x kept: the lowest)."""
    best: dict[Fraction, Fraction] = {}
    for x, y in points:
        x, y = Fraction(x), Fraction(y)
        if x not in best or y < best[x]:
            best[x] = y
    hull: list[Vertex] = []
    for p in sorted(best.items()):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], p) <= 0:
            hull.pop()
        hull.append(p)
    return ConvexPolygon(hull)


def newton_polygon(valued_points: Sequence[tuple]) -> ConvexPolygon:
    """Lower hull of ``(i, v_i)`` over the finite valuations; needs ``v_0`` finite."""
    pts = [(i, v) for i, v in valued_points if v != INF]
    if not any(i == 0 for i, _ in pts):
        raise ValueError("the constant coefficient must be nonzero (finite valuation at 0)")
    return lower_hull(pts)


def weight_counts(poly: LatticePolytope) -> tuple[int, Counter]:
    """``(D, W)`` with ``W[m]`` the number of lattice points of weight ``m/D``
    for ``m <= n*D``."""
    n = poly.dim_ambient
    denom = weight_denominator(poly)
    counts: Counter = Counter()
    for u in lattice_points(poly, n):
        w = gauge_weight(poly, u)
        if w == INF:
            continue
        m = w * denom
        if m.denominator != 1:
            raise ArithmeticError("weight not a multiple of 1/D")
        counts[int(m)] += 1
    return denom, counts


def hodge_numbers(poly: LatticePolytope) -> tuple[int, list[int]]:
    """``(D, [W'(0), ..., W'(nD)])`` via the alternating sum over ``W``."""
    n = poly.dim_ambient
    denom, w = weight_counts(poly)
    out = []
    for m in range(n * denom + 1):
        total = 0
        for l in range(n + 1):
            if m - l * denom < 0:
                break
            total += (-1) ** l * math.comb(n, l) * w.get(m - l * denom, 0)
        out.append(total)
    return denom, out


def hodge_polygon(poly: LatticePolytope, n: int | None = None) -> ConvexPolygon:
    if n is not None and n != poly.dim_ambient:
        raise ValueError("n must equal the ambient dimension of the polytope")
    denom, wp = hodge_numbers(poly)
    if any(c < 0 for c in wp):
        raise ArithmeticError(f"negative Hodge number in {wp}")
    return ConvexPolygon.from_slopes((Fraction(m, denom), c) for m, c in enumerate(wp) if c)


def an_hodge_polygon(n: int, j: int, d: int) -> ConvexPolygon:
    """Slopes ``j + (m + n - j)/d`` with multiplicity ``U_{m, n-j}``."""
    from .bounds import u_coefficient

    if not 0 <= j <= n:
        raise ValueError("need 0 <= j <= n")
    if d < 2:
        raise ValueError("need d >= 2")
    k = n - j
    return ConvexPolygon.from_slopes(
        (j + Fraction(m + k, d), u_coefficient(m, k, d)) for m in range(k * (d - 2) + 1)
    )


def dominates(upper: ConvexPolygon, lower: ConvexPolygon) -> bool:
    """``upper(x) >= lower(x)`` on the common horizontal range."""
    lo = max(upper.start, lower.start)
    hi = min(upper.end, lower.end)
    if lo > hi:
        return True
    xs = {lo, hi}
    xs.update(x for x, _ in upper.vertices + lower.vertices if lo <= x <= hi)
    return all(upper(x) >= lower(x) for x in xs)


def coincides_on(upper: ConvexPolygon, lower: ConvexPolygon) -> bool:
    """True when the two polygons agree on their common range."""
    return dominates(upper, lower) and dominates(lower, upper)
