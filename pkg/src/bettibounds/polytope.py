"""Exact lattice-polytope geometry.

Hulls are computed with an integer double-description method on the
affine hull of the input, so every facet normal is a primitive integer
vector and no tolerance is ever involved.  Volumes come from a recursive
fan triangulation through the face lattice.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .exactmath.cyclotomic import INF
from .exactmath.linalg import det, primitive, rank, rref, nullspace
from .exactmath.multiseries import MultivariateSeries
from .laurent import LaurentPolynomial

MAX_DIM = 8

Point = tuple[int, ...]


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _double_description(points: list[Point], k: int) -> list[tuple[Point, int]]:
    """Facets ``a.x <= b`` of a full-dimensional hull in ``Z^k``.

    Works on the homogenized cone ``{(a, b) : a.v - b <= 0 for all v}``
    whose extreme rays (apart from ``(0, .., 0, 1)``) are the facets.
    """
    rows = [tuple(v) + (-1,) for v in points]
    dim = k + 1
    basis: list[int] = []
    for i, r in enumerate(rows):
        if rank([rows[j] for j in basis] + [r]) > len(basis):
            basis.append(i)
            if len(basis) == dim:
                break
    if len(basis) < dim:
        raise ValueError("points are not full-dimensional")

    # initial rays: columns of -R_I^{-1}; ray j is tight on every basis row but j
    aug = [list(rows[i]) + [-int(j == t) for t in range(dim)] for j, i in enumerate(basis)]
    red, _ = rref(aug)
    inv = [[red[r][dim + c] for c in range(dim)] for r in range(dim)]
    full = (1 << dim) - 1
    rays: list[tuple[Point, int]] = []
    for j in range(dim):
        vec = primitive([inv[r][j] for r in range(dim)])
        rays.append((vec, full & ~(1 << j)))

    bit_of = {i: t for t, i in enumerate(basis)}
    next_bit = dim
    for i, h in enumerate(rows):
        if i in bit_of:
            continue
        bit = 1 << next_bit
        next_bit += 1
        vals = [_dot(h, vec) for vec, _ in rays]
        plus = [t for t, v in enumerate(vals) if v > 0]
        if not plus:
            rays = [(vec, z | bit) if v == 0 else (vec, z) for (vec, z), v in zip(rays, vals)]
            continue
        minus = [t for t, v in enumerate(vals) if v < 0]
        new: list[tuple[Point, int]] = []
        for (vec, z), v in zip(rays, vals):
            if v < 0:
                new.append((vec, z))
            elif v == 0:
                new.append((vec, z | bit))
        for pi in plus:
            pv, pz = rays[pi]
            for mi in minus:
                mv, mz = rays[mi]
                common = pz & mz
                if common.bit_count() < dim - 2:
                    continue
                adjacent = True
                for t, (_, z) in enumerate(rays):
                    if t != pi and t != mi and z & common == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                a, b = vals[pi], vals[mi]
                comb = primitive([a * y - b * x for x, y in zip(pv, mv)])
                new.append((comb, common | bit))
        rays = new
    facets = []
    for vec, _ in rays:
        normal, offset = vec[:-1], vec[-1]
        if any(normal):
            facets.append((tuple(normal), offset))
    return sorted(set(facets))


class LatticePolytope:
    """Convex hull of finitely many integer points.

    ``facets`` lists ``(normal, offset)`` with ``polytope = {x : normal.x <=
    offset}`` (intersected with ``equations`` when lower dimensional).  Facets
    missing the origin are scaled to offset 1; the rest keep primitive
    integer normals.
    """

    __slots__ = ("dim_ambient", "generators", "vertices", "dim", "_int_facets",
                 "equations", "_facet_sets", "_affdim_cache", "_volume", "__weakref__")

    def __init__(self, points: Iterable[Sequence[int]], n: int):
        pts = sorted({tuple(int(x) for x in p) for p in points})
        if not pts:
            raise ValueError("empty point set")
        if n > MAX_DIM:
            raise ValueError(f"ambient dimension {n} exceeds the supported maximum {MAX_DIM}")
        if any(len(p) != n for p in pts):
            raise ValueError(f"points must lie in Z^{n}")
        self.dim_ambient = n
        self.generators = tuple(pts)
        base = pts[0]
        diffs = [tuple(a - b for a, b in zip(p, base)) for p in pts[1:]]
        if diffs and any(any(d) for d in diffs):
            _, pivots = rref(diffs)
        else:
            pivots = []
        k = len(pivots)
        self.dim = k
        self.equations: tuple[tuple[Point, int], ...] = tuple(
            (e, _dot(e, base)) for e in (nullspace(diffs, n) if diffs else
                                         [tuple(int(i == j) for j in range(n)) for i in range(n)])
        ) if k < n else ()
        if k == 0:
            self.vertices = (base,)
            self._int_facets: tuple[tuple[Point, int], ...] = ()
        else:
            proj = [tuple(p[c] for c in pivots) for p in pts]
            local = _double_description(sorted(set(proj)), k)
            lifted = []
            for a, b in local:
                full = [0] * n
                for c, x in zip(pivots, a):
                    full[c] = x
                lifted.append((tuple(full), b))
            self._int_facets = tuple(lifted)
            verts = []
            for p, pp in zip(pts, proj):
                tight = [a for a, b in local if _dot(a, pp) == b]
                if tight and rank(tight) == k:
                    verts.append(p)
            self.vertices = tuple(verts)
        self._facet_sets = tuple(
            frozenset(i for i, v in enumerate(self.vertices) if _dot(a, v) == b)
            for a, b in self._int_facets
        )
        self._affdim_cache: dict[frozenset, int] = {}
        self._volume: Fraction | None = None

    # basic protocol
    def __eq__(self, other: object) -> bool:
        return (isinstance(other, LatticePolytope) and self.dim_ambient == other.dim_ambient
                and self.vertices == other.vertices)

    def __hash__(self) -> int:
        return hash((self.dim_ambient, self.vertices))

    def __repr__(self) -> str:
        return f"LatticePolytope(vertices={list(self.vertices)}, n={self.dim_ambient})"

    @property
    def integer_facets(self) -> tuple[tuple[Point, int], ...]:
        """Facets as primitive integer ``(normal, offset)`` pairs."""
        return self._int_facets

    @property
    def facets(self) -> list[tuple[tuple[Fraction, ...], Fraction]]:
        out = []
        for a, b in self._int_facets:
            if b > 0:
                out.append((tuple(Fraction(x, b) for x in a), Fraction(1)))
            else:
                out.append((tuple(Fraction(x) for x in a), Fraction(b)))
        return out

    def contains(self, x: Sequence) -> bool:
        """Exact membership test for a rational point."""
        x = [Fraction(c) for c in x]
        if any(sum(Fraction(a) * c for a, c in zip(e, x)) != rhs for e, rhs in self.equations):
            return False
        return all(sum(a * c for a, c in zip(nrm, x)) <= b for nrm, b in self._int_facets)

    def is_full_dimensional(self) -> bool:
        return self.dim == self.dim_ambient

    def contains_origin(self) -> bool:
        return self.contains((0,) * self.dim_ambient)

    # face lattice and triangulation
    def _affine_dim(self, face: frozenset) -> int:
        d = self._affdim_cache.get(face)
        if d is None:
            idx = sorted(face)
            v0 = self.vertices[idx[0]]
            diffs = [tuple(a - b for a, b in zip(self.vertices[i], v0)) for i in idx[1:]]
            d = rank(diffs) if diffs else 0
            self._affdim_cache[face] = d
        return d

    def _subfaces(self, face: frozenset, fdim: int) -> list[frozenset]:
        subs = set()
        for g in self._facet_sets:
            h = face & g
            if h != face and len(h) >= fdim and self._affine_dim(h) == fdim - 1:
                subs.add(h)
        return sorted(subs, key=sorted)

    def triangulation(self, apex: str = "min") -> list[tuple[int, ...]]:
        """Simplices (as vertex-index tuples) of a fan triangulation.

        Each face is coned from its lexicographically smallest vertex
        (``apex="min"``) or largest (``apex="max"``) over the triangulations
        of its facets not containing that vertex, in lexicographic order.
        """
        pick = min if apex == "min" else max
        memo: dict[frozenset, list[tuple[int, ...]]] = {}

        def tri(face: frozenset, fdim: int) -> list[tuple[int, ...]]:
            if face in memo:
                return memo[face]
            if fdim == 0:
                out = [(min(face),)]
            else:
                top = pick(face)
                out = []
                for h in self._subfaces(face, fdim):
                    if top in h:
                        continue
                    out.extend((top,) + s for s in tri(h, fdim - 1))
            memo[face] = out
            return out

        return tri(frozenset(range(len(self.vertices))), self.dim)

    def _triangulated_volume(self, apex: str) -> Fraction:
        n = self.dim_ambient
        if self.dim < n:
            return Fraction(0)
        if n == 0:
            return Fraction(1)
        total = 0
        for s in self.triangulation(apex):
            v0 = self.vertices[s[0]]
            total += abs(det([[a - b for a, b in zip(self.vertices[i], v0)] for i in s[1:]]))
        return Fraction(total, math.factorial(n))

    def volume(self) -> Fraction:
        if self._volume is None:
            self._volume = self._triangulated_volume("min")
        return self._volume

    def volume_alternative(self) -> Fraction:
        """Volume from the triangulation coned at the largest vertex instead."""
        return self._triangulated_volume("max")

    def normalized_volume(self) -> Fraction:
        return math.factorial(self.dim_ambient) * self.volume()


def convex_hull(points: Iterable[Sequence[int]], n: int) -> LatticePolytope:
    return LatticePolytope(points, n)


def newton_polytope(f: LaurentPolynomial, at_infinity: bool = False) -> LatticePolytope:
    """Hull of the support of ``f``; with ``at_infinity`` the origin is adjoined."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no Newton polytope")
    pts = list(f.support())
    if at_infinity:
        pts.append((0,) * f.n)
    return LatticePolytope(pts, f.n)


def volume(poly: LatticePolytope) -> Fraction:
    return poly.volume()


def normalized_volume(poly: LatticePolytope) -> Fraction:
    return poly.normalized_volume()


def minkowski_sum(a: LatticePolytope, b: LatticePolytope) -> LatticePolytope:
    if a.dim_ambient != b.dim_ambient:
        raise ValueError("ambient dimensions differ")
    pts = {tuple(x + y for x, y in zip(u, v)) for u in a.vertices for v in b.vertices}
    return LatticePolytope(pts, a.dim_ambient)


def scale(poly: LatticePolytope, factor: int) -> LatticePolytope:
    if factor < 0 or int(factor) != factor:
        raise ValueError("scale factor must be a nonnegative integer")
    return LatticePolytope([tuple(factor * x for x in v) for v in poly.vertices], poly.dim_ambient)


@lru_cache(maxsize=4096)
def _combination_volume(polys: tuple[LatticePolytope, ...], lam: tuple[int, ...]) -> Fraction:
    n = polys[0].dim_ambient
    pts = {(0,) * n}
    for poly, l in zip(polys, lam):
        if l == 0:
            continue
        pts = {tuple(x + l * y for x, y in zip(u, v)) for u in pts for v in poly.vertices}
        # keep only extreme points between steps
        pts = set(LatticePolytope(pts, n).vertices)
    return LatticePolytope(pts, n).volume()


def mixed_volume(factors: Sequence[tuple[LatticePolytope, int]]) -> Fraction:
    """``V(P_1[a_1], ..., P_r[a_r])`` with ``sum a_i = n``.

    Normalized so that ``V(P[n]) = Vol(P)``.  Uses inclusion-exclusion over
    sub-multisets of the factor list:
    ``n! V = sum_k prod C(a_i, k_i) (-1)^(n - |k|) Vol(sum k_i P_i)``,
    which needs ``prod (a_i + 1) <= 2^n`` Minkowski volumes.
    """
    if not factors:
        raise ValueError("need at least one factor")
    n = factors[0][0].dim_ambient
    if any(p.dim_ambient != n for p, _ in factors):
        raise ValueError("ambient dimensions differ")
    if any(a < 0 for _, a in factors) or sum(a for _, a in factors) != n:
        raise ValueError(f"multiplicities must be nonnegative and sum to {n}")
    merged: dict[LatticePolytope, int] = {}
    for p, a in factors:
        if a:
            merged[p] = merged.get(p, 0) + a
    if n == 0:
        return Fraction(1)
    polys = tuple(sorted(merged, key=lambda p: p.vertices))
    mult = tuple(merged[p] for p in polys)
    r = len(polys)
    if r == 1:
        return polys[0].volume()
    coef = Fraction(0)
    for ks in itertools.product(*(range(a + 1) for a in mult)):
        sign = -1 if (n - sum(ks)) % 2 else 1
        weight = sign * math.prod(math.comb(a, k) for a, k in zip(mult, ks))
        coef += weight * _combination_volume(polys, ks)
    return coef / math.factorial(n)


def polytope_series_value(u: MultivariateSeries, polys: Sequence[LatticePolytope], n: int) -> Fraction:
    """Evaluate ``u(P_1, ..., P_r)``: each degree-``n`` monomial ``b_w T^w``
    contributes ``b_w * n! * V(P_1[w_1], ..., P_r[w_r])``; other degrees give 0."""
    if u.nvars != len(polys):
        raise ValueError("one polytope per series variable is required")
    if u.order < n:
        raise ValueError(f"series truncated at degree {u.order} < {n}")
    if any(p.dim_ambient != n for p in polys):
        raise ValueError(f"polytopes must lie in R^{n}")
    total = Fraction(0)
    for w, c in u.homogeneous_part(n).items():
        total += c * math.factorial(n) * mixed_volume(list(zip(polys, w)))
    return total


def _require_gauge(poly: LatticePolytope) -> None:
    if not poly.is_full_dimensional():
        raise ValueError("polytope must be full-dimensional")
    if not poly.contains_origin():
        raise ValueError("polytope must contain the origin")


def gauge_weight(poly: LatticePolytope, u: Sequence[int]):
    """Least ``lam >= 0`` with ``u`` in ``lam * poly``; ``INF`` outside its cone."""
    _require_gauge(poly)
    w = Fraction(0)
    for a, b in poly.integer_facets:
        s = _dot(a, u)
        if b == 0:
            if s > 0:
                return INF
        else:
            w = max(w, Fraction(s, b))
    return w


def weight_denominator(poly: LatticePolytope) -> int:
    _require_gauge(poly)
    d = 1
    for nrm, c in poly.facets:
        if c == 1:
            for x in nrm:
                d = d * x.denominator // math.gcd(d, x.denominator)
    return d


def lattice_points(poly: LatticePolytope, dilate=1) -> list[Point]:
    """Integer points of ``dilate * poly`` in lexicographic order."""
    dil = Fraction(dilate)
    if dil < 0:
        raise ValueError("dilation must be nonnegative")
    n = poly.dim_ambient
    num, den = dil.numerator, dil.denominator
    if n == 0:
        return [()]
    lo = [math.floor(min(v[i] for v in poly.vertices) * dil) for i in range(n)]
    hi = [math.ceil(max(v[i] for v in poly.vertices) * dil) for i in range(n)]
    axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo, hi)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    keep = np.ones(len(grid), dtype=bool)
    for a, b in poly.integer_facets:
        keep &= (grid @ np.array(a, dtype=np.int64)) * den <= num * b
    for e, c in poly.equations:
        keep &= (grid @ np.array(e, dtype=np.int64)) * den == num * c
    return [tuple(int(x) for x in row) for row in grid[keep]]


def simplex(n: int, d: int = 1) -> LatticePolytope:
    """``conv(0, d e_1, ..., d e_n)``."""
    pts = [(0,) * n] + [tuple(d * int(i == j) for j in range(n)) for i in range(n)]
    return LatticePolytope(pts, n)


def box(sides: Sequence[int]) -> LatticePolytope:
    """``[0, s_1] x ... x [0, s_n]``."""
    n = len(sides)
    return LatticePolytope(itertools.product(*[(0, s) for s in sides]), n)


def segment(n: int, i: int, length: int = 1) -> LatticePolytope:
    """``[0, length * e_i]`` in ``R^n`` (``i`` zero based)."""
    return LatticePolytope([(0,) * n, tuple(length * int(j == i) for j in range(n))], n)
