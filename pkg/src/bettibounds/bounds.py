"""Closed-form Betti-number and total-degree bounds, evaluated exactly."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .exactmath.cyclotomic import prime_power
from .exactmath.multiseries import MultivariateSeries
from .exactmath.series import TruncatedSeries
from .exactmath.surd import QuadraticSurd
from .polytope import LatticePolytope, mixed_volume, polytope_series_value, simplex

C = math.comb


@dataclass(frozen=True)
class UpperReal:
    """A certified rational upper bound for an irrational quantity."""

    upper: Fraction
    expression: str

    def __float__(self) -> float:
        return float(self.upper)

    def __str__(self) -> str:
        return f"<= {self.upper} ({self.expression})"


@dataclass(frozen=True)
class BoundValue:
    kind: str
    value: Any
    params: dict = field(default_factory=dict)
    formula: str = ""

    def as_comparable(self):
        """A value usable in exact ``<=`` comparisons (upper enclosures give their upper end)."""
        if isinstance(self.value, UpperReal):
            return self.value.upper
        return self.value


# generic coefficients ------------------------------------------------------

def _poly_series(coeffs: Sequence[int], order: int) -> TruncatedSeries:
    return TruncatedSeries([Fraction(c) for c in coeffs], order)


def _one_minus_h_pow(n: int, order: int) -> TruncatedSeries:
    return _poly_series([(-1) ** e * C(n, e) for e in range(n + 1)], order)


def _series_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"non-integral coefficient {x}")
    return int(x)


def _check_ds(n: int, ds: Sequence[int]) -> None:
    r = len(ds)
    if r < 1 or r > n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    if any(d < 1 for d in ds):
        raise ValueError("degrees must be positive")


def n_coefficient(n: int, ds: Sequence[int]) -> int:
    """``N(n; d_1..d_r)``: coefficient of ``h^(n-r)`` in ``prod d_i (1-h)^n / prod (1 - d_i h)``."""
    _check_ds(n, ds)
    r = len(ds)
    order = n - r
    s = _one_minus_h_pow(n, order) * math.prod(ds)
    for d in ds:
        s = s * _poly_series([1, -d], order).invert()
    return _series_int(s[order])


def m_coefficient(n: int, ds: Sequence[int]) -> int:
    r = len(ds)
    value = n_coefficient(n, ds)
    return value - (-1) ** (n - r) if n > r else value


def m_coefficient_closed(n: int, r: int, d: int) -> int:
    """Equal-degree closed form ``sum_{i<r} C(n,i)(d-1)^(n-i) C(n-i-1, r-i-1)``."""
    if not 1 <= r <= n:
        raise ValueError("need 1 <= r <= n")
    if n == r:
        # the sum equals N - 1 here, while M = N = d^r when n = r
        return d ** r
    return sum(C(n, i) * (d - 1) ** (n - i) * C(n - i - 1, r - i - 1) for i in range(r))


def c_coefficient(n: int, r: int, d: int) -> int:
    """Coefficient of ``h^(n-r)`` in ``d^r (1-h)^n / (1-dh)^(r+1)``."""
    if not 0 <= r <= n:
        raise ValueError("need 0 <= r <= n")
    if d < 1:
        raise ValueError("need d >= 1")
    order = n - r
    s = _one_minus_h_pow(n, order) * (d ** r)
    inv = _poly_series([1, -d], order).invert()
    for _ in range(r + 1):
        s = s * inv
    return _series_int(s[order])


def c_coefficient_closed(n: int, r: int, d: int) -> int:
    return sum(C(n, i) * (d - 1) ** (n - i) * C(n - i, n - r) for i in range(r + 1))


def u_coefficient(m: int, n: int, d: int) -> int:
    """Coefficient of ``x^m`` in ``(1 + x + ... + x^(d-2))^n``."""
    if d < 2:
        raise ValueError("need d >= 2")
    if m < 0 or m > n * (d - 2):
        return 0
    # inclusion-exclusion on (1 - x^(d-1))^n / (1 - x)^n
    k = d - 1
    return sum((-1) ** i * C(n, i) * C(m - i * k + n - 1, n - 1)
               for i in range(n + 1) if m - i * k >= 0) if n > 0 else int(m == 0)


def ci_degree_total(n: int, ds: Sequence[int]) -> int:
    """``sum_{j=0}^{n-r} M(n-j; ds)``."""
    _check_ds(n, ds)
    return sum(m_coefficient(n - j, ds) for j in range(n - len(ds) + 1))


# scalar bounds -------------------------------------------------------------

def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise ValueError(msg)


def _ci(n: int, r: int, d: int) -> None:
    _need(1 <= r <= n, f"need 1 <= r <= n (got n={n}, r={r})")
    _need(d >= 1, "need d >= 1")


def _any_system(n: int, r: int, d: int) -> None:
    # no complete-intersection hypothesis: any number of equations
    _need(n >= 1 and r >= 1 and d >= 1, "need n, r, d >= 1")


def _q(q: int) -> None:
    prime_power(q)


def _order(n, r, d):
    _any_system(n, r, d)
    return 3 ** r * C(n + r - 1, r - 1) * (2 * d + 1) ** n


def _katz(n, r, d):
    _any_system(n, r, d)
    return 2 ** r * 3 * 2 * (r * d + 3) ** (n + 1)


def _kronecker_total(n, d):
    _need(n >= 1 and d >= 1, "need n, d >= 1")
    return 3 ** (n + 1) * C(2 * n, n) * (2 * d + 1) ** n


def _ci_degree(n, j, ds=None, r=None, d=None):
    if ds is None:
        _need(r is not None and d is not None, "ci_degree needs ds or (r, d)")
        ds = [d] * r
    _check_ds(n, ds)
    _need(0 <= j <= n - len(ds), "need 0 <= j <= n - r")
    return m_coefficient(n - j, ds)


def _ci_total(n, r, d):
    _ci(n, r, d)
    return C(n - 1, r - 1) * (d + 1) ** n


def _m_lower(n, r, d):
    _ci(n, r, d)
    return C(n - 1, r - 1) * (d - 1) ** n


def _projective_degree(n, r, d, j):
    _ci(n, r, d)
    _need(n - r >= 1, "need dim X = n - r >= 1")
    _need(0 <= j <= n - r, "need 0 <= j <= n - r")
    return C(n - 1 - j, r - 1) * sum(d ** e for e in range(r, n - j + 1))


def _proj_order(n, r, d):
    _ci(n, r, d)
    return 3 ** r * C(n + r - 1, r - 1) * (2 * d + 2) ** n


def _lw_affine(n, r, d, q):
    _ci(n, r, d)
    _q(q)
    total = QuadraticSurd(0)
    for j in range(n - r):
        total = total + QuadraticSurd.power(C(n - j - 1, r - 1) * d ** (n - j), q,
                                            Fraction(n - r + j, 2))
    return total


def _lw_affine_coarse(n, r, d, q):
    _ci(n, r, d)
    _q(q)
    return QuadraticSurd.power(C(n - 1, r - 1) * (d + 1) ** n, q, Fraction(2 * (n - r) - 1, 2))


def _lw_projective(n, r, d, q, epsilon):
    _ci(n, r, d)
    _q(q)
    _need(epsilon >= -1, "need epsilon >= -1")
    return QuadraticSurd.power(C(n - 1, r - 1) * (d + 2) ** n, q, Fraction(n - r + epsilon + 1, 2))


def _lw_affine_refined(n, r, d, q, epsilon):
    _ci(n, r, d)
    _q(q)
    _need(epsilon >= -1, "need epsilon >= -1")
    return QuadraticSurd.power(C(n - 1, r - 1) * (d + 1) ** n, q, Fraction(n - r + epsilon + 1, 2))


def _expsum_subvariety(n, r, d):
    _need(n >= 1 and r >= 0 and d >= 1, "need n >= 1, r >= 0, d >= 1")
    return 3 ** r * C(n + r, r) * (2 * d + 1) ** n


def _expsum_kronecker(n, d):
    _need(n >= 1 and d >= 1, "need n, d >= 1")
    return 3 ** (n + 1) * C(2 * n + 1, n + 1) * (2 * d + 1) ** n


def _expsum_ci_total(n, r, d):
    _need(0 <= r <= n and d >= 1, "need 0 <= r <= n, d >= 1")
    return C(n, r) * (d + 1) ** n


def _expsum_ci_lower(n, r, d):
    _need(0 <= r <= n and d >= 1, "need 0 <= r <= n, d >= 1")
    return C(n, r) * (d - 1) ** n


def _euler(n, r, d):
    _ci(n, r, d)
    return 2 ** r * C(n + r - 1, r - 1) * (d + 1) ** n


def _torus_family(n, r, d):
    _need(n >= 1 and r >= 1 and d >= 1, "need n, r, d >= 1")
    return 2 ** (n + r) * C(n + r - 1, r - 1) * d ** n


def _elementary_ci(n, r, d):
    _need(n >= 1 and r >= 1 and d >= 1, "need n, r, d >= 1")
    return 2 ** r * C(n + r - 1, r - 1) * (d + 2) ** n


def _one_extra(n, s, e):
    _need(n >= 1 and 0 <= s <= n and e >= 1, "need n >= 1, 0 <= s <= n, e >= 1")
    return 3 * 2 ** (s + 1) * C(n + s, s) * (e + 2) ** n


def _complement(n, r, s, d):
    _need(0 <= s <= r - 1 and s <= n, "need 0 <= s <= r - 1 and s <= n")
    _need(d >= 1, "need d >= 1")
    return 3 * 2 ** (r + 1) * C(n + s, s) * ((r - s) * d + 2) ** n


def _elementary_general(n, r, s, d):
    _need(0 <= s <= r - 1 and s <= n, "need r >= s + 1 and s <= n")
    _need(d >= 1, "need d >= 1")
    return 7 * 2 ** r * C(n + s, s) * ((r - s) * d + 2) ** n


def _ci_katz_elementary(n, r, d):
    _ci(n, r, d)
    return C(n - 1, r - 1) * (d + 1) ** n


def _tame_curve(n, d, q):
    _need(n >= 1 and d >= 1, "need n, d >= 1")
    _q(q)
    return QuadraticSurd.power(n * d ** n, q, Fraction(1, 2))


BOUND_KINDS: dict[str, tuple[Callable, str]] = {
    "order": (_order, "3^r C(n+r-1,r-1) (2d+1)^n"),
    "katz": (_katz, "2^r * 3 * 2 * (rd+3)^(n+1)"),
    "kronecker_total": (_kronecker_total, "3^(n+1) C(2n,n) (2d+1)^n"),
    "ci_degree": (_ci_degree, "M(n-j; d_1..d_r)"),
    "ci_total": (_ci_total, "C(n-1,r-1) (d+1)^n"),
    "m_lower": (_m_lower, "C(n-1,r-1) (d-1)^n"),
    "projective_degree": (_projective_degree, "C(n-1-j,r-1) (d^(n-j) + ... + d^r)"),
    "proj_order": (_proj_order, "3^r C(n+r-1,r-1) (2d+2)^n"),
    "lw_affine": (_lw_affine, "sum_{j<n-r} C(n-j-1,r-1) d^(n-j) q^((n-r+j)/2)"),
    "lw_affine_coarse": (_lw_affine_coarse, "C(n-1,r-1) (d+1)^n q^(n-r-1/2)"),
    "lw_projective": (_lw_projective, "C(n-1,r-1) (d+2)^n q^((n-r+eps+1)/2)"),
    "lw_affine_refined": (_lw_affine_refined, "C(n-1,r-1) (d+1)^n q^((n-r+eps+1)/2)"),
    "expsum_subvariety": (_expsum_subvariety, "3^r C(n+r,r) (2d+1)^n"),
    "expsum_kronecker": (_expsum_kronecker, "3^(n+1) C(2n+1,n+1) (2d+1)^n"),
    "expsum_ci_total": (_expsum_ci_total, "C(n,r) (d+1)^n"),
    "expsum_ci_lower": (_expsum_ci_lower, "C(n,r) (d-1)^n"),
    "euler": (_euler, "2^r C(n+r-1,r-1) (d+1)^n"),
    "torus_family": (_torus_family, "2^(n+r) C(n+r-1,r-1) d^n"),
    "elementary_ci": (_elementary_ci, "2^r C(n+r-1,r-1) (d+2)^n"),
    "elementary_general": (_elementary_general, "7 * 2^r C(n+s,s) ((r-s)d+2)^n"),
    "one_extra": (_one_extra, "3 * 2^(s+1) C(n+s,s) (e+2)^n"),
    "ci_katz_elementary": (_ci_katz_elementary, "C(n-1,r-1) (d+1)^n  (r = s)"),
    "complement": (_complement, "3 * 2^(r+1) C(n+s,s) ((r-s)d+2)^n"),
    "tame_curve": (_tame_curve, "n d^n sqrt(q)"),
}


def bound_parameters(kind: str) -> list[str]:
    import inspect

    fn, _ = _lookup(kind)
    return list(inspect.signature(fn).parameters)


def _lookup(kind: str):
    try:
        return BOUND_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown bound kind {kind!r}") from None


def scalar_bound(kind: str, **params) -> BoundValue:
    """Evaluate one named bound exactly.

    Integer-valued bounds come back as ``int``; bounds carrying ``sqrt(q)``
    come back as :class:`QuadraticSurd`.
    """
    fn, formula = _lookup(kind)
    import inspect

    sig = inspect.signature(fn)
    unknown = set(params) - set(sig.parameters)
    if unknown:
        raise ValueError(f"{kind}: unexpected parameters {sorted(unknown)}")
    try:
        bound = sig.bind(**params)
    except TypeError as exc:
        raise ValueError(f"{kind}: {exc}") from None
    for name, v in bound.arguments.items():
        if name == "ds":
            if not all(isinstance(x, int) for x in v):
                raise ValueError("ds must be integers")
        elif v is not None and not isinstance(v, int):
            raise ValueError(f"{kind}: parameter {name} must be an integer")
    value = fn(**params)
    return BoundValue(kind, value, dict(params), formula)


# polytope bounds -----------------------------------------------------------

def _iroot_ceil(x: int, k: int) -> int:
    """Smallest integer ``r`` with ``r**k >= x``."""
    lo, hi = 0, 1
    while hi ** k < x:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k >= x:
            hi = mid
        else:
            lo = mid + 1
    return lo


def two_power_upper(n: int, bits: int = 64) -> Fraction:
    """Dyadic upper enclosure of ``2^((n+1)/n)`` with ``bits`` fractional bits."""
    # 2^((n+1)/n) * 2^bits = (2^(n+1+bits*n))^(1/n)
    return Fraction(_iroot_ceil(2 ** (n + 1 + bits * n), n), 2 ** bits)


def _require_full(poly: LatticePolytope, name: str) -> None:
    if not poly.is_full_dimensional():
        raise ValueError(f"{name} must be full-dimensional")


def polytope_bound(kind: str, delta: LatticePolytope | None = None,
                   s: LatticePolytope | None = None, d=None) -> BoundValue:
    """Total-degree bounds expressed through (mixed) volumes."""
    if kind == "power_as":
        if s is None or d is None:
            raise ValueError("power_as needs S and d")
        _require_full(s, "S")
        d = Fraction(d)
        if d <= 2:
            raise ValueError("power_as needs d > 2")
        n = s.dim_ambient
        value = s.normalized_volume() * (d ** n + (d ** n - 2 ** n) / (d - 2))
        return BoundValue(kind, value, {"d": str(d)}, "n!Vol(S) (d^n + (d^n - 2^n)/(d-2))")
    if delta is None:
        raise ValueError(f"{kind} needs a polytope")
    _require_full(delta, "Delta")
    n = delta.dim_ambient
    if kind == "as_original":
        up = two_power_upper(n)
        value = 2 ** n * (1 + up) ** n * delta.normalized_volume()
        return BoundValue(kind, UpperReal(value, "2^n (1 + 2^((n+1)/n))^n n!Vol"), {},
                          "2^n (1 + 2^((n+1)/n))^n n!Vol(Delta)")
    if kind in ("as_improved", "toric_total"):
        if s is None:
            raise ValueError(f"{kind} needs S")
        _require_full(s, "S")
        if s.dim_ambient != n:
            raise ValueError("Delta and S live in different dimensions")
        fact = math.factorial(n)
        value = delta.normalized_volume()
        for i in range(1, n + 1):
            value += 2 ** (i - 1) * fact * mixed_volume([(delta, n - i), (s, i)])
        return BoundValue(kind, value, {}, "Delta^n + sum_i 2^(i-1) Delta^(n-i) S^i")
    raise ValueError(f"unknown polytope bound {kind!r}")


# series in polytopes ---------------------------------------------------------

def _fraction_series(nvars: int, order: int) -> tuple[MultivariateSeries, list[MultivariateSeries]]:
    one = MultivariateSeries.constant(nvars, order)
    vs = [MultivariateSeries.variable(nvars, order, i) for i in range(nvars)]
    return one, vs


def _to_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise ArithmeticError(f"expected an integer, got {x}")
    return int(x)


def khovanskii_chi(polys: Sequence[LatticePolytope]) -> int:
    """Degree-``n`` part of ``prod T_i / (1 + T_i)`` evaluated in the polytopes."""
    if not polys:
        raise ValueError("need at least one polytope")
    n = polys[0].dim_ambient
    r = len(polys)
    if r > n:
        raise ValueError("need r <= n")
    # lower-dimensional factors are allowed: mixed volumes extend to them
    if any(p.dim_ambient != n for p in polys):
        raise ValueError("polytopes live in different dimensions")
    one, ts = _fraction_series(r, n)
    u = one
    for t in ts:
        u = u * t * (one + t).invert()
    return _to_int(polytope_series_value(u, polys, n))


def ultimate_as(delta_inf: LatticePolytope, polys: Sequence[LatticePolytope],
                s: LatticePolytope | None, j: int) -> int:
    """``(-1)^(n-r) [1/(1+D_inf) prod D_i/(1+D_i) ((-1) S/(1+S))^j]`` in degree ``n``."""
    n = delta_inf.dim_ambient
    r = len(polys)
    if not 0 <= j <= n - r:
        raise ValueError("need 0 <= j <= n - r")
    if not delta_inf.contains_origin():
        raise ValueError("Delta_inf must contain the origin")
    _require_full(delta_inf, "Delta_inf")
    for p in polys:
        _require_full(p, "each polytope")
    if j > 0:
        if s is None:
            raise ValueError("S is required when j > 0")
        _require_full(s, "S")
    allp = [delta_inf, *polys] + ([s] if j > 0 else [])
    one, ts = _fraction_series(len(allp), n)
    u = (one + ts[0]).invert()
    for t in ts[1:r + 1]:
        u = u * t * (one + t).invert()
    if j > 0:
        st = ts[-1]
        u = u * ((st * (one + st).invert()) * (-1)) ** j
    return (-1) ** (n - r) * _to_int(polytope_series_value(u, allp, n))


def chern_integral_pn(n: int, d: int, degrees: Sequence[int]) -> int:
    """Coefficient of ``h^n`` in ``(1+h)^(n+1) prod(d_i h) / ((1+dh)(1+h) prod(1+d_i h))``,
    signed by ``(-1)^(n-r)``."""
    r = len(degrees)
    if r > n:
        raise ValueError("need r <= n")
    order = n
    s = _poly_series([C(n, e) for e in range(n + 1)], order)  # (1+h)^(n+1)/(1+h)
    s = s * _poly_series([1, d], order).invert()
    for di in degrees:
        s = s * _poly_series([0, di], order) * _poly_series([1, di], order).invert()
    return (-1) ** (n - r) * _series_int(s[order])


def cayley_polytope(n: int, r: int, d: int, with_f: bool = False) -> LatticePolytope:
    """Hull containing the Newton polytope of ``sum x_{n+i} f_i`` in ``Z^(n+r)``.

    Without ``f``: ``conv({0} u S_d x {e_{n+1}} u ... u S_d x {e_{n+r}})``.
    With ``f``: the product ``S_d x T'`` with ``T'`` the unit simplex in ``R^r``.
    """
    if n < 1 or r < 1 or d < 1:
        raise ValueError("need n, r, d >= 1")
    base = simplex(n, d).vertices
    units = [tuple(int(i == k) for k in range(r)) for i in range(r)]
    pts = []
    if with_f:
        for b in base:
            for t in [(0,) * r] + units:
                pts.append(tuple(b) + t)
    else:
        pts.append((0,) * (n + r))
        for b in base:
            for t in units:
                pts.append(tuple(b) + t)
    return LatticePolytope(pts, n + r)


def cayley_volume_claim(n: int, r: int, d: int, with_f: bool = False) -> tuple[Fraction, int]:
    """``(normalized volume, claimed upper bound)``."""
    poly = cayley_polytope(n, r, d, with_f)
    claim = C(n + r, r) * d ** n if with_f else C(n + r - 1, r - 1) * d ** n
    return poly.normalized_volume(), claim
