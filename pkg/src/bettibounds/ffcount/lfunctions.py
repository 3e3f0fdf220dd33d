"""Zeta and L-functions from counts and character sums."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..exactmath.cyclotomic import Cyclotomic, cyclotomic_valuation, prime_power
from ..exactmath.reconstruct import UNSTABLE, RationalFunction, rational_reconstruct
from ..exactmath.series import series_exp
from ..polygon import ConvexPolygon, newton_polygon

DEFAULT_WINDOW = 4


class NonIntegralCoefficients(ValueError):
    """A reconstructed coefficient is not an algebraic integer."""


def zeta_function(counts: Sequence[int], window: int = DEFAULT_WINDOW):
    """``(Z(t), total degree)`` from ``N_1..N_M``; ``(UNSTABLE, None)`` if not settled."""
    if len(counts) < 2:
        raise ValueError("need at least two counts")
    series = series_exp([Fraction(c) for c in counts])
    z = rational_reconstruct(list(series.coeffs), window)
    if z is UNSTABLE:
        return UNSTABLE, None
    return z, z.total_degree


def l_function(sums: Sequence[Cyclotomic | int], window: int = DEFAULT_WINDOW):
    """``(L(t), total degree)`` from ``S_1..S_M`` in Z[zeta_p]."""
    if len(sums) < 2:
        raise ValueError("need at least two sums")
    cyc = [s for s in sums if isinstance(s, Cyclotomic)]
    if cyc:
        p = cyc[0].p
        vals = [s if isinstance(s, Cyclotomic) else Cyclotomic(p, [s]) for s in sums]
        if p == 2:
            vals = [Fraction(v.to_rational()) for v in vals]
    else:
        vals = [Fraction(s) for s in sums]
    series = series_exp(vals)
    L = rational_reconstruct(list(series.coeffs), window)
    if L is UNSTABLE:
        return UNSTABLE, None
    return L, L.total_degree


def _valuations(poly, q: int) -> list[tuple[int, object]]:
    p, _ = prime_power(q)
    out = []
    for i, c in enumerate(poly.coeffs):
        if isinstance(c, Cyclotomic):
            if not c.is_integral():
                raise NonIntegralCoefficients(f"coefficient {c} of t^{i} is not integral")
            x = c
        else:
            c = Fraction(c)
            if c.denominator != 1:
                raise NonIntegralCoefficients(f"coefficient {c} of t^{i} is not integral")
            x = Cyclotomic(p, [int(c)])
        out.append((i, cyclotomic_valuation(x, q)))
    return out


def l_newton_polygon(L: RationalFunction, q: int) -> tuple[ConvexPolygon, ConvexPolygon]:
    """Newton polygons (w.r.t. ``ord_q``) of numerator and denominator."""
    return (newton_polygon(_valuations(L.numerator, q)),
            newton_polygon(_valuations(L.denominator, q)))
