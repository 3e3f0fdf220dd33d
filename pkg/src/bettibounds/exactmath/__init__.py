"""Exact arithmetic: rationals, polynomials, series, cyclotomic numbers."""
from fractions import Fraction as Rational

from .cyclotomic import INF, Cyclotomic, cyclotomic_valuation, prime_power
from .multiseries import MultivariateSeries
from .polynomial import DensePolynomial, poly_gcd
from .reconstruct import UNSTABLE, RationalFunction, rational_reconstruct
from .series import TruncatedSeries, series_coefficient, series_exp, series_log_sums
from .surd import QuadraticSurd

CyclotomicInteger = Cyclotomic

__all__ = [
    "INF", "UNSTABLE", "Cyclotomic", "CyclotomicInteger", "DensePolynomial",
    "MultivariateSeries", "QuadraticSurd", "Rational", "RationalFunction",
    "TruncatedSeries", "cyclotomic_valuation", "poly_gcd", "prime_power",
    "rational_reconstruct", "series_coefficient", "series_exp", "series_log_sums",
]
