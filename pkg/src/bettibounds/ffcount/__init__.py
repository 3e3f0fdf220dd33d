"""Finite-field point counting, character sums and L-functions."""
from .cache import CountCache, cache_gc
from .counting import (DEFAULT_BUDGET, BudgetExceeded, CharSumRecord, CountRecord, Domain,
                       char_sum, count_points)
from .fields import FieldSpec, FiniteField, embed_base_generator, extension, field_tables, make_field
from .lfunctions import NonIntegralCoefficients, l_function, l_newton_polygon, zeta_function

__all__ = [
    "DEFAULT_BUDGET", "BudgetExceeded", "CharSumRecord", "CountCache", "CountRecord", "Domain",
    "FieldSpec", "FiniteField", "NonIntegralCoefficients", "cache_gc", "char_sum",
    "count_points", "embed_base_generator", "extension", "field_tables", "l_function",
    "l_newton_polygon", "make_field", "zeta_function",
]
