"""Brute-force ground truth over small finite fields."""

from .field import FqContext, make_field
from .oracle import (
    GuardError,
    census_data,
    centralizer_nullity,
    count_commuting_pairs,
    count_nilpotent_elements,
    count_nilpotent_pairs,
    orbit_census,
)
from .spaces import LieSpace, gu_space, hermitian_space, make_space, mat_space, sp_space

__all__ = [
    "FqContext", "make_field", "GuardError", "census_data", "centralizer_nullity",
    "count_commuting_pairs", "count_nilpotent_elements", "count_nilpotent_pairs",
    "orbit_census", "LieSpace", "gu_space", "hermitian_space", "make_space", "mat_space", "sp_space",
]
