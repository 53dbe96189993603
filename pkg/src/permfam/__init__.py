"""
Permutations as registries of families and trees of primitive permutations,
with decimal codes and the multinomial counts behind them.

>>> from permfam import decompose, format_registry
>>> format_registry(decompose((6, 7, 3, 5, 4, 1, 2)))
'((5 4),(6 7 3 1),(2))'
"""

from .counting import (
    construct_permutations, derangement_count, enumerate_compositions, eulerian,
    fundamental_multinomial, shifted_multinomial,
)
from .decimal_code import decode, encode, validate
from .errors import (
    InvalidCode, InvalidFamily, InvalidPairing, InvalidPermutation,
    InvalidRegistry, PermfamError,
)
from .family import Family, format_registry, parse_registry
from .perm_core import (
    classify_values, cycle_transform, inverse_cycle_transform, parse_permutation,
)
from .primitive import (
    build_primitive, count_primitive, is_primitive, phi_series, primitive_decomposition,
)
from .registry_bijection import compose, decompose
from .tree_form import multiparenthesize, demultiparenthesize, parenthesize, format_paren

__version__ = "0.1.0"

__all__ = [
    "Family", "PermfamError", "InvalidCode", "InvalidFamily", "InvalidPairing",
    "InvalidPermutation", "InvalidRegistry",
    "parse_permutation", "classify_values", "cycle_transform", "inverse_cycle_transform",
    "parse_registry", "format_registry", "decompose", "compose",
    "parenthesize", "format_paren", "multiparenthesize", "demultiparenthesize",
    "build_primitive", "primitive_decomposition", "is_primitive", "count_primitive",
    "phi_series", "encode", "decode", "validate",
    "fundamental_multinomial", "shifted_multinomial", "eulerian", "derangement_count",
    "enumerate_compositions", "construct_permutations",
]
