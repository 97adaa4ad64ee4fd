"""Nonhomogeneous linear recurrence systems over semirings.

Closed-form convolution solutions, weighted one-letter automata, and the
z-transform of solutions as truncated formal series.
"""

__version__ = "0.1.0"

from .automata import (
    WeightedAutomaton,
    automaton_to_system,
    enumerate_paths,
    path_weight_sum,
    system_to_automaton,
)
from .linalg import Mat, Vec, falling_product, identity, mat_mul, mat_pow, mat_vec
from .recurrence import (
    ComposedSystem,
    RecurrenceSystem,
    iterate,
    iterate_composed,
    solution_table,
    solve,
    solve_composed_constant,
    solve_composed_variable,
    solve_constant,
    solve_variable,
)
from .semiring import Semiring, builtin_semiring, check_semiring_laws, parse_literal
from .sequences import Seq, convolve, convolve_fixed, seq_from_spec, parse_seq_spec
from .ztransform import (
    TruncatedSeries,
    s_composed_constant,
    s_composed_variable,
    s_constant,
    s_variable,
    verify_theorem,
    z_direct,
    z_theorem,
)

__all__ = [
    "ComposedSystem", "Mat", "RecurrenceSystem", "Semiring", "Seq", "TruncatedSeries",
    "Vec", "WeightedAutomaton", "automaton_to_system", "builtin_semiring",
    "check_semiring_laws", "convolve", "convolve_fixed", "enumerate_paths",
    "falling_product", "identity", "iterate", "iterate_composed", "mat_mul", "mat_pow",
    "mat_vec", "parse_literal", "parse_seq_spec", "path_weight_sum", "s_composed_constant",
    "s_composed_variable", "s_constant", "s_variable", "seq_from_spec", "solution_table",
    "solve", "solve_composed_constant", "solve_composed_variable", "solve_constant",
    "solve_variable", "system_to_automaton", "verify_theorem", "z_direct", "z_theorem",
]
