"""Exact value-set statistics of monic polynomial families over F_q.

The package counts, with no floating-point error, the value sets of the
polynomials T^d + a_{d-1}T^{d-1} + ... + a_1 T + a_0 whose tail coefficients
satisfy polynomial constraints, together with the interpolating-set and
root-tuple incidence counts that tie the average value-set size to an exact
inclusion-exclusion identity.  A separate module evaluates explicit error
bounds for those counts, and a small CLI runs configured experiments into
CSV reports.
"""

from .bounds import (
    average_bound_applicable,
    average_error_bound,
    average_error_bound_linear,
    average_error_bound_symmetric,
    family_size_bracket,
    interp_count_error_bound,
    value_set_term_profile,
)
from .config import ExperimentConfig, build_family, parse_config
from .diagnostics import (
    DiagnosticReport,
    check_discriminant_loci,
    check_regularity,
    check_regularity_at_infinity,
)
from .engine import (
    average_value_set,
    count_interpolating_sets,
    generic_density,
    summarize,
    value_set_size,
)
from .exprs import parse_poly_expr, poly_to_expr
from .families import (
    FamilySpec,
    enumerate_family,
    family_cardinality,
    linear_family,
    symmetric_family,
)
from .ffield import Field, Fq, field_enumerate, field_new
from .incidence import collect, count_distinct_tuples, count_hermite_tuples
from .multipoly import MultiPoly
from .unipoly import MonicPoly, UniPoly, discriminant, resultant

__version__ = "0.1.0"

__all__ = [
    "DiagnosticReport",
    "ExperimentConfig",
    "FamilySpec",
    "Field",
    "Fq",
    "MonicPoly",
    "MultiPoly",
    "UniPoly",
    "average_bound_applicable",
    "average_error_bound",
    "average_error_bound_linear",
    "average_error_bound_symmetric",
    "average_value_set",
    "build_family",
    "check_discriminant_loci",
    "check_regularity",
    "check_regularity_at_infinity",
    "collect",
    "count_distinct_tuples",
    "count_hermite_tuples",
    "count_interpolating_sets",
    "discriminant",
    "enumerate_family",
    "family_cardinality",
    "family_size_bracket",
    "field_enumerate",
    "field_new",
    "generic_density",
    "interp_count_error_bound",
    "linear_family",
    "parse_config",
    "parse_poly_expr",
    "poly_to_expr",
    "resultant",
    "summarize",
    "symmetric_family",
    "value_set_size",
    "value_set_term_profile",
    "__version__",
]
