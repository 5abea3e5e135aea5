"""Exact localization calculator for genus-one real Gromov-Witten
invariants of odd-dimensional projective spaces.

The invariant N_{1,d} of P^{2m-1} counts real genus-one degree-d curves
through conjugate pairs of point constraints.  It is computed here by
torus localization: enumerate the reflection-symmetric fixed-locus
graphs through their halves, evaluate each contribution exactly as a
rational function of the torus weights, and sum with signs; the sum
collapses to a constant, which is the invariant.
"""

from .graphs import (
    HalfGraph,
    SpaceSpec,
    automorphism_order,
    canonical_key,
    classify_types,
    conjugate_label,
    degree_of,
    divisor_of,
    enumerate_half_graphs,
    graph_id,
    shape_count,
    shape_key,
)
from .euler import (
    edge_factor,
    flag_factor,
    graph_euler_inverse,
    halfedge_factor,
    insertion_factor,
    point_factor,
)
from .invariants import (
    CrossCheckReport,
    DimensionConstraintError,
    GraphContribution,
    InvariantResult,
    SignFlipReport,
    WeightDependenceError,
    classical_sanity,
    compute_invariant,
    cross_eval_check,
    numeric_value,
    per_type_decomposition,
    sign_flip_experiment,
)
from .psi import psi_integral, vertex_factor
from .ratfunc import (
    RationalFunction,
    SparsePoly,
    poly_gcd,
    rf_arith,
    rf_eval,
    rf_from_string,
    rf_is_constant,
    rf_normalize,
    rf_to_string,
)

__version__ = "0.1.0"

__all__ = [
    "HalfGraph",
    "SpaceSpec",
    "RationalFunction",
    "SparsePoly",
    "CrossCheckReport",
    "DimensionConstraintError",
    "GraphContribution",
    "InvariantResult",
    "SignFlipReport",
    "WeightDependenceError",
    "automorphism_order",
    "canonical_key",
    "classical_sanity",
    "classify_types",
    "compute_invariant",
    "conjugate_label",
    "cross_eval_check",
    "degree_of",
    "divisor_of",
    "edge_factor",
    "enumerate_half_graphs",
    "flag_factor",
    "graph_euler_inverse",
    "graph_id",
    "halfedge_factor",
    "insertion_factor",
    "numeric_value",
    "per_type_decomposition",
    "point_factor",
    "poly_gcd",
    "psi_integral",
    "rf_arith",
    "rf_eval",
    "rf_from_string",
    "rf_is_constant",
    "rf_normalize",
    "rf_to_string",
    "shape_count",
    "shape_key",
    "sign_flip_experiment",
    "vertex_factor",
    "__version__",
]
