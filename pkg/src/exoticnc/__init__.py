"""Exotic nilCoxeter algebras NC(m,m,n) and the deformed reflection representation."""

from .algebra import (
    CapacityError,
    GradedDims,
    GradedOperator,
    NCAlgebra,
    conjectureA_dims,
    frobenius_trace_classifier,
    gamma_checks,
    nc_graded_dims,
    new_relation_count,
    operator_matrix,
    relation_kernel,
)
from .exactnum import Cyclotomic, CyclotomicRing, FormalRing, quantum_binomial

__version__ = "0.1.0"
