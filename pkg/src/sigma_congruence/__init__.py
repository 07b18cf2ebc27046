"""Exact computation and verification of the congruence invariant sigma(A) = Tr(A^T A^-1)."""

from .errors import (
    CapExceeded,
    DimensionMismatch,
    DivisionByZero,
    FieldMismatch,
    IndexOutOfRange,
    ParseError,
    SigmaError,
    SingularMatrix,
    SingularTransform,
    UnsupportedField,
)
from .field import GF, QQ, ArithOp, FieldDescriptor, FieldKind, Scalar, scalar_arith, sqrt_in_field
from .invariant import (
    SigmaMode,
    canonical_form,
    congruence_transform,
    d_invariant,
    kappa,
    kappa_explicit,
    scaled_congruence_transform,
    sigma,
    sigma_all_modes,
)
from .matrix import (
    Matrix,
    adjugate,
    cofactor,
    determinant,
    identity,
    inverse,
    is_nonsingular,
    is_symmetric,
    mat_mul,
    random_nonsingular,
    trace,
    transpose,
)
from .orbit import OrbitReport, ReductionReport, congruence_orbits, enumerate_gl, explore_reduction, gl_order
from .zeropotent import Vector3, ZeropotentAlgebra3, is_isomorphic_bruteforce, product, sigma_of_algebra

__version__ = "0.1.0"
