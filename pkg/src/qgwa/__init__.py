"""Exact computation in quantum generalized Weyl algebras A(D, q, a)."""

from .algebra import AlgebraElement, AlgebraSpec, evaluate_poly, from_skew, mul, to_skew
from .classify import (
    AutDescriptor,
    IsoResult,
    IsoWitness,
    automorphism_group,
    cross_check_aut,
    decide_isomorphic,
    lambda_indecomposables,
    recognize,
    sample_automorphisms,
)
from .derivations import Derivation, derivation_from_images, derivation_space, deg_d, tau, xi
from .errors import QGWAError
from .field import QQ, FieldElement, FieldSpec, order_as_root_of_unity, root_in_field
from .morphisms import (
    MorphismSpec,
    compose,
    eta,
    invert,
    omega,
    omega_minus1,
    omega_sym,
    unit_case_automorphism,
    unit_matrix,
    verify_morphism,
)
from .parse import parse_element, parse_poly, parse_scalar, parse_spec
from .poly import LaurentPoly, gap_gcd, is_symmetric

__version__ = "0.1.0"
