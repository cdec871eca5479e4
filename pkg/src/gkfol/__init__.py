"""Generalized Kupka components of foliations tangent to affine Lie algebra actions."""
from .classify import (
    ComponentDescriptor,
    ConditionChain,
    canonical_form,
    canonical_pair,
    claim46_solutions,
    condition_chains,
    enumerate_components,
    exceptional_family,
    search_general_n,
    verify_table,
)
from .fields import AltForm, VectorField, contract, divergence, exterior_derivative, lie_bracket, rot
from .gkcheck import (
    GKCertificate,
    KupkaStatus,
    certify_gk,
    gamma_check,
    is_isolated_at_origin,
    kupka_data,
    m1_integral,
    replay,
    search_certificate,
)
from .poly import Poly
from .w0space import W0Basis, dim_component, in_w0, w0_basis
from .weights import ParamSet, WeightVector, bar_involution, check_condition, derive_params, milnor_number, normalize_weights

__version__ = "0.1.0"
