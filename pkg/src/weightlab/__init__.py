"""Exact computations with Lie algebras of vector fields and their bounded weight modules."""
from .exact_arith import (
    DivisionByZero, NotSquare, RationalMatrix, Singular, UniPoly, binom_general, charpoly,
    gamma_ratio, kernel_basis, solve,
)
from .lie_core import (
    AlgebraMismatch, LieElement, D, I, bracket, parse_element, root_of, sigma, sl3_embed, vf,
)
from .roots import ParabolicSet, enumerate_parabolics, parabolic, parabolic_set
from .weight_modules import (
    GL2Module, ModuleVector, TensorModule, TensorModuleSpec, TrivialModule, WeightWindow,
    char_series_expand, character, gl2_act, membership_J, parse_vector, spec, support, tensor_act,
)
from .localization import (
    HypothesisViolated, LocalizedModule, TwistedVector, WindowOverflow, inv_act, loc_iso_check,
    twisted_act,
)
from .analysis import (
    NotSimple, StripRegion, an_bn, charpoly_identity_check, closure_profile, half_plane_bounded_check,
    hw_bounded_check, iso_invariant, nplus_invariants, operator_matrix_M, primitive_weights,
    sl3_bounded_weight_check, support_shape, twisted_primitive_criterion,
)

__version__ = "0.1.0"
