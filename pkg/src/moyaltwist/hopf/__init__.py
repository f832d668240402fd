"""Twist machinery: symbolic U(iso(m)) and the plane-wave representation."""
from .coproduct import (
    SeriesDivergence,
    adjoint_series,
    antipode,
    beta_series,
    coproduct,
    coproduct_iter,
    coproduct_iter_direct,
    counit,
    omega_theta_correction,
    twist_generator,
    twisted_coproduct,
    twisted_coproduct_tensor,
)
from .representation import (
    DeformedPair,
    PhaseTensor,
    SlaterResult,
    beta_phase,
    check_cocycle,
    check_counit,
    compose_permutations,
    deformed_basis,
    f_matrix,
    iterated_exponent,
    pair_exponent,
    permutation_matrix,
    permutation_sign,
    product_to_hat,
    r_matrix,
    slater_hat,
    twisted_permutation,
    twisted_symmetrizer,
)
from .uea import Iso, TensorUEA, UEAElement
from ..modes import ModeBasis, ModeSet
