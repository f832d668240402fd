"""Deformed Landau Hamiltonians and many-particle star operators."""
from .landau import (
    HamiltonianReport,
    LandauParams,
    SingularDeformation,
    SpectrumResult,
    covariant_derivative,
    landau_closed_form,
    landau_closed_form_pointwise,
    landau_h_star,
    landau_spectrum,
    oscillator_matrix,
    write_spectrum_csv,
)
from .manybody import (
    fock_restriction_check,
    laplacian_correction,
    n_particle_h_star,
    pair_potential,
    two_particle_cross_term,
    two_particle_h_star,
)
