"""Truncated Fock spaces for the twisted canonical (anti)commutation relations."""
from .basis import FockBasis, Statistics
from .field import FieldElement, FieldReport, field_phi, field_phi_star, field_star_algebra, operator_element
from .operators import (
    CCROperators,
    FockOperator,
    build_ccr,
    default_modes,
    dress,
    hqccr_residuals,
    jordan_schwinger,
    number_operator,
    sector_dimension,
    state_momenta,
    verify_hqccr,
)
from ..modes import ModeSet
