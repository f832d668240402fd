"""Floating-point Moyal product on periodic grids."""
from .grid import (
    Gaussian,
    GridFunction,
    GridSpec,
    HermiteFunction,
    PlaneWave,
    Polynomial,
    grid_integral,
    sample,
    spectrum,
)
from .io import export_csv, read_grid, write_grid
from .star import AliasingWarning, grid_star, nyquist_fraction
from .crosscheck import commensurate_theta, poly_star_gaussian
from .grid import gaussian_derivative
