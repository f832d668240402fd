"""Exact star products of a polynomial with a Gaussian, for validating the grid product."""
from __future__ import annotations

from math import pi

import numpy as np

from ..symbolic.operators import StarOperator
from ..symbolic.poly import PolyExpr
from ..symbolic.theta import ThetaMatrix
from .grid import Gaussian, GridFunction, GridSpec, gaussian_derivative

__all__ = ["poly_star_gaussian", "commensurate_theta"]


def poly_star_gaussian(poly: PolyExpr, gauss: Gaussian, theta_unit: ThetaMatrix, spec: GridSpec, scale=1.0) -> GridFunction:
    """``poly * gauss`` for ``theta = scale * theta_unit`` from the terminating expansion.

    The order-``r`` term of the expansion carries ``r`` derivatives of the
    Gaussian and a factor ``scale^r``, which lets an irrational ``scale``
    ride on an exact rational ``theta_unit``.
    """
    if poly.nvars != spec.m or theta_unit.dim != spec.m:
        raise ValueError("dimension mismatch between polynomial, theta and grid")
    pointwise = StarOperator.multiplication(poly).to_pointwise(theta_unit)
    X = spec.mesh()
    out = np.zeros(spec.shape, dtype=complex)
    for alpha, g in pointwise.items():
        dg = gaussian_derivative(gauss, alpha, spec).values
        out += scale ** sum(alpha) * g(*X) * dg
    return GridFunction(spec, out)


def commensurate_theta(spec: GridSpec, j: int = 1) -> float:
    """``theta^{12}`` for which every shift ``theta k / 2`` is a whole number of grid steps."""
    return 4 * spec.L ** 2 * j / (pi * spec.N)
