"""Periodic sampling grids and closed-form test functions on them.

The box is ``[-L, L)^m`` with ``x_j = -L + j 2L/N`` on each axis. Spectra use
``a~(h) = (2 pi)^{-m} int a(x) exp(-i h.x) dx``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import factorial, pi, sqrt

import numpy as np
from numpy.polynomial import hermite as _H

from ..symbolic.poly import PolyExpr

__all__ = [
    "GridSpec",
    "GridFunction",
    "Gaussian",
    "PlaneWave",
    "HermiteFunction",
    "Polynomial",
    "sample",
    "grid_integral",
    "spectrum",
    "gaussian_derivative",
]

MAX_DIM = 4


@dataclass(frozen=True)
class GridSpec:
    m: int
    N: int
    L: float

    def __post_init__(self):
        if not 1 <= self.m <= MAX_DIM:
            raise ValueError(f"grid dimension must be between 1 and {MAX_DIM}")
        if self.N < 2 or self.N & (self.N - 1):
            raise ValueError(f"N={self.N} is not a power of two")
        if not self.L > 0:
            raise ValueError("box half-width L must be positive")

    @property
    def dx(self) -> float:
        return 2 * self.L / self.N

    @property
    def shape(self) -> tuple:
        return (self.N,) * self.m

    def axis(self) -> np.ndarray:
        return -self.L + self.dx * np.arange(self.N)

    def mesh(self) -> list:
        """Coordinate arrays ``X[0], ..., X[m-1]`` (``indexing='ij'``)."""
        ax = self.axis()
        return np.meshgrid(*([ax] * self.m), indexing="ij")

    def wavenumbers(self) -> np.ndarray:
        return 2 * pi * np.fft.fftfreq(self.N, d=self.dx)

    def kmesh(self) -> list:
        k = self.wavenumbers()
        return np.meshgrid(*([k] * self.m), indexing="ij")

    def refined(self, factor: int = 2) -> "GridSpec":
        return GridSpec(self.m, self.N * factor, self.L)


class GridFunction:
    """Complex samples of a function on a :class:`GridSpec`."""

    __slots__ = ("spec", "values")

    def __init__(self, spec: GridSpec, values):
        values = np.asarray(values, dtype=complex)
        if values.shape != spec.shape:
            raise ValueError(f"values of shape {values.shape} do not match grid {spec.shape}")
        self.spec = spec
        self.values = values

    def _coerce(self, other):
        if isinstance(other, GridFunction):
            if other.spec != self.spec:
                raise ValueError("grid functions live on different grids")
            return other.values
        return other

    def __add__(self, other):
        return GridFunction(self.spec, self.values + self._coerce(other))

    def __sub__(self, other):
        return GridFunction(self.spec, self.values - self._coerce(other))

    def __mul__(self, other):
        """Pointwise product."""
        return GridFunction(self.spec, self.values * self._coerce(other))

    __rmul__ = __mul__

    def conj(self) -> "GridFunction":
        return GridFunction(self.spec, self.values.conj())

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))

    def restrict(self, coarse: GridSpec) -> "GridFunction":
        """Samples on a coarser grid with the same box (every k-th point)."""
        if coarse.L != self.spec.L or coarse.m != self.spec.m or self.spec.N % coarse.N:
            raise ValueError("grids are not nested")
        step = self.spec.N // coarse.N
        sl = (slice(None, None, step),) * self.spec.m
        return GridFunction(coarse, self.values[sl])

    def __repr__(self):
        return f"GridFunction(m={self.spec.m}, N={self.spec.N}, L={self.spec.L})"


# descriptors ----------------------------------------------------------
@dataclass(frozen=True)
class Gaussian:
    """``(2 pi sigma^2)^{-m/2} exp(-|x - center|^2 / (2 sigma^2))``, unit integral."""

    sigma: float = 1.0
    center: tuple | None = None
    normalized: bool = True


@dataclass(frozen=True)
class PlaneWave:
    """``exp(i k.x)``, optionally times an unnormalized Gaussian window of width ``window``."""

    k: tuple
    window: float | None = None


@dataclass(frozen=True)
class HermiteFunction:
    """Product of normalized Hermite functions ``psi_n(x / scale)`` along each axis."""

    orders: tuple
    scale: float = 1.0


@dataclass(frozen=True)
class Polynomial:
    poly: PolyExpr


def _hermite_1d(n: int, x: np.ndarray) -> np.ndarray:
    c = np.zeros(n + 1)
    c[n] = 1.0
    norm = 1.0 / sqrt(2.0 ** n * factorial(n) * sqrt(pi))
    return norm * _H.hermval(x, c) * np.exp(-x * x / 2)


def sample(desc, spec: GridSpec) -> GridFunction:
    """Sample a closed-form descriptor on ``spec``.

    A mapping ``{"kind": "gaussian", ...}`` is accepted in place of a
    descriptor instance.
    """
    if isinstance(desc, dict):
        kinds = {"gaussian": Gaussian, "planewave": PlaneWave, "hermite": HermiteFunction, "polynomial": Polynomial}
        args = dict(desc)
        kind = str(args.pop("kind", "")).lower().replace("_", "").replace(" ", "")
        if kind not in kinds:
            raise ValueError(f"unsupported function descriptor {desc!r}")
        desc = kinds[kind](**args)
    X = spec.mesh()
    m = spec.m
    if isinstance(desc, Gaussian):
        c = np.zeros(m) if desc.center is None else np.asarray(desc.center, dtype=float)
        r2 = sum((X[a] - c[a]) ** 2 for a in range(m))
        v = np.exp(-r2 / (2 * desc.sigma ** 2))
        if desc.normalized:
            v = v / (2 * pi * desc.sigma ** 2) ** (m / 2)
        return GridFunction(spec, v)
    if isinstance(desc, PlaneWave):
        k = np.asarray(desc.k, dtype=float)
        if k.shape != (m,):
            raise ValueError("wave vector has the wrong dimension")
        v = np.exp(1j * sum(k[a] * X[a] for a in range(m)))
        if desc.window is not None:
            v = v * np.exp(-sum(X[a] ** 2 for a in range(m)) / (2 * desc.window ** 2))
        return GridFunction(spec, v)
    if isinstance(desc, HermiteFunction):
        if len(desc.orders) != m:
            raise ValueError("need one Hermite order per axis")
        v = np.ones(spec.shape)
        for a, n in enumerate(desc.orders):
            v = v * _hermite_1d(int(n), X[a] / desc.scale) / sqrt(desc.scale)
        return GridFunction(spec, v)
    if isinstance(desc, Polynomial):
        if desc.poly.nvars != m:
            raise ValueError("polynomial has the wrong number of variables")
        return GridFunction(spec, desc.poly(*X))
    raise ValueError(f"unsupported function descriptor {desc!r}")


def grid_integral(f: GridFunction) -> complex:
    """Riemann sum times the cell volume."""
    return complex(np.sum(f.values) * f.spec.dx ** f.spec.m)


def spectrum(f: GridFunction) -> np.ndarray:
    """``a~(k_n)`` on the FFT wavenumber grid, ``(2 pi)^{-m}`` convention."""
    spec = f.spec
    K = spec.kmesh()
    shift = np.exp(1j * spec.L * sum(K))
    return np.fft.fftn(f.values) * shift * (spec.dx / (2 * pi)) ** spec.m


def gaussian_derivative(desc: Gaussian, alpha, spec: GridSpec) -> GridFunction:
    """``d^alpha`` of a :class:`Gaussian`, exactly, through Hermite polynomials."""
    m = spec.m
    X = spec.mesh()
    c = np.zeros(m) if desc.center is None else np.asarray(desc.center, dtype=float)
    s = desc.sigma * sqrt(2.0)
    v = np.ones(spec.shape)
    for a in range(m):
        u = (X[a] - c[a]) / s
        coef = np.zeros(alpha[a] + 1)
        coef[-1] = 1.0
        v = v * (-1.0 / s) ** alpha[a] * _H.hermval(u, coef) * np.exp(-u * u)
    if desc.normalized:
        v = v / (2 * pi * desc.sigma ** 2) ** (m / 2)
    return GridFunction(spec, v)
