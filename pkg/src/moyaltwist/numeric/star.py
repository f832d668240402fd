"""Moyal product of sampled functions through the Fourier-integral form.

With both factors expanded in the box Fourier series,
``a * b (x) = sum_{n,l} c_n d_l exp(i (k_n + k_l).x - (i/2) k_n theta k_l)``.
The factorized path sums over ``n`` only, using the shifted copy
``b(x + theta k_n / 2)`` computed by a phase in Fourier space::

    (theta k)_b = theta^{ba} k_a

In two dimensions the twist phase splits as
``exp(-(i/2) t k_1 l_2) exp(+(i/2) t k_2 l_1)`` with ``t = theta^{12}``, and the
double sum becomes three contractions of cost ``O(N^4)`` each (the
``"planar"`` path).
"""
from __future__ import annotations

import warnings
from math import ceil

import numpy as np

from ..symbolic.theta import ThetaMatrix
from .grid import GridFunction, GridSpec

__all__ = ["AliasingWarning", "grid_star", "nyquist_fraction"]


class AliasingWarning(RuntimeWarning):
    """A factor has spectral weight at the Nyquist boundary."""


def _theta_array(theta, m: int) -> np.ndarray:
    if isinstance(theta, ThetaMatrix):
        t = theta.to_numpy()
    elif np.isscalar(theta):
        if m != 2:
            raise ValueError("a scalar theta needs a two-dimensional grid")
        t = np.array([[0.0, float(theta)], [-float(theta), 0.0]])
    else:
        t = np.asarray(theta, dtype=float)
    if t.shape != (m, m):
        raise ValueError(f"theta must be {m}x{m}")
    if np.max(np.abs(t + t.T)) > 0:
        raise ValueError("theta must be antisymmetric")
    return t


def nyquist_fraction(f: GridFunction) -> float:
    """Largest Fourier coefficient on the Nyquist planes relative to the largest overall."""
    c = np.abs(np.fft.fftn(f.values))
    top = c.max()
    if top == 0:
        return 0.0
    h = f.spec.N // 2
    edge = 0.0
    for a in range(f.spec.m):
        edge = max(edge, float(np.take(c, h, axis=a).max()))
    return edge / top


def grid_star(
    a: GridFunction,
    b: GridFunction,
    theta,
    method: str = "auto",
    alias_tol: float = 1e-8,
    chunk: int = 256,
) -> GridFunction:
    """``a * b`` on the grid.

    Parameters
    ----------
    theta : ThetaMatrix, array or float
        A float means ``theta^{12} = theta`` on a 2-D grid.
    method : {"auto", "planar", "factorized", "direct"}
        ``"auto"`` picks ``"planar"`` on 2-D grids and ``"factorized"``
        otherwise. ``"direct"`` evaluates the double Fourier sum point by point,
        ``O(N^{2m})`` per output point; it is a reference for small grids.
    alias_tol : float or None
        Emit :class:`AliasingWarning` when either factor's Nyquist weight
        exceeds this fraction. ``None`` switches the check off.
    """
    if a.spec != b.spec:
        raise ValueError("grid functions live on different grids")
    spec = a.spec
    t = _theta_array(theta, spec.m)
    if alias_tol is not None:
        for name, f in (("left", a), ("right", b)):
            frac = nyquist_fraction(f)
            if frac > alias_tol:
                warnings.warn(
                    f"{name} factor has relative weight {frac:.2e} at the Nyquist boundary",
                    AliasingWarning,
                    stacklevel=2,
                )
    if method == "auto":
        method = "planar" if spec.m == 2 else "factorized"
    if method == "planar":
        if spec.m != 2:
            raise ValueError("the planar path needs a two-dimensional grid")
        return GridFunction(spec, _planar(a.values, b.values, t[0, 1], spec))
    if method == "factorized":
        return GridFunction(spec, _factorized(a.values, b.values, t, spec, chunk))
    if method == "direct":
        return GridFunction(spec, _direct(a.values, b.values, t, spec))
    raise ValueError(f"unknown method {method!r}")


def _coefficients(values, spec: GridSpec):
    """Fourier-series coefficients ``c_n`` with ``a(x_j) = sum_n c_n exp(i k_n.x_j)``."""
    K = spec.kmesh()
    return np.fft.fftn(values) * np.exp(1j * spec.L * sum(K)) / spec.N ** spec.m


def _factorized(av, bv, t, spec: GridSpec, chunk: int) -> np.ndarray:
    m = spec.m
    X = spec.mesh()
    kflat = np.stack([k.reshape(-1) for k in spec.kmesh()], axis=1)  # (N^m, m)
    c = _coefficients(av, spec).reshape(-1)
    B = np.fft.fftn(bv)
    # shifts s_n = theta k_n / 2 with (theta k)_b = theta^{ba} k_a
    shifts = -0.5 * kflat @ t
    Kb = [k.reshape(-1) for k in spec.kmesh()]
    axes = tuple(range(1, m + 1))
    out = np.zeros(spec.shape, dtype=complex)
    live = np.nonzero(c)[0]
    for start in range(0, len(live), chunk):
        idx = live[start:start + chunk]
        phase = np.exp(1j * (shifts[idx] @ np.stack(Kb)))  # (chunk, N^m)
        shifted = np.fft.ifftn(B[None] * phase.reshape((len(idx),) + spec.shape), axes=axes)
        waves = np.exp(1j * sum(kflat[idx, a].reshape((-1,) + (1,) * m) * X[a][None] for a in range(m)))
        out += np.einsum("n,n...->...", c[idx], waves * shifted)
    return out


def _planar(av, bv, t12: float, spec: GridSpec) -> np.ndarray:
    k = spec.wavenumbers()
    x = spec.axis()
    E = np.exp(1j * np.outer(k, x))  # E[n, x] = exp(i k_n x)
    A = np.exp(0.5j * t12 * np.outer(k, k))  # A[l1, n2]
    B = A.conj()  # B[l2, n1]
    c = _coefficients(av, spec)
    d = _coefficients(bv, spec)
    left = np.einsum("pq,lq,qy->ply", c, A, E, optimize=True)  # (n1, l1, x2)
    right = np.einsum("lr,ry,rp->ply", d, E, B, optimize=True)  # (n1, l1, x2)
    return np.einsum("px,lx,ply->xy", E, E, left * right, optimize=True)


def _direct(av, bv, t, spec: GridSpec) -> np.ndarray:
    kflat = np.stack([k.reshape(-1) for k in spec.kmesh()], axis=1)
    c = _coefficients(av, spec).reshape(-1)
    d = _coefficients(bv, spec).reshape(-1)
    twist = np.exp(-0.5j * np.einsum("na,ab,lb->nl", kflat, t, kflat))
    w = c[:, None] * d[None, :] * twist
    xs = np.stack([x.reshape(-1) for x in spec.mesh()], axis=1)
    out = np.empty(xs.shape[0], dtype=complex)
    step = max(1, ceil(2 ** 22 / w.size))
    for start in range(0, xs.shape[0], step):
        x = xs[start:start + step]
        ex = np.exp(1j * x @ kflat.T)  # (p, N^m)
        out[start:start + step] = np.einsum("pn,nl,pl->p", ex, w, ex)
    return out.reshape(spec.shape)
