"""Deformed Landau Hamiltonian in the symmetric gauge.

With ``theta^{ab} = theta eps^{ab}`` (``eps^{12} = 1``) the covariant
derivative ``D_a = d_a + i b eps^{ab} (x^b *)`` gives, with ``c = 1 + b theta/2``
and ``l = -i eps^{ab} x^a d_b``::

    -s D_a * D_a *  =  s [ -c^2 Lap + b^2 |x|^2 - 2 b c l ]

where ``s = hbar^2/2m``. The operator is ``c`` times the undeformed one in
coordinates dilated by ``sqrt(c)``; its levels are ``2 s b c (2 n_r + |m| - m + 1)``.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass, field
from fractions import Fraction
from math import sqrt

import numpy as np
import scipy.sparse as sp

from ..symbolic.operators import StarOperator, op_compose
from ..symbolic.poly import PolyExpr
from ..symbolic.scalar import Scalar
from ..symbolic.theta import ThetaMatrix, multiparticle_theta, theta_2d

__all__ = [
    "SingularDeformation",
    "LandauParams",
    "HamiltonianReport",
    "covariant_derivative",
    "landau_h_star",
    "landau_closed_form_pointwise",
    "landau_closed_form",
    "SpectrumResult",
    "oscillator_matrix",
    "landau_spectrum",
    "write_spectrum_csv",
]

EPS = ((0, 1), (-1, 0))


class SingularDeformation(ValueError):
    """``1 + b theta / 2 = 0``."""


@dataclass(frozen=True)
class LandauParams:
    b: Fraction
    theta: Fraction
    hbar2_over_2m: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("b", "theta", "hbar2_over_2m"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    @property
    def scale_factor(self) -> Fraction:
        """``c = 1 + b theta / 2``."""
        return 1 + self.b * self.theta / 2

    @property
    def singular(self) -> bool:
        return self.scale_factor == 0

    def check(self):
        if self.singular:
            raise SingularDeformation(f"1 + b theta/2 vanishes for b={self.b}, theta={self.theta}")

    def theta_matrix(self, particles: int = 1) -> ThetaMatrix:
        return multiparticle_theta(theta_2d(self.theta), particles)


@dataclass
class HamiltonianReport:
    built: StarOperator
    closed_form: StarOperator
    difference: StarOperator
    spectrum: list | None = None
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.difference.is_zero()


def covariant_derivative(p: LandauParams, a: int, particle: int = 0, particles: int = 1) -> StarOperator:
    """``D_a = d_a + i b eps^{ab} (x^b *)`` on coordinate ``a`` of ``particle``."""
    n = 2 * particles
    d = StarOperator.derivative(n, 2 * particle + a)
    coef = PolyExpr.zero(n)
    for bb in range(2):
        if EPS[a][bb]:
            coef = coef + PolyExpr.var(n, 2 * particle + bb).scale(Scalar(0, p.b * EPS[a][bb]))
    return d + StarOperator.multiplication(coef)


def _built(p: LandauParams, particle: int, particles: int, theta: ThetaMatrix) -> StarOperator:
    out = StarOperator.zero(2 * particles)
    for a in range(2):
        D = covariant_derivative(p, a, particle, particles)
        out = out + op_compose(D, D, theta)
    return out.scale(-p.hbar2_over_2m)


def landau_closed_form_pointwise(p: LandauParams, particle: int = 0, particles: int = 1) -> dict:
    """``s[-c^2 Lap + b^2 |x|^2 - 2 b c l]`` as ``{derivative index: coefficient}``."""
    n = 2 * particles
    s, c, b = p.hbar2_over_2m, p.scale_factor, p.b
    i0 = 2 * particle
    out: dict = {}

    def add(alpha, poly):
        key = tuple(alpha)
        out[key] = out[key] + poly if key in out else poly

    for a in range(2):
        alpha = [0] * n
        alpha[i0 + a] = 2
        add(alpha, PolyExpr.const(n, -s * c * c))
        add([0] * n, PolyExpr.var(n, i0 + a, 2).scale(s * b * b))
    # -2 b c l = -2 b c (-i) eps^{ab} x^a d_b
    for a in range(2):
        for bb in range(2):
            if EPS[a][bb]:
                alpha = [0] * n
                alpha[i0 + bb] = 1
                add(alpha, PolyExpr.var(n, i0 + a).scale(Scalar(0, 2 * s * b * c * EPS[a][bb])))
    return {k: v for k, v in out.items() if v}


def landau_closed_form(p: LandauParams, particle: int = 0, particles: int = 1) -> StarOperator:
    theta = p.theta_matrix(particles)
    return StarOperator.from_pointwise(landau_closed_form_pointwise(p, particle, particles), theta)


def landau_h_star(p: LandauParams) -> HamiltonianReport:
    """Build ``-s D_a * D_a *`` and compare with the closed form, exactly."""
    p.check()
    theta = p.theta_matrix(1)
    built = _built(p, 0, 1, theta)
    closed = landau_closed_form(p)
    return HamiltonianReport(built, closed, built - closed)


# spectrum -------------------------------------------------------------
def _oscillator_states(K: int) -> list:
    return [(n1, N - n1) for N in range(K + 1) for n1 in range(N, -1, -1)]


def oscillator_matrix(pointwise: dict, K: int, omega: float) -> np.ndarray:
    """Matrix of ``sum_alpha g_alpha(x) d^alpha`` on 2-D oscillator states ``n1 + n2 <= K``.

    Products are formed in a basis enlarged by the operator's total degree
    and then cut back, so every retained entry is exact.
    """
    margin = max((g.degree() + sum(alpha) for alpha, g in pointwise.items()), default=0)
    states = _oscillator_states(K + margin)
    index = {s: k for k, s in enumerate(states)}
    dim = len(states)
    ladders = []
    for axis in range(2):
        rows, cols, vals = [], [], []
        for col, s in enumerate(states):
            if s[axis]:
                t = list(s)
                t[axis] -= 1
                rows.append(index[tuple(t)])
                cols.append(col)
                vals.append(sqrt(s[axis]))
        ladders.append(sp.csr_matrix((vals, (rows, cols)), shape=(dim, dim)))
    X = [(A + A.T) / sqrt(2 * omega) for A in ladders]
    D = [(A - A.T) * sqrt(omega / 2) for A in ladders]
    eye = sp.identity(dim, format="csr")

    def power(mat, e):
        out = eye
        for _ in range(e):
            out = out @ mat
        return out

    H = sp.csr_matrix((dim, dim), dtype=complex)
    for alpha, g in pointwise.items():
        deriv = power(D[0], alpha[0]) @ power(D[1], alpha[1])
        for mono, c in g.items():
            H = H + complex(c) * (power(X[0], mono[0]) @ power(X[1], mono[1]) @ deriv)
    keep = len(_oscillator_states(K))
    return H[:keep, :keep].toarray()


@dataclass
class SpectrumResult:
    """Sorted eigenvalues plus the distinct levels they cluster into."""

    eigenvalues: np.ndarray
    levels: list  # (value, multiplicity, converged)
    basis_size: int
    omega: float
    hermitian_defect: float

    def lowest_levels(self, count: int) -> np.ndarray:
        return np.array([v for v, _, _ in self.levels[:count]])

    @property
    def converged(self) -> bool:
        return all(c for _, _, c in self.levels)


def _cluster(vals: np.ndarray, rtol: float = 1e-9) -> list:
    levels = []
    for v in vals:
        if levels and abs(v - levels[-1][0]) <= rtol * max(1.0, abs(v)):
            levels[-1][1] += 1
        else:
            levels.append([v, 1])
    return levels


def landau_spectrum(p: LandauParams, K: int = 20, omega: float | None = None, levels: int = 10,
                    rtol: float = 1e-10) -> SpectrumResult:
    """Diagonalize the built ``h_*`` in an oscillator basis with ``n1 + n2 <= K``.

    The operator is taken from its symbolic construction, rewritten in
    pointwise form. ``omega`` defaults to ``b / c``, the frequency of the
    harmonic part ``-c^2 Lap + b^2 |x|^2``. The lowest ``levels`` distinct
    levels are flagged converged when recomputing with ``2K`` moves them by
    less than ``rtol`` relative.
    """
    p.check()
    if p.b <= 0 or p.scale_factor <= 0:
        raise ValueError("spectrum needs b > 0 and 1 + b theta/2 > 0")
    if K < 1:
        raise ValueError("basis too small")
    rep = landau_h_star(p)
    pointwise = rep.built.to_pointwise(p.theta_matrix(1))
    w = float(p.b / p.scale_factor) if omega is None else float(omega)

    def diag(k):
        H = oscillator_matrix(pointwise, k, w)
        defect = float(np.max(np.abs(H - H.conj().T)))
        return np.linalg.eigvalsh((H + H.conj().T) / 2), defect

    vals, defect = diag(K)
    ref, _ = diag(2 * K)
    lv = _cluster(vals)
    ref_lv = _cluster(ref)
    out = []
    for k, (v, mult) in enumerate(lv):
        ok = k < levels and k < len(ref_lv) and abs(ref_lv[k][0] - v) <= rtol * abs(v)
        out.append((float(v), mult, bool(ok)))
    return SpectrumResult(vals, out[: max(levels, 1)], len(_oscillator_states(K)), w, defect)


def write_spectrum_csv(path, result: SpectrumResult) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["index", "eigenvalue", "multiplicity", "converged"])
        for k, (v, mult, ok) in enumerate(result.levels):
            w.writerow([k, repr(v), mult, int(ok)])
