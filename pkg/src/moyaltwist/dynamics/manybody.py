"""Many-particle star Hamiltonians and their restriction from Fock space.

Particle ``i`` owns variables ``2i, 2i+1`` (generally ``m i .. m i + m - 1``)
and all particles share the same ``theta`` through the multiparticle matrix
``Theta^{(i,mu),(j,nu)} = theta^{mu nu}``.
"""
from __future__ import annotations

from itertools import combinations, permutations, product

import numpy as np

from ..fock.operators import build_ccr, dress
from ..hopf.representation import f_matrix, permutation_sign
from ..modes import ModeSet
from ..symbolic.operators import StarOperator
from ..symbolic.poly import PolyExpr
from ..symbolic.scalar import Scalar
from ..symbolic.theta import ThetaMatrix
from .landau import EPS, HamiltonianReport, LandauParams, _built, landau_closed_form_pointwise

__all__ = [
    "pair_potential",
    "n_particle_h_star",
    "two_particle_cross_term",
    "two_particle_h_star",
    "laplacian_correction",
    "fock_restriction_check",
]


def pair_potential(W: PolyExpr, h: int, k: int, n: int, m: int) -> PolyExpr:
    """``W(x_h - x_k)`` on ``n m`` variables.

    ``W`` is a polynomial in the ``m`` difference coordinates, or a polynomial
    on ``2m`` variables that is invariant under common translations.
    """
    if W.nvars == m:
        images = [PolyExpr.var(n * m, h * m + mu) - PolyExpr.var(n * m, k * m + mu) for mu in range(m)]
        return W.substitute(images)
    if W.nvars == 2 * m:
        for mu in range(m):
            if W.diff(mu) + W.diff(m + mu):
                raise ValueError("pair potential is not a function of the difference coordinates")
        return W.embed(n * m, [h * m + mu for mu in range(m)] + [k * m + mu for mu in range(m)])
    raise ValueError(f"pair potential must have {m} or {2 * m} variables")


def n_particle_h_star(h: StarOperator, W: PolyExpr | None, n: int, m: int | None = None) -> StarOperator:
    """``sum_h h(x_h, d_h) * + sum_{h<k} W(x_h - x_k) *``.

    ``h`` is in star form on one particle's ``m`` coordinates and is carried
    over to each particle unchanged. The pair term multiplies pointwise,
    since differences of coordinates star-commute with everything.
    """
    if n < 1:
        raise ValueError("need at least one particle")
    m = h.nvars if m is None else m
    out = StarOperator.zero(n * m)
    for i in range(n):
        out = out + h.embed(n * m, [i * m + mu for mu in range(m)])
    if W is not None:
        for a, b in combinations(range(n), 2):
            out = out + StarOperator.multiplication(pair_potential(W, a, b, n, m))
    return out


def two_particle_cross_term(p: LandauParams) -> dict:
    """Pointwise form of ``s b theta [i b eps^{ab}(x1^a d_{2b} + x2^a d_{1b}) - (2 + b theta) d_{1a} d_{2a}]``."""
    s, b, t = p.hbar2_over_2m, p.b, p.theta
    pref = s * b * t
    out: dict = {}

    def add(alpha, poly):
        key = tuple(alpha)
        out[key] = out[key] + poly if key in out else poly

    for a in range(2):
        for bb in range(2):
            if not EPS[a][bb]:
                continue
            c = Scalar(0, pref * b * EPS[a][bb])
            for i, j in ((0, 1), (1, 0)):
                alpha = [0] * 4
                alpha[2 * j + bb] = 1
                add(alpha, PolyExpr.var(4, 2 * i + a).scale(c))
        alpha = [0] * 4
        alpha[a] = 1
        alpha[2 + a] = 1
        add(alpha, PolyExpr.const(4, -pref * (2 + b * t)))
    return {k: v for k, v in out.items() if v}


def laplacian_correction(p: LandauParams) -> dict:
    """``-s (b theta / 2)^2 (Lap_1 + Lap_2)`` in pointwise form."""
    c = -p.hbar2_over_2m * (p.b * p.theta / 2) ** 2
    out = {}
    if c:
        for k in range(4):
            alpha = [0] * 4
            alpha[k] = 2
            out[tuple(alpha)] = PolyExpr.const(4, c)
    return out


def _merge(*dicts) -> dict:
    out: dict = {}
    for d in dicts:
        for k, v in d.items():
            out[k] = out[k] + v if k in out else v
    return out


def two_particle_h_star(p: LandauParams) -> HamiltonianReport:
    """Assemble ``H^(2) = h_1 * + h_2 *`` and compare with ``h (+) h`` plus the stated cross term.

    ``difference`` is ``H^(2)`` minus that expression. ``extra`` holds

    ``non_additive``
        ``H^(2) - h_1 - h_2`` (pointwise single-particle closed forms).
    ``corrected_difference``
        the difference after also subtracting :func:`laplacian_correction`.
    """
    p.check()
    theta = p.theta_matrix(2)
    built = _built(p, 0, 2, theta) + _built(p, 1, 2, theta)
    singles = _merge(landau_closed_form_pointwise(p, 0, 2), landau_closed_form_pointwise(p, 1, 2))
    cross = two_particle_cross_term(p)
    closed = StarOperator.from_pointwise(_merge(singles, cross), theta)
    diff = built - closed
    extra = {
        "non_additive": built - StarOperator.from_pointwise(singles, theta),
        "cross_term": StarOperator.from_pointwise(cross, theta) if cross else StarOperator.zero(4),
        "corrected_difference": diff - StarOperator.from_pointwise(laplacian_correction(p), theta)
        if p.b * p.theta
        else diff,
    }
    return HamiltonianReport(built, closed, diff, extra=extra)


def _tensor_state(occ, statistics: str, n_modes: int) -> np.ndarray:
    """Normalized (anti)symmetrized product vector of an occupation state."""
    labels = [j for j, k in enumerate(occ) for _ in range(k)]
    n = len(labels)
    v = np.zeros(n_modes ** n)
    for tau in permutations(range(n)):
        word = [labels[t] for t in tau]
        sign = permutation_sign(tau) if statistics == "fermi" else 1
        v[np.ravel_multi_index(word, (n_modes,) * n)] += sign
    return v / np.linalg.norm(v)


def fock_restriction_check(modes: ModeSet, nmax: int, n: int = 2, statistics: str = "bose",
                           theta: ThetaMatrix | None = None, hbar2_over_2m=1) -> dict:
    """Compare the free Fock Hamiltonian on the ``n``-particle sector with the direct operator.

    Fock side: ``sum_p s |p|^2 a^+_p a^p`` from dressed ladder matrices.
    Direct side: ``sum_i h_i`` on ``modes^{(x)n}`` with ``h e_p = s |p|^2 e_p``,
    conjugated by ``F^n`` and sandwiched between the (anti)symmetrized
    states that correspond to the occupation vectors.
    """
    if n > nmax:
        raise ValueError("sector beyond the truncation")
    s = float(hbar2_over_2m)
    m = modes.m
    theta = theta if theta is not None else ThetaMatrix.zero(m)
    ops = dress(build_ccr(modes, statistics, nmax), theta)
    energies = np.array([s * float(sum(c * c for c in p)) for p in modes])
    H = sum(e * (ad @ a) for e, ad, a in zip(energies, ops.adag, ops.a))
    sector = ops.basis.sector(n)
    fock_block = H.toarray()[np.ix_(sector, sector)]

    M = len(modes)
    diag = np.zeros((M,) * n)
    for idx in product(range(M), repeat=n):
        diag[idx] = sum(energies[i] for i in idx)
    hn = diag.reshape(-1).astype(complex)
    if n >= 2:
        F = f_matrix(modes, n, theta).diagonal()
    else:
        F = np.ones(M)
    U = np.array([F * _tensor_state(ops.basis.states[k], ops.statistics.value, M) for k in sector]).T
    direct_block = U.conj().T @ (hn[:, None] * U)
    single = [float(e) for e in sorted(energies)]
    additive = sorted(
        float(sum(energies[j] * occ for j, occ in enumerate(ops.basis.states[k]))) for k in sector
    )
    eig = np.sort(np.linalg.eigvalsh((fock_block + fock_block.conj().T) / 2))
    return {
        "residual": float(np.max(np.abs(fock_block - direct_block))) if sector else 0.0,
        "additivity_residual": float(np.max(np.abs(eig - np.array(additive)))) if sector else 0.0,
        "sector_dimension": len(sector),
        "single_particle_energies": single,
    }
