"""The Moyal twist on finite sets of plane waves.

``P_a`` acts on ``e_p`` by ``p_a``, so ``F``, ``R`` and their iterates are
diagonal in mode labels. Phases are kept as exact rational exponents
``E`` (the phase is ``exp(i E)``) and only exponentiated on demand.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from math import factorial, sqrt

import numpy as np

from ..modes import ModeSet
from ..symbolic.theta import ThetaMatrix

__all__ = [
    "PhaseTensor",
    "pair_exponent",
    "iterated_exponent",
    "f_matrix",
    "r_matrix",
    "check_cocycle",
    "check_counit",
    "beta_phase",
    "permutation_matrix",
    "twisted_permutation",
    "twisted_symmetrizer",
    "permutation_sign",
    "compose_permutations",
    "DeformedPair",
    "deformed_basis",
    "SlaterResult",
    "slater_hat",
    "product_to_hat",
]


def _vec_add(p, q):
    return tuple(a + b for a, b in zip(p, q))


def pair_exponent(p, q, theta: ThetaMatrix) -> Fraction:
    """Exponent of ``F`` on ``e_p (x) e_q``: ``(1/2) p theta q``."""
    return theta.bilinear(p, q) / 2


def iterated_exponent(moms, theta: ThetaMatrix) -> Fraction:
    """Exponent of the ``n``-fold twist on ``e_{p_1} (x) ... (x) e_{p_n}``.

    Follows ``F^{n+1} = (1 (x) F)(id (x) D) F^n``: the coproduct in the last
    slot replaces that leg by the total momentum of the last two factors.
    """
    moms = [tuple(p) for p in moms]
    n = len(moms)
    if n < 2:
        raise ValueError("iterated twist needs at least two factors")
    if n == 2:
        return pair_exponent(moms[0], moms[1], theta)
    merged = moms[:-2] + [_vec_add(moms[-2], moms[-1])]
    return pair_exponent(moms[-2], moms[-1], theta) + iterated_exponent(merged, theta)


class PhaseTensor:
    """Diagonal operator on ``modes^{(x)n}`` given by exact phase exponents.

    ``exponents[i_1, ..., i_n]`` is a Fraction ``E`` and the entry is
    ``exp(i E)``.
    """

    __slots__ = ("modes", "order", "exponents")

    def __init__(self, modes: ModeSet, exponents: np.ndarray):
        self.modes = modes
        self.exponents = exponents
        self.order = exponents.ndim
        if exponents.shape != (len(modes),) * self.order:
            raise ValueError("exponent array does not match the mode set")

    @classmethod
    def from_function(cls, modes: ModeSet, n: int, fn) -> "PhaseTensor":
        ex = np.empty((len(modes),) * n, dtype=object)
        for idx in product(range(len(modes)), repeat=n):
            ex[idx] = Fraction(fn(*(modes[i] for i in idx)))
        return cls(modes, ex)

    @property
    def values(self) -> np.ndarray:
        return np.exp(1j * self.exponents.astype(float))

    def __getitem__(self, idx) -> complex:
        return complex(np.exp(1j * float(self.exponents[idx])))

    def inverse(self) -> "PhaseTensor":
        return PhaseTensor(self.modes, -self.exponents)

    def __mul__(self, other: "PhaseTensor") -> "PhaseTensor":
        if other.modes != self.modes or other.order != self.order:
            raise ValueError("phase tensors live on different spaces")
        return PhaseTensor(self.modes, self.exponents + other.exponents)

    def transpose(self, axes) -> "PhaseTensor":
        return PhaseTensor(self.modes, np.transpose(self.exponents, axes))

    def flip(self) -> "PhaseTensor":
        """``tau(.)``: exchange of the two legs of an order-2 tensor."""
        if self.order != 2:
            raise ValueError("flip needs an order-2 tensor")
        return self.transpose((1, 0))

    def diagonal(self) -> np.ndarray:
        """Entries as the diagonal of the ``M^n x M^n`` matrix (row-major labels)."""
        return self.values.reshape(-1)

    def matrix(self) -> np.ndarray:
        return np.diag(self.diagonal())

    def is_identity(self) -> bool:
        return all(e == 0 for e in self.exponents.flat)

    def max_deviation(self, other: "PhaseTensor") -> float:
        return float(np.max(np.abs(self.values - other.values)))


def _require_modes(modes: ModeSet):
    if modes is None or len(modes) == 0:
        raise ValueError("mode set is empty")


def f_matrix(modes: ModeSet, n: int, theta: ThetaMatrix) -> PhaseTensor:
    """The ``n``-fold twist ``F^n`` on plane waves; ``F`` has phase ``exp((i/2) p theta q)``."""
    _require_modes(modes)
    if n < 2:
        raise ValueError("f_matrix needs n >= 2")
    return PhaseTensor.from_function(modes, n, lambda *ps: iterated_exponent(ps, theta))


def r_matrix(modes: ModeSet, theta: ThetaMatrix) -> PhaseTensor:
    """``R = tau(F) F^{-1}``; its phase on ``(e_p, e_q)`` is ``exp(i q theta p)``."""
    _require_modes(modes)
    f = f_matrix(modes, 2, theta)
    return f.flip() * f.inverse()


def check_cocycle(theta: ThetaMatrix, modes: ModeSet) -> float:
    """``max |(F (x) 1)(D (x) id)F - (1 (x) F)(id (x) D)F|`` on ``modes^3``."""
    _require_modes(modes)
    lhs = PhaseTensor.from_function(
        modes, 3, lambda p, q, r: pair_exponent(p, q, theta) + pair_exponent(_vec_add(p, q), r, theta)
    )
    rhs = PhaseTensor.from_function(
        modes, 3, lambda p, q, r: pair_exponent(q, r, theta) + pair_exponent(p, _vec_add(q, r), theta)
    )
    return lhs.max_deviation(rhs)


def check_counit(theta: ThetaMatrix, modes: ModeSet) -> float:
    """Deviation of ``(eps (x) id)F`` and ``(id (x) eps)F`` from 1.

    The counit is the trivial representation, i.e. zero momentum.
    """
    _require_modes(modes)
    zero = (Fraction(0),) * modes.m
    worst = 0.0
    for p in modes:
        for e in (pair_exponent(zero, p, theta), pair_exponent(p, zero, theta)):
            worst = max(worst, abs(np.exp(1j * float(e)) - 1))
    return worst


def beta_phase(modes: ModeSet, theta: ThetaMatrix) -> np.ndarray:
    """``beta = m (id (x) S) F`` on each plane wave; ``S`` sends ``p`` to ``-p``."""
    _require_modes(modes)
    return np.array([np.exp(1j * float(pair_exponent(p, tuple(-c for c in p), theta))) for p in modes])


# permutations ---------------------------------------------------------
def _check_perm(tau, n=None) -> tuple:
    tau = tuple(int(t) for t in tau)
    if sorted(tau) != list(range(len(tau))) or (n is not None and len(tau) != n):
        raise ValueError(f"{tau} is not a permutation of 0..{(n or len(tau)) - 1}")
    return tau


def compose_permutations(sigma, tau) -> tuple:
    """``(sigma tau)(k) = sigma(tau(k))``."""
    return tuple(sigma[t] for t in tau)


def permutation_sign(tau) -> int:
    tau = list(tau)
    sign = 1
    for i in range(len(tau)):
        while tau[i] != i:
            j = tau[i]
            tau[i], tau[j] = tau[j], tau[i]
            sign = -sign
    return sign


def permutation_matrix(tau, n_modes: int) -> np.ndarray:
    """Ordinary ``P_tau``: the factor in position ``k`` moves to position ``tau(k)``."""
    tau = _check_perm(tau)
    n = len(tau)
    dim = n_modes ** n
    mat = np.zeros((dim, dim))
    for src, idx in enumerate(product(range(n_modes), repeat=n)):
        out = [0] * n
        for k, i in enumerate(idx):
            out[tau[k]] = i
        mat[np.ravel_multi_index(out, (n_modes,) * n), src] = 1.0
    return mat


def twisted_permutation(tau, modes: ModeSet, theta: ThetaMatrix) -> np.ndarray:
    """``F^n P_tau (F^n)^{-1}`` as a dense matrix on ``modes^{(x)n}``."""
    tau = _check_perm(tau)
    n = len(tau)
    p = permutation_matrix(tau, len(modes))
    if n == 1:
        return p
    d = f_matrix(modes, n, theta).diagonal()
    return d[:, None] * p * d.conj()[None, :]


def twisted_symmetrizer(n: int, modes: ModeSet, theta: ThetaMatrix, sign: int = 1) -> np.ndarray:
    """``(1/n!) sum_tau (+-1)^tau P^F_tau``; ``sign=-1`` gives the antisymmetrizer."""
    total = 0
    for tau in permutations(range(n)):
        weight = permutation_sign(tau) if sign < 0 else 1
        total = total + weight * twisted_permutation(tau, modes, theta)
    return total / factorial(n)


# deformed bases -------------------------------------------------------
def product_to_hat(coords: np.ndarray, modes: ModeSet, theta: ThetaMatrix) -> np.ndarray:
    """Rewrite a combination of ordinary products ``phi_{h1}(x_1)...phi_{hn}(x_n)``
    over ordered star products ``phi_{h1}(x^_1) * ... * phi_{hn}(x^_n)``.

    An ordered star product of plane waves equals the ordinary product times
    the inverse twist phase, so the conversion multiplies by ``F^n``.
    """
    n = coords.ndim
    if n == 1:
        return coords.astype(complex)
    return coords * f_matrix(modes, n, theta).values


@dataclass
class DeformedPair:
    """Coefficients of a deformed two-particle state over ``phi^_h(x^_1) phi^_k(x^_2)``."""

    lhs: np.ndarray
    n2: np.ndarray
    n2_swapped: np.ndarray

    @property
    def residual(self) -> float:
        return float(max(np.max(np.abs(self.lhs - self.n2)), np.max(np.abs(self.n2 - self.n2_swapped))))

    @property
    def agree(self) -> bool:
        return self.residual < 1e-12


def deformed_basis(i: int, j: int, modes: ModeSet, theta: ThetaMatrix, sign: int = 1) -> DeformedPair:
    """Three computations of the deformed (anti)symmetrized pair built on modes ``i, j``.

    ``lhs``
        ``Fbar^{hk}_{ij}`` applied to the ordinary pair, then mapped to the
        ordered star-product basis.
    ``n2``
        ``phi^_i phi^_j +- R^{kh}_{ij} phi^_h phi^_k`` contracted with the R-matrix.
    ``n2_swapped``
        the wavefunction order kept and the two noncommuting arguments exchanged.
    """
    _require_modes(modes)
    M = len(modes)
    s = 1 if sign >= 0 else -1
    p, q = modes[i], modes[j]

    fbar = np.exp(-1j * float(pair_exponent(p, q, theta)))
    prod = np.zeros((M, M), dtype=complex)
    prod[i, j] += fbar
    prod[j, i] += s * fbar
    lhs = product_to_hat(prod, modes, theta)

    r = r_matrix(modes, theta)
    n2 = np.zeros((M, M), dtype=complex)
    n2[i, j] += 1
    # R^{kh}_{ij} is diagonal: only k=i, h=j survive
    n2[j, i] += s * r[i, j]

    # phi^_j(x^_2) star-ordered after phi^_i: star product phase with the legs
    # placed at (x_2, x_1)
    swapped_prod = np.zeros((M, M), dtype=complex)
    swapped_prod[j, i] = np.exp(-1j * float(pair_exponent(p, q, theta)))
    n2s = np.zeros((M, M), dtype=complex)
    n2s[i, j] += 1
    n2s = n2s + s * product_to_hat(swapped_prod, modes, theta)
    return DeformedPair(lhs, n2, n2s)


@dataclass
class SlaterResult:
    hat: np.ndarray
    product: np.ndarray
    vanishes: bool


def slater_hat(indices, modes: ModeSet, theta: ThetaMatrix) -> SlaterResult:
    """Deformed Slater determinant ``(1/sqrt(n!)) sum_tau sgn(tau) phi^_{i_1}(x^_{tau 1}) * ...``.

    Wavefunctions stay in their order and only the noncommuting arguments are
    permuted. Returns coordinates over the ordered star-product basis
    (``hat``) and over ordinary products (``product``). A repeated index
    gives the zero vector with ``vanishes`` set.
    """
    _require_modes(modes)
    idx = [int(i) for i in indices]
    n = len(idx)
    M = len(modes)
    shape = (M,) * n
    if len(set(idx)) < n:
        z = np.zeros(shape, dtype=complex)
        return SlaterResult(z, z.copy(), True)
    # every ordered star product of these plane waves carries the same phase
    moms = [modes[i] for i in idx]
    phase = -sum((pair_exponent(moms[a], moms[b], theta) for a in range(n) for b in range(a + 1, n)), Fraction(0))
    prod = np.zeros(shape, dtype=complex)
    for tau in permutations(range(n)):
        pos = [0] * n
        for a in range(n):
            pos[tau[a]] = idx[a]
        prod[tuple(pos)] += permutation_sign(tau)
    prod *= np.exp(1j * float(phase)) / sqrt(factorial(n))
    return SlaterResult(product_to_hat(prod, modes, theta), prod, False)
