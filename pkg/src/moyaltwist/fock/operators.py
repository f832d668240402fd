"""Creation and annihilation matrices, their twisted dressing, and the
exchange relations the dressed operators obey.

Dressing multiplies by diagonal phases of the total momentum of the state
the operator acts on::

    a^+_p -> a^+_p exp(-(i/2) p theta P),    a^p -> a^p exp(+(i/2) p theta P)

where ``p theta q`` is the bilinear form ``p_a theta^{ab} q_b``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import sqrt

import numpy as np
import scipy.sparse as sp

from ..modes import ModeSet
from ..symbolic.theta import ThetaMatrix
from .basis import FockBasis, Statistics

__all__ = [
    "FockOperator",
    "CCROperators",
    "build_ccr",
    "state_momenta",
    "dress",
    "jordan_schwinger",
    "number_operator",
    "hqccr_residuals",
    "verify_hqccr",
    "sector_dimension",
    "default_modes",
]


@dataclass(frozen=True)
class FockOperator:
    """A sparse matrix tied to the basis it acts on."""

    basis: FockBasis
    matrix: sp.csr_matrix

    def __post_init__(self):
        n = len(self.basis)
        if self.matrix.shape != (n, n):
            raise ValueError(f"matrix shape {self.matrix.shape} does not match basis dimension {n}")

    def _other(self, other):
        if isinstance(other, FockOperator):
            if other.basis != self.basis:
                raise ValueError("operators act on different Fock bases")
            return other.matrix
        return other

    def __matmul__(self, other):
        return FockOperator(self.basis, sp.csr_matrix(self.matrix @ self._other(other)))

    def __add__(self, other):
        return FockOperator(self.basis, sp.csr_matrix(self.matrix + self._other(other)))

    def __sub__(self, other):
        return FockOperator(self.basis, sp.csr_matrix(self.matrix - self._other(other)))

    def __mul__(self, s):
        return FockOperator(self.basis, sp.csr_matrix(self.matrix * s))

    __rmul__ = __mul__

    def adjoint(self) -> "FockOperator":
        return FockOperator(self.basis, sp.csr_matrix(self.matrix.conj().T))

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()


@dataclass
class CCROperators:
    """Annihilators ``a[j]`` and creators ``adag[j]`` for every mode."""

    modes: ModeSet
    basis: FockBasis
    a: list
    adag: list
    theta: ThetaMatrix | None = None

    @property
    def statistics(self) -> Statistics:
        return self.basis.statistics


def build_ccr(modes: ModeSet, statistics, nmax: int) -> CCROperators:
    """Undeformed ladder matrices on the truncated Fock space.

    Fermion signs follow the Jordan-Wigner ordering of the mode list.
    Creation out of the top sector ``N = nmax`` is dropped, so ``a a^+``
    is wrong on that sector only.
    """
    if modes is None or len(modes) == 0:
        raise ValueError("mode set is empty")
    basis = FockBasis(len(modes), statistics, nmax)
    fermi = basis.statistics is Statistics.FERMI
    dim = len(basis)
    a_ops, adag_ops = [], []
    for j in range(len(modes)):
        rows, cols, vals = [], [], []
        for col, s in enumerate(basis.states):
            if s[j] == 0:
                continue
            t = s[:j] + (s[j] - 1,) + s[j + 1:]
            if fermi:
                v = -1.0 if sum(s[:j]) % 2 else 1.0
            else:
                v = sqrt(s[j])
            rows.append(basis.index[t])
            cols.append(col)
            vals.append(v)
        a = sp.csr_matrix((vals, (rows, cols)), shape=(dim, dim), dtype=complex)
        a_ops.append(a)
        adag_ops.append(sp.csr_matrix(a.conj().T))
    return CCROperators(modes, basis, a_ops, adag_ops)


def state_momenta(modes: ModeSet, basis: FockBasis) -> list:
    """Total momentum ``sum_j n_j p_j`` of every basis state, exactly."""
    out = []
    for s in basis.states:
        tot = [Fraction(0)] * modes.m
        for n, p in zip(s, modes):
            if n:
                tot = [t + n * c for t, c in zip(tot, p)]
        out.append(tuple(tot))
    return out


def dress(ops: CCROperators, theta: ThetaMatrix) -> CCROperators:
    """Dressed operators realizing the twisted exchange relations."""
    if theta.dim != ops.modes.m:
        raise ValueError(f"theta is {theta.dim}x{theta.dim} but momenta have {ops.modes.m} components")
    moms = state_momenta(ops.modes, ops.basis)
    a_out, adag_out = [], []
    for j, p in enumerate(ops.modes):
        ang = np.array([float(theta.bilinear(p, P)) / 2 for P in moms])
        a_out.append(sp.csr_matrix(ops.a[j] @ sp.diags(np.exp(1j * ang))))
        adag_out.append(sp.csr_matrix(ops.adag[j] @ sp.diags(np.exp(-1j * ang))))
    return CCROperators(ops.modes, ops.basis, a_out, adag_out, theta)


def _generator_matrix(generator, modes: ModeSet) -> np.ndarray:
    M = len(modes)
    if isinstance(generator, str):
        name = generator.strip().upper()
        if not (name.startswith("P") and name[1:].isdigit()):
            raise ValueError(f"unknown generator {generator!r}")
        generator = int(name[1:]) - 1
    if isinstance(generator, (int, np.integer)):
        if not 0 <= generator < modes.m:
            raise ValueError(f"translation index {generator} out of range")
        return np.diag([float(p[generator]) for p in modes]).astype(complex)
    if isinstance(generator, tuple) and len(generator) == 2 and generator[0] == "M":
        # M_omega multiplies e_p by a linear function of x unless omega p = 0
        om = np.array(generator[1], dtype=object)
        for p in modes:
            if any(sum(om[a][b] * p[b] for b in range(modes.m)) for a in range(modes.m)):
                raise ValueError("rotation generator does not preserve the span of the plane-wave modes")
        return np.zeros((M, M), dtype=complex)
    g = np.asarray(generator, dtype=complex)
    if g.shape != (M, M):
        raise ValueError(f"generator matrix of shape {g.shape} does not act on {M} modes")
    return g


def jordan_schwinger(generator, ops: CCROperators) -> FockOperator:
    """``sigma(g) = sum_ij G_ij a^+_i a^j`` where ``g acts on a^+_j`` as ``sum_i G_ij a^+_i``.

    ``generator`` is a translation index (``0`` or ``"P1"``), the pair
    ``("M", omega)`` or an explicit ``M x M`` matrix.
    """
    g = _generator_matrix(generator, ops.modes)
    dim = len(ops.basis)
    out = sp.csr_matrix((dim, dim), dtype=complex)
    for i, j in zip(*np.nonzero(g)):
        out = out + g[i, j] * (ops.adag[i] @ ops.a[j])
    return FockOperator(ops.basis, sp.csr_matrix(out))


def number_operator(ops: CCROperators) -> FockOperator:
    return FockOperator(ops.basis, sp.csr_matrix(sum(ad @ a for ad, a in zip(ops.adag, ops.a))))


def hqccr_residuals(dressed: CCROperators, R) -> dict:
    """Largest violation of each twisted exchange family on states with ``N <= nmax - 1``.

    With ``r_ij`` the R-matrix phase on ``(e_i, e_j)`` and ``s = +-1``::

        a^i a^j       = s r_ij a^j a^i
        a^+_i a^+_j   = s r_ij a^+_j a^+_i
        a^i a^+_j     = delta_ij + s r_ji a^+_j a^i
    """
    if R.modes != dressed.modes:
        raise ValueError("R-matrix and operators are built on different mode sets")
    s = dressed.statistics.sign
    r = R.values
    cols = dressed.basis.below(dressed.basis.nmax - 1)
    eye = sp.identity(len(dressed.basis), dtype=complex, format="csr")
    worst = {"aa": 0.0, "adad": 0.0, "aad": 0.0}
    M = len(dressed.modes)
    a, ad = dressed.a, dressed.adag

    def norm(mat):
        sub = mat.tocsc()[:, cols]
        return float(np.max(np.abs(sub.data))) if sub.nnz else 0.0

    for i, j in product(range(M), repeat=2):
        worst["aa"] = max(worst["aa"], norm(a[i] @ a[j] - s * r[i, j] * (a[j] @ a[i])))
        worst["adad"] = max(worst["adad"], norm(ad[i] @ ad[j] - s * r[i, j] * (ad[j] @ ad[i])))
        delta = eye if i == j else 0
        worst["aad"] = max(worst["aad"], norm(a[i] @ ad[j] - delta - s * r[j, i] * (ad[j] @ a[i])))
    return worst


def verify_hqccr(dressed: CCROperators, R) -> float:
    """Max residual over the three twisted exchange families."""
    return max(hqccr_residuals(dressed, R).values())


def default_modes(n_modes: int, m: int = 2) -> ModeSet:
    """Deterministic generic momenta ``(j, j^2, j^3, ...)`` with ``j = 1..n_modes``."""
    return ModeSet([[Fraction(j ** (k + 1)) for k in range(m)] for j in range(1, n_modes + 1)])


def sector_dimension(statistics, modes, n: int, theta: ThetaMatrix | None = None, nmax: int | None = None) -> int:
    """Rank of the states ``a^+_{i_1} ... a^+_{i_n} |0>`` built from dressed creators.

    ``modes`` is a :class:`ModeSet` or a mode count (generic momenta are
    then chosen by :func:`default_modes`).
    """
    if not isinstance(modes, ModeSet):
        modes = default_modes(int(modes), theta.dim if theta is not None else 2)
    nmax = n if nmax is None else nmax
    if n > nmax:
        raise ValueError(f"sector n={n} exceeds the truncation nmax={nmax}")
    ops = build_ccr(modes, statistics, max(nmax, 1))
    if theta is not None:
        ops = dress(ops, theta)
    if n == 0:
        return 1
    vac = np.zeros(len(ops.basis), dtype=complex)
    vac[ops.basis.vacuum] = 1
    vecs = []
    for word in product(range(len(modes)), repeat=n):
        v = vac
        for j in reversed(word):
            v = ops.adag[j] @ v
        vecs.append(v)
    return int(np.linalg.matrix_rank(np.array(vecs), tol=1e-9))
