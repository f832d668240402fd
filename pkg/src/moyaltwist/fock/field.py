"""Operator-valued functions and their star product.

An element is a finite sum of terms ``c exp(i k.x) O`` where ``O`` is a Fock
matrix of definite momentum (``a^+_p`` carries ``+p``, ``a^p`` carries
``-p``). Only the total momentum ``K`` of a term matters to the twist, so a
term is stored as ``(c, K, O)`` with the plane wave already evaluated at the
sample point. The star product of two terms is::

    (c, K, O) * (c', K', O') = (c c' exp(-(i/2) K theta K'), K + K', O O')
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import scipy.sparse as sp

from ..symbolic.theta import ThetaMatrix
from .operators import CCROperators

__all__ = ["FieldElement", "field_phi", "field_phi_star", "operator_element", "field_star_algebra", "FieldReport"]


def _vec(v):
    return tuple(Fraction(c) for c in v)


class FieldElement:
    __slots__ = ("terms", "dim", "m")

    def __init__(self, terms, dim: int, m: int):
        self.terms = list(terms)
        self.dim = dim
        self.m = m

    def __add__(self, other: "FieldElement"):
        return FieldElement(self.terms + other.terms, self.dim, self.m)

    def scale(self, s) -> "FieldElement":
        return FieldElement([(c * s, K, O) for c, K, O in self.terms], self.dim, self.m)

    def __sub__(self, other):
        return self + other.scale(-1)

    def star(self, other: "FieldElement", theta: ThetaMatrix) -> "FieldElement":
        out = []
        for c1, K1, O1 in self.terms:
            for c2, K2, O2 in other.terms:
                ph = np.exp(-0.5j * float(theta.bilinear(K1, K2)))
                out.append((c1 * c2 * ph, tuple(a + b for a, b in zip(K1, K2)), O1 @ O2))
        return FieldElement(out, self.dim, self.m)

    def plain(self, other: "FieldElement") -> "FieldElement":
        """Product with the twist switched off."""
        out = []
        for c1, K1, O1 in self.terms:
            for c2, K2, O2 in other.terms:
                out.append((c1 * c2, tuple(a + b for a, b in zip(K1, K2)), O1 @ O2))
        return FieldElement(out, self.dim, self.m)

    def matrix(self) -> sp.csr_matrix:
        total = sp.csr_matrix((self.dim, self.dim), dtype=complex)
        for c, _, O in self.terms:
            total = total + c * O
        return sp.csr_matrix(total)

    def momenta(self) -> set:
        return {K for c, K, O in self.terms if c != 0}


def operator_element(matrix, momentum, ops: CCROperators, coeff=1.0) -> FieldElement:
    return FieldElement([(coeff, _vec(momentum), sp.csr_matrix(matrix))], len(ops.basis), ops.modes.m)


def field_phi(ops: CCROperators, x) -> FieldElement:
    """``phi(x) = sum_p exp(i p.x) a^p``; every term has total momentum 0."""
    x = np.asarray(x, dtype=float)
    zero = (Fraction(0),) * ops.modes.m
    terms = [
        (np.exp(1j * float(np.dot(ops.modes.as_array()[j], x))), zero, ops.a[j]) for j in range(len(ops.modes))
    ]
    return FieldElement(terms, len(ops.basis), ops.modes.m)


def field_phi_star(ops: CCROperators, y) -> FieldElement:
    """``phi^*(y) = sum_p exp(-i p.y) a^+_p``."""
    y = np.asarray(y, dtype=float)
    zero = (Fraction(0),) * ops.modes.m
    terms = [
        (np.exp(-1j * float(np.dot(ops.modes.as_array()[j], y))), zero, ops.adag[j]) for j in range(len(ops.modes))
    ]
    return FieldElement(terms, len(ops.basis), ops.modes.m)


@dataclass
class FieldReport:
    """Largest residual of each identity over all sample pairs."""

    phi_phi: float = 0.0
    phi_phistar: float = 0.0
    field_invariance: float = 0.0
    number_operator: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def max_residual(self) -> float:
        return max(self.phi_phi, self.phi_phistar, self.field_invariance, self.number_operator)


def _interior_norm(mat, cols) -> float:
    sub = sp.csc_matrix(mat)[:, cols]
    return float(np.max(np.abs(sub.data))) if sub.nnz else 0.0


def field_star_algebra(ops: CCROperators, samples, theta: ThetaMatrix) -> FieldReport:
    """Check the field exchange relations and the star-triviality of ``phi``.

    ``ops`` are the undeformed ladder matrices; the twist enters only
    through the star product of field elements. Relations involving
    ``a a^+`` are compared on states with ``N <= nmax - 1``.
    """
    s = ops.statistics.sign
    cols = ops.basis.below(ops.basis.nmax - 1)
    eye = sp.identity(len(ops.basis), dtype=complex, format="csr")
    moms = ops.modes.as_array()
    rep = FieldReport()

    spanning = []
    for j, p in enumerate(ops.modes):
        spanning.append(operator_element(ops.adag[j], p, ops))
        spanning.append(operator_element(ops.a[j], [-c for c in p], ops))
        for k, q in enumerate(ops.modes):
            spanning.append(
                operator_element(ops.adag[j] @ ops.a[k], [a - b for a, b in zip(p, q)], ops)
            )

    for x in samples:
        phx = field_phi(ops, x)
        for omega in spanning:
            for lhs, rhs in ((phx.star(omega, theta), phx.plain(omega)), (omega.star(phx, theta), omega.plain(phx))):
                rep.field_invariance = max(rep.field_invariance, _interior_norm(lhs.matrix() - rhs.matrix(), cols))
        for y in samples:
            phy = field_phi(ops, y)
            comm = phx.star(phy, theta) - phy.star(phx, theta).scale(s)
            rep.phi_phi = max(rep.phi_phi, _interior_norm(comm.matrix(), cols))
            psy = field_phi_star(ops, y)
            comm = phx.star(psy, theta) - psy.star(phx, theta).scale(s)
            # phi_p(x) * phi_p^*(y) for plane waves in separate arguments: the
            # twist phase exp(-(i/2) p theta (-p)) is 1
            rhs = sum(np.exp(1j * float(np.dot(p, np.asarray(x) - np.asarray(y)))) for p in moms)
            rep.phi_phistar = max(rep.phi_phistar, _interior_norm(comm.matrix() - rhs * eye, cols))

    nstar = FieldElement([], len(ops.basis), ops.modes.m)
    for j, p in enumerate(ops.modes):
        cre = operator_element(ops.adag[j], p, ops)
        ann = operator_element(ops.a[j], [-c for c in p], ops)
        nstar = nstar + cre.star(ann, theta)
    plain = sum(ad @ a for ad, a in zip(ops.adag, ops.a))
    diff = nstar.matrix() - plain
    rep.number_operator = float(np.max(np.abs(diff.data))) if diff.nnz else 0.0
    rep.details = {"samples": len(list(samples)), "interior_states": len(cols)}
    return rep
