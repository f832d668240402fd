"""Coproduct, counit, antipode and the Moyal-twisted coproduct on U(iso(m)).

The twist is ``F = exp(X)`` with ``X = (i/2) theta^{hk} P_h (x) P_k``; its two
legs commute, so ``F D(g) F^{-1} = sum_k ad_X^k(D(g)) / k!``. Every
``ad_X`` lowers the number of rotation generators by one, which makes the
series finite on the whole algebra.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import factorial

import numpy as np

from ..symbolic.scalar import ONE, ZERO, Scalar
from ..symbolic.theta import ThetaMatrix
from .uea import Iso, TensorUEA, UEAElement

__all__ = [
    "coproduct",
    "coproduct_iter",
    "coproduct_iter_direct",
    "counit",
    "antipode",
    "twist_generator",
    "adjoint_series",
    "twisted_coproduct",
    "twisted_coproduct_tensor",
    "beta_series",
    "omega_theta_correction",
    "SeriesDivergence",
]


class SeriesDivergence(ArithmeticError):
    """The adjoint series did not terminate within the order budget."""


def _word_coproduct(word: tuple) -> dict:
    # D is multiplicative and every generator is primitive: split the word
    # over all subsets; both halves stay in PBW order
    out: dict = {}
    for mask in product((0, 1), repeat=len(word)):
        left = tuple(g for g, s in zip(word, mask) if not s)
        right = tuple(g for g, s in zip(word, mask) if s)
        out[left, right] = out.get((left, right), 0) + 1
    return out


def coproduct(g: UEAElement) -> TensorUEA:
    """Primitive coproduct ``D(g) = g (x) 1 + 1 (x) g`` extended multiplicatively."""
    terms: dict = {}
    for w, c in g.terms.items():
        for key, mult in _word_coproduct(w).items():
            terms[key] = terms.get(key, ZERO) + c * mult
    return TensorUEA(g.alg, 2, terms)


def coproduct_iter(g: UEAElement, n: int) -> TensorUEA:
    """``D^(n)`` through ``D^(n+1) = (id^(n-1) (x) D) D^(n)``."""
    if n < 2:
        raise ValueError("iterated coproduct needs n >= 2")
    out = coproduct(g)
    for k in range(2, n):
        out = out.apply_to_slot(k - 1, lambda w: coproduct(UEAElement(g.alg, {w: ONE})))
    return out


def coproduct_iter_direct(g: UEAElement, n: int) -> TensorUEA:
    """Same as :func:`coproduct_iter`, distributing each letter over ``n`` slots."""
    if n < 2:
        raise ValueError("iterated coproduct needs n >= 2")
    terms: dict = {}
    for w, c in g.terms.items():
        for slots in product(range(n), repeat=len(w)):
            key = tuple(tuple(x for x, s in zip(w, slots) if s == k) for k in range(n))
            terms[key] = terms.get(key, ZERO) + c
    return TensorUEA(g.alg, n, terms)


def counit(g: UEAElement) -> Scalar:
    return g.counit()


def antipode(g: UEAElement) -> UEAElement:
    return g.antipode()


def twist_generator(alg: Iso, theta: ThetaMatrix) -> TensorUEA:
    """``X = (i/2) theta^{hk} P_h (x) P_k`` so that ``F = exp(X)``."""
    if theta.dim != alg.m:
        raise ValueError(f"theta is {theta.dim}x{theta.dim} but the algebra has m={alg.m}")
    half_i = Scalar(0, Fraction(1, 2))
    terms = {}
    for h, k, v in theta.nonzero:
        terms[(alg.P(h),), (alg.P(k),)] = half_i * v
    return TensorUEA(alg, 2, terms)


def adjoint_series(x: TensorUEA, y: TensorUEA, max_order: int = 12) -> list:
    """Nonzero terms ``ad_x^k(y) / k!`` for ``k = 0, 1, ...``.

    Raises :class:`SeriesDivergence` if a term of order ``max_order`` is
    still nonzero.
    """
    terms = []
    cur = y
    k = 0
    while not cur.is_zero():
        if k > max_order:
            raise SeriesDivergence(f"adjoint series still nonzero at order {k}")
        terms.append(cur.scale(Fraction(1, factorial(k))))
        cur = x.commutator(cur)
        k += 1
    return terms


def twisted_coproduct(g: UEAElement, theta: ThetaMatrix, max_order: int = 12) -> TensorUEA:
    """``F D(g) F^{-1}`` as an exact PBW-ordered tensor."""
    x = twist_generator(g.alg, theta)
    out = TensorUEA(g.alg, 2, {})
    for t in adjoint_series(x, coproduct(g), max_order):
        out = out + t
    return out


def twisted_coproduct_tensor(t: TensorUEA, slot: int, theta: ThetaMatrix) -> TensorUEA:
    """Apply the twisted coproduct to factor ``slot`` of ``t``."""
    return t.apply_to_slot(slot, lambda w: twisted_coproduct(UEAElement(t.alg, {w: ONE}), theta))


def beta_series(alg: Iso, theta: ThetaMatrix, order: int) -> list:
    """Order-by-order ``m (id (x) S)`` applied to the exponential series of ``F``.

    Entry ``k`` is the image of ``X^k / k!``; the element is the identity
    exactly when every entry past the first vanishes.
    """
    x = twist_generator(alg, theta)
    power = TensorUEA.unit(alg, 2)
    out = []
    for k in range(order + 1):
        term = power.scale(Fraction(1, factorial(k)))
        out.append(term.multiply_out([None, lambda e: e.antipode()]))
        power = power * x
    return out


def omega_theta_correction(alg: Iso, omega, theta: ThetaMatrix) -> TensorUEA:
    """``([omega, theta])^{ab} P_a (x) P_b`` from plain matrix multiplication."""
    om = np.array([[Fraction(v) for v in row] for row in omega], dtype=object)
    th = np.array([[Fraction(v) for v in row] for row in theta.entries], dtype=object)
    comm = om.dot(th) - th.dot(om)
    terms = {}
    for a in range(alg.m):
        for b in range(alg.m):
            if comm[a, b]:
                terms[(alg.P(a),), (alg.P(b),)] = comm[a, b]
    return TensorUEA(alg, 2, terms)
