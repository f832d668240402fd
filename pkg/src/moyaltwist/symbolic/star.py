"""Moyal star product on polynomials and the Weyl map.

Convention: ``a * b = a exp[(i/2) <-d_h theta^{hk} ->d_k] b`` so that
``[x^h *, x^k] = +i theta^{hk}``. On polynomials the exponential series
terminates at order ``min(deg a, deg b)`` and every result is exact.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .poly import PolyExpr
from .scalar import Scalar
from .theta import ThetaMatrix

__all__ = [
    "moyal_star",
    "star_commutator",
    "star_power",
    "StarPoly",
    "weyl_normal_form",
    "inverse_weyl",
    "ordered_star_monomial",
]

# (i/2)^k / k! split into real magnitude and a power of i
_I_POWERS = (Scalar(1), Scalar(0, 1), Scalar(-1), Scalar(0, -1))


def _check(a: PolyExpr, b: PolyExpr, theta: ThetaMatrix):
    if a.nvars != b.nvars:
        raise ValueError(f"dimension mismatch: {a.nvars} vs {b.nvars} variables")
    if theta.dim != a.nvars:
        raise ValueError(f"theta is {theta.dim}x{theta.dim} but polynomials have {a.nvars} variables")


@lru_cache(maxsize=200_000)
def _monomial_star(alpha: tuple, beta: tuple, theta: ThetaMatrix) -> tuple:
    """x^alpha * x^beta as a tuple of (monomial, Scalar) pairs."""
    nz = theta.nonzero
    out: dict = {}
    layer = {(alpha, beta): Fraction(1)}
    order = 0
    while layer:
        weight = _I_POWERS[order % 4] * Fraction(1, (2 ** order) * factorial(order))
        for (a, b), c in layer.items():
            mono = tuple(x + y for x, y in zip(a, b))
            term = weight * c
            prev = out.get(mono)
            out[mono] = term if prev is None else prev + term
        if not nz:
            break
        nxt: dict = {}
        for (a, b), c in layer.items():
            for h, k, v in nz:
                ah, bk = a[h], b[k]
                if ah and bk:
                    aa = a[:h] + (ah - 1,) + a[h + 1:]
                    bb = b[:k] + (bk - 1,) + b[k + 1:]
                    key = (aa, bb)
                    inc = c * v * ah * bk
                    prev = nxt.get(key)
                    nxt[key] = inc if prev is None else prev + inc
        layer = {key: c for key, c in nxt.items() if c}
        order += 1
    return tuple((m, c) for m, c in out.items() if c)


def moyal_star(a: PolyExpr, b: PolyExpr, theta: ThetaMatrix) -> PolyExpr:
    """Exact Moyal product ``a * b`` of two polynomials.

    Examples
    --------
    >>> from moyaltwist.symbolic import PolyExpr, theta_2d
    >>> x1, x2 = PolyExpr.var(2, 0), PolyExpr.var(2, 1)
    >>> str(moyal_star(x1, x2, theta_2d(1)))
    'x1*x2 + (1/2)*i'
    """
    _check(a, b, theta)
    out: dict = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            c = ca * cb
            for m, w in _monomial_star(ma, mb, theta):
                t = c * w
                prev = out.get(m)
                out[m] = t if prev is None else prev + t
    return PolyExpr._from_clean(a.nvars, {m: c for m, c in out.items() if c})


def star_commutator(a: PolyExpr, b: PolyExpr, theta: ThetaMatrix) -> PolyExpr:
    """``a * b - b * a``."""
    return moyal_star(a, b, theta) - moyal_star(b, a, theta)


def star_power(a: PolyExpr, n: int, theta: ThetaMatrix) -> PolyExpr:
    out = PolyExpr.const(a.nvars, 1)
    for _ in range(n):
        out = moyal_star(out, a, theta)
    return out


class StarPoly:
    """Combination of ordered star-monomials ``x1^{*a1} * x2^{*a2} * ...``.

    Keys are exponent tuples read in ascending variable order, so
    ``(1, 1)`` stands for ``x1 * x2`` and never for ``x2 * x1``.
    """

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs=None):
        self.nvars = nvars
        self.coeffs = {tuple(k): v for k, v in (coeffs or {}).items() if v}

    def __eq__(self, other):
        return isinstance(other, StarPoly) and self.nvars == other.nvars and self.coeffs == other.coeffs

    def __repr__(self):
        return f"StarPoly({self})"

    def __str__(self):
        from .printing import format_poly

        return format_poly(PolyExpr(self.nvars, self.coeffs), star=True)


def ordered_star_monomial(alpha, theta: ThetaMatrix) -> PolyExpr:
    """Expand ``x1^{*a1} * ... * xN^{*aN}`` into ordinary monomials."""
    return _ordered_star_monomial(tuple(alpha), theta)


@lru_cache(maxsize=50_000)
def _ordered_star_monomial(alpha: tuple, theta: ThetaMatrix) -> PolyExpr:
    n = len(alpha)
    if not any(alpha):
        return PolyExpr.const(n, 1)
    # peel the last factor: x^{*alpha} = x^{*(alpha - e_last)} * x_last
    last = max(i for i, e in enumerate(alpha) if e)
    rest = list(alpha)
    rest[last] -= 1
    return moyal_star(_ordered_star_monomial(tuple(rest), theta), PolyExpr.var(n, last), theta)


def inverse_weyl(c: StarPoly, theta: ThetaMatrix) -> PolyExpr:
    """Evaluate a combination of ordered star-monomials as a polynomial."""
    if theta.dim != c.nvars:
        raise ValueError("dimension mismatch between StarPoly and theta")
    out = PolyExpr.zero(c.nvars)
    for alpha, coef in c.coeffs.items():
        out = out + ordered_star_monomial(alpha, theta).scale(coef)
    return out


def weyl_normal_form(f: PolyExpr, theta: ThetaMatrix) -> StarPoly:
    """Rewrite ``f`` over ordered star-monomials.

    Each ordered star-monomial equals the ordinary monomial plus terms of
    strictly lower degree, so the top-degree part is read off directly and
    the remainder is handled recursively.
    """
    if theta.dim != f.nvars:
        raise ValueError("dimension mismatch between polynomial and theta")
    coeffs: dict = {}
    rest = f
    while rest:
        d = rest.degree()
        top = {m: c for m, c in rest.items() if sum(m) == d}
        for m, c in top.items():
            coeffs[m] = coeffs.get(m, Scalar(0)) + c
        rest = rest - inverse_weyl(StarPoly(f.nvars, top), theta)
        if rest and rest.degree() >= d:
            raise ArithmeticError("Weyl reduction failed to lower the degree")
    return StarPoly(f.nvars, coeffs)

