"""Star-differential operators with polynomial coefficients.

A :class:`StarOperator` is a finite sum ``sum_alpha (c_alpha *) d^alpha``:
the coefficient acts by left star-multiplication after the partial
derivatives. For the Moyal twist the derivatives are undeformed, which
gives the two composition rules used throughout::

    (f *) o (g *) = (f * g) *
    d_a o (f *)   = ((d_a f) *) + (f *) d_a
"""
from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Mapping

from .poly import PolyExpr
from .scalar import Scalar, as_scalar
from .star import moyal_star
from .theta import ThetaMatrix

__all__ = [
    "StarOperator",
    "op_compose",
    "op_apply",
    "op_adjoint",
]

_I_POWERS = (Scalar(1), Scalar(0, 1), Scalar(-1), Scalar(0, -1))


def _add_index(alpha: tuple, k: int, by: int = 1) -> tuple:
    return alpha[:k] + (alpha[k] + by,) + alpha[k + 1:]


class StarOperator:
    """``sum_alpha (c_alpha *) d^alpha`` on ``nvars`` coordinates.

    ``terms`` maps a derivative multi-index to its coefficient polynomial.
    Terms with equal multi-index are merged and zero coefficients dropped, so
    two operators are equal exactly when their term maps are.
    """

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, PolyExpr] | None = None):
        self.nvars = nvars
        clean: dict = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != nvars:
                raise ValueError(f"derivative index {alpha} does not have {nvars} entries")
            if not isinstance(c, PolyExpr):
                c = PolyExpr.const(nvars, c)
            if c.nvars != nvars:
                raise ValueError("coefficient has the wrong number of variables")
            prev = clean.get(alpha)
            c = c if prev is None else prev + c
            if c:
                clean[alpha] = c
            else:
                clean.pop(alpha, None)
        self._terms = clean

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "StarOperator":
        return cls(nvars)

    @classmethod
    def identity(cls, nvars: int) -> "StarOperator":
        return cls(nvars, {(0,) * nvars: PolyExpr.const(nvars, 1)})

    @classmethod
    def derivative(cls, nvars: int, index: int, order: int = 1) -> "StarOperator":
        alpha = [0] * nvars
        alpha[index] = order
        return cls(nvars, {tuple(alpha): PolyExpr.const(nvars, 1)})

    @classmethod
    def multiplication(cls, f: PolyExpr) -> "StarOperator":
        """Left star-multiplication ``f *``."""
        return cls(f.nvars, {(0,) * f.nvars: f})

    @classmethod
    def from_pointwise(cls, terms: Mapping[tuple, PolyExpr], theta: ThetaMatrix) -> "StarOperator":
        """Convert an ordinary operator ``sum g_alpha(x) d^alpha``.

        Pointwise multiplication is undone by the inverse exponential:
        ``g . f = sum_k (-i/2)^k/k! theta.. (d..g) * (d..f)``.
        """
        nvars = theta.dim
        out: dict = {}
        for alpha, g in terms.items():
            alpha = tuple(alpha)
            for coef, beta in _bidifferential(g, theta, sign=-1):
                key = tuple(a + b for a, b in zip(alpha, beta))
                out[key] = out[key] + coef if key in out else coef
        return cls(nvars, out)

    # views ------------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def order(self) -> int:
        return max((sum(a) for a in self._terms), default=-1)

    def to_pointwise(self, theta: ThetaMatrix) -> dict:
        """Ordinary form ``{alpha: g_alpha}`` with pointwise coefficients."""
        out: dict = {}
        for alpha, c in self._terms.items():
            for coef, beta in _bidifferential(c, theta, sign=+1):
                key = tuple(a + b for a, b in zip(alpha, beta))
                out[key] = out[key] + coef if key in out else coef
        return {k: v for k, v in out.items() if v}

    # algebra ----------------------------------------------------------
    def _check(self, other: "StarOperator"):
        if self.nvars != other.nvars:
            raise ValueError(f"dimension mismatch: {self.nvars} vs {other.nvars} variables")

    def __add__(self, other: "StarOperator") -> "StarOperator":
        self._check(other)
        merged = dict(self._terms)
        for a, c in other._terms.items():
            merged[a] = merged[a] + c if a in merged else c
        return StarOperator(self.nvars, merged)

    def __neg__(self):
        return StarOperator(self.nvars, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other: "StarOperator") -> "StarOperator":
        return self + (-other)

    def scale(self, s) -> "StarOperator":
        s = as_scalar(s)
        return StarOperator(self.nvars, {a: c.scale(s) for a, c in self._terms.items()})

    __rmul__ = scale

    def embed(self, nvars: int, index_map) -> "StarOperator":
        """Relabel variable ``k`` as ``index_map[k]`` in a larger coordinate space.

        The star-form coefficients are carried over unchanged; with a
        multiparticle theta this is how a one-particle ``h *`` acts on the
        ``h``-th particle.
        """
        out = {}
        for alpha, c in self._terms.items():
            beta = [0] * nvars
            for k, e in enumerate(alpha):
                beta[index_map[k]] += e
            out[tuple(beta)] = c.embed(nvars, index_map)
        return StarOperator(nvars, out)

    def __eq__(self, other):
        return isinstance(other, StarOperator) and self.nvars == other.nvars and self._terms == other._terms

    def __repr__(self):
        return f"StarOperator({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for alpha in sorted(self._terms, key=lambda a: (-sum(a), tuple(-x for x in a))):
            c = self._terms[alpha]
            d = "".join(
                f"d{k + 1}" if e == 1 else f"d{k + 1}^{e}" for k, e in enumerate(alpha) if e
            )
            parts.append(f"[{c}]⋆{d}" if d else f"[{c}]⋆")
        return " + ".join(parts)


def _bidifferential(g: PolyExpr, theta: ThetaMatrix, sign: int):
    """Expand ``exp[(sign*i/2) <-d theta ->d]`` with ``g`` on the left.

    Yields ``(coefficient polynomial, right derivative multi-index)`` pairs;
    the series stops once every derivative of ``g`` has vanished.
    """
    nvars = g.nvars
    zero = (0,) * nvars
    nz = theta.nonzero
    acc: dict = {}
    for gamma, cg in g.items():
        layer = {(gamma, zero): Fraction(1)}
        order = 0
        while layer:
            w = _I_POWERS[(sign * order) % 4] * Fraction(1, 2 ** order * factorial(order))
            for (mono, beta), c in layer.items():
                bucket = acc.setdefault(beta, {})
                t = cg * w * c
                bucket[mono] = bucket[mono] + t if mono in bucket else t
            if not nz:
                break
            nxt: dict = {}
            for (mono, beta), c in layer.items():
                for h, k, v in nz:
                    e = mono[h]
                    if e:
                        key = (_add_index(mono, h, -1), _add_index(beta, k))
                        inc = c * v * e
                        nxt[key] = nxt[key] + inc if key in nxt else inc
            layer = {k: c for k, c in nxt.items() if c}
            order += 1
    for beta, bucket in acc.items():
        p = PolyExpr(nvars, bucket)
        if p:
            yield p, beta


def op_compose(d1: StarOperator, d2: StarOperator, theta: ThetaMatrix) -> StarOperator:
    """The operator ``d1 o d2`` in star form.

    Uses ``d^alpha o (g *) = sum_{gamma <= alpha} C(alpha, gamma) ((d^gamma g) *) d^{alpha-gamma}``.
    """
    d1._check(d2)
    n = d1.nvars
    out: dict = {}
    for alpha, f in d1.items():
        splits = list(_sub_indices(alpha))
        for beta, g in d2.items():
            for gamma in splits:
                dg = g.diff_multi(gamma)
                if not dg:
                    continue
                mult = 1
                for a, c in zip(alpha, gamma):
                    mult *= comb(a, c)
                coef = moyal_star(f, dg, theta)
                if mult != 1:
                    coef = coef.scale(mult)
                key = tuple(a - c + b for a, c, b in zip(alpha, gamma, beta))
                out[key] = out[key] + coef if key in out else coef
    return StarOperator(n, out)


def _sub_indices(alpha):
    if not alpha:
        yield ()
        return
    for head in range(alpha[0] + 1):
        for tail in _sub_indices(alpha[1:]):
            yield (head,) + tail


def op_apply(d: StarOperator, f: PolyExpr, theta: ThetaMatrix) -> PolyExpr:
    """Apply ``d`` to the polynomial ``f``."""
    if d.nvars != f.nvars:
        raise ValueError(f"dimension mismatch: {d.nvars} vs {f.nvars} variables")
    out = PolyExpr.zero(f.nvars)
    for alpha, c in d.items():
        df = f.diff_multi(alpha)
        if df:
            out = out + moyal_star(c, df, theta)
    return out


def op_adjoint(d: StarOperator, theta: ThetaMatrix) -> StarOperator:
    """Formal L2 adjoint.

    ``((c *) d^alpha)^dagger = (-1)^|alpha| d^alpha o (c^* *)``; the rule
    ``(c *)^dagger = c^* *`` holds because the Moyal twist has trivial
    ``beta``.
    """
    n = d.nvars
    out = StarOperator.zero(n)
    for alpha, c in d.items():
        sign = -1 if sum(alpha) % 2 else 1
        deriv = StarOperator(n, {alpha: PolyExpr.const(n, sign)})
        out = out + op_compose(deriv, StarOperator.multiplication(c.conjugate()), theta)
    return out

