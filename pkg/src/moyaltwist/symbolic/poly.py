"""Sparse commutative polynomials with exact Gaussian-rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .scalar import ONE, ZERO, Scalar, as_scalar

__all__ = ["PolyExpr", "Monomial"]

Monomial = tuple  # exponent multi-index, one entry per variable


class PolyExpr:
    """Polynomial in ``nvars`` commuting coordinates ``x1 .. xN``.

    Terms are a mapping from exponent tuples to :class:`Scalar`; zero
    coefficients are never stored, so structural equality is mathematical
    equality. Instances are treated as immutable.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple, object] | None = None):
        if nvars < 1:
            raise ValueError("nvars must be positive")
        self.nvars = nvars
        clean = {}
        if terms:
            for mono, c in terms.items():
                mono = tuple(int(e) for e in mono)
                if len(mono) != nvars:
                    raise ValueError(f"monomial {mono} does not have {nvars} entries")
                if any(e < 0 for e in mono):
                    raise ValueError(f"negative exponent in {mono}")
                c = as_scalar(c)
                if c:
                    prev = clean.get(mono)
                    c = c if prev is None else prev + c
                    if c:
                        clean[mono] = c
                    else:
                        del clean[mono]
        self._terms = clean
        self._hash = None

    @classmethod
    def _from_clean(cls, nvars: int, terms: dict) -> "PolyExpr":
        p = object.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "PolyExpr":
        return cls._from_clean(nvars, {})

    @classmethod
    def const(cls, nvars: int, c=1) -> "PolyExpr":
        c = as_scalar(c)
        return cls._from_clean(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def var(cls, nvars: int, index: int, power: int = 1) -> "PolyExpr":
        """The coordinate ``x_{index+1}`` (0-based ``index``) raised to ``power``."""
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        mono = [0] * nvars
        mono[index] = power
        return cls._from_clean(nvars, {tuple(mono): ONE})

    @classmethod
    def monomial(cls, exponents: Iterable[int], c=1) -> "PolyExpr":
        exponents = tuple(exponents)
        return cls(len(exponents), {exponents: c})

    # container protocol -----------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, mono) -> Scalar:
        return self._terms.get(tuple(mono), ZERO)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def degree(self) -> int:
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(m) for m in self._terms), default=-1)

    def sorted_items(self):
        # graded, then reverse lexicographic on exponents: x1^2 > x1*x2 > x2^2 > x1 > 1
        return sorted(self._terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-e for e in kv[0])))

    # arithmetic -------------------------------------------------------
    def _check(self, other: "PolyExpr"):
        if self.nvars != other.nvars:
            raise ValueError(f"dimension mismatch: {self.nvars} vs {other.nvars} variables")

    def _coerce(self, other) -> "PolyExpr":
        if isinstance(other, PolyExpr):
            self._check(other)
            return other
        return PolyExpr.const(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            prev = out.get(m)
            if prev is None:
                out[m] = c
            else:
                s = prev + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return PolyExpr._from_clean(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return PolyExpr._from_clean(self.nvars, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "PolyExpr":
        c = as_scalar(c)
        if not c:
            return PolyExpr.zero(self.nvars)
        return PolyExpr._from_clean(self.nvars, {m: c * v for m, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, PolyExpr):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                prev = out.get(m)
                out[m] = c1 * c2 if prev is None else prev + c1 * c2
        return PolyExpr._from_clean(self.nvars, {m: c for m, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = PolyExpr.const(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def conjugate(self) -> "PolyExpr":
        """Complex conjugate for real coordinates (conjugates coefficients only)."""
        return PolyExpr._from_clean(self.nvars, {m: c.conjugate() for m, c in self._terms.items()})

    def diff(self, index: int, order: int = 1) -> "PolyExpr":
        out = {}
        for m, c in self._terms.items():
            e = m[index]
            if e < order:
                continue
            k = 1
            for j in range(order):
                k *= e - j
            mm = list(m)
            mm[index] = e - order
            out[tuple(mm)] = c * k
        return PolyExpr._from_clean(self.nvars, out)

    def diff_multi(self, alpha) -> "PolyExpr":
        p = self
        for idx, order in enumerate(alpha):
            if order:
                p = p.diff(idx, order)
                if not p:
                    break
        return p

    def embed(self, nvars: int, index_map) -> "PolyExpr":
        """Relabel variable ``k`` as variable ``index_map[k]`` of a larger space."""
        out = {}
        for m, c in self._terms.items():
            mm = [0] * nvars
            for k, e in enumerate(m):
                mm[index_map[k]] += e
            out[tuple(mm)] = c
        return PolyExpr._from_clean(nvars, out)

    def substitute(self, images) -> "PolyExpr":
        """Replace ``x_k`` by the polynomial ``images[k]`` (commutative composition)."""
        images = list(images)
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        nv = images[0].nvars
        out = PolyExpr.zero(nv)
        for m, c in self._terms.items():
            term = PolyExpr.const(nv, c)
            for k, e in enumerate(m):
                if e:
                    term = term * images[k] ** e
            out = out + term
        return out

    # evaluation -------------------------------------------------------
    def __call__(self, *xs):
        """Evaluate numerically; arguments may be numpy arrays (broadcast)."""
        if len(xs) != self.nvars:
            raise ValueError(f"expected {self.nvars} coordinates")
        xs = [np.asarray(x) for x in xs]
        total = np.zeros(np.broadcast(*xs).shape, dtype=complex)
        for m, c in self._terms.items():
            term = complex(c)
            for x, e in zip(xs, m):
                if e:
                    term = term * x ** e
            total = total + term
        return total

    # equality ---------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, PolyExpr):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            return self == PolyExpr.const(self.nvars, other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        from .printing import format_poly

        return f"PolyExpr({format_poly(self)!r}, nvars={self.nvars})"

    def __str__(self):
        from .printing import format_poly

        return format_poly(self)


def rational(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)
