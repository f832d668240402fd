"""Exact Gaussian-rational scalars.

A :class:`Scalar` is ``re + im*i`` with both parts :class:`fractions.Fraction`.
Serialized form is ``"p/q+r/s*i"`` (see :meth:`Scalar.parse`).
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

__all__ = ["Scalar", "as_scalar", "ZERO", "ONE", "I"]


class Scalar:
    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "Scalar":
        s = object.__new__(cls)
        s.re = re
        s.im = im
        return s

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = as_scalar(other)
        return Scalar._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_scalar(other)
        return Scalar._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return as_scalar(other) - self

    def __neg__(self):
        return Scalar._raw(-self.re, -self.im)

    def __mul__(self, other):
        other = as_scalar(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return Scalar._raw(a * c, b)
        return Scalar._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = as_scalar(other)
        c, d = other.re, other.im
        den = c * c + d * d
        if not den:
            raise ZeroDivisionError("division by zero Scalar")
        a, b = self.re, self.im
        return Scalar._raw((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        return as_scalar(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers of Scalar are supported")
        if n < 0:
            return ONE / (self ** -n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "Scalar":
        return Scalar._raw(self.re, -self.im)

    # comparison -------------------------------------------------------
    def __eq__(self, other):
        try:
            other = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def is_real(self) -> bool:
        return not self.im

    # text -------------------------------------------------------------
    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        re_s = _frac_str(self.re)
        if not self.im:
            return re_s
        im = self.im
        sign = "-" if im < 0 else "+"
        return f"{re_s}{sign}{_frac_str(abs(im))}*i"

    _PATTERN = re.compile(
        r"^\s*(?P<re>[+-]?\d+(?:/\d+)?)?\s*(?:(?P<sign>[+-])?\s*(?P<im>\d+(?:/\d+)?)\s*\*\s*i)?\s*$"
    )

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        """Read the ``"p/q+r/s*i"`` serialization produced by ``str``."""
        m = cls._PATTERN.match(text)
        if not m or (m.group("re") is None and m.group("im") is None):
            raise ValueError(f"not a serialized Scalar: {text!r}")
        re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
        im_part = Fraction(0)
        if m.group("im") is not None:
            if m.group("re") is not None and m.group("sign") is None:
                raise ValueError(f"missing sign before imaginary part: {text!r}")
            im_part = Fraction(m.group("im"))
            if m.group("sign") == "-":
                im_part = -im_part
        return cls._raw(re_part, im_part)


def _frac_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def as_scalar(x) -> Scalar:
    if type(x) is Scalar:
        return x
    if isinstance(x, (int, Rational)):
        return Scalar._raw(Fraction(x), Fraction(0))
    if isinstance(x, str):
        return Scalar.parse(x)
    if isinstance(x, complex):
        raise TypeError("floating complex values are not exact; pass Fractions")
    raise TypeError(f"cannot convert {type(x).__name__} to Scalar")


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)
