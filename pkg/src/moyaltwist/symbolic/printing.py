"""Canonical text form of polynomials.

The output is accepted by :func:`moyaltwist.symbolic.parse.parse_expression`
and printing is idempotent under a parse round trip.
"""
from __future__ import annotations

from fractions import Fraction

from .scalar import Scalar

__all__ = ["format_poly", "format_coefficient", "variable_name"]


def variable_name(index: int, coords_per_particle: int | None = None) -> str:
    if coords_per_particle:
        particle, mu = divmod(index, coords_per_particle)
        return f"x{mu + 1}_{particle + 1}"
    return f"x{index + 1}"


def _q(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"({q.numerator}/{q.denominator})"


def _monomial(mono, coords_per_particle, sep) -> str:
    parts = []
    for idx, e in enumerate(mono):
        if not e:
            continue
        name = variable_name(idx, coords_per_particle)
        parts.append(name if e == 1 else f"{name}^{e}")
    return sep.join(parts)


def format_coefficient(c: Scalar) -> tuple[str, str]:
    """Return ``(sign, magnitude)`` with sign in ``{"+", "-"}``.

    Magnitude ``""`` means a unit coefficient on a non-constant monomial
    (the caller decides whether to print ``1``).
    """
    re, im = c.re, c.im
    if not im:
        sign = "-" if re < 0 else "+"
        return sign, ("" if abs(re) == 1 else _q(abs(re)))
    if not re:
        sign = "-" if im < 0 else "+"
        mag = abs(im)
        return sign, ("i" if mag == 1 else f"{_q(mag)}*i")
    # genuinely complex: keep the inner signs, parenthesize
    if re < 0 and im < 0:
        return "-", f"({_q(-re)} + {_imag(-im)})"
    im_part = f" + {_imag(im)}" if im > 0 else f" - {_imag(-im)}"
    return "+", f"({_q(re)}{im_part})"


def _imag(mag: Fraction) -> str:
    return "i" if mag == 1 else f"{_q(mag)}*i"


def format_poly(p, coords_per_particle: int | None = None, star: bool = False) -> str:
    """Print ``p`` with highest total degree first, e.g. ``x1*x2 + (1/2)*i``."""
    if not p:
        return "0"
    sep = " ⋆ " if star else "*"
    pieces = []
    for mono, c in p.sorted_items():
        sign, mag = format_coefficient(c)
        body = _monomial(mono, coords_per_particle, sep)
        if body:
            text = body if not mag else f"{mag}*{body}"
        else:
            text = mag or "1"
        pieces.append((sign, text))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, text in pieces[1:]:
        out += f" {sign} {text}"
    return out
