"""PBW-ordered universal enveloping algebra of the Euclidean algebra iso(m).

Generators are ordered ``M_{12}, M_{13}, ..., M_{(m-1)m}, P_1, ..., P_m``;
a PBW word is a nondecreasing tuple of generator indices. Brackets::

    [M_ab, P_c]  = i (delta_bc P_a - delta_ac P_b)
    [M_ab, M_cd] = i (delta_bc M_ad - delta_ac M_bd - delta_bd M_ac + delta_ad M_bc)
    [P_a, P_b]   = 0

which is the realization ``P_a = -i d_a``, ``M_ab = i (x^a d_b - x^b d_a)``.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Mapping

import numpy as np

from ..symbolic.scalar import ONE, ZERO, Scalar, as_scalar

__all__ = ["Iso", "UEAElement", "TensorUEA"]

_I = Scalar(0, 1)


class Iso:
    """Descriptor of iso(m): generator names, indices and structure constants."""

    def __init__(self, m: int):
        if m < 1:
            raise ValueError("dimension must be positive")
        self.m = m
        self.rot_pairs = [(a, b) for a in range(m) for b in range(a + 1, m)]
        self.names = [f"M{a + 1}{b + 1}" for a, b in self.rot_pairs] + [f"P{a + 1}" for a in range(m)]
        self._rot_index = {pair: k for k, pair in enumerate(self.rot_pairs)}
        self.n_rot = len(self.rot_pairs)
        self.ngens = self.n_rot + m
        self._bracket = {}
        for i in range(self.ngens):
            for j in range(self.ngens):
                self._bracket[i, j] = self._compute_bracket(i, j)

    def __eq__(self, other):
        return isinstance(other, Iso) and other.m == self.m

    def __hash__(self):
        return hash(("iso", self.m))

    # generator lookup -------------------------------------------------
    def P(self, a: int) -> int:
        """Index of ``P_{a+1}`` (0-based ``a``)."""
        return self.n_rot + a

    def M(self, a: int, b: int) -> tuple[int, int]:
        """``(sign, index)`` with ``M_ab = sign * generator[index]``."""
        if a == b:
            return 0, -1
        if a < b:
            return 1, self._rot_index[a, b]
        return -1, self._rot_index[b, a]

    def is_translation(self, g: int) -> bool:
        return g >= self.n_rot

    def _m_term(self, a, b, coeff, out):
        s, idx = self.M(a, b)
        if s:
            out[idx] = out.get(idx, ZERO) + coeff * s

    def _compute_bracket(self, i, j) -> dict:
        out: dict = {}
        if self.is_translation(i) and self.is_translation(j):
            return out
        if self.is_translation(i):
            return {k: -v for k, v in self._compute_bracket(j, i).items()}
        a, b = self.rot_pairs[i]
        if self.is_translation(j):
            c = j - self.n_rot
            if b == c:
                out[self.P(a)] = out.get(self.P(a), ZERO) + _I
            if a == c:
                out[self.P(b)] = out.get(self.P(b), ZERO) - _I
            return {k: v for k, v in out.items() if v}
        c, d = self.rot_pairs[j]
        if b == c:
            self._m_term(a, d, _I, out)
        if a == c:
            self._m_term(b, d, -_I, out)
        if b == d:
            self._m_term(a, c, -_I, out)
        if a == d:
            self._m_term(b, c, _I, out)
        return {k: v for k, v in out.items() if v}

    def bracket(self, i: int, j: int) -> dict:
        """Structure constants: ``[g_i, g_j] = sum_k c_k g_k``."""
        return self._bracket[i, j]

    # normal ordering --------------------------------------------------
    @lru_cache(maxsize=None)
    def normal_order(self, word: tuple) -> tuple:
        """Rewrite an arbitrary word as PBW words; returns ``((word, coeff), ...)``."""
        for pos in range(len(word) - 1):
            a, b = word[pos], word[pos + 1]
            if a > b:
                out: dict = {}
                swapped = word[:pos] + (b, a) + word[pos + 2:]
                for w, c in self.normal_order(swapped):
                    out[w] = out.get(w, ZERO) + c
                for k, c in self.bracket(a, b).items():
                    for w, c2 in self.normal_order(word[:pos] + (k,) + word[pos + 2:]):
                        out[w] = out.get(w, ZERO) + c * c2
                return tuple((w, c) for w, c in out.items() if c)
        return ((word, ONE),)

    # element constructors ---------------------------------------------
    def gen(self, i: int) -> "UEAElement":
        return UEAElement(self, {(i,): ONE})

    def p(self, a: int) -> "UEAElement":
        return self.gen(self.P(a))

    def m_gen(self, a: int, b: int) -> "UEAElement":
        s, idx = self.M(a, b)
        if not s:
            return UEAElement(self, {})
        return UEAElement(self, {(idx,): Scalar(s)})

    def m_omega(self, omega) -> "UEAElement":
        """``M_omega = omega^{ab} M_ab`` summed over all ordered pairs."""
        om = np.asarray(omega, dtype=object)
        out = UEAElement(self, {})
        for a in range(self.m):
            for b in range(self.m):
                if a != b and om[a][b]:
                    out = out + self.m_gen(a, b).scale(as_scalar(om[a][b]))
        return out

    def one(self) -> "UEAElement":
        return UEAElement(self, {(): ONE})


class UEAElement:
    """Linear combination of PBW words."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: Iso, terms: Mapping[tuple, Scalar]):
        self.alg = alg
        clean: dict = {}
        for w, c in terms.items():
            w = tuple(w)
            c = as_scalar(c)
            if list(w) != sorted(w):
                for ww, cc in alg.normal_order(w):
                    clean[ww] = clean.get(ww, ZERO) + c * cc
            else:
                clean[w] = clean.get(w, ZERO) + c
        self.terms = {w: c for w, c in clean.items() if c}

    def __add__(self, other: "UEAElement"):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, ZERO) + c
        return UEAElement(self.alg, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "UEAElement":
        s = as_scalar(s)
        return UEAElement(self.alg, {w: c * s for w, c in self.terms.items()})

    def __mul__(self, other: "UEAElement"):
        if not isinstance(other, UEAElement):
            return self.scale(other)
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                for w, c in self.alg.normal_order(w1 + w2):
                    out[w] = out.get(w, ZERO) + c1 * c2 * c
        return UEAElement(self.alg, out)

    def commutator(self, other: "UEAElement") -> "UEAElement":
        return self * other - other * self

    def is_zero(self) -> bool:
        return not self.terms

    def counit(self) -> Scalar:
        return self.terms.get((), ZERO)

    def antipode(self) -> "UEAElement":
        """``S(g_1 .. g_k) = (-1)^k g_k .. g_1``."""
        out = UEAElement(self.alg, {})
        for w, c in self.terms.items():
            sign = -1 if len(w) % 2 else 1
            out = out + UEAElement(self.alg, {tuple(reversed(w)): c * sign})
        return out

    def __eq__(self, other):
        return isinstance(other, UEAElement) and self.alg == other.alg and self.terms == other.terms

    def __repr__(self):
        return f"UEAElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c})*{_word_name(self.alg, w)}" for w, c in sorted(self.terms.items()))


def _word_name(alg: Iso, w) -> str:
    return "*".join(alg.names[g] for g in w) if w else "1"


class TensorUEA:
    """Element of the ``n``-fold tensor power; keys are tuples of PBW words."""

    __slots__ = ("alg", "n", "terms")

    def __init__(self, alg: Iso, n: int, terms: Mapping[tuple, Scalar]):
        self.alg = alg
        self.n = n
        out: dict = {}
        for key, c in terms.items():
            if len(key) != n:
                raise ValueError(f"tensor key {key} has {len(key)} factors, expected {n}")
            c = as_scalar(c)
            if c:
                out[key] = out.get(key, ZERO) + c
        self.terms = {k: c for k, c in out.items() if c}

    @classmethod
    def from_factors(cls, *factors: UEAElement) -> "TensorUEA":
        alg = factors[0].alg
        terms: dict = {}
        for combo in product(*(f.terms.items() for f in factors)):
            key = tuple(w for w, _ in combo)
            c = ONE
            for _, cc in combo:
                c = c * cc
            terms[key] = terms.get(key, ZERO) + c
        return cls(alg, len(factors), terms)

    @classmethod
    def unit(cls, alg: Iso, n: int) -> "TensorUEA":
        return cls(alg, n, {((),) * n: ONE})

    def __add__(self, other: "TensorUEA"):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return TensorUEA(self.alg, self.n, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "TensorUEA":
        s = as_scalar(s)
        return TensorUEA(self.alg, self.n, {k: c * s for k, c in self.terms.items()})

    def __mul__(self, other: "TensorUEA"):
        if not isinstance(other, TensorUEA):
            return self.scale(other)
        if other.n != self.n:
            raise ValueError("tensor orders differ")
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                parts = [self.alg.normal_order(a + b) for a, b in zip(k1, k2)]
                for combo in product(*parts):
                    key = tuple(w for w, _ in combo)
                    c = c1 * c2
                    for _, cc in combo:
                        c = c * cc
                    out[key] = out.get(key, ZERO) + c
        return TensorUEA(self.alg, self.n, out)

    def commutator(self, other: "TensorUEA") -> "TensorUEA":
        return self * other - other * self

    def flip(self) -> "TensorUEA":
        if self.n != 2:
            raise ValueError("flip is defined on the second tensor power")
        return TensorUEA(self.alg, 2, {(b, a): c for (a, b), c in self.terms.items()})

    def apply_counit(self, slot: int) -> "TensorUEA":
        """Contract factor ``slot`` with the counit."""
        out: dict = {}
        for key, c in self.terms.items():
            if key[slot] == ():
                k = key[:slot] + key[slot + 1:]
                out[k] = out.get(k, ZERO) + c
        return TensorUEA(self.alg, self.n - 1, out)

    def apply_to_slot(self, slot: int, fn) -> "TensorUEA":
        """Replace factor ``slot`` by ``fn(word)``, a :class:`TensorUEA`."""
        out: dict = {}
        new_n = None
        for key, c in self.terms.items():
            image = fn(key[slot])
            new_n = self.n - 1 + image.n
            for sub, cc in image.terms.items():
                k = key[:slot] + sub + key[slot + 1:]
                out[k] = out.get(k, ZERO) + c * cc
        if new_n is None:
            return TensorUEA(self.alg, self.n, {})
        return TensorUEA(self.alg, new_n, out)

    def multiply_out(self, maps=None) -> UEAElement:
        """``m(f_1 (x) ... (x) f_n)`` after applying ``maps[k]`` to factor ``k``."""
        out = UEAElement(self.alg, {})
        for key, c in self.terms.items():
            elems = [UEAElement(self.alg, {w: ONE}) for w in key]
            if maps:
                elems = [f(e) if f else e for f, e in zip(maps, elems)]
            prod = UEAElement(self.alg, {(): c})
            for e in elems:
                prod = prod * e
            out = out + prod
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, TensorUEA)
            and self.alg == other.alg
            and self.n == other.n
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"TensorUEA({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"({c})*" + "⊗".join(_word_name(self.alg, w) for w in key)
            for key, c in sorted(self.terms.items())
        )
