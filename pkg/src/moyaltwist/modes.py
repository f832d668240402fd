"""Finite sets of plane-wave momenta shared by the twist and Fock layers.

Mode files hold one momentum vector per line with rational components
separated by whitespace or commas; ``#`` starts a comment.
"""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

__all__ = ["ModeSet", "ModeBasis"]


class ModeSet:
    """Distinct rational momenta ``p_1 .. p_M`` in ``m`` dimensions."""

    __slots__ = ("momenta", "m")

    def __init__(self, momenta: Iterable[Sequence]):
        moms = tuple(tuple(Fraction(c) for c in p) for p in momenta)
        if not moms:
            raise ValueError("mode set is empty")
        m = len(moms[0])
        if m < 1 or any(len(p) != m for p in moms):
            raise ValueError("all momenta must have the same positive dimension")
        if len(set(moms)) != len(moms):
            raise ValueError("momenta must be pairwise distinct")
        self.momenta = moms
        self.m = m

    def __len__(self):
        return len(self.momenta)

    def __getitem__(self, i):
        return self.momenta[i]

    def __iter__(self):
        return iter(self.momenta)

    def __eq__(self, other):
        return isinstance(other, ModeSet) and self.momenta == other.momenta

    def __hash__(self):
        return hash(self.momenta)

    def __repr__(self):
        return f"ModeSet({[[str(c) for c in p] for p in self.momenta]})"

    def index(self, p) -> int:
        return self.momenta.index(tuple(Fraction(c) for c in p))

    def as_array(self) -> np.ndarray:
        return np.array([[float(c) for c in p] for p in self.momenta])

    @classmethod
    def read(cls, path) -> "ModeSet":
        rows = []
        for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                rows.append([Fraction(tok) for tok in line.replace(",", " ").split()])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: bad momentum component ({exc})") from None
        return cls(rows)

    def write(self, path) -> None:
        lines = [" ".join(str(c) for c in p) for p in self.momenta]
        Path(path).write_text("\n".join(lines) + "\n")


# the twist layer calls the same object a basis of plane waves
ModeBasis = ModeSet
