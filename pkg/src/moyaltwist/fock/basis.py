"""Occupation-number bases of truncated Bose and Fermi Fock spaces."""
from __future__ import annotations

from enum import Enum
from itertools import product

__all__ = ["Statistics", "FockBasis"]


class Statistics(str, Enum):
    BOSE = "bose"
    FERMI = "fermi"

    @property
    def sign(self) -> int:
        """+1 for commutators, -1 for anticommutators."""
        return 1 if self is Statistics.BOSE else -1

    @classmethod
    def coerce(cls, value) -> "Statistics":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ValueError(f"unknown statistics {value!r}; use 'bose' or 'fermi'") from None


class FockBasis:
    """All occupation vectors of ``n_modes`` modes with total number ``<= nmax``.

    States are ordered by total number first and then by descending
    lexicographic order, so ``(1, 0)`` precedes ``(0, 1)``.
    """

    def __init__(self, n_modes: int, statistics, nmax: int):
        if n_modes < 1:
            raise ValueError("mode set is empty")
        if nmax < 1:
            raise ValueError("nmax must be at least 1")
        self.n_modes = n_modes
        self.statistics = Statistics.coerce(statistics)
        self.nmax = nmax
        cap = 1 if self.statistics is Statistics.FERMI else nmax
        states = [s for s in product(range(cap + 1), repeat=n_modes) if sum(s) <= nmax]
        states.sort(key=lambda s: (sum(s), tuple(-x for x in s)))
        self.states = states
        self.index = {s: k for k, s in enumerate(states)}
        self.numbers = [sum(s) for s in states]

    def __len__(self):
        return len(self.states)

    def __eq__(self, other):
        return (
            isinstance(other, FockBasis)
            and (self.n_modes, self.statistics, self.nmax) == (other.n_modes, other.statistics, other.nmax)
        )

    def __hash__(self):
        return hash((self.n_modes, self.statistics, self.nmax))

    def __repr__(self):
        return f"FockBasis({self.n_modes} modes, {self.statistics.value}, nmax={self.nmax}, dim={len(self)})"

    def sector(self, n: int) -> list:
        """Indices of the states with exactly ``n`` particles."""
        return [k for k, N in enumerate(self.numbers) if N == n]

    def below(self, n: int) -> list:
        """Indices of the states with at most ``n`` particles."""
        return [k for k, N in enumerate(self.numbers) if N <= n]

    @property
    def vacuum(self) -> int:
        return self.index[(0,) * self.n_modes]
