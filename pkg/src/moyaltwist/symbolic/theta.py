"""Antisymmetric deformation matrices."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

__all__ = ["ThetaMatrix", "multiparticle_theta", "theta_2d"]


class ThetaMatrix:
    """Real antisymmetric ``N x N`` matrix with rational entries.

    ``ThetaMatrix([[0, t], [-t, 0]])`` gives ``[x1 *, x2] = i t``.
    """

    __slots__ = ("dim", "entries", "_nonzero")

    def __init__(self, entries: Sequence[Sequence]):
        rows = [tuple(Fraction(v) for v in row) for row in entries]
        n = len(rows)
        if n < 1 or any(len(r) != n for r in rows):
            raise ValueError("theta must be a non-empty square matrix")
        for h in range(n):
            for k in range(h, n):
                if rows[h][k] != -rows[k][h]:
                    raise ValueError(
                        f"theta is not antisymmetric at ({h + 1},{k + 1}): "
                        f"{rows[h][k]} vs {rows[k][h]}"
                    )
        self.dim = n
        self.entries = tuple(rows)
        self._nonzero = tuple(
            (h, k, rows[h][k]) for h in range(n) for k in range(n) if rows[h][k]
        )

    @classmethod
    def zero(cls, dim: int) -> "ThetaMatrix":
        return cls([[0] * dim for _ in range(dim)])

    def __getitem__(self, hk):
        h, k = hk
        return self.entries[h][k]

    @property
    def nonzero(self):
        """``(h, k, value)`` for every nonzero entry, both triangles."""
        return self._nonzero

    def is_zero(self) -> bool:
        return not self._nonzero

    def bilinear(self, p, q) -> Fraction:
        """``p_a theta^{ab} q_b`` evaluated exactly."""
        return sum((Fraction(p[h]) * v * Fraction(q[k]) for h, k, v in self._nonzero), Fraction(0))

    def to_numpy(self) -> np.ndarray:
        return np.array([[float(v) for v in row] for row in self.entries])

    def __eq__(self, other):
        return isinstance(other, ThetaMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        rows = "; ".join(",".join(str(v) for v in row) for row in self.entries)
        return f"ThetaMatrix([{rows}])"


def theta_2d(t) -> ThetaMatrix:
    """``theta^{ab} = t * eps^{ab}`` in two dimensions, ``eps^{12} = +1``."""
    t = Fraction(t)
    return ThetaMatrix([[0, t], [-t, 0]])


def multiparticle_theta(theta: ThetaMatrix, n: int) -> ThetaMatrix:
    """Deformation matrix on ``n`` copies of the coordinates.

    Variable ``(i, mu)`` sits at index ``i*m + mu``; every particle block,
    diagonal or not, equals ``theta`` so that
    ``[x_i^mu *, x_j^nu] = i theta^{mu nu}`` for all ``i, j``.
    """
    if n < 1:
        raise ValueError("particle count must be at least 1")
    if n == 1:
        return theta
    m = theta.dim
    big = [[theta.entries[r % m][c % m] for c in range(n * m)] for r in range(n * m)]
    return ThetaMatrix(big)
