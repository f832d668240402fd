"""
Twisted exchange relations on a truncated Fock space
====================================================

Ladder operators dressed by momentum-dependent phases obey exchange
relations governed by the R-matrix instead of plain (anti)commutators.
"""
from fractions import Fraction

import numpy as np

from moyaltwist import fock, hopf
from moyaltwist.symbolic import theta_2d

modes = fock.default_modes(3)
theta = theta_2d(Fraction(1, 3))
R = hopf.r_matrix(modes, theta)

# R_21 R = 1 and every entry is a pure phase
print("R-matrix phases:\n", np.round(R.values, 4))
print("triangular:", np.allclose(R.values * R.values.T, 1))

for stats in ("bose", "fermi"):
    ops = fock.build_ccr(modes, stats, 4)
    plain = fock.verify_hqccr(ops, R)
    dressed = fock.verify_hqccr(fock.dress(ops, theta), R)
    print(f"{stats}: undressed residual {plain:.2e}, dressed residual {dressed:.2e}")

# the number of states per particle number is unchanged by the twist
for n in range(4):
    dims = [fock.sector_dimension(s, modes, n, theta, 3) for s in ("bose", "fermi")]
    print(f"N = {n}: bose {dims[0]}, fermi {dims[1]}")
