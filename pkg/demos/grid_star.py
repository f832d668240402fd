"""
The star product on a periodic grid
===================================

Sampled functions multiplied with the twisted convolution in Fourier
space, checked against plane waves and an exact polynomial product.
"""
import numpy as np

from moyaltwist.numeric import (
    Gaussian,
    GridSpec,
    PlaneWave,
    Polynomial,
    commensurate_theta,
    grid_integral,
    grid_star,
    poly_star_gaussian,
    sample,
)
from moyaltwist.symbolic import parse_expression, theta_2d

spec = GridSpec(2, 64, 8.0)
k = spec.wavenumbers()
t = 1 / 3

# plane waves multiply up to a constant phase
h, q = np.array([k[2], k[-3]]), np.array([k[1], k[4]])
a, b = sample(PlaneWave(tuple(h)), spec), sample(PlaneWave(tuple(q)), spec)
ab = grid_star(a, b, t)
ratio = ab.values / (a * b).values
print("phase of e_h * e_q:", np.angle(ratio).mean(), "expected", -0.5 * t * (h[0] * q[1] - h[1] * q[0]))

# under the integral the star product is invisible
g1, g2 = sample(Gaussian(1.0, (0.4, -0.3)), spec), sample(Gaussian(0.8, (-0.2, 0.5)), spec)
print("int f*g - int fg:", abs(grid_integral(grid_star(g1, g2, t)) - grid_integral(g1 * g2)))

# a polynomial times a Gaussian has a closed form; compare in the interior
tc = commensurate_theta(spec)
P = parse_expression("x1^2*x2 - 3*x2 + 2", 2)
G = Gaussian(0.8, (0.5, -0.3))
grid = grid_star(sample(Polynomial(P), spec), sample(G, spec), tc, alias_tol=None)
exact = poly_star_gaussian(P, G, theta_2d(1), spec, tc)
X = spec.mesh()
inner = (np.abs(X[0]) < spec.L / 2.5) & (np.abs(X[1]) < spec.L / 2.5)
print(f"theta = {tc:.4f}: max interior error {np.max(np.abs(grid.values - exact.values)[inner]):.2e}")
