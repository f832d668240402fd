"""
A tour of the exact Moyal product
=================================

Polynomials with exact rational coefficients, multiplied with the star
product for a constant antisymmetric theta.
"""
from fractions import Fraction

from moyaltwist.symbolic import (
    format_poly,
    inverse_weyl,
    moyal_star,
    multiparticle_theta,
    parse_expression,
    star_commutator,
    theta_2d,
    weyl_normal_form,
)

# a plane with [x1, x2] = i theta
theta = theta_2d(Fraction(1, 2))
x1, x2 = parse_expression("x1", 2), parse_expression("x2", 2)
print("x1 * x2     =", format_poly(moyal_star(x1, x2, theta)))
print("[x1, x2]*   =", format_poly(star_commutator(x1, x2, theta)))

# higher products pick up more correction terms
f = parse_expression("x1^2 + x2", 2)
g = parse_expression("x1*x2^2", 2)
print("f * g       =", format_poly(moyal_star(f, g, theta)))
print("g * f       =", format_poly(moyal_star(g, f, theta)))

# the product is associative, checked exactly
h = parse_expression("x2^3 - 2*x1", 2)
lhs = moyal_star(moyal_star(f, g, theta), h, theta)
rhs = moyal_star(f, moyal_star(g, h, theta), theta)
print("associative:", lhs == rhs)

# symmetric (Weyl) ordering and back again
w = weyl_normal_form(g, theta)
print("Weyl coefficients of g:", w)
print("roundtrip ok:", inverse_weyl(w, theta) == g)

# two particles share the same theta block, including across particles
big = multiparticle_theta(theta, 2)
y1, y4 = parse_expression("x1", 4), parse_expression("x4", 4)
print("[x1 of particle 1, x2 of particle 2]* =", format_poly(star_commutator(y1, y4, big)))
