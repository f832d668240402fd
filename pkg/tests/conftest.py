"""Shared strategies and an independent sympy oracle for the star product."""
from fractions import Fraction

import sympy
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from moyaltwist.symbolic import PolyExpr, Scalar, ThetaMatrix

settings.register_profile(
    "moyaltwist", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("moyaltwist")

small_fractions = st.fractions(min_value=-3, max_value=3, max_denominator=4)
scalars = st.builds(Scalar, small_fractions, st.one_of(st.just(Fraction(0)), small_fractions))


@st.composite
def polys(draw, nvars=2, max_degree=3, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        mono = draw(st.lists(st.integers(0, max_degree), min_size=nvars, max_size=nvars))
        if sum(mono) <= max_degree:
            terms[tuple(mono)] = draw(scalars)
    return PolyExpr(nvars, terms)


@st.composite
def thetas(draw, dim=2):
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    for a in range(dim):
        for b in range(a + 1, dim):
            v = draw(small_fractions)
            rows[a][b], rows[b][a] = v, -v
    return ThetaMatrix(rows)


# sympy oracle ---------------------------------------------------------
def _rat(f: Fraction):
    return sympy.Rational(f.numerator, f.denominator)


def to_sympy(p: PolyExpr, xs):
    out = sympy.Integer(0)
    for mono, c in p.items():
        term = _rat(c.re) + sympy.I * _rat(c.im)
        for x, e in zip(xs, mono):
            term *= x ** e
        out += term
    return sympy.expand(out)


def from_sympy(expr, xs) -> PolyExpr:
    expr = sympy.expand(expr)
    if expr == 0:
        return PolyExpr.zero(len(xs))
    terms = {}
    for mono, c in sympy.Poly(expr, *xs).terms():
        re, im = sympy.re(c), sympy.im(c)
        terms[mono] = Scalar(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))
    return PolyExpr(len(xs), terms)


def sympy_star(a: PolyExpr, b: PolyExpr, theta: ThetaMatrix) -> PolyExpr:
    """``sum_r (i/2)^r / r! (theta^{hk} d_h (x) d_k)^r`` applied to ``a(x) b(y)``, then ``y = x``."""
    n = a.nvars
    xs = sympy.symbols(f"x1:{n + 1}")
    ys = sympy.symbols(f"y1:{n + 1}")
    term = to_sympy(a, xs) * to_sympy(b, xs).subs(dict(zip(xs, ys)), simultaneous=True)
    total = term
    r = 0
    while term != 0:
        r += 1
        nxt = sympy.Integer(0)
        for h in range(n):
            for k in range(n):
                t = theta[h, k]
                if t:
                    nxt += _rat(Fraction(t)) * sympy.diff(term, xs[h], ys[k])
        term = sympy.expand(nxt * sympy.I / 2 / r)
        total += term
    return from_sympy(total.subs(dict(zip(ys, xs)), simultaneous=True), xs)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
