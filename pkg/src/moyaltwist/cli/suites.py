"""Verification suites run by the command line.

Every suite is a function ``Config -> Report``. Exact checks report the
number of failing instances as their residual and use tolerance 0.
"""
from __future__ import annotations

import random
import warnings
from fractions import Fraction
from itertools import permutations, product
from pathlib import Path

import numpy as np

from .. import dynamics as dyn
from .. import fock as fk
from .. import hopf
from .. import numeric as nm
from ..modes import ModeSet
from ..symbolic import (
    PolyExpr,
    Scalar,
    StarOperator,
    ThetaMatrix,
    format_poly,
    inverse_weyl,
    moyal_star,
    multiparticle_theta,
    op_adjoint,
    parse_expression,
    star_commutator,
    theta_2d,
    weyl_normal_form,
)
from .config import Config
from .report import Report, timed_check

__all__ = ["run_suite", "random_poly", "SUITE_FUNCTIONS"]


def random_poly(rng: random.Random, nvars: int, degree: int, nterms: int = 4) -> PolyExpr:
    """Random polynomial with small rational (sometimes imaginary) coefficients."""
    terms = {}
    for _ in range(nterms):
        d = rng.randint(0, degree)
        mono = [0] * nvars
        for _ in range(d):
            mono[rng.randrange(nvars)] += 1
        re = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        im = Fraction(rng.randint(-3, 3), rng.randint(1, 3)) if rng.random() < 0.3 else 0
        terms[tuple(mono)] = Scalar(re, im)
    return PolyExpr(nvars, terms)


def _tol(cfg: Config, suite: str, default: float) -> float:
    return cfg.tolerances.get(suite, default) if default > 0 else 0.0


def _modes(cfg: Config, count: int = 3) -> ModeSet:
    if cfg.modes_file:
        return ModeSet.read(cfg.modes_file)
    return fk.default_modes(count, 2)


def _out(cfg: Config, name: str):
    if not cfg.output_dir:
        return None
    d = Path(cfg.output_dir)
    d.mkdir(parents=True, exist_ok=True)
    return d / name


# star-core ------------------------------------------------------------
def suite_star_core(cfg: Config) -> Report:
    rep = Report("star-core", cfg.seed)
    rng = random.Random(cfg.seed)
    th = theta_2d(cfg.theta)

    def coords():
        bad = 0
        for m, n in ((2, 1), (2, 2), (2, 3), (3, 2)):
            base = th if m == 2 else ThetaMatrix([[0, cfg.theta, 1], [-cfg.theta, 0, Fraction(1, 2)], [-1, Fraction(-1, 2), 0]])
            big = multiparticle_theta(base, n)
            N = big.dim
            for h, k in product(range(N), repeat=2):
                c = star_commutator(PolyExpr.var(N, h), PolyExpr.var(N, k), big)
                bad += c != PolyExpr.const(N, Scalar(0, big[h, k]))
        return bad

    timed_check(rep, "coordinate_commutators", "[x^h *, x^k] = i Theta^{hk} for one to three particles",
                "coordinate commutation relations", coords)

    triples = [tuple(random_poly(rng, 2, 3) for _ in range(3)) for _ in range(25)]

    def assoc():
        return sum(
            moyal_star(moyal_star(a, b, th), c, th) != moyal_star(a, moyal_star(b, c, th), th) for a, b, c in triples
        )

    timed_check(rep, "associativity", "(a*b)*c = a*(b*c) on seeded random triples", "associativity of the star product", assoc)

    polys = [random_poly(rng, 2, 5, 6) for _ in range(25)]
    timed_check(rep, "weyl_roundtrip", "polynomial -> ordered star monomials -> polynomial",
                "Weyl map and PBW ordering",
                lambda: sum(inverse_weyl(weyl_normal_form(f, th), th) != f for f in polys))

    def printing():
        bad = 0
        for f in polys:
            s = format_poly(f)
            bad += format_poly(parse_expression(s, 2)) != s
        return bad

    timed_check(rep, "print_parse_roundtrip", "print(parse(print(f))) = print(f)", "plumbing", printing)

    def example():
        x1, x2 = PolyExpr.var(2, 0), PolyExpr.var(2, 1)
        return int(str(moyal_star(x1, x2, theta_2d(1))) != "x1*x2 + (1/2)*i")

    timed_check(rep, "star_example", "x1 * x2 = x1 x2 + i/2 for theta = 1", "star product of coordinates", example)

    def adjoint():
        bad = 0
        for f in polys[:10]:
            op = StarOperator.multiplication(f)
            bad += op_adjoint(op, th) != StarOperator.multiplication(f.conjugate())
        return bad

    timed_check(rep, "multiplication_adjoint", "(f *)^dagger = f^* *", "star structure with trivial beta", adjoint)
    return rep


# hopf -----------------------------------------------------------------
def suite_hopf(cfg: Config) -> Report:
    rep = Report("hopf", cfg.seed)
    tol = _tol(cfg, "hopf", 1e-12)
    th = theta_2d(cfg.theta)
    modes = _modes(cfg, 4)
    anchor_twist = "twist cocycle and counit conditions"

    timed_check(rep, "cocycle", "(F x 1)(D x id)F = (1 x F)(id x D)F on modes^3", anchor_twist,
                lambda: hopf.check_cocycle(th, modes), tol)
    timed_check(rep, "counit", "(eps x id)F = (id x eps)F = 1", anchor_twist, lambda: hopf.check_counit(th, modes), tol)

    def r_unitary():
        R = hopf.r_matrix(modes, th)
        v = R.values
        return max(np.max(np.abs(v * R.flip().values - 1)), np.max(np.abs(np.abs(v) - 1)))

    timed_check(rep, "r_matrix_triangular", "R_21 R = 1 and |R| = 1", "triangular R-matrix", r_unitary, tol)

    def s3():
        S3 = list(permutations(range(3)))
        mats = {t: hopf.twisted_permutation(t, modes, th) for t in S3}
        return max(
            np.max(np.abs(mats[s] @ mats[t] - mats[hopf.compose_permutations(s, t)])) for s in S3 for t in S3
        )

    timed_check(rep, "twisted_permutations_S3", "P^F_s P^F_t = P^F_st for all of S_3", "twisted permutation operators", s3, tol)

    def idempotent():
        worst = 0.0
        for sign in (1, -1):
            A = hopf.twisted_symmetrizer(3, modes, th, sign)
            worst = max(worst, float(np.max(np.abs(A @ A - A))))
        return worst

    timed_check(rep, "twisted_symmetrizers", "(A^F)^2 = A^F for both statistics", "twisted permutation operators", idempotent, tol)

    def pairs():
        return max(
            hopf.deformed_basis(i, j, modes, th, s).residual
            for i in range(len(modes)) for j in range(len(modes)) for s in (1, -1)
        )

    timed_check(rep, "deformed_pairs", "three routes to the deformed two-particle states agree", "deformed (anti)symmetrized bases", pairs, tol)

    def slater():
        A = hopf.twisted_symmetrizer(3, modes, th, -1)
        s = hopf.slater_hat([0, 1, 2], modes, th).hat.reshape(-1)
        return float(np.max(np.abs(A @ s - s)))

    timed_check(rep, "slater_antisymmetric", "A^F fixes the deformed Slater determinant", "deformed Slater determinant", slater, tol)
    timed_check(rep, "beta_trivial", "m(id x S)F = 1 on plane waves", "trivial beta for the Moyal twist",
                lambda: float(np.max(np.abs(hopf.beta_phase(modes, th) - 1))), tol)

    alg = hopf.Iso(3)
    th3 = ThetaMatrix([[0, cfg.theta, 0], [-cfg.theta, 0, 0], [0, 0, 0]])
    timed_check(rep, "coproduct_translations", "twisted coproduct of P_a equals the primitive one", "deformed coproduct",
                lambda: sum(hopf.twisted_coproduct(alg.p(a), th3) != hopf.coproduct(alg.p(a)) for a in range(3)))

    def rotations():
        bad = 0
        for a, b in ((0, 1), (0, 2), (1, 2)):
            om = [[0] * 3 for _ in range(3)]
            om[a][b], om[b][a] = 1, -1
            g = alg.m_omega(om)
            terms = hopf.adjoint_series(hopf.twist_generator(alg, th3), hopf.coproduct(g))
            expected = hopf.coproduct(g) + hopf.omega_theta_correction(alg, om, th3)
            bad += hopf.twisted_coproduct(g, th3) != expected or len(terms) > 2
        return bad

    timed_check(rep, "coproduct_rotations", "twisted coproduct of M_omega adds [omega, theta]^{ab} P_a x P_b",
                "deformed coproduct", rotations)

    def coassoc():
        bad = 0
        for g in range(alg.ngens):
            d = hopf.twisted_coproduct(alg.gen(g), th3)
            bad += hopf.twisted_coproduct_tensor(d, 0, th3) != hopf.twisted_coproduct_tensor(d, 1, th3)
        return bad

    timed_check(rep, "coassociativity", "(D^ x id)D^ = (id x D^)D^ on generators", "coassociativity of the twisted coproduct", coassoc)
    return rep


# fock -----------------------------------------------------------------
def suite_fock(cfg: Config) -> Report:
    rep = Report("fock", cfg.seed)
    tol = _tol(cfg, "fock", 1e-12)
    th = theta_2d(cfg.theta)
    modes = _modes(cfg, 3)
    for stats in ("bose", "fermi"):
        ops = fk.build_ccr(modes, stats, 3)
        d = fk.dress(ops, th)
        R = hopf.r_matrix(modes, th)
        timed_check(rep, f"twisted_ccr_{stats}", "all three twisted exchange families on N <= Nmax-1",
                    "twisted canonical relations", lambda: fk.verify_hqccr(d, R), tol)
        timed_check(rep, f"dressing_unitary_{stats}", "dressed creator is the adjoint of the dressed annihilator",
                    "unitarity of the dressing",
                    lambda: max(float(np.max(np.abs((a.conj().T - ad).toarray()))) for a, ad in zip(d.a, d.adag)), tol)

        def vacuum():
            v = np.zeros(len(d.basis))
            v[d.basis.vacuum] = 1
            return max(float(np.max(np.abs(a @ v))) for a in d.a)

        timed_check(rep, f"vacuum_{stats}", "annihilators kill the vacuum", "invariant vacuum", vacuum, tol)

        def counts():
            from math import comb

            M = len(modes)
            bad = 0
            for t in ("0", "1/2", "3", str(cfg.theta)):
                for n in range(4):
                    want = comb(M + n - 1, n) if stats == "bose" else comb(M, n)
                    bad += fk.sector_dimension(stats, modes, n, theta_2d(t), 3) != want
            return bad

        timed_check(rep, f"sector_dimensions_{stats}", "n-particle dimensions equal undeformed counts",
                    "compatibility with Bose/Fermi statistics", counts)
        samples = [(0.0, 0.0), (0.3, -0.7), (1.1, 0.4)]
        timed_check(rep, f"field_algebra_{stats}", "field exchange relations, field invariance, number operator",
                    "star-triviality of the total field",
                    lambda: fk.field_star_algebra(ops, samples, th).max_residual, tol)

        def translations():
            worst = 0.0
            for a in range(modes.m):
                P = fk.jordan_schwinger(a, ops).dense()
                v = np.zeros(len(ops.basis))
                v[ops.basis.vacuum] = 1
                worst = max(worst, float(np.max(np.abs(P @ v))))
                for j, p in enumerate(modes):
                    w = ops.adag[j] @ v
                    worst = max(worst, float(np.max(np.abs(P @ w - float(p[a]) * w))))
            return worst

        timed_check(rep, f"jordan_schwinger_{stats}", "sigma(P_a) a^+_p |0> = p_a a^+_p |0>", "Jordan-Schwinger map", translations, tol)
    return rep


# numeric --------------------------------------------------------------
def suite_numeric(cfg: Config) -> Report:
    rep = Report("numeric", cfg.seed)
    spec = nm.GridSpec(2, cfg.grid_n, cfg.grid_l)
    t = float(cfg.theta)
    T = np.array([[0, t], [-t, 0]])
    X = spec.mesh()
    k = spec.wavenumbers()
    g1 = nm.sample(nm.Gaussian(1.0, (0.4, -0.3)), spec)
    g2 = nm.sample(nm.Gaussian(0.8, (-0.2, 0.5)), spec)
    hf = nm.sample(nm.HermiteFunction((1, 2), 1.1), spec)
    pairs = [(g1, g2), (g1, hf), (hf, g2)]

    def phase_law():
        worst = 0.0
        for h, q in (((k[2], k[-3]), (k[1], k[4])), ((k[-1], 0.0), (0.0, k[3]))):
            a = nm.sample(nm.PlaneWave(h), spec)
            b = nm.sample(nm.PlaneWave(q), spec)
            h, q = np.array(h), np.array(q)
            exact = np.exp(1j * ((h + q)[0] * X[0] + (h + q)[1] * X[1]) - 0.5j * h @ T @ q)
            worst = max(worst, float(np.max(np.abs(nm.grid_star(a, b, t).values - exact))))
        return worst

    timed_check(rep, "plane_wave_phase", "e^{ihx} * e^{ikx} = e^{i(h+k)x - i h theta k / 2}", "star product of exponentials",
                phase_law, _tol(cfg, "numeric", 1e-6))
    stars = {}
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", nm.AliasingWarning)
        for i, (a, b) in enumerate(pairs):
            stars[i] = (nm.grid_star(a, b, t), nm.grid_star(b, a, t))

    def cyclic():
        worst = 0.0
        for i, (a, b) in enumerate(pairs):
            ab, ba = stars[i]
            worst = max(worst, abs(nm.grid_integral(ab) - nm.grid_integral(a * b)),
                        abs(nm.grid_integral(ab) - nm.grid_integral(ba)))
        return worst

    timed_check(rep, "integral_cyclicity", "int a*b = int ab = int b*a", "integral property of the star product",
                cyclic, _tol(cfg, "numeric", 1e-8))

    def hermitian():
        worst = 0.0
        for i, (a, b) in enumerate(pairs):
            lhs = stars[i][0].conj()
            rhs = nm.grid_star(b.conj(), a.conj(), t, alias_tol=None)
            worst = max(worst, float(np.max(np.abs(lhs.values - rhs.values))))
        return worst

    timed_check(rep, "hermiticity", "(a*b)^* = b^* * a^*", "star structure", hermitian, _tol(cfg, "numeric", 1e-8))
    timed_check(rep, "theta_zero", "theta = 0 gives the pointwise product", "commutative limit",
                lambda: max(float(np.max(np.abs(nm.grid_star(a, b, 0.0, alias_tol=None).values - (a * b).values))) for a, b in pairs),
                _tol(cfg, "numeric", 1e-10))

    def cross():
        tc = nm.commensurate_theta(spec)
        P = parse_expression("x1^2*x2 - 3*x2 + x1*x2^2 + 2", 2)
        G = nm.Gaussian(0.8, (0.5, -0.3))
        grid = nm.grid_star(nm.sample(nm.Polynomial(P), spec), nm.sample(G, spec), tc, alias_tol=None)
        exact = nm.poly_star_gaussian(P, G, theta_2d(1), spec, tc)
        inner = (np.abs(X[0]) < spec.L / 2.5) & (np.abs(X[1]) < spec.L / 2.5)
        return float(np.max(np.abs(grid.values - exact.values)[inner]))

    timed_check(rep, "symbolic_cross_check", "grid product of polynomial and Gaussian vs terminating expansion",
                "bidifferential form of the star product", cross, _tol(cfg, "numeric", 1e-6))

    def refine():
        fine = spec.refined()
        a = nm.sample(nm.Gaussian(1.0, (0.4, -0.3)), fine)
        b = nm.sample(nm.Gaussian(0.8, (-0.2, 0.5)), fine)
        ref = nm.grid_star(a, b, t).restrict(spec)
        return float(np.max(np.abs(ref.values - stars[0][0].values)) / ref.max_abs())

    if cfg.grid_n <= 64:
        timed_check(rep, "self_convergence", "Gaussian * Gaussian against the 2N grid", "plumbing", refine,
                    _tol(cfg, "numeric", 1e-6))
    path = _out(cfg, "numeric_slice.csv")
    if path:
        v = stars[0][0].values
        mid = spec.N // 2
        with open(path, "w") as fh:
            fh.write("x1,re,im\n")
            for x, z in zip(spec.axis(), v[:, mid]):
                fh.write(f"{x!r},{z.real!r},{z.imag!r}\n")
    return rep


# landau ---------------------------------------------------------------
def suite_landau(cfg: Config) -> Report:
    rep = Report("landau", cfg.seed)
    p = dyn.LandauParams(cfg.b, cfg.theta)
    anchor = "deformed Landau Hamiltonian"
    timed_check(rep, "closed_form", f"built -D_a*D_a* minus closed form vanishes at b={p.b}, theta={p.theta}", anchor,
                lambda: len(dyn.landau_h_star(p).difference.terms))

    def grid():
        vals = [Fraction(v) for v in ("0", "1/2", "-1/3", "2", "3/4")]
        bad = 0
        for b, t in product(vals, vals):
            q = dyn.LandauParams(b, t)
            if not q.singular:
                bad += not dyn.landau_h_star(q).passed
        return bad

    timed_check(rep, "closed_form_grid", "closed form on a 5x5 rational grid", anchor, grid)

    def herm():
        r = dyn.landau_h_star(p)
        return int(op_adjoint(r.built, p.theta_matrix()) != r.built)

    timed_check(rep, "hermitian", "h_* equals its formal adjoint", "hermiticity", herm)

    def scaling():
        b = p.b if p.b > 0 else Fraction(1)
        q = dyn.LandauParams(b, cfg.theta)
        if q.scale_factor <= 0:
            return 0.0, "skipped: 1 + b theta/2 <= 0"
        s = dyn.landau_spectrum(q, 20)
        s0 = dyn.landau_spectrum(dyn.LandauParams(b, 0), 20)
        if not (s.converged and s0.converged):
            return float("inf"), "levels not converged"
        path = _out(cfg, "landau_spectrum.csv")
        if path:
            dyn.write_spectrum_csv(path, s)
        c = float(q.scale_factor)
        lv, lv0 = s.lowest_levels(10), s0.lowest_levels(10)
        return float(np.max(np.abs(lv - c * lv0) / np.abs(c * lv0)))

    timed_check(rep, "spectrum_scaling", "lowest 10 levels equal (1 + b theta/2) times the undeformed ones",
                "Landau-type levels", scaling, _tol(cfg, "landau", 1e-8))
    return rep


# twoparticle ----------------------------------------------------------
def suite_twoparticle(cfg: Config) -> Report:
    rep = Report("twoparticle", cfg.seed)
    p = dyn.LandauParams(cfg.b, cfg.theta)
    anchor = "two-particle Hamiltonian"
    r = dyn.two_particle_h_star(p)
    timed_check(rep, "stated_cross_term", "H^(2) - [h + h + stated cross term] vanishes", anchor,
                lambda: (len(r.difference.terms), str(r.difference)))
    timed_check(rep, "corrected_cross_term", "same, with -s (b theta/2)^2 (Lap_1 + Lap_2) added", anchor,
                lambda: len(r.extra["corrected_difference"].terms))
    timed_check(rep, "additivity_breaking", "H^(2) - h_1 - h_2 vanishes exactly when b theta = 0", anchor,
                lambda: int(r.extra["non_additive"].is_zero() != (p.b * p.theta == 0)))

    def harmonic_pair():
        W = parse_expression("x1^2 + x2^2", 2)
        big = multiparticle_theta(theta_2d(cfg.theta), 2)
        Wp = dyn.pair_potential(W, 0, 1, 2, 2)
        return int(StarOperator.from_pointwise({(0, 0, 0, 0): Wp}, big) != StarOperator.multiplication(Wp))

    timed_check(rep, "pair_potential", "W(x1 - x2) * acts by ordinary multiplication", "functions of coordinate differences", harmonic_pair)
    modes = _modes(cfg, 3)
    for stats in ("bose", "fermi"):
        timed_check(rep, f"fock_restriction_{stats}", "free Fock Hamiltonian on N=2 vs direct two-particle operator",
                    "restriction of the Fock Hamiltonian",
                    lambda: dyn.fock_restriction_check(modes, 3, 2, stats, theta_2d(cfg.theta))["residual"],
                    _tol(cfg, "twoparticle", 1e-12))
    return rep


SUITE_FUNCTIONS = {
    "star-core": suite_star_core,
    "hopf": suite_hopf,
    "fock": suite_fock,
    "numeric": suite_numeric,
    "landau": suite_landau,
    "twoparticle": suite_twoparticle,
}


def run_suite(name: str, cfg: Config) -> Report:
    if name not in SUITE_FUNCTIONS:
        raise KeyError(f"unknown suite {name!r}")
    try:
        return SUITE_FUNCTIONS[name](cfg)
    except Exception as exc:  # setup failures become a failed report
        rep = Report(name, cfg.seed)
        rep.error = f"{type(exc).__name__}: {exc}"
        return rep
