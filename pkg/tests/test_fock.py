from cmath import exp
from fractions import Fraction
from itertools import product
from math import comb, sqrt

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from moyaltwist.fock import (
    FockBasis,
    Statistics,
    build_ccr,
    default_modes,
    dress,
    field_star_algebra,
    hqccr_residuals,
    jordan_schwinger,
    number_operator,
    sector_dimension,
    verify_hqccr,
)
from moyaltwist.hopf import r_matrix
from moyaltwist.modes import ModeSet
from moyaltwist.symbolic import ThetaMatrix, theta_2d

from .conftest import thetas


def _dense(mat):
    return mat.toarray()


def _dense_dressed_oracle(modes, stats, nmax, theta):
    """Dressed annihilators built entry by entry from occupation vectors."""
    basis = FockBasis(len(modes), stats, nmax)
    dim = len(basis)
    out = []
    for j, p in enumerate(modes):
        A = np.zeros((dim, dim), dtype=complex)
        for col, s in enumerate(basis.states):
            if not s[j]:
                continue
            t = list(s)
            t[j] -= 1
            amp = sqrt(s[j]) if stats == "bose" else (-1) ** sum(s[:j])
            total = [sum(n * q[a] for n, q in zip(s, modes)) for a in range(modes.m)]
            pt = sum(p[a] * theta[a, b] * total[b] for a in range(modes.m) for b in range(modes.m))
            A[basis.index[tuple(t)], col] = amp * exp(0.5j * float(pt))
        out.append(A)
    return basis, out


def test_basis_ordering_and_sectors():
    b = FockBasis(2, "bose", 2)
    assert b.states[:3] == [(0, 0), (1, 0), (0, 1)]
    assert [len(b.sector(n)) for n in range(3)] == [1, 2, 3]
    f = FockBasis(3, "fermi", 3)
    assert len(f) == 8 and f.vacuum == 0
    with pytest.raises(ValueError):
        FockBasis(2, "boltzmann", 2)
    assert Statistics.coerce("FERMI").sign == -1


def test_single_bose_mode_commutator():
    ops = build_ccr(ModeSet([(1, 0)]), "bose", 2)
    a, ad = _dense(ops.a[0]), _dense(ops.adag[0])
    cols = ops.basis.below(1)
    assert np.allclose((a @ ad - ad @ a)[:, cols], np.eye(3)[:, cols])


def test_fermi_creators_square_to_zero():
    ops = build_ccr(default_modes(3), "fermi", 3)
    for ad in ops.adag:
        assert np.count_nonzero(_dense(ad @ ad)) == 0
    for i, j in product(range(3), repeat=2):
        ai, aj = _dense(ops.a[i]), _dense(ops.a[j])
        assert np.allclose(ai @ aj, -aj @ ai)


@pytest.mark.parametrize("stats", ["bose", "fermi"])
def test_dressing_matches_dense_oracle(stats):
    modes = ModeSet([(1, 0), (0, 2), (-1, 1)])
    th = theta_2d(Fraction(2, 3))
    ops = dress(build_ccr(modes, stats, 3), th)
    _, oracle = _dense_dressed_oracle(modes, stats, 3, th)
    for A, B in zip(ops.a, oracle):
        assert np.max(np.abs(_dense(A) - B)) < 1e-15


def test_dressing_trivial_limits():
    modes = ModeSet([(1, 0), (0, 1)])
    ops = build_ccr(modes, "bose", 3)
    same = dress(ops, ThetaMatrix.zero(2))
    assert all(np.array_equal(_dense(x), _dense(y)) for x, y in zip(ops.a, same.a))
    single = ModeSet([(2, 3)])
    one = build_ccr(single, "bose", 3)
    assert np.allclose(_dense(dress(one, theta_2d(7)).a[0]), _dense(one.a[0]))


def test_two_mode_exchange_phase():
    # a^p a^+_q = s e^{i p theta q} a^+_q a^p for p != q on the truncation interior
    modes = ModeSet([(1, 0), (0, 1)])
    th = theta_2d(Fraction(1, 2))
    for stats, s in (("bose", 1), ("fermi", -1)):
        d = dress(build_ccr(modes, stats, 4), th)
        cols = d.basis.below(3)
        p, q = modes[0], modes[1]
        phase = exp(1j * float(th.bilinear(p, q)))
        lhs = _dense(d.a[0] @ d.adag[1])[:, cols]
        rhs = s * phase * _dense(d.adag[1] @ d.a[0])[:, cols]
        assert np.max(np.abs(lhs - rhs)) < 1e-12


@pytest.mark.parametrize("stats, M, nmax", [("bose", 2, 4), ("fermi", 3, 3), ("bose", 3, 3), ("fermi", 4, 4)])
def test_twisted_relations(stats, M, nmax):
    modes = default_modes(M)
    for t in ("0", "1/3", "-2", "5/2", "1/7"):
        th = theta_2d(Fraction(t))
        d = dress(build_ccr(modes, stats, nmax), th)
        res = hqccr_residuals(d, r_matrix(modes, th))
        assert set(res) == {"aa", "adad", "aad"}
        assert max(res.values()) < 1e-12


def test_undressed_operators_violate_twisted_relations():
    modes = default_modes(3)
    th = theta_2d(1)
    ops = build_ccr(modes, "bose", 3)
    ops.theta = th
    assert verify_hqccr(ops, r_matrix(modes, th)) > 1e-3


@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=2, max_size=3, unique=True), thetas(),
       st.sampled_from(["bose", "fermi"]))
def test_twisted_relations_random_modes(moms, th, stats):
    modes = ModeSet(moms)
    d = dress(build_ccr(modes, stats, 3), th)
    assert verify_hqccr(d, r_matrix(modes, th)) < 1e-12


@pytest.mark.parametrize("stats", ["bose", "fermi"])
def test_dressing_preserves_adjoints_and_number(stats):
    modes = default_modes(3)
    ops = build_ccr(modes, stats, 3)
    d = dress(ops, theta_2d(Fraction(3, 4)))
    for a, ad in zip(d.a, d.adag):
        assert np.max(np.abs(_dense(a).conj().T - _dense(ad))) < 1e-15
    diff = number_operator(d).dense() - number_operator(ops).dense()
    assert np.max(np.abs(diff)) < 1e-14


def test_jordan_schwinger_translations():
    modes = ModeSet([(1, 2), (-1, 3)])
    ops = build_ccr(modes, "bose", 2)
    vac = np.zeros(len(ops.basis))
    vac[ops.basis.vacuum] = 1
    for a, name in enumerate(("P1", "P2")):
        P = jordan_schwinger(name, ops).dense()
        assert not np.any(P @ vac)
        for j, p in enumerate(modes):
            w = ops.adag[j] @ vac
            assert np.allclose(P @ w, float(p[a]) * w)
    P1, P2 = jordan_schwinger(0, ops).dense(), jordan_schwinger(1, ops).dense()
    assert np.allclose(P1 @ P2, P2 @ P1)


def test_jordan_schwinger_rejects_rotations_off_the_mode_span():
    ops = build_ccr(ModeSet([(1, 0)]), "bose", 2)
    with pytest.raises(ValueError):
        jordan_schwinger(("M", [[0, 1], [-1, 0]]), ops)
    with pytest.raises(ValueError):
        jordan_schwinger("Q1", ops)


@pytest.mark.parametrize("stats", ["bose", "fermi"])
def test_field_algebra(stats):
    ops = build_ccr(default_modes(2), stats, 3)
    rep = field_star_algebra(ops, [(0, 0), (0.5, -1.2)], theta_2d(Fraction(2, 3)))
    assert rep.max_residual < 1e-12


@pytest.mark.parametrize("stats", ["bose", "fermi"])
def test_sector_dimensions(stats):
    for M in (2, 3, 4):
        for n in range(4):
            want = comb(M + n - 1, n) if stats == "bose" else comb(M, n)
            for t in ("0", "1/2", "3"):
                assert sector_dimension(stats, M, n, theta_2d(Fraction(t)), 3) == want
    assert sector_dimension("fermi", 3, 2) == 3
    assert sector_dimension("bose", 2, 2) == 3
