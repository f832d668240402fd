from cmath import exp
from fractions import Fraction
from itertools import permutations, product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from moyaltwist.hopf import (
    Iso,
    TensorUEA,
    adjoint_series,
    antipode,
    beta_phase,
    beta_series,
    check_cocycle,
    check_counit,
    compose_permutations,
    coproduct,
    coproduct_iter,
    coproduct_iter_direct,
    counit,
    deformed_basis,
    f_matrix,
    iterated_exponent,
    pair_exponent,
    permutation_matrix,
    r_matrix,
    slater_hat,
    twist_generator,
    twisted_coproduct,
    twisted_coproduct_tensor,
    twisted_permutation,
    twisted_symmetrizer,
)
from moyaltwist.modes import ModeSet
from moyaltwist.symbolic import (
    PolyExpr,
    Scalar,
    StarOperator,
    ThetaMatrix,
    op_compose,
    theta_2d,
)

from .conftest import thetas

TH3 = ThetaMatrix([[0, Fraction(1, 3), 0], [Fraction(-1, 3), 0, 0], [0, 0, 0]])

momenta = st.lists(
    st.tuples(st.fractions(-3, 3, max_denominator=3), st.fractions(-3, 3, max_denominator=3)),
    min_size=2, max_size=4, unique=True,
)


# enveloping algebra ---------------------------------------------------
@pytest.mark.parametrize("m", [2, 3, 4])
def test_jacobi_identity(m):
    alg = Iso(m)
    g = [alg.gen(i) for i in range(alg.ngens)]
    for a, b, c in product(g, repeat=3):
        total = a.commutator(b.commutator(c)) + b.commutator(c.commutator(a)) + c.commutator(a.commutator(b))
        assert total.is_zero()


@pytest.mark.parametrize("m", [2, 3])
def test_brackets_realized_by_differential_operators(m):
    # P_a = -i d_a and M_ab = x_b P_a - x_a P_b satisfy the same brackets
    th = ThetaMatrix.zero(m)
    alg = Iso(m)

    def P(a):
        return StarOperator.derivative(m, a).scale(Scalar(0, -1))

    def X(a):
        return StarOperator.multiplication(PolyExpr.var(m, a))

    def rep(i):
        if alg.is_translation(i):
            return P(i - alg.n_rot)
        a, b = alg.rot_pairs[i]
        return op_compose(X(b), P(a), th) - op_compose(X(a), P(b), th)

    for i, j in product(range(alg.ngens), repeat=2):
        lhs = op_compose(rep(i), rep(j), th) - op_compose(rep(j), rep(i), th)
        rhs = StarOperator.zero(m)
        for k, c in alg.bracket(i, j).items():
            rhs = rhs + rep(k).scale(c)
        assert lhs == rhs


words = st.lists(st.integers(0, 5), max_size=4)


@given(words, words, words)
def test_product_is_associative(u, v, w):
    alg = Iso(3)

    def elem(word):
        out = alg.one()
        for i in word:
            out = out * alg.gen(i)
        return out

    a, b, c = elem(u), elem(v), elem(w)
    assert (a * b) * c == a * (b * c)
    assert antipode(a * b) == antipode(b) * antipode(a)
    assert counit(a * b) == counit(a) * counit(b)


# coproduct ------------------------------------------------------------
def test_translations_are_primitive():
    alg = Iso(3)
    for a in range(3):
        P = alg.p(a)
        one = alg.one()
        assert coproduct(P) == TensorUEA.from_factors(P, one) + TensorUEA.from_factors(one, P)
        expected = (
            TensorUEA.from_factors(P, one, one) + TensorUEA.from_factors(one, P, one) + TensorUEA.from_factors(one, one, P)
        )
        assert coproduct_iter(P, 3) == expected


@pytest.mark.parametrize("n", [2, 3, 4])
def test_iterated_coproduct_matches_direct_expansion(n):
    alg = Iso(3)
    g = alg.m_gen(0, 2) * alg.p(1) + alg.p(0) * alg.p(0)
    assert coproduct_iter(g, n) == coproduct_iter_direct(g, n)


def test_counit_axiom():
    alg = Iso(3)
    for g in (alg.m_gen(0, 1), alg.p(2) * alg.m_gen(1, 2), alg.p(0) * alg.p(1) * alg.p(1)):
        d = coproduct(g)
        assert d.apply_counit(0) == TensorUEA.from_factors(g)
        assert d.apply_counit(1) == TensorUEA.from_factors(g)


def test_coproduct_is_multiplicative():
    alg = Iso(3)
    x, y = alg.m_gen(0, 1), alg.p(0) * alg.m_gen(1, 2)
    assert coproduct(x * y) == coproduct(x) * coproduct(y)


# twisted coproduct ----------------------------------------------------
def _matrix_commutator(omega, theta):
    m = len(omega)
    return [
        [sum(Fraction(omega[a][c]) * theta[c, b] - theta[a, c] * Fraction(omega[c][b]) for c in range(m)) for b in range(m)]
        for a in range(m)
    ]


def test_twisted_coproduct_of_translations():
    alg = Iso(3)
    for a in range(3):
        assert twisted_coproduct(alg.p(a), TH3) == coproduct(alg.p(a))


def test_twisted_coproduct_of_rotation_m13():
    alg = Iso(3)
    omega = [[0, 0, 1], [0, 0, 0], [-1, 0, 0]]
    comm = _matrix_commutator(omega, TH3)
    correction = TensorUEA(alg, 2, {})
    for a, b in product(range(3), repeat=2):
        if comm[a][b]:
            correction = correction + TensorUEA.from_factors(alg.p(a), alg.p(b)).scale(comm[a][b])
    assert not correction.is_zero()
    g = alg.m_omega(omega)
    assert twisted_coproduct(g, TH3) == coproduct(g) + correction
    series = adjoint_series(twist_generator(alg, TH3), coproduct(g))
    assert len(series) == 2


def test_commuting_rotation_in_the_plane():
    alg = Iso(2)
    th = theta_2d(Fraction(3, 4))
    omega = [[0, 2], [-2, 0]]
    assert all(v == 0 for row in _matrix_commutator(omega, th) for v in row)
    g = alg.m_omega(omega)
    assert twisted_coproduct(g, th) == coproduct(g)


def test_twisted_coproduct_is_multiplicative():
    alg = Iso(3)
    x, y = alg.m_gen(0, 2), alg.m_gen(1, 2) * alg.p(0)
    assert twisted_coproduct(x * y, TH3) == twisted_coproduct(x, TH3) * twisted_coproduct(y, TH3)


def test_twisted_coassociativity():
    alg = Iso(3)
    for i in range(alg.ngens):
        d = twisted_coproduct(alg.gen(i), TH3)
        assert twisted_coproduct_tensor(d, 0, TH3) == twisted_coproduct_tensor(d, 1, TH3)


def test_beta_is_trivial():
    alg = Iso(2)
    terms = beta_series(alg, theta_2d(Fraction(2, 5)), 4)
    assert terms[0] == alg.one()
    assert all(t.is_zero() for t in terms[1:])


# plane-wave representation --------------------------------------------
def test_two_fold_twist_phase():
    modes = ModeSet([(1, 0), (0, 2), (Fraction(1, 2), -1)])
    th = theta_2d(Fraction(1, 3))
    F = f_matrix(modes, 2, th)
    for i, j in product(range(3), repeat=2):
        p, q = modes[i], modes[j]
        expected = exp(0.5j * float(p[0] * q[1] - p[1] * q[0]) / 3)
        assert abs(F[i, j] - expected) < 1e-15


def test_three_fold_twist_is_product_of_pair_phases():
    modes = ModeSet([(1, 0), (0, 2), (-1, 1)])
    th = theta_2d(Fraction(2, 7))
    for idx in product(range(3), repeat=3):
        p = [modes[i] for i in idx]
        pairs = pair_exponent(p[0], p[1], th) + pair_exponent(p[0], p[2], th) + pair_exponent(p[1], p[2], th)
        assert iterated_exponent(p, th) == pairs


def test_zero_theta_twist_is_identity():
    modes = ModeSet([(1, 2), (3, -1)])
    assert f_matrix(modes, 3, ThetaMatrix.zero(2)).is_identity()


def test_r_matrix_phase():
    modes = ModeSet([(1, 0), (0, 1), (2, -1)])
    th = theta_2d(Fraction(1, 2))
    R = r_matrix(modes, th)
    for i, j in product(range(3), repeat=2):
        p, q = modes[i], modes[j]
        assert abs(R[i, j] - exp(1j * float(th.bilinear(q, p)))) < 1e-15
        assert abs(R[i, j] * R[j, i] - 1) < 1e-15
    assert all(abs(R[i, i] - 1) < 1e-15 for i in range(3))


@given(momenta, thetas())
def test_cocycle_and_counit(moms, th):
    modes = ModeSet(moms)
    assert check_cocycle(th, modes) < 1e-12
    assert check_counit(th, modes) < 1e-12
    assert np.max(np.abs(beta_phase(modes, th) - 1)) < 1e-12


def test_permutation_basics():
    modes = ModeSet([(1, 0), (0, 1)])
    th = theta_2d(1)
    assert np.allclose(twisted_permutation((0, 1, 2), modes, th), np.eye(8), atol=1e-15)
    t = twisted_permutation((1, 0, 2), modes, th)
    assert np.max(np.abs(t @ t - np.eye(8))) < 1e-12
    assert np.array_equal(twisted_permutation((2, 0, 1), modes, ThetaMatrix.zero(2)), permutation_matrix((2, 0, 1), 2))
    with pytest.raises(ValueError):
        permutation_matrix((0, 0), 2)


def test_permutation_moves_factors():
    # factor k goes to position tau(k)
    P = permutation_matrix((1, 2, 0), 3)
    v = np.zeros(27)
    v[np.ravel_multi_index((0, 1, 2), (3, 3, 3))] = 1
    assert (P @ v)[np.ravel_multi_index((2, 0, 1), (3, 3, 3))] == 1


@given(momenta, thetas())
def test_s3_relations(moms, th):
    modes = ModeSet(moms)
    S3 = list(permutations(range(3)))
    mats = {t: twisted_permutation(t, modes, th) for t in S3}
    for s, t in product(S3, repeat=2):
        assert np.max(np.abs(mats[s] @ mats[t] - mats[compose_permutations(s, t)])) < 1e-12


@given(momenta, thetas(), st.sampled_from([1, -1]))
def test_symmetrizers_are_projections(moms, th, sign):
    A = twisted_symmetrizer(3, ModeSet(moms), th, sign)
    assert np.max(np.abs(A @ A - A)) < 1e-12


def test_deformed_pair_limits():
    modes = ModeSet([(1, 0), (0, 1), (1, 1)])
    plain = deformed_basis(0, 2, modes, ThetaMatrix.zero(2), -1)
    expected = np.zeros((3, 3))
    expected[0, 2], expected[2, 0] = 1, -1
    assert np.allclose(plain.n2, expected) and plain.agree
    same = deformed_basis(1, 1, modes, theta_2d(5), 1)
    assert same.n2[1, 1] == 2 and np.count_nonzero(same.n2) == 1


@given(momenta, thetas(), st.sampled_from([1, -1]))
def test_deformed_pair_expansions_agree(moms, th, sign):
    modes = ModeSet(moms)
    assert deformed_basis(0, 1, modes, th, sign).residual < 1e-12


def test_slater_determinants():
    modes = ModeSet([(1, 0), (0, 1), (1, 1)])
    th = theta_2d(Fraction(1, 2))
    single = slater_hat([2], modes, th)
    assert np.allclose(single.hat, [0, 0, 1])
    assert slater_hat([0, 1, 0], modes, th).vanishes
    two = slater_hat([0, 1], modes, th).hat
    pair = deformed_basis(0, 1, modes, th, -1)
    # same vector up to the overall normalization and phase
    ratio = two[pair.n2 != 0] / pair.n2[pair.n2 != 0]
    assert np.allclose(ratio, ratio[0]) and abs(abs(ratio[0]) - 2 ** -0.5) < 1e-12
    A = twisted_symmetrizer(3, modes, th, -1)
    s = slater_hat([0, 1, 2], modes, th).hat.reshape(-1)
    assert np.max(np.abs(A @ s - s)) < 1e-12
