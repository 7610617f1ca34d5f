import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hconvex import hclass as hc
from hconvex.errors import DegenerateError, DimensionError, DomainError, NotHermitianError
from hconvex.matcore import (HermitianMatrix, eig_h, loewner_leq, loewner_report, mat_func,
                             rand_hermitian, secant_coeffs, spectrum_in)

import oracles


def test_secant_constants():
    s = secant_coeffs(lambda t: t, 1.0, 2.0)
    assert (s.mu, s.nu) == (1.0, 0.0)
    s = secant_coeffs(lambda t: 1.0, 1.0, 2.0)
    assert (s.mu, s.nu) == (0.0, 1.0)
    s = secant_coeffs(lambda t: 1.0 / t, 1.0, 2.0)
    assert abs(s.mu + 0.5) <= 1e-14 and abs(s.nu - 1.5) <= 1e-14
    assert s(1.0) == pytest.approx(1.0) and s(2.0) == pytest.approx(0.5)


def test_secant_degenerate():
    with pytest.raises(DegenerateError):
        secant_coeffs(lambda t: t, 1.0, 1.0)


def test_hermitian_validation():
    with pytest.raises(NotHermitianError):
        HermitianMatrix([[1, 2], [0, 1]])
    with pytest.raises(DimensionError):
        HermitianMatrix(np.ones((2, 3)))
    with pytest.raises(DimensionError):
        HermitianMatrix(np.eye(65))
    a = HermitianMatrix([[1, 1 + 1e-14], [1, 1]])
    assert np.array_equal(np.asarray(a), np.asarray(a).T)
    assert not np.iscomplexobj(HermitianMatrix(np.eye(2, dtype=complex)).data)


def test_hermitian_is_immutable():
    a = HermitianMatrix(np.eye(2))
    with pytest.raises(AttributeError):
        a.data = np.zeros((2, 2))
    with pytest.raises(ValueError):
        a.data[0, 0] = 3.0


def test_arithmetic():
    a, b = HermitianMatrix(np.eye(2)), HermitianMatrix(np.diag([1.0, 2.0]))
    assert np.allclose(np.asarray(2 * a + b - a), np.diag([2.0, 3.0]))
    assert np.allclose(np.asarray(-a), -np.eye(2))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 12), st.integers(0, 2**31))
def test_eig_round_trip(dim, seed):
    a = rand_hermitian(dim, -3.0, 5.0, seed=seed)
    dec = eig_h(a)
    assert np.all(np.diff(dec.eigenvalues) >= 0)
    err = np.linalg.norm(dec.reconstruct() - np.asarray(a))
    assert err <= 1e-12 * max(1.0, np.linalg.norm(np.asarray(a)))


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**31))
def test_square_matches_product(dim, seed):
    a = rand_hermitian(dim, -2.0, 2.0, seed=seed)
    assert np.allclose(np.asarray(mat_func(hc.get_f("f:square"), a)),
                       oracles.square_via_product(a), atol=1e-12)


def test_domain_snapping_and_escape():
    sqrt = hc.get_f("f:sqrt")
    a = np.diag([-1e-15, 4.0])
    assert np.allclose(np.asarray(mat_func(sqrt, a)), np.diag([0.0, 2.0]))
    with pytest.raises(DomainError):
        mat_func(sqrt, np.diag([-1e-3, 1.0]))
    with pytest.raises(DomainError):
        mat_func(hc.get_h("h:inv"), np.diag([0.0, 1.0]))


def test_loewner_order():
    ok, gap = loewner_leq(np.eye(2), 2 * np.eye(2))
    assert ok and gap == pytest.approx(1.0)
    ok, gap = loewner_leq(np.diag([1.0, 0.0]), np.diag([0.0, 1.0]))
    assert not ok and gap == pytest.approx(-1.0)
    rep = loewner_report(np.eye(2), np.eye(2), "A", "A")
    assert rep.holds and rep.gap_min_eig == pytest.approx(0.0)


def test_spectrum_in():
    a = rand_hermitian(4, 0.5, 2.0, seed=1)
    assert spectrum_in(a, 0.5, 2.0)
    assert not spectrum_in(a, 1.9, 2.0)
    with pytest.raises(DegenerateError):
        spectrum_in(a, 2.0, 2.0)


def test_rand_hermitian_reproducible_and_bounded():
    a = rand_hermitian(5, 1.0, 3.0, seed=9)
    b = rand_hermitian(5, 1.0, 3.0, seed=9)
    assert np.array_equal(np.asarray(a), np.asarray(b))
    w = np.linalg.eigvalsh(np.asarray(a))
    assert w[0] >= 1.0 - 1e-12 and w[-1] <= 3.0 + 1e-12
    assert not np.iscomplexobj(np.asarray(rand_hermitian(3, 0, 1, seed=2, field="real")))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8), st.integers(0, 2**31))
def test_functional_calculus_is_multiplicative(dim, seed):
    a = rand_hermitian(dim, 0.5, 2.0, seed=seed)
    sqrt, sq = hc.get_f("f:sqrt"), hc.get_f("f:square")
    prod = np.asarray(mat_func(sqrt, a)) @ np.asarray(mat_func(sq, a))
    direct = np.asarray(mat_func(lambda t: np.sqrt(t) * t * t, a))
    assert np.linalg.norm(prod - direct) <= 1e-9 * max(1.0, np.linalg.norm(direct))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**31),
       st.sampled_from(["f:square", "f:quartic", "f:one_plus_square"]))
def test_secant_dominates_convex_functions(dim, seed, name):
    m, M = 0.5, 2.0
    phi = hc.get_f(name)
    a = rand_hermitian(dim, m, M, seed=seed)
    s = secant_coeffs(phi, m, M)
    chord = s.mu * np.asarray(a) + s.nu * np.eye(dim)
    assert loewner_leq(mat_func(phi, a), chord)[0]


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2**31))
def test_loewner_partial_order(dim, seed):
    rng = np.random.default_rng(seed)
    a = rand_hermitian(dim, -1.0, 1.0, seed=seed)
    p1, p2 = (rand_hermitian(dim, 0.0, 1.0, seed=int(rng.integers(1 << 30))) for _ in range(2))
    b = a + p1
    c = b + p2
    assert loewner_leq(a, a)[0]
    assert loewner_leq(a, b)[0] and loewner_leq(b, c)[0] and loewner_leq(a, c)[0]
    if loewner_leq(b, a)[0]:
        assert np.allclose(np.asarray(a), np.asarray(b), atol=1e-8)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10), st.integers(0, 2**31))
def test_eigenvalues_unitarily_invariant(dim, seed):
    a = np.asarray(rand_hermitian(dim, -2.0, 3.0, seed=seed))
    u = oracles.random_unitary(dim, np.random.default_rng(seed))
    w1 = eig_h(a).eigenvalues
    w2 = eig_h(u @ a @ u.conj().T).eigenvalues
    assert np.allclose(w1, w2, atol=1e-9 * max(1.0, np.abs(w1).max()))
