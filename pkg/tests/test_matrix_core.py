import numpy as np
import pytest
import scipy.linalg
from hypothesis import given, strategies as st

from quasipoisson.errors import InvalidInput, NotPositiveDefinite, NumericalFailure
from quasipoisson.matrix_core import (
    check_hermitian_pd,
    check_special_unitary,
    expm_hermitian,
    fro,
    hermitian_sqrt,
    log_unitary,
    matrix_exp,
    matrix_log_hpd,
    polar_project,
    sample,
)

LN2 = np.log(2.0)
seeds = st.integers(0, 2**32 - 1)


def test_sqrt_identity_and_diagonal():
    assert np.allclose(hermitian_sqrt(np.eye(3)), np.eye(3), atol=0)
    assert np.allclose(hermitian_sqrt(np.diag([4.0, 0.25])), np.diag([2.0, 0.5]), atol=1e-15)


def test_sqrt_rejects_indefinite():
    with pytest.raises(NotPositiveDefinite):
        hermitian_sqrt(np.diag([1.0, -1.0]))


@given(seeds, st.sampled_from([2, 3, 4]), st.floats(0.05, 2.0))
def test_sqrt_resquares(seed, n, scale):
    a = sample("sh_n", n, scale, seed)
    r = hermitian_sqrt(a)
    assert fro(r @ r - a) < 1e-12 * max(1.0, fro(a))
    assert fro(r - r.conj().T) < 1e-14


def test_exp_fixed_values():
    assert np.array_equal(matrix_exp(np.zeros((2, 2))), np.eye(2))
    assert np.allclose(matrix_exp(np.diag([LN2, -LN2])), np.diag([2.0, 0.5]), atol=1e-15)


@given(seeds, st.sampled_from([2, 3, 4]), st.floats(0.0, 30.0))
def test_exp_matches_scipy(seed, n, scale):
    # independent oracle: scipy's Pade-based expm
    rng = np.random.default_rng(seed)
    x = scale * (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / n
    ours, ref = matrix_exp(x), scipy.linalg.expm(x)
    assert fro(ours - ref) <= 1e-12 * max(1.0, fro(ref))


def test_exp_budget():
    with pytest.raises(NumericalFailure):
        matrix_exp(np.diag([1e30, -1e30]))


@given(seeds, st.sampled_from([2, 3]), st.floats(0.01, 3.0))
def test_exp_log_round_trip(seed, n, scale):
    x = sample("sl_n_tangent", n, scale, seed)
    x = 0.5 * (x + x.conj().T)
    y = matrix_exp(x)
    assert fro(matrix_log_hpd(y) - x) < 1e-10
    assert fro(expm_hermitian(x) - y) < 1e-12 * fro(y)


def test_log_fixed_values():
    assert np.allclose(matrix_log_hpd(np.eye(2)), 0, atol=0)
    assert np.allclose(matrix_log_hpd(np.diag([2.0, 0.5])), np.diag([LN2, -LN2]), atol=1e-15)


@given(seeds, st.sampled_from([2, 3]))
def test_log_unitary_round_trip(seed, n):
    g = sample("su_n", n, 2.5, seed)
    x = log_unitary(g)
    assert fro(x + x.conj().T) < 1e-14
    assert fro(scipy.linalg.expm(x) - g) < 1e-11


def test_polar_trivial_factors():
    g = sample("su_n", 2, 0.7, 1)
    a = sample("sh_n", 2, 0.7, 2)
    g1, a1 = polar_project(g)
    assert fro(g1 - g) < 1e-12 and fro(a1 - np.eye(2)) < 1e-12
    g2, a2 = polar_project(a)
    assert fro(g2 - np.eye(2)) < 1e-12 and fro(a2 - a) < 1e-12


@given(seeds, st.sampled_from([2, 3]))
def test_polar_recomposes(seed, n):
    rng = np.random.default_rng(seed)
    d = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    d = d / np.linalg.det(d) ** (1 / n)
    g, a = polar_project(d)
    assert fro(g @ a - d) < 1e-11 * max(1.0, fro(d))
    check_special_unitary(g)
    check_hermitian_pd(a)
    # oracle: scipy's polar decomposition d = u p
    u, p = scipy.linalg.polar(d)
    assert fro(p - a) < 1e-10 * max(1.0, fro(a))


def test_polar_rejects_non_unimodular():
    with pytest.raises(InvalidInput):
        polar_project(2 * np.eye(2))


def test_sample_examples():
    assert np.array_equal(sample("sh_n", 2, 0.0, 5), np.eye(2))
    assert np.array_equal(sample("su_n", 2, 0.1, 42), sample("su_n", 2, 0.1, 42))
    check_hermitian_pd(sample("sh_n", 3, 0.1, 7))
    with pytest.raises(InvalidInput):
        sample("gl_n", 2, 0.1, 0)
