import numpy as np
import pytest
from hypothesis import given, strategies as st

from quasipoisson.algebra import QuasiDoubleAlgebra, sl_n_model
from quasipoisson.errors import InvalidInput
from quasipoisson.series import (
    TruncatedSeriesValue,
    bch_consistency_report,
    bch_series,
    compose_bch,
    expand_alpha,
    expand_chi,
    expand_m,
    expand_sigma,
    model_taylor_coefficients,
    projected_bch_alpha,
    projected_bch_chi,
    projected_bch_m,
    projected_bch_sigma,
    taylor_match_report,
)

R2 = np.sqrt(2.0)
SL2 = sl_n_model(2)
E = np.eye(3)
seeds = st.integers(0, 2**32 - 1)
vec3 = st.lists(st.floats(-2, 2), min_size=3, max_size=3).map(np.array)


def test_trivial_cases():
    x = np.array([0.3, -0.2, 0.5])
    z = np.zeros(3)
    m = expand_m(x, z, SL2)
    assert np.array_equal(m.part(1), x) and not m[2].any() and not m[3].any()
    a = expand_alpha(x, x, SL2)
    assert all(not a[k].any() for k in range(4))
    s = expand_sigma(x, z, SL2)
    assert np.array_equal(s.part(1), x) and not s[2].any() and not s[3].any()
    assert all(not expand_sigma(z, x, SL2)[k].any() for k in range(4))
    c = expand_chi(z, x, SL2)
    assert np.array_equal(c.part(1), x) and not c[2].any() and not c[3].any()
    assert all(not expand_chi(x, z, SL2)[k].any() for k in range(4))


def test_alpha_second_order_on_basis():
    # 1/2 psi(e1, e2) = -(sqrt2 / 2) eps3
    a = expand_alpha(E[0], E[1], SL2)
    assert np.allclose(a.part(2), [0, 0, -R2 / 2], atol=1e-15)


@given(vec3, vec3)
def test_codomains(x, y):
    for s in (expand_m(x, y, SL2), expand_alpha(x, y, SL2), expand_sigma(x, y, SL2), expand_chi(x, y, SL2)):
        assert s.codomain_defect() == 0.0


@given(vec3)
def test_m_on_the_diagonal(x):
    m = expand_m(x, x, SL2)
    assert np.allclose(m.part(1), 2 * x) and np.abs(m[2]).max() == 0 and np.abs(m[3]).max() < 1e-12


def test_series_value_validation():
    with pytest.raises(InvalidInput):
        TruncatedSeriesValue(1, 1, "g3", (np.zeros(2),) * 4)
    with pytest.raises(InvalidInput):
        TruncatedSeriesValue(1, 1, "g", (np.zeros(2),) * 3)
    with pytest.raises(InvalidInput):
        expand_m(np.zeros(2), np.zeros(3), SL2)


def test_evaluate():
    s = bch_series(np.r_[np.zeros(3), E[0]], np.r_[np.zeros(3), E[1]], SL2)
    t = 0.1
    assert np.allclose(s.evaluate(t), sum(s[k] * t**k for k in range(4)))


def _random_complement(seed):
    rng = np.random.default_rng(seed)
    t = np.eye(6) + 0.4 * rng.normal(size=(6, 6))
    t[3:, :3] = 0.0
    c = np.einsum("aj,bk,abc,ic->jki", t, t, SL2.bracket, np.linalg.inv(t))
    c = 0.5 * (c - c.swapaxes(0, 1))
    c[:3, :3, 3:] = 0.0
    return QuasiDoubleAlgebra(3, 3, c)


def test_bch_route_on_models():
    for n in (2, 3):
        assert bch_consistency_report(sl_n_model(n), samples=8, seed=2).passed


@given(seeds)
def test_bch_route_on_any_complement(seed):
    # the complement of su(2) is no longer ad-invariant, so mu, psi and the
    # co-action are all non-zero and every term of the formulas is exercised
    qd = _random_complement(seed)
    assert bch_consistency_report(qd, samples=3, seed=seed, tol=1e-9).passed


def test_compose_rejects_constant_terms():
    s = bch_series(np.ones(6), np.ones(6), SL2)
    shifted = TruncatedSeriesValue(3, 3, "g", (np.ones(6), s[1], s[2], s[3]))
    with pytest.raises(InvalidInput):
        compose_bch(shifted, s, SL2)


def test_zero_tangents_give_zero_coefficients():
    z = np.zeros(3)
    coeffs = model_taylor_coefficients(2, z, z, z)
    assert all(np.abs(c).max() < 1e-15 for v in coeffs.values() for c in v)


def test_model_matches_expansions():
    rep = taylor_match_report(n=2, h=1e-2, samples=4, seed=5)
    assert rep.passed, rep.to_text()
    assert max(r.max_defect for r in rep.records if ".order3." not in r.check_id) < 1e-6


def test_printed_projection_disagrees_with_model():
    # the g1/g2 projections of BCH(x, y) ignore the cross term between alpha
    # and m (chi and sigma), and miss the model at the first order where it enters
    rng = np.random.default_rng(3)
    x, y, xi = (v / np.linalg.norm(v) for v in rng.normal(size=(3, 3)))
    model = model_taylor_coefficients(2, x, y, xi)
    cases = (
        ("m", projected_bch_m(x, y, SL2), expand_m(x, y, SL2), 3),
        ("sigma", projected_bch_sigma(x, xi, SL2), expand_sigma(x, xi, SL2), 2),
        ("chi", projected_bch_chi(x, xi, SL2), expand_chi(x, xi, SL2), 3),
    )
    for key, naive, corrected, order in cases:
        assert np.abs(model[key][order] - naive[order]).max() > 1e-2, key
        assert np.abs(model[key][order] - corrected[order]).max() < 1e-4, key


def test_printed_alpha_needs_a_coaction_to_fail():
    # in sl(2, C) the co-action vanishes and both alpha formulas agree; on a
    # complement with a co-action only the corrected one composes to BCH(x, y)
    rng = np.random.default_rng(6)
    x, y = rng.normal(size=(2, 3))
    assert np.abs(projected_bch_alpha(x, y, SL2)[3] - expand_alpha(x, y, SL2)[3]).max() < 1e-14
    qd = _random_complement(11)
    target = bch_series(np.r_[np.zeros(3), x], np.r_[np.zeros(3), y], qd)
    m = expand_m(x, y, qd)
    good = compose_bch(expand_alpha(x, y, qd), m, qd)
    naive = compose_bch(projected_bch_alpha(x, y, qd), projected_bch_m(x, y, qd), qd)
    assert np.abs(good[3] - target[3]).max() < 1e-12
    assert np.abs(naive[3] - target[3]).max() > 1e-2


def test_step_bounds():
    with pytest.raises(InvalidInput):
        taylor_match_report(n=2, h=1e-5, samples=1)
    with pytest.raises(InvalidInput):
        taylor_match_report(n=4, samples=1)
