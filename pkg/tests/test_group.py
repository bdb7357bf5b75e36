import numpy as np
from hypothesis import given, strategies as st

from quasipoisson.group import (
    GROUP_IDENTITIES,
    alpha,
    chi,
    group_identity_defects,
    sigma,
    translation_identity_defects,
    verify_decomposition,
    verify_group_identities,
    verify_translation_identities,
)
from quasipoisson.loop import loop_mul
from quasipoisson.matrix_core import check_special_unitary, fro, polar_project, sample

seeds = st.integers(0, 2**32 - 1)
sizes = st.sampled_from([2, 3])


def _draw(seed, n, scale=0.3):
    g, h = (sample("su_n", n, scale, [seed, k]) for k in range(2))
    a, b, c = (sample("sh_n", n, scale, [seed, 2 + k]) for k in range(3))
    return g, h, a, b, c


def test_trivial_values():
    a = sample("sh_n", 2, 0.5, 1)
    g = sample("su_n", 2, 0.5, 2)
    eye = np.eye(2)
    assert fro(alpha(a, eye) - eye) < 1e-14
    assert fro(alpha(np.diag([2.0, 0.5]), np.diag([3.0, 1 / 3])) - eye) < 1e-14
    assert fro(sigma(a, eye) - a) < 1e-14
    assert fro(sigma(eye, g) - eye) < 1e-14
    assert fro(chi(eye, g) - g) < 1e-14
    assert fro(chi(a, eye) - eye) < 1e-14


@given(seeds, sizes)
def test_projection_oracles(seed, n):
    g, _, a, b, _ = _draw(seed, n, 0.6)
    u = alpha(a, b)
    check_special_unitary(u)
    assert fro(u @ loop_mul(a, b) - a @ b) < 1e-10
    g2, a2 = polar_project(a @ g)
    assert fro(sigma(a, g) - a2) < 1e-10
    assert fro(chi(a, g) - g2) < 1e-10
    assert fro(chi(a, g) @ sigma(a, g) - a @ g) < 1e-10


@given(seeds, sizes)
def test_structure_identities(seed, n):
    defects = group_identity_defects(*_draw(seed, n))
    assert set(defects) == set(GROUP_IDENTITIES)
    assert max(defects.values()) < 1e-9


@given(seeds, sizes)
def test_translation_identities(seed, n):
    _, _, a, b, c = _draw(seed, n)
    assert max(translation_identity_defects(a, b, c).values()) < 1e-9


def test_identity_inputs_are_exact():
    eye = np.eye(2, dtype=complex)
    assert max(group_identity_defects(eye, eye, eye, eye, eye).values()) == 0.0
    assert max(translation_identity_defects(eye, eye, eye).values()) == 0.0


def test_translation_with_inverse():
    a, c = sample("sh_n", 3, 0.3, 4), sample("sh_n", 3, 0.3, 5)
    b = np.linalg.inv(a)
    assert max(translation_identity_defects(a, b, c).values()) < 1e-9


def test_reports():
    for n in (2, 3):
        rep = verify_group_identities(n, samples=8, seed=3)
        assert rep.passed and len(rep.records) == len(GROUP_IDENTITIES)
        assert verify_translation_identities(n, samples=8, seed=3).passed
        assert verify_decomposition(n, samples=8, seed=3).passed
    assert rep["group.sigma_action.n3"].samples == 8
