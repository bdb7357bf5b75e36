import numpy as np
import pytest
from hypothesis import given, strategies as st

from quasipoisson.algebra import sh_basis
from quasipoisson.errors import InvalidInput
from quasipoisson.group import alpha
from quasipoisson.loop import (
    akivis_commutator_numeric,
    check_mono_alternative,
    loop_left_div,
    loop_mul,
    loop_power,
    loop_right_div,
)
from quasipoisson.matrix_core import check_hermitian_pd, fro, sample

D = np.diag([2.0, 0.5]).astype(complex)
seeds = st.integers(0, 2**32 - 1)
sizes = st.sampled_from([2, 3])


def test_fixed_values():
    a = sample("sh_n", 2, 0.4, 3)
    assert fro(loop_mul(a, np.eye(2)) - a) < 1e-14
    assert np.allclose(loop_mul(D, D), np.diag([4.0, 0.25]), atol=1e-14)
    assert fro(loop_left_div(a, a) - np.eye(2)) < 1e-13
    assert fro(loop_left_div(np.eye(2), a) - a) < 1e-13
    assert fro(loop_right_div(a, a) - np.eye(2)) < 1e-13
    assert fro(loop_right_div(a, np.eye(2)) - a) < 1e-13
    assert np.array_equal(loop_power(a, 0), np.eye(2))
    assert np.allclose(loop_power(D, -1), np.diag([0.5, 2.0]), atol=1e-15)
    assert check_mono_alternative(a, D, 0, 0) < 1e-14


def test_dimension_mismatch():
    with pytest.raises(InvalidInput):
        loop_mul(np.eye(2), np.eye(3))


@given(seeds, sizes)
def test_product_recomposes_with_alpha(seed, n):
    a, b = sample("sh_n", n, 0.5, [seed, 0]), sample("sh_n", n, 0.5, [seed, 1])
    r = loop_mul(a, b)
    check_hermitian_pd(r)
    assert fro(alpha(a, b) @ r - a @ b) < 1e-10


@given(seeds, sizes, st.floats(0.05, 1.0))
def test_divisions(seed, n, scale):
    a, c = sample("sh_n", n, scale, [seed, 0]), sample("sh_n", n, scale, [seed, 1])
    assert fro(loop_mul(a, loop_left_div(a, c)) - c) < 1e-10
    assert fro(loop_mul(loop_right_div(c, a), a) - c) < 1e-10


@given(seeds, sizes, st.integers(-2, 2), st.integers(-2, 2))
def test_mono_alternative(seed, n, k, l):
    a, b = sample("sh_n", n, 0.3, [seed, 0]), sample("sh_n", n, 0.3, [seed, 1])
    assert check_mono_alternative(a, b, k, l) < 1e-9


def test_mono_alternative_inverse_pair():
    a, b = sample("sh_n", 2, 0.3, 11), sample("sh_n", 2, 0.3, 12)
    assert check_mono_alternative(a, b, 1, -1) < 1e-10
    with pytest.raises(InvalidInput):
        check_mono_alternative(a, b, 5, 0)


def test_loop_is_not_associative():
    # the loop structure is genuinely non-associative away from commuting pairs
    a, b, c = (sample("sh_n", 2, 0.8, k) for k in range(3))
    assert fro(loop_mul(loop_mul(a, b), c) - loop_mul(a, loop_mul(b, c))) > 1e-3


def test_commutator_vanishes_on_sh2():
    e = sh_basis(2)
    assert fro(akivis_commutator_numeric(e[0], e[1], 1e-2)) < 1e-3
    assert fro(akivis_commutator_numeric(e[2], e[2], 1e-2)) < 1e-8


def test_commutator_step_bounds():
    e = sh_basis(2)
    with pytest.raises(InvalidInput):
        akivis_commutator_numeric(e[0], e[1], 1e-5)
