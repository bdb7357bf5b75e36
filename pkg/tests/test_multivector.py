import numpy as np
import pytest
from hypothesis import given, strategies as st

from quasipoisson.errors import InvalidInput
from quasipoisson.multivector import GradedMultiVector, big_bracket, wedge

DIM = 3


def gen(g, coef=1.0):
    return GradedMultiVector.generator(DIM, g, coef)


@st.composite
def homogeneous(draw, degree=None):
    deg = draw(st.integers(0, 3)) if degree is None else degree
    keys = draw(st.lists(st.lists(st.integers(0, 2 * DIM - 1), min_size=deg, max_size=deg, unique=True),
                         min_size=1, max_size=4))
    coefs = draw(st.lists(st.integers(-3, 3), min_size=len(keys), max_size=len(keys)))
    return GradedMultiVector(DIM, {tuple(k): float(c) for k, c in zip(keys, coefs)}), deg


def test_generator_pairing():
    assert big_bracket(gen(0), gen(DIM)) == GradedMultiVector.scalar(DIM, 1.0)
    assert big_bracket(gen(DIM), gen(0)) == GradedMultiVector.scalar(DIM, 1.0)
    assert big_bracket(gen(0), gen(1)).is_zero()
    assert big_bracket(gen(DIM), gen(DIM + 1)).is_zero()


def test_monomials_absorb_sign():
    v = GradedMultiVector(DIM, {(2, 0): 1.0})
    assert v.coefficient((0, 2)) == -1.0
    assert GradedMultiVector(DIM, {(1, 1): 5.0}).is_zero()
    with pytest.raises(InvalidInput):
        GradedMultiVector(DIM, {(7,): 1.0})


def test_bidegree_filter():
    v = GradedMultiVector(DIM, {(0, 3, 4): 1.0, (3, 4, 5): 2.0})
    assert v.filter_bidegree(1, 2).terms == {(0, 3, 4): 1.0}
    assert v.filter_bidegree(0, 3).terms == {(3, 4, 5): 2.0}


@given(homogeneous(), homogeneous())
def test_wedge_graded_commutative(a, b):
    (u, p), (v, q) = a, b
    assert (wedge(u, v) - (-1) ** (p * q) * wedge(v, u)).norm() < 1e-12


@given(homogeneous(), homogeneous())
def test_bracket_graded_symmetry(a, b):
    # {u, v} = -(-1)^(pq) {v, u}
    (u, p), (v, q) = a, b
    assert (big_bracket(u, v) + (-1) ** (p * q) * big_bracket(v, u)).norm() < 1e-12


@given(homogeneous(), homogeneous(), homogeneous())
def test_bracket_jacobi(a, b, c):
    (u, p), (v, q), (w, _) = a, b, c
    lhs = big_bracket(u, big_bracket(v, w))
    rhs = big_bracket(big_bracket(u, v), w) + (-1) ** (p * q) * big_bracket(v, big_bracket(u, w))
    assert (lhs - rhs).norm() < 1e-9


@given(homogeneous(), homogeneous(), homogeneous())
def test_bracket_is_a_derivation(a, b, c):
    # {u, v w} = {u, v} w + (-1)^(p q) v {u, w}
    (u, p), (v, q), (w, _) = a, b, c
    lhs = big_bracket(u, wedge(v, w))
    rhs = wedge(big_bracket(u, v), w) + (-1) ** (p * q) * wedge(v, big_bracket(u, w))
    assert (lhs - rhs).norm() < 1e-9


def test_norm_and_scaling():
    v = GradedMultiVector(DIM, {(0,): 3.0, (1, 2): 4.0})
    assert v.norm() == 5.0
    assert (2 * v).norm() == 10.0
    assert np.isclose((v - v).norm(), 0.0)
