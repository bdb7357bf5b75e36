"""The right mono-alternative Lie loop (SH(n), m) with m(a, b) = (b a^2 b)^(1/2)."""

from __future__ import annotations

import numpy as np

from .errors import InvalidInput
from .finite_diff import taylor_coefficient
from .matrix_core import (
    DEFAULT_TOL,
    expm_hermitian,
    fro,
    hermitian_power,
    hermitian_sqrt,
    matrix_log_hpd,
)

__all__ = [
    "identity",
    "loop_mul",
    "loop_left_div",
    "loop_right_div",
    "loop_power",
    "check_mono_alternative",
    "akivis_commutator_numeric",
]


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=complex)


def _same_shape(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise InvalidInput(f"dimension mismatch: {a.shape} vs {b.shape}")


def _sym(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.conj().T)


def loop_mul(a, b) -> np.ndarray:
    """m(a, b) = (b a^2 b)^(1/2), the SH(n)-factor of the matrix product ab."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    _same_shape(a, b)
    return hermitian_sqrt(_sym(b @ a @ a @ b))


def loop_left_div(a, c) -> np.ndarray:
    r"""Solve m(a, b) = c for b, i.e. ``a \ c = a^-1 (a c^2 a)^(1/2) a^-1``."""
    a = np.asarray(a, dtype=complex)
    c = np.asarray(c, dtype=complex)
    _same_shape(a, c)
    a_inv = hermitian_power(a, -1.0)
    root = hermitian_sqrt(_sym(a @ c @ c @ a))
    return _sym(a_inv @ root @ a_inv)


def loop_right_div(c, a) -> np.ndarray:
    """Solve m(b, a) = c for b, i.e. ``c / a = (a^-1 c^2 a^-1)^(1/2)``."""
    a = np.asarray(a, dtype=complex)
    c = np.asarray(c, dtype=complex)
    _same_shape(a, c)
    a_inv = hermitian_power(a, -1.0)
    return hermitian_sqrt(_sym(a_inv @ c @ c @ a_inv))


def loop_power(a, k: int) -> np.ndarray:
    """Loop power a^k; in SH(n) it coincides with the matrix power."""
    a = np.asarray(a, dtype=complex)
    if k == 0:
        return identity(a.shape[0])
    return hermitian_power(a, float(k))


def check_mono_alternative(a, b, k: int, l: int) -> float:
    """Frobenius defect of (a b^k) b^l = a b^(k+l)."""
    if abs(k) > 4 or abs(l) > 4:
        raise InvalidInput("exponents are limited to |k|, |l| <= 4 (local regime)")
    lhs = loop_mul(loop_mul(a, loop_power(b, k)), loop_power(b, l))
    rhs = loop_mul(a, loop_power(b, k + l))
    return fro(lhs - rhs)


def akivis_commutator_numeric(x, y, h: float = 1e-2) -> np.ndarray:
    """Tangent commutator of the loop from ``t -> (x(t) y(t)) / (y(t) x(t))``.

    ``x`` and ``y`` are traceless Hermitian matrices and the curves are
    ``exp(t x)``, ``exp(t y)``.  The curve is pulled back through the
    Hermitian logarithm and half of its second derivative at 0 is returned,
    i.e. its t^2 Taylor coefficient.
    """
    if not 1e-3 <= h <= 1e-1:
        raise InvalidInput(f"step h={h} outside [1e-3, 1e-1]; smaller steps lose the t^2 term to cancellation")
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    _same_shape(x, y)
    tol = DEFAULT_TOL.sym * max(1.0, fro(x), fro(y))
    if fro(x - x.conj().T) > tol or fro(y - y.conj().T) > tol:
        raise InvalidInput("tangent vectors must be Hermitian")

    def curve(t: float) -> np.ndarray:
        ex, ey = expm_hermitian(t * x), expm_hermitian(t * y)
        return matrix_log_hpd(loop_right_div(loop_mul(ex, ey), loop_mul(ey, ex)))

    return taylor_coefficient(curve, 2, h, points=5)
