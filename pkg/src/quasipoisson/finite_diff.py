"""Finite-difference stencils with Richardson extrapolation.

Functions may return scalars or arrays; derivatives are taken elementwise.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

__all__ = [
    "stencil_weights",
    "derivative",
    "taylor_coefficient",
    "taylor_coefficients",
    "partials",
]


@lru_cache(maxsize=None)
def _weights(offsets: tuple, deriv: int) -> tuple:
    m = len(offsets)
    if deriv >= m:
        raise ValueError("need more stencil points than the derivative order")
    vander = np.array([[o**p for o in offsets] for p in range(m)], dtype=float)
    rhs = np.zeros(m)
    rhs[deriv] = math.factorial(deriv)
    return tuple(np.linalg.solve(vander, rhs))


def stencil_weights(offsets, deriv: int) -> np.ndarray:
    """Weights w with sum_i w_i f(o_i h) / h^deriv ~ f^(deriv)(0)."""
    return np.array(_weights(tuple(float(o) for o in offsets), deriv))


def _central_offsets(points: int) -> tuple:
    if points % 2 == 0 or points < 3:
        raise ValueError("central stencils need an odd number of points >= 3")
    half = points // 2
    return tuple(float(i) for i in range(-half, half + 1))


def _central_error_order(points: int, deriv: int) -> int:
    # symmetric stencils cancel odd error terms
    return 2 * math.ceil((points - deriv) / 2)


def derivative(f, deriv: int, h: float, x0: float = 0.0, points: int = 5, richardson: int = 1):
    """Central-difference derivative of order ``deriv`` at ``x0``.

    ``richardson`` extra levels halve the step each time and eliminate the
    leading error term of the stencil.
    """
    offsets = _central_offsets(points)
    weights = stencil_weights(offsets, deriv)
    table = [_apply(f, x0, h / 2**lvl, offsets, weights, deriv) for lvl in range(richardson + 1)]
    p = _central_error_order(points, deriv)
    for lvl in range(richardson):
        factor = 2.0 ** (p + 2 * lvl)
        table = [(factor * table[i + 1] - table[i]) / (factor - 1.0) for i in range(len(table) - 1)]
    return table[0]


def _apply(f, x0, h, offsets, weights, deriv):
    acc = None
    for o, w in zip(offsets, weights):
        if w == 0.0:
            continue
        val = np.asarray(f(x0 + o * h)) * w
        acc = val if acc is None else acc + val
    return acc / h**deriv


def taylor_coefficient(f, k: int, h: float, points: int = 5, richardson: int = 1):
    """k-th Taylor coefficient f^(k)(0) / k!."""
    if k == 0:
        return np.asarray(f(0.0))
    return derivative(f, k, h, points=points, richardson=richardson) / math.factorial(k)


def taylor_coefficients(f, max_order: int, h: float, points: int = 7, richardson: int = 1) -> list:
    """Taylor coefficients of orders 0..max_order at t = 0, sharing evaluations."""
    cache: dict = {}

    def g(t):
        key = round(t / h * 2**richardson)
        if key not in cache:
            cache[key] = np.asarray(f(t))
        return cache[key]

    return [taylor_coefficient(g, k, h, points=points, richardson=richardson) for k in range(max_order + 1)]


def partials(f, x, h: float, points: int = 5) -> np.ndarray:
    """Array ``d[l, ...] = d f / d x_l`` at the point ``x`` (no extrapolation)."""
    x = np.asarray(x, dtype=float)
    offsets = _central_offsets(points)
    weights = stencil_weights(offsets, 1)
    rows = []
    for idx in range(x.size):
        e = np.zeros_like(x)
        e.flat[idx] = 1.0
        rows.append(_apply(lambda s: f(x + s * e), 0.0, h, offsets, weights, 1))
    return np.stack(rows)
