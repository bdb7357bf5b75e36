"""Exterior algebra of F + F* with the canonical graded Poisson ("big") bracket.

Generators ``0 .. n-1`` span F (x_i) and ``n .. 2n-1`` span F* (xi^i); the
pairing matches generator ``i`` with ``n + i``.  A monomial is a sorted tuple
of distinct generators; its coefficient absorbs the reordering sign.
"""

from __future__ import annotations

from typing import Iterable, Mapping

import numpy as np

from .errors import InvalidInput

__all__ = ["GradedMultiVector", "big_bracket", "wedge", "PRUNE"]

PRUNE = 1e-14


def _sort_with_sign(gens: Iterable[int]):
    """Sort generators, returning (sign, tuple) or (0, None) on a repeat."""
    arr = list(gens)
    sign = 1
    for i in range(1, len(arr)):
        j = i
        while j > 0 and arr[j - 1] > arr[j]:
            arr[j - 1], arr[j] = arr[j], arr[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(arr, arr[1:]):
        if a == b:
            return 0, None
    return sign, tuple(arr)


class GradedMultiVector:
    """Sparse element of the exterior algebra over 2*dim generators."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Mapping | None = None):
        if dim < 0:
            raise InvalidInput("dim must be non-negative")
        self.dim = dim
        clean: dict = {}
        for gens, coef in (terms or {}).items():
            if any(g < 0 or g >= 2 * dim for g in gens):
                raise InvalidInput(f"generator out of range in {gens}")
            sign, key = _sort_with_sign(gens)
            if sign == 0:
                continue
            clean[key] = clean.get(key, 0.0) + sign * float(coef)
        self.terms = {k: v for k, v in clean.items() if abs(v) > PRUNE}

    @classmethod
    def generator(cls, dim: int, g: int, coef: float = 1.0) -> "GradedMultiVector":
        return cls(dim, {(g,): coef})

    @classmethod
    def scalar(cls, dim: int, value: float) -> "GradedMultiVector":
        return cls(dim, {(): value})

    def _check(self, other: "GradedMultiVector") -> None:
        if not isinstance(other, GradedMultiVector) or other.dim != self.dim:
            raise InvalidInput("multivectors must share the same dim")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0.0) + v
        return GradedMultiVector(self.dim, out)

    def __neg__(self):
        return GradedMultiVector(self.dim, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s: float):
        return GradedMultiVector(self.dim, {k: s * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, GradedMultiVector) and self.dim == other.dim and self.terms == other.terms

    def __repr__(self):
        return f"GradedMultiVector(dim={self.dim}, terms={self.terms!r})"

    def bidegree_of(self, key: tuple) -> tuple:
        f = sum(1 for g in key if g < self.dim)
        return f, len(key) - f

    def filter_bidegree(self, f_deg: int, dual_deg: int) -> "GradedMultiVector":
        """Part with ``f_deg`` generators from F and ``dual_deg`` from F*."""
        return GradedMultiVector(
            self.dim, {k: v for k, v in self.terms.items() if self.bidegree_of(k) == (f_deg, dual_deg)}
        )

    def degrees(self) -> set:
        return {len(k) for k in self.terms}

    def norm(self) -> float:
        return float(np.sqrt(sum(v * v for v in self.terms.values())))

    def coefficient(self, gens) -> float:
        sign, key = _sort_with_sign(gens)
        if sign == 0:
            return 0.0
        return sign * self.terms.get(key, 0.0)

    def is_zero(self) -> bool:
        return not self.terms


def wedge(u: GradedMultiVector, v: GradedMultiVector) -> GradedMultiVector:
    u._check(v)
    out: dict = {}
    for ku, cu in u.terms.items():
        for kv, cv in v.terms.items():
            sign, key = _sort_with_sign(ku + kv)
            if sign:
                out[key] = out.get(key, 0.0) + sign * cu * cv
    return GradedMultiVector(u.dim, out)


def _left_derivative(key: tuple, g: int):
    """d/dg acting from the left: move g to the front, then drop it."""
    if g not in key:
        return 0, None
    pos = key.index(g)
    return (-1) ** pos, key[:pos] + key[pos + 1:]


def _right_derivative(key: tuple, g: int):
    """d/dg acting from the right: move g to the back, then drop it."""
    if g not in key:
        return 0, None
    pos = key.index(g)
    return (-1) ** (len(key) - 1 - pos), key[:pos] + key[pos + 1:]


def big_bracket(u: GradedMultiVector, v: GradedMultiVector) -> GradedMultiVector:
    """{u, v} = sum_i (u <-d/dx_i)(d/dxi^i-> v) + (u <-d/dxi^i)(d/dx_i-> v).

    On generators {x_i, xi^j} = {xi^j, x_i} = delta_ij.  For homogeneous u, v
    of degrees p, q: {u, v} = -(-1)^(pq) {v, u}.
    """
    u._check(v)
    n = u.dim
    out: dict = {}
    for ku, cu in u.terms.items():
        for kv, cv in v.terms.items():
            for g in ku:
                partner = g + n if g < n else g - n
                su, ru = _right_derivative(ku, g)
                sv, rv = _left_derivative(kv, partner)
                if su == 0 or sv == 0:
                    continue
                sign, key = _sort_with_sign(ru + rv)
                if sign:
                    out[key] = out.get(key, 0.0) + sign * su * sv * cu * cv
    return GradedMultiVector(n, out)
