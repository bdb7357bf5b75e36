"""Dense complex matrix kernel for SL(n, C), SU(n) and SH(n).

Everything here works on plain ``numpy`` arrays.  Hermitian positive
definite (HPD) matrices are handled through their eigendecomposition, which
keeps square roots and logarithms on the principal branch and exactly
Hermitian up to rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import schur

from .errors import InvalidInput, NotPositiveDefinite, NumericalFailure

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "dagger",
    "fro",
    "as_square",
    "hermitian_defect",
    "unitary_defect",
    "check_hermitian_pd",
    "check_special_unitary",
    "hermitian_sqrt",
    "hermitian_power",
    "expm_hermitian",
    "matrix_exp",
    "matrix_log_hpd",
    "log_unitary",
    "polar_project",
    "sample",
]


@dataclass(frozen=True)
class Tolerances:
    """Absolute tolerances used by invariant checks."""

    sym: float = 1e-10
    det: float = 1e-10
    mat: float = 1e-10
    alg: float = 1e-12


DEFAULT_TOL = Tolerances()


def dagger(x: np.ndarray) -> np.ndarray:
    return x.conj().T


def fro(x: np.ndarray) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(x))


def as_square(x, name: str = "matrix") -> np.ndarray:
    """Return ``x`` as a finite complex square array or raise InvalidInput."""
    arr = np.asarray(x, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise InvalidInput(f"{name} must be a non-empty square matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidInput(f"{name} has non-finite entries")
    return arr


def hermitian_defect(a: np.ndarray) -> float:
    return fro(a - dagger(a))


def unitary_defect(g: np.ndarray) -> float:
    return fro(dagger(g) @ g - np.eye(g.shape[0]))


def _hermitian_part(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + dagger(a))


def _eigh_checked(a: np.ndarray, tol: float, name: str):
    a = as_square(a, name)
    scale = max(1.0, fro(a))
    if hermitian_defect(a) > tol * scale:
        raise InvalidInput(f"{name} is not Hermitian (defect {hermitian_defect(a):.3e})")
    w, v = np.linalg.eigh(_hermitian_part(a))
    if w[0] <= 0.0:
        raise NotPositiveDefinite(f"{name} has eigenvalue {w[0]:.3e} <= 0")
    return w, v


def check_hermitian_pd(a, unimodular: bool = True, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Validate an element of SH(n) (or of the HPD cone if ``unimodular`` is False)."""
    w, _ = _eigh_checked(a, tol.sym, "HPD matrix")
    if unimodular:
        det = float(np.prod(w))
        if abs(det - 1.0) > tol.det:
            raise InvalidInput(f"HPD matrix has det {det!r}, expected 1")
    return np.asarray(a, dtype=complex)


def check_special_unitary(g, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Validate an element of SU(n)."""
    g = as_square(g, "unitary matrix")
    if unitary_defect(g) > tol.sym:
        raise InvalidInput(f"matrix is not unitary (defect {unitary_defect(g):.3e})")
    det = np.linalg.det(g)
    if abs(det - 1.0) > tol.det:
        raise InvalidInput(f"unitary matrix has det {det!r}, expected 1")
    return g


def hermitian_power(a, p: float, tol: float = DEFAULT_TOL.sym) -> np.ndarray:
    """Principal real power ``a**p`` of a Hermitian positive definite matrix."""
    w, v = _eigh_checked(a, tol, "HPD matrix")
    return (v * w**p) @ dagger(v)


def hermitian_sqrt(a, tol: float = DEFAULT_TOL.sym) -> np.ndarray:
    """Principal square root of a Hermitian positive definite matrix.

    Raises
    ------
    InvalidInput
        If ``a`` is not Hermitian within ``tol`` (relative to its norm).
    NotPositiveDefinite
        If an eigenvalue of ``a`` is not strictly positive.
    """
    w, v = _eigh_checked(a, tol, "HPD matrix")
    return (v * np.sqrt(w)) @ dagger(v)


def expm_hermitian(h) -> np.ndarray:
    """exp of a Hermitian matrix through its eigendecomposition (result is HPD)."""
    h = as_square(h, "Hermitian matrix")
    w, v = np.linalg.eigh(_hermitian_part(h))
    return (v * np.exp(w)) @ dagger(v)


def matrix_exp(x, max_terms: int = 40, max_squarings: int = 60) -> np.ndarray:
    """Matrix exponential by scaling and squaring around a truncated Taylor series.

    The argument is scaled by ``2**-s`` until its 1-norm is at most 1/2, the
    Taylor series is summed until the next term drops below machine
    precision relative to the partial sum, and the result is squared ``s``
    times.
    """
    x = as_square(x, "matrix")
    n = x.shape[0]
    norm1 = float(np.max(np.sum(np.abs(x), axis=0)))
    s = 0 if norm1 <= 0.5 else int(math.ceil(math.log2(norm1 / 0.5)))
    if s > max_squarings:
        raise NumericalFailure(f"matrix_exp needs {s} squarings (budget {max_squarings})")
    y = x / 2.0**s
    result = np.eye(n, dtype=complex)
    term = np.eye(n, dtype=complex)
    for k in range(1, max_terms + 1):
        term = term @ y / k
        result = result + term
        if fro(term) <= np.finfo(float).eps * fro(result):
            break
    else:
        raise NumericalFailure(f"Taylor core did not converge in {max_terms} terms")
    for _ in range(s):
        result = result @ result
    return result


def matrix_log_hpd(a, tol: float = DEFAULT_TOL.sym) -> np.ndarray:
    """Hermitian logarithm of an HPD matrix (traceless when det(a) = 1)."""
    w, v = _eigh_checked(a, tol, "HPD matrix")
    return (v * np.log(w)) @ dagger(v)


def log_unitary(g) -> np.ndarray:
    """Anti-Hermitian principal logarithm of a unitary matrix.

    Uses the complex Schur form, which is diagonal for normal matrices, so
    eigenvectors stay orthonormal even for repeated eigenvalues.  Eigen-angles
    are taken in (-pi, pi].
    """
    g = as_square(g, "unitary matrix")
    t, z = schur(g, output="complex")
    angles = np.angle(np.diag(t))
    angles = np.where(angles <= -np.pi, angles + 2 * np.pi, angles)
    out = (z * (1j * angles)) @ dagger(z)
    return 0.5 * (out - dagger(out))


def polar_project(d, tol: Tolerances = DEFAULT_TOL, max_cond: float = 1e12):
    """Split ``d`` in SL(n, C) as ``d = g @ a`` with g in SU(n) and a in SH(n).

    ``a = (d^H d)^(1/2)`` and ``g = d a^-1``.
    """
    d = as_square(d, "SL(n) matrix")
    det = np.linalg.det(d)
    if abs(det - 1.0) > tol.det * max(1.0, fro(d)) ** d.shape[0]:
        raise InvalidInput(f"polar_project expects det 1, got {det!r}")
    if np.linalg.cond(d) > max_cond:
        raise NumericalFailure("matrix too ill-conditioned for a stable polar split")
    gram = dagger(d) @ d
    w, v = np.linalg.eigh(_hermitian_part(gram))
    if w[0] <= 0.0:
        raise NumericalFailure("singular matrix in polar_project")
    a = (v * np.sqrt(w)) @ dagger(v)
    a_inv = (v / np.sqrt(w)) @ dagger(v)
    return d @ a_inv, a


def _unit_direction(rng: np.random.Generator, n: int, kind: str) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    if kind == "hermitian":
        z = 0.5 * (z + dagger(z))
    elif kind == "antihermitian":
        z = 0.5 * (z - dagger(z))
    z = z - np.trace(z) / n * np.eye(n)
    return z / fro(z)


def _unimodular(m: np.ndarray) -> np.ndarray:
    det = np.linalg.det(m)
    return m / det ** (1.0 / m.shape[0])


def sample(kind: str, n: int, scale: float, seed) -> np.ndarray:
    """Seeded random element near the identity.

    kind
        ``"sh_n"``: exp of a traceless Hermitian matrix of Frobenius norm
        ``scale``; ``"su_n"``: exp of a traceless anti-Hermitian matrix of
        norm ``scale``; ``"sl_n_tangent"``: a traceless complex matrix of
        norm ``scale`` (an element of the Lie algebra, not of the group).
    seed
        anything accepted by :func:`numpy.random.default_rng`.
    """
    if n < 2:
        raise InvalidInput("sample needs n >= 2")
    if scale < 0:
        raise InvalidInput("scale must be non-negative")
    rng = np.random.default_rng(seed)
    if kind == "sh_n":
        if scale == 0:
            return np.eye(n, dtype=complex)
        a = expm_hermitian(scale * _unit_direction(rng, n, "hermitian"))
        return _hermitian_part(_unimodular(a))
    if kind == "su_n":
        if scale == 0:
            return np.eye(n, dtype=complex)
        return _unimodular(matrix_exp(scale * _unit_direction(rng, n, "antihermitian")))
    if kind == "sl_n_tangent":
        if scale == 0:
            return np.zeros((n, n), dtype=complex)
        return scale * _unit_direction(rng, n, "complex")
    raise InvalidInput(f"unknown sample kind {kind!r}")
