"""Quasi-double Lie algebras g = g1 + g2 as real structure-constant tensors.

A bracket tensor ``c`` has ``[b_i, b_j] = sum_k c[i, j, k] b_k`` in an adapted
basis listing g1 first.  For x, y in g2 and xi in g1 the bracket splits as

    [x, y]  = psi(x, y) + mu(x, y)       (g1 part + g2 part)
    [x, xi] = xi^x + x^xi                (g1 part + g2 part)
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

import numpy as np

from .errors import InvalidInput
from .report import VerificationReport

__all__ = [
    "QuasiDoubleAlgebra",
    "Components",
    "AkivisAlgebra",
    "check_antisymmetric",
    "project_components",
    "assemble_double",
    "jacobiator",
    "jacobi_check",
    "algebra_identity_defects",
    "verify_algebra_identities",
    "akivis_from_quasi_double",
    "akivis_identity_defect",
    "sh_basis",
    "adapted_basis",
    "matrix_to_coords",
    "coords_to_matrix",
    "sl_n_model",
    "im_trace_pairing",
    "pairing_invariance_defects",
    "ALGEBRA_IDENTITIES",
    "PAIRING_CONDITIONS",
    "SL2_RELATIONS",
    "sl2_relation_defects",
]

_SNAP = 1e-14


def check_antisymmetric(c: np.ndarray, name: str, tol: float = 0.0, axes: tuple = (0, 1)) -> None:
    """Raise InvalidInput naming the first index triple where c flips sign under swapping ``axes``."""
    c = np.asarray(c, dtype=float)
    bad = np.argwhere(np.abs(c + c.swapaxes(*axes)) > tol)
    if bad.size:
        idx = tuple(int(v) for v in bad[0])
        swapped = list(idx)
        swapped[axes[0]], swapped[axes[1]] = idx[axes[1]], idx[axes[0]]
        where = "".join(f"[{v}]" for v in idx)
        other = "".join(f"[{v}]" for v in swapped)
        if where == other:
            detail = f"{name}{where} = {float(c[idx])!r} must be 0"
        else:
            detail = f"{name}{where} = {float(c[idx])!r} but {name}{other} = {float(c[tuple(swapped)])!r}"
        raise InvalidInput(f"{name} is not antisymmetric: {detail}")


@dataclass(frozen=True)
class QuasiDoubleAlgebra:
    """Bracket tensor on g1 + g2 (g1 indices first).

    Construction checks shapes, antisymmetry and that g1 is closed; Jacobi
    is left to :func:`jacobi_check` so that broken tensors can be studied.
    """

    dim1: int
    dim2: int
    bracket: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.bracket, dtype=float)
        n = self.dim1 + self.dim2
        if c.shape != (n, n, n):
            raise InvalidInput(f"bracket has shape {c.shape}, expected {(n, n, n)}")
        if not np.all(np.isfinite(c)):
            raise InvalidInput("bracket has non-finite entries")
        check_antisymmetric(c, "bracket")
        d1 = self.dim1
        leak = np.abs(c[:d1, :d1, d1:]).max(initial=0.0)
        if leak > 0.0:
            raise InvalidInput(f"g1 is not closed under the bracket (g2 component {leak:.3e})")
        c.setflags(write=False)
        object.__setattr__(self, "bracket", c)

    @property
    def dim(self) -> int:
        return self.dim1 + self.dim2

    def bracket_of(self, u, v) -> np.ndarray:
        return np.einsum("i,j,ijk->k", u, v, self.bracket)


@dataclass(frozen=True)
class Components:
    """The pieces of a quasi-double bracket.

    bracket_g1[a, b, c]: [xi_a, xi_b] in g1
    psi[p, q, a], mu[p, q, r]: g1 and g2 parts of [x_p, x_q]
    act[p, a, q]: x_p^{xi_a} (g2 part of [x_p, xi_a])
    coact[p, a, b]: xi_a^{x_p} (g1 part of [x_p, xi_a])
    """

    bracket_g1: np.ndarray
    psi: np.ndarray
    mu: np.ndarray
    act: np.ndarray
    coact: np.ndarray


def project_components(qd: QuasiDoubleAlgebra) -> Components:
    c, d1 = qd.bracket, qd.dim1
    return Components(
        bracket_g1=c[:d1, :d1, :d1].copy(),
        psi=c[d1:, d1:, :d1].copy(),
        mu=c[d1:, d1:, d1:].copy(),
        act=c[d1:, :d1, d1:].copy(),
        coact=c[d1:, :d1, :d1].copy(),
    )


def assemble_double(dim1, dim2, bracket_g1, mu, psi, act, coact) -> QuasiDoubleAlgebra:
    """Bracket on g1 + g2 from its pieces; Jacobi is not assumed."""
    shapes = {
        "bracket_g1": (dim1, dim1, dim1),
        "mu": (dim2, dim2, dim2),
        "psi": (dim2, dim2, dim1),
        "act": (dim2, dim1, dim2),
        "coact": (dim2, dim1, dim1),
    }
    parts = {"bracket_g1": bracket_g1, "mu": mu, "psi": psi, "act": act, "coact": coact}
    arrays = {}
    for name, expected in shapes.items():
        arr = np.asarray(parts[name], dtype=float)
        if arr.shape != expected:
            raise InvalidInput(f"{name} has shape {arr.shape}, expected {expected}")
        arrays[name] = arr
    for name in ("bracket_g1", "mu", "psi"):
        check_antisymmetric(arrays[name], name)
    n = dim1 + dim2
    c = np.zeros((n, n, n))
    c[:dim1, :dim1, :dim1] = arrays["bracket_g1"]
    c[dim1:, dim1:, :dim1] = arrays["psi"]
    c[dim1:, dim1:, dim1:] = arrays["mu"]
    c[dim1:, :dim1, dim1:] = arrays["act"]
    c[dim1:, :dim1, :dim1] = arrays["coact"]
    c[:dim1, dim1:, :] = -c[dim1:, :dim1, :].swapaxes(0, 1)
    return QuasiDoubleAlgebra(dim1, dim2, c)


def jacobiator(c: np.ndarray) -> np.ndarray:
    """J[i, j, l, :] = [[b_i, b_j], b_l] + [[b_j, b_l], b_i] + [[b_l, b_i], b_j]."""
    c = np.asarray(c, dtype=float)
    t = np.einsum("ijk,klm->ijlm", c, c)
    return t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)


def jacobi_check(c) -> float:
    """Max over basis triples of the Euclidean norm of the Jacobiator."""
    c = np.asarray(getattr(c, "bracket", c), dtype=float)
    if c.size == 0:
        return 0.0
    return float(np.linalg.norm(jacobiator(c), axis=-1).max())


ALGEBRA_IDENTITIES = {
    "coaction_of_bracket": "[xi,eta]^x = [xi^x,eta] + [xi,eta^x] - xi^(x^eta) + eta^(x^xi)",
    "action_of_bracket": "x^[xi,eta] = (x^xi)^eta - (x^eta)^xi",
    "action_on_mu": "mu(x,y)^xi = mu(x^xi,y) + mu(x,y^xi) + x^(xi^y) - y^(xi^x)",
    "coaction_of_mu": "xi^mu(x,y) = (xi^y)^x - (xi^x)^y + [xi,psi(x,y)] + psi(x^xi,y) + psi(x,y^xi)",
    "mu_jacobi_anomaly": "sum_cyc mu(mu(x,y),z) = sum_cyc x^psi(y,z)",
    "psi_cocycle": "sum_cyc psi(mu(x,y),z) = sum_cyc psi(x,y)^z",
}


def _cyclic(t: np.ndarray) -> np.ndarray:
    # sum over cyclic permutations of the first three axes
    return t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)


def algebra_identity_defects(qd: QuasiDoubleAlgebra) -> dict:
    """Max defect of each of the six structure identities over all basis tuples.

    Also reports ``g1_jacobi``, which together with the six identities is
    equivalent to the Jacobi identity on g1 + g2.
    """
    p = project_components(qd)
    B, psi, mu, act, coact = p.bracket_g1, p.psi, p.mu, p.act, p.coact
    ein = np.einsum

    # (xi=a, eta=b, x=p) -> g1
    d1 = (
        ein("abc,pck->abpk", B, coact)
        - ein("pac,cbk->abpk", coact, B)
        - ein("pbc,ack->abpk", coact, B)
        + ein("pbq,qak->abpk", act, coact)
        - ein("paq,qbk->abpk", act, coact)
    )
    # (xi=a, eta=b, x=p) -> g2
    d2 = (
        ein("abc,pck->abpk", B, act)
        - ein("paq,qbk->abpk", act, act)
        + ein("pbq,qak->abpk", act, act)
    )
    # (x=p, y=q, xi=a) -> g2
    d3 = (
        ein("pqr,rak->pqak", mu, act)
        - ein("par,rqk->pqak", act, mu)
        - ein("qar,prk->pqak", act, mu)
        - ein("qab,pbk->pqak", coact, act)
        + ein("pab,qbk->pqak", coact, act)
    )
    # (x=p, y=q, xi=a) -> g1
    d4 = (
        ein("pqr,rak->pqak", mu, coact)
        - ein("qab,pbk->pqak", coact, coact)
        + ein("pab,qbk->pqak", coact, coact)
        - ein("pqb,abk->pqak", psi, B)
        - ein("par,rqk->pqak", act, psi)
        - ein("qar,prk->pqak", act, psi)
    )
    # (x, y, z) -> g2 and g1
    d5 = _cyclic(ein("pqr,rsk->pqsk", mu, mu) - ein("qsa,pak->pqsk", psi, act))
    d6 = _cyclic(ein("pqr,rsk->pqsk", mu, psi) - ein("pqa,sak->pqsk", psi, coact))

    def worst(t):
        return float(np.linalg.norm(t, axis=-1).max()) if t.size else 0.0

    out = {key: worst(d) for key, d in zip(ALGEBRA_IDENTITIES, (d1, d2, d3, d4, d5, d6))}
    out["g1_jacobi"] = jacobi_check(B) if B.size else 0.0
    return out


def verify_algebra_identities(qd: QuasiDoubleAlgebra, tol: float = 1e-12, label: str = "") -> VerificationReport:
    report = VerificationReport("quasi-double-algebra", environment={"dim1": qd.dim1, "dim2": qd.dim2})
    defects = algebra_identity_defects(qd)
    suffix = f".{label}" if label else ""
    for key, anchor in ALGEBRA_IDENTITIES.items():
        report.check(f"algebra.{key}{suffix}", anchor, defects[key], tol)
    report.check(f"algebra.g1_jacobi{suffix}", "Jacobi on g1", defects["g1_jacobi"], tol)
    report.check(f"algebra.jacobi{suffix}", "sum_cyc [[u,v],w] = 0", jacobi_check(qd), tol)
    return report


@dataclass(frozen=True)
class AkivisAlgebra:
    """Bracket c[i, j, k] and triple t[i, j, l, k] = <b_i, b_j, b_l>_k."""

    dim: int
    bracket: np.ndarray
    triple: np.ndarray


def akivis_from_quasi_double(qd: QuasiDoubleAlgebra) -> AkivisAlgebra:
    """Akivis algebra on g2: bracket mu and triple <x,y,z> = 1/2 x^psi(y,z)."""
    p = project_components(qd)
    triple = 0.5 * np.einsum("qra,pak->pqrk", p.psi, p.act)
    return AkivisAlgebra(qd.dim2, p.mu, triple)


def _perm_sign(perm) -> int:
    sign = 1
    perm = list(perm)
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def akivis_identity_defect(ak: AkivisAlgebra) -> float:
    """Max over basis triples of |sum_S3 sign <...> - sum_cyc [[x1,x2],x3]|."""
    if ak.dim == 0:
        return 0.0
    t = ak.triple
    alt = sum(_perm_sign(s) * t.transpose(*s, 3) for s in permutations(range(3)))
    rhs = _cyclic(np.einsum("ijk,klm->ijlm", ak.bracket, ak.bracket))
    return float(np.linalg.norm(alt - rhs, axis=-1).max())


# --- the sl(n, C) model ------------------------------------------------------


@lru_cache(maxsize=None)
def _sh_basis_cached(n: int) -> tuple:
    basis = []
    for k in range(1, n):
        d = np.zeros((n, n), dtype=complex)
        d[:k, :k] = np.eye(k)
        d[k, k] = -k
        basis.append(d / np.sqrt(k * (k + 1)))
    for j in range(n):
        for k in range(j + 1, n):
            s = np.zeros((n, n), dtype=complex)
            s[j, k] = s[k, j] = 1 / np.sqrt(2)
            basis.append(s)
    for j in range(n):
        for k in range(j + 1, n):
            a = np.zeros((n, n), dtype=complex)
            a[j, k] = 1j / np.sqrt(2)
            a[k, j] = -1j / np.sqrt(2)
            basis.append(a)
    for b in basis:
        b.setflags(write=False)
    return tuple(basis)


def sh_basis(n: int) -> list:
    """Orthonormal basis (tr(e_i e_j) = delta_ij) of traceless Hermitian n x n matrices.

    Diagonal elements first, then symmetric, then antisymmetric ones; for
    n = 2 this gives diag(1,-1)/sqrt2, sigma_x/sqrt2, -sigma_y/sqrt2.
    """
    if n < 2:
        raise InvalidInput("sh(n) needs n >= 2")
    return list(_sh_basis_cached(n))


def adapted_basis(n: int) -> list:
    """su(n) basis i*e_k followed by the sh(n) basis e_k."""
    sh = sh_basis(n)
    return [1j * e for e in sh] + sh


def matrix_to_coords(m: np.ndarray) -> np.ndarray:
    """Coordinates of a traceless matrix in :func:`adapted_basis` (su part first).

    With m = sum (x_k + i xi_k) e_k, tr(m e_k) = x_k + i xi_k.
    """
    m = np.asarray(m, dtype=complex)
    n = m.shape[0]
    t = np.array([np.trace(m @ e) for e in sh_basis(n)])
    return np.concatenate([t.imag, t.real])


def coords_to_matrix(v, n: int) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return sum((c * b for c, b in zip(v, adapted_basis(n))), np.zeros((n, n), dtype=complex))


@lru_cache(maxsize=None)
def _sl_n_bracket(n: int) -> np.ndarray:
    basis = adapted_basis(n)
    dim = len(basis)
    c = np.zeros((dim, dim, dim))
    for i, bi in enumerate(basis):
        for j, bj in enumerate(basis):
            c[i, j] = matrix_to_coords(bi @ bj - bj @ bi)
    c[np.abs(c) < _SNAP] = 0.0
    c = 0.5 * (c - c.swapaxes(0, 1))
    return c


def sl_n_model(n: int) -> QuasiDoubleAlgebra:
    """(sl(n, C), su(n), sh(n)) as a real quasi-double Lie algebra."""
    if n not in (2, 3, 4):
        raise InvalidInput(f"sl_n_model supports n in {{2, 3, 4}}, got {n}")
    d = n * n - 1
    return QuasiDoubleAlgebra(d, d, _sl_n_bracket(n).copy())


def im_trace_pairing(n: int) -> np.ndarray:
    """G[a, p] = Im tr(e_p xi_a) between the su(n) and sh(n) bases."""
    sh = sh_basis(n)
    su = [1j * e for e in sh]
    return np.array([[np.imag(np.trace(e @ xi)) for e in sh] for xi in su])


PAIRING_CONDITIONS = {
    "mu_coaction": "<xi, mu(x,y)> = <xi^y, x>",
    "bracket_action": "<[xi,eta], x> = <eta, x^xi>",
    "psi_cyclic": "<psi(x,y), z> = <psi(y,z), x>",
}


def pairing_invariance_defects(qd: QuasiDoubleAlgebra, gram: np.ndarray) -> dict:
    """Invariance of a g1 x g2 pairing ``gram[a, p] = <xi_a, x_p>`` under the quasi-double structure."""
    p = project_components(qd)
    G = np.asarray(gram, dtype=float)
    ein = np.einsum
    a = ein("pqr,ar->apq", p.mu, G) - ein("qab,bp->apq", p.coact, G)
    b = ein("abc,cp->abp", p.bracket_g1, G) - ein("paq,bq->abp", p.act, G)
    c = ein("pqa,ar->pqr", p.psi, G) - ein("qra,ap->pqr", p.psi, G)
    return {key: float(np.abs(t).max(initial=0.0)) for key, t in zip(PAIRING_CONDITIONS, (a, b, c))}


# [b_i, b_j] = coef * b_k in the sl(2) adapted basis (eps_1..3 = 0..2, e_1..3 = 3..5);
# k = None marks a vanishing bracket.
_R2 = np.sqrt(2.0)
SL2_RELATIONS = (
    (3, 4, 2, -_R2), (3, 5, 1, _R2), (4, 5, 0, -_R2),
    (0, 1, 2, _R2), (0, 2, 1, -_R2), (1, 2, 0, _R2),
    (3, 1, 5, _R2), (3, 2, 4, -_R2), (4, 0, 5, -_R2),
    (4, 2, 3, _R2), (5, 0, 4, _R2), (5, 1, 3, -_R2),
    (3, 0, None, 0.0), (4, 1, None, 0.0), (5, 2, None, 0.0),
)


def sl2_relation_defects(bracket: np.ndarray | None = None) -> np.ndarray:
    """Per-relation max deviation of a 6-dim bracket tensor from :data:`SL2_RELATIONS`.

    Without an argument the relations are checked against matrix commutators.
    """
    basis = adapted_basis(2)
    out = []
    for i, j, k, coef in SL2_RELATIONS:
        expected = np.zeros(6)
        if k is not None:
            expected[k] = coef
        if bracket is None:
            got = matrix_to_coords(basis[i] @ basis[j] - basis[j] @ basis[i])
        else:
            got = np.asarray(bracket)[i, j]
        out.append(float(np.abs(got - expected).max()))
    return np.array(out)
