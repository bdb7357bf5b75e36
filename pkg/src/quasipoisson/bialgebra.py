"""Quasi-Lie bialgebras (F, mu, gamma, psi), their double and the big-bracket form.

Tensor conventions, for a basis x_i of F and dual basis xi^i of F*:

    mu(x_i, x_j)      = sum_k mu[i, j, k] x_k
    gamma(x_i)        = 1/2 sum_jk gamma[i, j, k] x_j ^ x_k
    [xi^j, xi^k]_F*   = sum_i gamma[i, j, k] xi^i          (the dual bracket)
    psi(x_i, x_j, x_k) = psi[i, j, k]                      (totally antisymmetric)
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .algebra import QuasiDoubleAlgebra, check_antisymmetric, sh_basis
from .errors import InvalidInput
from .multivector import GradedMultiVector, big_bracket
from .report import VerificationReport

__all__ = [
    "BialgebraSpec",
    "DoubleLieAlgebra",
    "MAX_DIM",
    "AXIOMS",
    "BIG_BRACKET_EQUATIONS",
    "axiom_defects",
    "check_axioms",
    "embed",
    "decode",
    "big_bracket_defects",
    "check_big_bracket",
    "build_double",
    "double_bracket",
    "check_invariant_pairing",
    "canonical_pairing",
    "twist_construct",
    "sh2_bialgebra",
    "zero_spec",
    "alternating",
    "random_cobracket",
    "random_twisted_spec",
    "corrupt_spec",
]

MAX_DIM = 8


def _alternations():
    # (permutation, sign) for S3
    return [((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1), ((1, 0, 2), -1), ((0, 2, 1), -1), ((2, 1, 0), -1)]


def alternating(t) -> np.ndarray:
    """Totally antisymmetric part of a 3-tensor, exact under index swaps.

    Each sorted triple is averaged once and copied with signs, so the result
    is antisymmetric bit for bit (summing transposes is not).
    """
    t = np.asarray(t, dtype=float)
    n = t.shape[0]
    out = np.zeros_like(t)
    for i, j, k in combinations(range(n), 3):
        idx = (i, j, k)
        value = sum(sign * t[tuple(idx[p] for p in perm)] for perm, sign in _alternations()) / 6.0
        for perm, sign in _alternations():
            out[tuple(idx[p] for p in perm)] = sign * value
    return out


@dataclass(frozen=True)
class BialgebraSpec:
    dim: int
    mu: np.ndarray
    gamma: np.ndarray
    psi: np.ndarray

    def __post_init__(self):
        if not isinstance(self.dim, (int, np.integer)) or not 1 <= self.dim <= MAX_DIM:
            raise InvalidInput(f"dim must be an integer in [1, {MAX_DIM}], got {self.dim!r}")
        d = int(self.dim)
        object.__setattr__(self, "dim", d)
        for name in ("mu", "gamma", "psi"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != (d, d, d):
                raise InvalidInput(f"{name} has shape {arr.shape}, expected {(d, d, d)} for dim {d}")
            if not np.all(np.isfinite(arr)):
                raise InvalidInput(f"{name} has non-finite entries")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
        check_antisymmetric(self.mu, "mu")
        check_antisymmetric(self.gamma, "gamma", axes=(1, 2))
        for perm, sign in _alternations():
            bad = np.argwhere(self.psi - sign * self.psi.transpose(perm) != 0)
            if bad.size:
                i, j, k = bad[0]
                raise InvalidInput(f"psi is not totally antisymmetric at [{i}][{j}][{k}]")


def zero_spec(dim: int) -> BialgebraSpec:
    z = np.zeros((dim, dim, dim))
    return BialgebraSpec(dim, z, z, z)


# --- axioms in tensor form ---------------------------------------------------

AXIOMS = {
    "cojacobi": "Alt(gamma x Id) gamma(x) = 0",
    "derivation": "gamma(mu(x,y)) = mu(gamma(x),y) + mu(x,gamma(y))",
    "mu_cojacobi_anomaly": "Alt(mu^t x Id) mu^t(xi) = (delta_gamma psi)(xi)",
    "psi_closed": "Alt((mu^t x Id x Id) psi) = 0",
}


def _cyc3(t: np.ndarray) -> np.ndarray:
    # cyclic sum over axes 0, 1, 2 of a 4-index tensor
    return t + t.transpose(1, 2, 0, 3) + t.transpose(2, 0, 1, 3)


def _axiom_tensors(spec: BialgebraSpec):
    mu, g, psi = spec.mu, spec.gamma, spec.psi
    ein = np.einsum
    # (1) Jacobi of the dual bracket c[j, k, i] = gamma[i, j, k]
    dual = g.transpose(1, 2, 0)
    a1 = _cyc3(ein("ijk,klm->ijlm", dual, dual))
    # (2) gamma(mu(x_i, x_j)) - ad_{x_i} gamma(x_j) + ad_{x_j} gamma(x_i)
    gm = ein("ijk,kab->ijab", mu, g)
    # (ad_{x_i} gamma(x_j))^{ab} = mu[i,c,a] gamma[j,c,b] + gamma[j,a,c] mu[i,c,b]
    ad = ein("ica,jcb->ijab", mu, g) + ein("jac,icb->ijab", g, mu)
    a2 = gm - ad + ad.transpose(1, 0, 2, 3)
    # (3) sum_cyc mu(mu(x_i,x_j),x_k) against the gamma-coadjoint image of psi
    mumu = _cyc3(ein("ijl,lkc->ijkc", mu, mu))
    dpsi = _cyc3(ein("jka,iac->ijkc", psi, g))
    a3 = mumu - dpsi
    # (4) sum_cyc(ijk) psi(mu(x_i,x_j),x_k,x_l) + psi(x_i,x_j,mu(x_k,x_l))
    a4 = _cyc3(ein("ijr,rkl->ijkl", mu, psi) + ein("ijr,klr->ijkl", psi, mu))
    return a1, a2, a3, a4


def axiom_defects(spec: BialgebraSpec) -> dict:
    """Max absolute entry of each axiom's defect tensor."""
    return {
        key: float(np.abs(t).max(initial=0.0))
        for key, t in zip(AXIOMS, _axiom_tensors(spec))
    }


def check_axioms(spec: BialgebraSpec, tol: float = 1e-12, label: str = "") -> VerificationReport:
    report = VerificationReport("quasi-lie-bialgebra", environment={"dim": spec.dim})
    suffix = f".{label}" if label else ""
    for key, value in axiom_defects(spec).items():
        report.check(f"axiom.{key}{suffix}", AXIOMS[key], value, tol)
    return report


# --- the double --------------------------------------------------------------


@dataclass(frozen=True)
class DoubleLieAlgebra:
    """Bracket on F + F* (F basis first, then the dual basis)."""

    dim_f: int
    bracket: np.ndarray

    @property
    def dim(self) -> int:
        return 2 * self.dim_f

    def as_quasi_double(self) -> QuasiDoubleAlgebra:
        """Relabel as a quasi-double algebra with g1 = F* listed first, g2 = F."""
        n = self.dim_f
        perm = np.r_[n:2 * n, 0:n]
        c = self.bracket[np.ix_(perm, perm, perm)]
        return QuasiDoubleAlgebra(n, n, c)


def double_bracket(spec: BialgebraSpec) -> np.ndarray:
    """Structure tensor of M on F + F*, built without any validity check."""
    n = spec.dim
    mu, g, psi = spec.mu, spec.gamma, spec.psi
    c = np.zeros((2 * n, 2 * n, 2 * n))
    c[:n, :n, :n] = mu
    c[:n, :n, n:] = psi
    # M(xi^a, xi^b) = sum_c gamma[c, a, b] xi^c
    c[n:, n:, n:] = g.transpose(1, 2, 0)
    # M(x_i, xi^a): F part gamma[i, a, k] (minus the coadjoint action of xi^a),
    # F* part -mu[i, k, a] (the coadjoint action of x_i)
    c[:n, n:, :n] = g
    c[:n, n:, n:] = -mu.transpose(0, 2, 1)
    c[n:, :n, :] = -c[:n, n:, :].swapaxes(0, 1)
    return c


def build_double(spec: BialgebraSpec, tol: float = 1e-10) -> DoubleLieAlgebra:
    defects = axiom_defects(spec)
    bad = {k: v for k, v in defects.items() if not v < tol}
    if bad:
        names = ", ".join(f"{k}={v:.3e}" for k, v in bad.items())
        raise InvalidInput(f"spec fails the bialgebra axioms ({names}); the double would not be a Lie algebra")
    return DoubleLieAlgebra(spec.dim, double_bracket(spec))


def canonical_pairing(n: int) -> np.ndarray:
    """<x + xi, y + eta> = <xi, y> + <eta, x> as a 2n x 2n Gram matrix."""
    eye = np.eye(n)
    z = np.zeros((n, n))
    return np.block([[z, eye], [eye, z]])


def check_invariant_pairing(d) -> float:
    """max over basis triples of |<M(u,v),w> + <v,M(u,w)>|."""
    c = np.asarray(getattr(d, "bracket", d), dtype=float)
    n = c.shape[0] // 2
    gram = canonical_pairing(n)
    t = np.einsum("uvk,kw->uvw", c, gram)  # <M(u,v), w>
    defect = t + t.transpose(0, 2, 1)
    return float(np.abs(defect).max(initial=0.0))


# --- big-bracket embedding ---------------------------------------------------


def _dual_generator(a: int, n: int) -> int:
    # generator paired with basis element a of F + F*
    return (a + n) % (2 * n)


def embed(spec: BialgebraSpec) -> dict:
    """mu, gamma, psi as cubic elements of the exterior algebra.

    Theta = -1/6 sum T_abc theta^a theta^b theta^c with T(u,v,w) = <M(u,v),w>;
    the derived bracket {{u, Theta}, v} then reproduces M(u, v).  The three
    pieces are the parts of Theta of bidegree (1, 2), (2, 1) and (0, 3) in
    (F, F*) generators.
    """
    n = spec.dim
    c = double_bracket(spec)
    t = np.einsum("uvk,kw->uvw", c, canonical_pairing(n))
    terms = {}
    for a, b, e in combinations(range(2 * n), 3):
        value = t[a, b, e]
        if value != 0.0:
            gens = (_dual_generator(a, n), _dual_generator(b, n), _dual_generator(e, n))
            terms[gens] = terms.get(gens, 0.0) - value
    theta = GradedMultiVector(n, terms)
    return {
        "mu": theta.filter_bidegree(1, 2),
        "gamma": theta.filter_bidegree(2, 1),
        "psi": theta.filter_bidegree(0, 3),
    }


def decode(dim: int, mu_hat, gamma_hat, psi_hat) -> BialgebraSpec:
    """Inverse of :func:`embed` on cubic multivectors of the right bidegrees."""
    n = dim
    parts = [p for p in (mu_hat, gamma_hat, psi_hat) if p is not None]
    theta = parts[0]
    for p in parts[1:]:
        theta = theta + p
    for key in theta.terms:
        if len(key) != 3 or theta.bidegree_of(key) == (3, 0):
            raise InvalidInput(f"term {key} is not part of a bialgebra structure")
    t = np.zeros((2 * n, 2 * n, 2 * n))
    for key, coef in theta.terms.items():
        basis = [_dual_generator(g, n) for g in key]
        for perm, sign in _alternations():
            a, b, e = (basis[p] for p in perm)
            t[a, b, e] = -sign * coef
    # c[u, v, k] from T[u, v, w] = sum_k c[u, v, k] gram[k, w]
    c = np.einsum("uvw,wk->uvk", t, canonical_pairing(n))
    mu = c[:n, :n, :n]
    psi = c[:n, :n, n:]
    gamma = c[n:, n:, n:].transpose(2, 0, 1)
    return BialgebraSpec(n, mu.copy(), gamma.copy(), psi.copy())


BIG_BRACKET_EQUATIONS = {
    "gamma_gamma": "[gamma, gamma] = 0",
    "gamma_mu": "[gamma, mu] = 0",
    "mu_mu_gamma_psi": "1/2 [mu, mu] + [gamma, psi] = 0",
    "mu_psi": "[mu, psi] = 0",
}


def big_bracket_defects(spec: BialgebraSpec) -> dict:
    e = embed(spec)
    mu, gamma, psi = e["mu"], e["gamma"], e["psi"]
    return {
        "gamma_gamma": big_bracket(gamma, gamma).norm(),
        "gamma_mu": big_bracket(gamma, mu).norm(),
        "mu_mu_gamma_psi": (0.5 * big_bracket(mu, mu) + big_bracket(gamma, psi)).norm(),
        "mu_psi": big_bracket(mu, psi).norm(),
    }


def check_big_bracket(spec: BialgebraSpec, tol: float = 1e-12, label: str = "") -> VerificationReport:
    report = VerificationReport("quasi-lie-bialgebra", environment={"dim": spec.dim})
    suffix = f".{label}" if label else ""
    for key, value in big_bracket_defects(spec).items():
        report.check(f"big_bracket.{key}{suffix}", BIG_BRACKET_EQUATIONS[key], value, tol)
    return report


# --- constructions -----------------------------------------------------------


def twist_construct(dim: int, gamma, omega, tol: float = 1e-10) -> BialgebraSpec:
    """Twist of the Lie coalgebra (F, 0, gamma, 0) by omega in Lambda^2 F*.

    With omega_hat = 1/2 sum omega[a, b] xi^a xi^b, the twisted structure is
    exp(ad omega_hat) applied to gamma_hat, which stops after two terms:
    mu_hat = {gamma_hat, omega_hat}, psi_hat = 1/2 {omega_hat, {omega_hat, gamma_hat}}.
    """
    gamma = np.asarray(gamma, dtype=float)
    omega = np.asarray(omega, dtype=float)
    if omega.shape != (dim, dim):
        raise InvalidInput(f"omega has shape {omega.shape}, expected {(dim, dim)}")
    if np.any(omega + omega.T != 0):
        raise InvalidInput("omega must be antisymmetric")
    z = np.zeros((dim, dim, dim))
    base = BialgebraSpec(dim, z, gamma, z)
    cojac = axiom_defects(base)["cojacobi"]
    if not cojac < tol:
        raise InvalidInput(f"gamma fails co-Jacobi (defect {cojac:.3e})")
    gamma_hat = embed(base)["gamma"]
    omega_hat = GradedMultiVector(
        dim, {(dim + a, dim + b): omega[a, b] for a in range(dim) for b in range(a + 1, dim)}
    )
    mu_hat = big_bracket(gamma_hat, omega_hat)
    psi_hat = 0.5 * big_bracket(omega_hat, big_bracket(omega_hat, gamma_hat))
    return decode(dim, mu_hat, gamma_hat, psi_hat)


def sh2_bialgebra() -> BialgebraSpec:
    """(sh(2), 0, gamma, psi) with F* = su(2) paired to sh(2) by Im tr(x xi).

    xi^k is identified with i*e_k; gamma holds the su(2) bracket in that basis
    and psi(e_i, e_j, e_k) is the su(2) part of [e_i, e_j] paired with e_k.
    """
    e = sh_basis(2)
    eps = [1j * b for b in e]

    def pair_su(m, k):
        # coefficient of eps_k in an su(2) element m
        return float(np.real(np.trace(m @ e[k]) / 1j))

    gamma = np.zeros((3, 3, 3))
    psi = np.zeros((3, 3, 3))
    for i in range(3):
        for j in range(3):
            comm_su = eps[i] @ eps[j] - eps[j] @ eps[i]
            comm_sh = e[i] @ e[j] - e[j] @ e[i]
            for k in range(3):
                gamma[k, i, j] = pair_su(comm_su, k)
                psi[i, j, k] = pair_su(comm_sh, k)
    for arr in (gamma, psi):
        arr[np.abs(arr) < 1e-14] = 0.0
    psi = alternating(psi)
    return BialgebraSpec(3, np.zeros((3, 3, 3)), gamma, psi)


# --- random specs for property and equivalence tests -------------------------


def _lie_algebra_catalog(dim: int) -> list:
    """Structure constants c[a, b, k] of a few small real Lie algebras padded by an abelian part."""

    def blank():
        return np.zeros((dim, dim, dim))

    def put(c, a, b, k, v):
        c[a, b, k] += v
        c[b, a, k] -= v

    algebras = [blank()]
    su2 = blank()
    put(su2, 0, 1, 2, 1.0)
    put(su2, 1, 2, 0, 1.0)
    put(su2, 2, 0, 1, 1.0)
    sl2 = blank()
    put(sl2, 0, 1, 1, 2.0)
    put(sl2, 0, 2, 2, -2.0)
    put(sl2, 1, 2, 0, 1.0)
    heis = blank()
    put(heis, 0, 1, 2, 1.0)
    aff = blank()
    put(aff, 0, 1, 1, 1.0)
    algebras += [su2, sl2, heis, aff]
    if dim >= 4:
        aff2 = blank()
        put(aff2, 0, 1, 1, 1.0)
        put(aff2, 2, 3, 3, 1.0)
        algebras.append(aff2)
    return algebras


def random_cobracket(dim: int, rng: np.random.Generator) -> np.ndarray:
    """gamma tensor of a random Lie coalgebra: a known Lie bracket on F* in a random basis."""
    if dim < 3:
        raise InvalidInput("random_cobracket needs dim >= 3")
    catalog = _lie_algebra_catalog(dim)
    c = catalog[rng.integers(1, len(catalog))]
    a = np.eye(dim) + 0.3 * rng.normal(size=(dim, dim))
    a_inv = np.linalg.inv(a)
    # bracket in the basis f_j = sum_a A[a, j] e_a
    c2 = np.einsum("aj,bk,abc,ic->jki", a, a, c, a_inv)
    c2 = 0.5 * (c2 - c2.swapaxes(0, 1))
    return c2.transpose(2, 0, 1).copy()


def random_twisted_spec(dim: int, seed) -> BialgebraSpec:
    """A valid spec obtained by twisting a random Lie coalgebra by a random omega."""
    rng = np.random.default_rng(seed)
    gamma = random_cobracket(dim, rng)
    w = rng.normal(size=(dim, dim))
    return twist_construct(dim, gamma, 0.5 * (w - w.T))


def corrupt_spec(spec: BialgebraSpec, seed, scale: float = 0.1, part: str | None = None) -> BialgebraSpec:
    """Add antisymmetric noise to one of mu, gamma, psi (chosen from the seed if not given)."""
    rng = np.random.default_rng(seed)
    part = part or ("mu", "gamma", "psi")[rng.integers(3)]
    noise = scale * rng.normal(size=(spec.dim,) * 3)
    mu, gamma, psi = np.array(spec.mu), np.array(spec.gamma), np.array(spec.psi)
    if part == "mu":
        mu = mu + noise
        mu = 0.5 * (mu - mu.swapaxes(0, 1))
    elif part == "gamma":
        gamma = gamma + noise
        gamma = 0.5 * (gamma - gamma.swapaxes(1, 2))
    elif part == "psi":
        psi = alternating(psi + noise)
    else:
        raise InvalidInput(f"unknown part {part!r}")
    return BialgebraSpec(spec.dim, mu, gamma, psi)
