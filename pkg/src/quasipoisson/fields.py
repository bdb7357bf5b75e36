"""Vector and bivector fields on SH(2) in the global exponential chart.

A point of SH(2) is exp(sum_i c_i e_i) with c in R^3.  Fields are evaluated
pointwise and differentiated by central finite differences, so every
quantity here is a plain array of chart components:

* vector fields: shape (3,)
* bivector fields: antisymmetric (3, 3), with u ^ v = u v^T - v u^T
* trivectors: (3, 3, 3)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import sh_basis
from .errors import InvalidInput
from .finite_diff import derivative, partials, taylor_coefficient
from .group import alpha, chi, sigma
from .loop import akivis_commutator_numeric, loop_mul
from .matrix_core import expm_hermitian, log_unitary, matrix_exp, matrix_log_hpd
from .report import VerificationReport

__all__ = [
    "R_CHART",
    "H_FIELD",
    "VectorFieldModel",
    "BivectorFieldModel",
    "chart_to_point",
    "point_to_chart",
    "su2_element",
    "translated_field",
    "action_field",
    "bivector_P",
    "wedge2",
    "field_bracket",
    "schouten_bracket",
    "schouten_PP",
    "lie_derivative_biv",
    "lambda2_rho",
    "lambda3_rho",
    "translated_bivector",
    "linearize_P",
    "grid_points",
    "verify_translated_field_relations",
    "verify_quasi_poisson",
    "extract_tangent_bialgebra",
]

R_CHART = 1.0
H_FIELD = 1e-3
_E = tuple(sh_basis(2))
_EPS = tuple(1j * b for b in _E)
_I3 = np.eye(3)


def chart_to_point(c, radius: float = R_CHART) -> np.ndarray:
    c = np.asarray(c, dtype=float)
    if c.shape != (3,) or not np.all(np.isfinite(c)):
        raise InvalidInput(f"chart coordinates must be 3 finite reals, got {c!r}")
    if np.linalg.norm(c) > radius:
        raise InvalidInput(f"point {c} lies outside the chart radius {radius}")
    return expm_hermitian(sum(ci * b for ci, b in zip(c, _E)))


def point_to_chart(a) -> np.ndarray:
    """x_i = Re tr(log(a) e_i)."""
    log_a = matrix_log_hpd(a)
    return np.array([np.real(np.trace(log_a @ b)) for b in _E])


def su2_element(xi) -> np.ndarray:
    """exp(sum_k xi_k eps_k) in SU(2)."""
    return matrix_exp(sum(x * b for x, b in zip(xi, _EPS)))


def _hermitian(x) -> np.ndarray:
    return sum(xi * b for xi, b in zip(x, _E))


@dataclass(frozen=True)
class VectorFieldModel:
    fn: Callable
    name: str = "X"

    def __call__(self, c) -> np.ndarray:
        return np.asarray(self.fn(np.asarray(c, dtype=float)), dtype=float)


@dataclass(frozen=True)
class BivectorFieldModel:
    fn: Callable
    name: str = "P"

    def __call__(self, c) -> np.ndarray:
        m = np.asarray(self.fn(np.asarray(c, dtype=float)), dtype=float)
        return 0.5 * (m - m.T)


def _tangent_at_zero(curve, h: float) -> np.ndarray:
    return derivative(curve, 1, h, points=5, richardson=0)


def translated_field(x, h: float = H_FIELD) -> VectorFieldModel:
    """x^lambda(a) = d/dt m(a, exp(t x)) at t = 0."""
    x = np.asarray(x, dtype=float)
    X = _hermitian(x)

    def fn(c):
        if not np.any(x):
            return np.zeros(3)
        a = chart_to_point(c, radius=np.inf)
        return _tangent_at_zero(lambda t: point_to_chart(loop_mul(a, expm_hermitian(t * X))), h)

    return VectorFieldModel(fn, f"translated{tuple(x)}")


def action_field(xi, h: float = H_FIELD) -> VectorFieldModel:
    """rho(xi)(a) = d/dt sigma(a, exp(t xi)) at t = 0."""
    xi = np.asarray(xi, dtype=float)

    def fn(c):
        if not np.any(xi):
            return np.zeros(3)
        a = chart_to_point(c, radius=np.inf)
        return _tangent_at_zero(lambda t: point_to_chart(sigma(a, su2_element(t * xi))), h)

    return VectorFieldModel(fn, f"action{tuple(xi)}")


def wedge2(u, v) -> np.ndarray:
    return np.outer(u, v) - np.outer(v, u)


def bivector_P(h: float = H_FIELD) -> BivectorFieldModel:
    """P = 1/2 sum_i e_i^lambda ^ rho(eps_i)."""
    lam = [translated_field(_I3[i], h) for i in range(3)]
    rho = [action_field(_I3[i], h) for i in range(3)]

    def fn(c):
        return 0.5 * sum(wedge2(lam[i](c), rho[i](c)) for i in range(3))

    return BivectorFieldModel(fn, "P")


def _jacobian(field, c, h: float) -> np.ndarray:
    """d[l, ...] = d field / d c_l."""
    return partials(field, c, h, points=5)


def field_bracket(X, Y, c, h: float = H_FIELD) -> np.ndarray:
    """[X, Y]^i = X^l d_l Y^i - Y^l d_l X^i."""
    c = np.asarray(c, dtype=float)
    return _jacobian(Y, c, h).T @ X(c) - _jacobian(X, c, h).T @ Y(c)


def schouten_bracket(P, c, h: float = H_FIELD) -> np.ndarray:
    """[P, P]^{ijk} = 2 sum_l (P^{li} d_l P^{jk} + P^{lj} d_l P^{ki} + P^{lk} d_l P^{ij})."""
    c = np.asarray(c, dtype=float)
    p = P(c)
    dp = _jacobian(P, c, h)
    t = np.einsum("li,ljk->ijk", p, dp)
    return 2.0 * (t + t.transpose(2, 0, 1) + t.transpose(1, 2, 0))


def lie_derivative_biv(X, P, c, h: float = H_FIELD) -> np.ndarray:
    """(L_X P)^{ij} = X^l d_l P^{ij} - P^{lj} d_l X^i - P^{il} d_l X^j."""
    c = np.asarray(c, dtype=float)
    p = P(c)
    dx = _jacobian(X, c, h)
    out = np.einsum("l,lij->ij", X(c), _jacobian(P, c, h))
    out -= np.einsum("lj,li->ij", p, dx)
    out -= np.einsum("il,lj->ij", p, dx)
    return out


def _rho_matrix(c, h: float) -> np.ndarray:
    # rows: rho(eps_a)(c)
    return np.array([action_field(_I3[a], h)(c) for a in range(3)])


def lambda2_rho(biv, c, h: float = H_FIELD) -> np.ndarray:
    """Image of a bivector B^{bc} on su(2) under rho: sum_bc B^{bc} rho_b^i rho_c^j."""
    r = _rho_matrix(c, h)
    return np.einsum("bc,bi,cj->ij", np.asarray(biv, dtype=float), r, r)


def lambda3_rho(psi, c, h: float = H_FIELD) -> np.ndarray:
    """sum_abc psi_abc rho_a^i rho_b^j rho_c^k."""
    r = _rho_matrix(c, h)
    return np.einsum("abc,ai,bj,ck->ijk", np.asarray(psi, dtype=float), r, r, r)


def translated_bivector(g, c, h: float = H_FIELD) -> np.ndarray:
    """(1/2 sum g^{jk} x_j ^ x_k)^lambda = V^T g V with rows V_j = x_j^lambda(c)."""
    v = np.array([translated_field(_I3[j], h)(c) for j in range(3)])
    return v.T @ np.asarray(g, dtype=float) @ v


def linearize_P(P, h: float = H_FIELD) -> np.ndarray:
    """gamma[i] = (L_{e_i^lambda} P)(identity)."""
    origin = np.zeros(3)
    p0 = P(origin)
    if np.any(p0 != 0.0):
        raise InvalidInput(f"P does not vanish at the identity (max {np.abs(p0).max():.3e})")
    return np.array([lie_derivative_biv(translated_field(_I3[i], h), P, origin, h) for i in range(3)])


def schouten_PP(P, psi, pts, h: float = H_FIELD) -> dict:
    """Max over pts of |1/2 [P,P] + Lambda^3 rho(psi)| and of each side alone."""
    lhs, rhs, diff = [], [], []
    for c in pts:
        half = 0.5 * schouten_bracket(P, c, h)
        image = lambda3_rho(psi, c, h)
        lhs.append(np.abs(half).max())
        rhs.append(np.abs(image).max())
        diff.append(np.abs(half + image).max())
    return {"defect": max(diff), "half_schouten": max(lhs), "rho_psi": max(rhs)}


def _van_der_corput(i: int, base: int = 2) -> float:
    out, denom = 0.0, 1.0
    while i:
        i, r = divmod(i, base)
        denom *= base
        out += r / denom
    return out


def grid_points(count: int = 16, radius: float = 0.5) -> np.ndarray:
    """Deterministic points filling the ball of the given radius.

    Directions follow a Fibonacci sphere and radii radius * vdc(i)^(1/3), so
    the points spread roughly uniformly in volume.  The first point is the
    origin.
    """
    golden = math.pi * (3.0 - math.sqrt(5.0))
    pts = []
    for i in range(count):
        z = 1.0 - 2.0 * (i + 0.5) / count
        r_xy = math.sqrt(max(0.0, 1.0 - z * z))
        theta = golden * i
        direction = np.array([r_xy * math.cos(theta), r_xy * math.sin(theta), z])
        pts.append(radius * _van_der_corput(i) ** (1.0 / 3.0) * direction)
    return np.array(pts)


def _sample_points(samples: int, seed: int, scale: float) -> list:
    out = []
    for i in range(samples):
        rng = np.random.default_rng([seed, 50, i])
        v = rng.normal(size=3)
        out.append(scale * rng.uniform(0.2, 1.0) * v / np.linalg.norm(v))
    return out


# --- the checks --------------------------------------------------------------

TRANSLATION_RELATIONS = {
    "translated_at_product": "x^lambda(m(a,b)) = (lambda_a)_* x^lambda(b) + (rho_b)_* rho(x^b)(a)",
    "action_at_product": "rho(xi)(m(a,b)) = (lambda_a)_* rho(xi)(b) + (rho_b)_* rho(xi^b)(a)",
    "translated_bracket": "[x^lambda, y^lambda] = rho(psi(x,y)) + mu(x,y)^lambda",
}


def _su2_coords(u) -> np.ndarray:
    # coefficients of eps_k in an anti-Hermitian traceless matrix
    return np.array([np.real(np.trace(u @ b) / 1j) for b in _E])


def verify_translated_field_relations(
    samples: int = 8, seed: int = 0, scale: float = 0.5, h: float = H_FIELD, tol: float = 1e-5
) -> VerificationReport:
    from .bialgebra import sh2_bialgebra

    psi = sh2_bialgebra().psi
    report = VerificationReport("quasi-poisson-fields", environment={"h": h, "scale": scale})
    first, second, third = [], [], []
    pts = _sample_points(2 * samples, seed, scale)
    for i in range(samples):
        ca, cb = pts[2 * i], pts[2 * i + 1]
        a, b = chart_to_point(ca), chart_to_point(cb)
        rng = np.random.default_rng([seed, 51, i])
        x, xi = rng.normal(size=3), rng.normal(size=3)
        X = _hermitian(x)
        ab = loop_mul(a, b)
        # x^b and xi^b from their derivative definitions
        x_b = _su2_coords(_tangent_at_zero(lambda t: log_unitary(alpha(b, expm_hermitian(t * X))), h))
        xi_b = _su2_coords(_tangent_at_zero(lambda t: log_unitary(chi(b, su2_element(t * xi))), h))

        lhs = translated_field(x, h)(point_to_chart(ab))
        push_a = _tangent_at_zero(lambda t: point_to_chart(loop_mul(a, loop_mul(b, expm_hermitian(t * X)))), h)
        push_b = _tangent_at_zero(lambda t: point_to_chart(loop_mul(sigma(a, su2_element(t * x_b)), b)), h)
        first.append(np.abs(lhs - push_a - push_b).max())

        lhs = action_field(xi, h)(point_to_chart(ab))
        push_a = _tangent_at_zero(lambda t: point_to_chart(loop_mul(a, sigma(b, su2_element(t * xi)))), h)
        push_b = _tangent_at_zero(lambda t: point_to_chart(loop_mul(sigma(a, su2_element(t * xi_b)), b)), h)
        second.append(np.abs(lhs - push_a - push_b).max())

    for i in range(samples):
        c = pts[i]
        for p, q in ((0, 1), (0, 2), (1, 2)):
            bracket = field_bracket(translated_field(_I3[p], h), translated_field(_I3[q], h), c, h)
            # mu = 0 on sh(2); psi(e_p, e_q) read through the pairing
            expected = action_field(psi[p, q], h)(c)
            third.append(np.abs(bracket - expected).max())
    for key, defects in zip(TRANSLATION_RELATIONS, (first, second, third)):
        report.check(f"fields.{key}", TRANSLATION_RELATIONS[key], defects, tol, seed=seed)
    return report


def verify_quasi_poisson(
    points: int = 16,
    radius: float = 0.5,
    samples: int = 16,
    seed: int = 0,
    h: float = H_FIELD,
    tol: float = 1e-5,
    tol_group: float = 1e-9,
) -> VerificationReport:
    """The SH(2) quasi-Poisson structure: loop and cocycle identities, the
    Schouten condition, the Lie-derivative condition and its consequences."""
    from .bialgebra import axiom_defects, BialgebraSpec, sh2_bialgebra
    from .group import group_identity_defects
    from .matrix_core import sample

    spec = sh2_bialgebra()
    psi, gamma = spec.psi, spec.gamma
    report = VerificationReport(
        "quasi-poisson-fields", environment={"h": h, "radius": radius, "grid_points": points}
    )
    grid = grid_points(points, radius)
    P = bivector_P(h)

    loop_d, cocycle_d = [], []
    for i in range(samples):
        a, b, c = (sample("sh_n", 2, 0.3, [seed, 60, i, k]) for k in range(3))
        d = group_identity_defects(np.eye(2), np.eye(2), a, b, c)
        loop_d.append(d["loop_associator"])
        cocycle_d.append(d["alpha_cocycle"])
    report.check("sh2.loop_associator", "m(m(a,b),c) = m(sigma(a,alpha(b,c)), m(b,c))", loop_d, tol_group, seed=seed)
    report.check(
        "sh2.alpha_cocycle",
        "alpha(a,b) alpha(m(a,b),c) = chi(a,alpha(b,c)) alpha(sigma(a,alpha(b,c)), m(b,c))",
        cocycle_d,
        tol_group,
        seed=seed,
    )

    p0 = P(np.zeros(3))
    report.check("sh2.P_at_identity", "P(identity) = 0 exactly", float(np.abs(p0).max()), np.nextafter(0.0, 1.0))

    sch = schouten_PP(P, psi, grid, h)
    report.check("sh2.schouten", "1/2 [P,P] = -Lambda^3 rho(psi)", sch["defect"], tol)
    report.check("sh2.schouten_half_PP", "1/2 [P,P] = 0", sch["half_schouten"], tol)
    report.check("sh2.schouten_rho_psi", "Lambda^3 rho(psi) = 0", sch["rho_psi"], tol)

    s2 = math.sqrt(2.0)
    displayed = {
        0: lambda c: s2 * translated_bivector(_wedge_basis(1, 2), c, h) + s2 * lambda2_rho(_wedge_basis(1, 2), c, h),
        1: lambda c: -s2 * translated_bivector(_wedge_basis(0, 2), c, h) - s2 * lambda2_rho(_wedge_basis(0, 2), c, h),
        2: lambda c: s2 * translated_bivector(_wedge_basis(0, 1), c, h) + s2 * lambda2_rho(_wedge_basis(0, 1), c, h),
    }
    anchors = {
        0: "L_{e1^lambda} P = sqrt2 (e2^e3)^lambda + sqrt2 Lambda^2 rho(eps2^eps3)",
        1: "L_{e2^lambda} P = -sqrt2 (e1^e3)^lambda - sqrt2 Lambda^2 rho(eps1^eps3)",
        2: "L_{e3^lambda} P = sqrt2 (e1^e2)^lambda + sqrt2 Lambda^2 rho(eps1^eps2)",
    }
    lin = linearize_P(P, h)
    general = []
    for i in range(3):
        X = translated_field(_I3[i], h)
        vals, gen = [], []
        for c in grid:
            lp = lie_derivative_biv(X, P, c, h)
            vals.append(np.abs(lp - displayed[i](c)).max())
            # generic form: [gamma(x)]^lambda - Lambda^2 rho(psi(x)) with gamma from P
            gen.append(np.abs(lp - translated_bivector(lin[i], c, h) + lambda2_rho(psi[i], c, h)).max())
        report.check(f"sh2.lie_derivative_e{i + 1}", anchors[i], vals, tol)
        general.extend(gen)
    report.check(
        "sh2.lie_derivative_general",
        "L_{x^lambda} P = [(L_{x^lambda} P)(identity)]^lambda - Lambda^2 rho(psi(x))",
        general,
        tol,
    )

    cor = []
    for i in range(3):
        Y = action_field(_I3[i], h)
        cor.extend(np.abs(lie_derivative_biv(Y, P, c, h)).max() for c in grid)
    report.check("sh2.action_lie_derivative", "L_{rho(xi)} P = -Lambda^2 rho(mu^t(xi)) = 0", cor, tol)

    hom = []
    for c in grid[:8]:
        for p, q in ((0, 1), (0, 2), (1, 2)):
            bracket = field_bracket(action_field(_I3[p], h), action_field(_I3[q], h), c, h)
            # [eps_p, eps_q] = sum_k gamma[k, p, q] eps_k
            hom.append(np.abs(bracket - action_field(gamma[:, p, q], h)(c)).max())
    report.check("sh2.action_homomorphism", "[rho(xi), rho(eta)] = rho([xi, eta])", hom, tol)

    report.check("sh2.linearized_gamma", "(L_{x^lambda} P)(identity) = gamma(x)", float(np.abs(lin - gamma).max()), tol)
    zero = np.zeros((3, 3, 3))
    lin_spec = BialgebraSpec(3, zero, _antisym_cobracket(lin), zero)
    report.check("sh2.linearized_gamma_squared", "gamma^2 = 0", axiom_defects(lin_spec)["cojacobi"], tol)
    report.check(
        "sh2.linearized_gamma_derivation",
        "gamma(mu(x,y)) = mu(gamma(x),y) + mu(x,gamma(y)) with mu = 0",
        axiom_defects(lin_spec)["derivation"],
        tol,
    )
    return report


def _wedge_basis(p: int, q: int) -> np.ndarray:
    return wedge2(_I3[p], _I3[q])


def _antisym_cobracket(g) -> np.ndarray:
    g = np.asarray(g, dtype=float)
    return 0.5 * (g - g.transpose(0, 2, 1))


def extract_tangent_bialgebra(h_loop: float = 1e-2, h: float = H_FIELD):
    """(mu, gamma, psi) on sh(2) recovered numerically from m, P and alpha.

    mu comes from the loop commutator, gamma from linearizing P and psi from
    twice the t^2 coefficient of alpha(exp(t e_i), exp(t e_j)).
    """
    from .bialgebra import BialgebraSpec, alternating

    mu = np.zeros((3, 3, 3))
    psi2 = np.zeros((3, 3, 3))
    for i in range(3):
        for j in range(i + 1, 3):
            comm = akivis_commutator_numeric(_E[i], _E[j], h_loop)
            coords = np.array([np.real(np.trace(comm @ b)) for b in _E])
            mu[i, j], mu[j, i] = coords, -coords
            curve = lambda t, i=i, j=j: _su2_coords(  # noqa: E731
                log_unitary(alpha(expm_hermitian(t * _E[i]), expm_hermitian(t * _E[j])))
            )
            coef = taylor_coefficient(curve, 2, h_loop, points=7, richardson=1)
            psi2[i, j] = 2.0 * coef
            psi2[j, i] = -2.0 * coef
    gamma = _antisym_cobracket(linearize_P(bivector_P(h), h))
    return BialgebraSpec(3, mu, gamma, alternating(psi2))
