"""Third-order expansions of m, alpha, sigma, chi over a quasi-double algebra.

Along the one-parameter curves exp(t x), exp(t y), exp(t xi) each map is
pulled back to the algebra and expanded in t.  Writing the curves' product
both ways,

    exp(tx) exp(ty)  = exp(alpha(t)) exp(m(t)),
    exp(tx) exp(txi) = exp(chi(t)) exp(sigma(t)),

and matching the Campbell-Hausdorff series order by order gives the
coefficients below.  The naive projections of BCH(x, y) onto g1 and g2 are
kept as ``projected_bch_*``; they differ from the true coefficients at the
orders where the cross term 1/2 [alpha_2, m_1] (resp. [chi, sigma]) enters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import QuasiDoubleAlgebra, coords_to_matrix, matrix_to_coords, project_components, sl_n_model
from .errors import InvalidInput
from .finite_diff import taylor_coefficients
from .group import alpha, chi, sigma
from .loop import loop_mul
from .matrix_core import expm_hermitian, log_unitary, matrix_exp, matrix_log_hpd
from .report import VerificationReport

__all__ = [
    "TruncatedSeriesValue",
    "expand_m",
    "expand_alpha",
    "expand_sigma",
    "expand_chi",
    "bch_series",
    "compose_bch",
    "projected_bch_m",
    "projected_bch_alpha",
    "projected_bch_sigma",
    "projected_bch_chi",
    "model_taylor_coefficients",
    "taylor_match_report",
    "bch_consistency_report",
    "EXPANSIONS",
]


@dataclass(frozen=True)
class TruncatedSeriesValue:
    """Coefficients of t^0 .. t^3 as full vectors on g1 + g2 (g1 first)."""

    dim1: int
    dim2: int
    codomain: str  # "g1", "g2" or "g"
    orders: tuple

    def __post_init__(self):
        if self.codomain not in ("g1", "g2", "g"):
            raise InvalidInput(f"unknown codomain {self.codomain!r}")
        orders = tuple(np.asarray(o, dtype=float) for o in self.orders)
        if len(orders) != 4 or any(o.shape != (self.dim1 + self.dim2,) for o in orders):
            raise InvalidInput("a truncated series needs four full-length coefficient vectors")
        object.__setattr__(self, "orders", orders)

    def __getitem__(self, k: int) -> np.ndarray:
        return self.orders[k]

    def codomain_defect(self) -> float:
        """Largest component outside the declared codomain."""
        d1 = self.dim1
        if self.codomain == "g1":
            return max(float(np.abs(o[d1:]).max(initial=0.0)) for o in self.orders)
        if self.codomain == "g2":
            return max(float(np.abs(o[:d1]).max(initial=0.0)) for o in self.orders)
        return 0.0

    def part(self, k: int) -> np.ndarray:
        """Order-k coefficient restricted to the codomain."""
        o = self.orders[k]
        return {"g1": o[: self.dim1], "g2": o[self.dim1:], "g": o}[self.codomain]

    def evaluate(self, t: float) -> np.ndarray:
        return sum(o * t**k for k, o in enumerate(self.orders))


class _Ops:
    """Bilinear pieces of a quasi-double bracket acting on coordinate vectors."""

    def __init__(self, qd: QuasiDoubleAlgebra):
        self.qd = qd
        self.p = project_components(qd)
        self.d1, self.d2 = qd.dim1, qd.dim2

    def mu(self, x, y):
        return np.einsum("p,q,pqr->r", x, y, self.p.mu)

    def psi(self, x, y):
        return np.einsum("p,q,pqa->a", x, y, self.p.psi)

    def act(self, x, xi):  # x^xi in g2
        return np.einsum("p,a,paq->q", x, xi, self.p.act)

    def coact(self, xi, x):  # xi^x in g1
        return np.einsum("p,a,pab->b", x, xi, self.p.coact)

    def br1(self, xi, eta):
        return np.einsum("a,b,abc->c", xi, eta, self.p.bracket_g1)

    def g1(self, v):
        return np.concatenate([v, np.zeros(self.d2)])

    def g2(self, v):
        return np.concatenate([np.zeros(self.d1), v])

    def series(self, codomain, *orders):
        return TruncatedSeriesValue(self.d1, self.d2, codomain, orders)


def _vec(v, size: int, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape != (size,):
        raise InvalidInput(f"{name} has shape {v.shape}, expected ({size},)")
    return v


def expand_m(x, y, qd: QuasiDoubleAlgebra) -> TruncatedSeriesValue:
    """m(tx, ty) = t(x+y) + t^2/2 mu(x,y)
    + t^3 [1/12 (mu(x,mu(x,y)) + mu(y,mu(y,x))) + 1/3 x^psi(x,y) - 1/6 y^psi(y,x)]."""
    o = _Ops(qd)
    x, y = _vec(x, o.d2, "x"), _vec(y, o.d2, "y")
    mxy = o.mu(x, y)
    third = (
        (o.mu(x, mxy) + o.mu(y, o.mu(y, x))) / 12.0
        + o.act(x, o.psi(x, y)) / 3.0
        - o.act(y, o.psi(y, x)) / 6.0
    )
    zero = np.zeros(o.d2)
    return o.series("g2", o.g2(zero), o.g2(x + y), o.g2(0.5 * mxy), o.g2(third))


def expand_alpha(x, y, qd: QuasiDoubleAlgebra) -> TruncatedSeriesValue:
    """alpha(tx, ty) = t^2/2 psi(x,y)
    + t^3 [1/12 (psi(x,mu(x,y)) + psi(y,mu(y,x))) + 1/3 psi(x,y)^x - 1/6 psi(y,x)^y]."""
    o = _Ops(qd)
    x, y = _vec(x, o.d2, "x"), _vec(y, o.d2, "y")
    third = (
        (o.psi(x, o.mu(x, y)) + o.psi(y, o.mu(y, x))) / 12.0
        + o.coact(o.psi(x, y), x) / 3.0
        - o.coact(o.psi(y, x), y) / 6.0
    )
    zero = np.zeros(o.d1)
    return o.series("g1", o.g1(zero), o.g1(zero), o.g1(0.5 * o.psi(x, y)), o.g1(third))


def expand_sigma(x, xi, qd: QuasiDoubleAlgebra) -> TruncatedSeriesValue:
    """sigma(tx, txi) = t x + t^2 x^xi + t^3/2 [(x^xi)^xi + x^(xi^x)]."""
    o = _Ops(qd)
    x, xi = _vec(x, o.d2, "x"), _vec(xi, o.d1, "xi")
    x_xi = o.act(x, xi)
    third = 0.5 * (o.act(x_xi, xi) + o.act(x, o.coact(xi, x)))
    return o.series("g2", o.g2(np.zeros(o.d2)), o.g2(x), o.g2(x_xi), o.g2(third))


def expand_chi(x, xi, qd: QuasiDoubleAlgebra) -> TruncatedSeriesValue:
    """chi(tx, txi) = t xi + t^2 xi^x + t^3/2 [xi^(x^xi) + (xi^x)^x]."""
    o = _Ops(qd)
    x, xi = _vec(x, o.d2, "x"), _vec(xi, o.d1, "xi")
    xi_x = o.coact(xi, x)
    third = 0.5 * (o.coact(xi, o.act(x, xi)) + o.coact(xi_x, x))
    return o.series("g1", o.g1(np.zeros(o.d1)), o.g1(xi), o.g1(xi_x), o.g1(third))


# --- the BCH route -----------------------------------------------------------


def _bracket(c, u, v):
    return np.einsum("i,j,ijk->k", u, v, c)


def bch_series(u, v, qd: QuasiDoubleAlgebra) -> TruncatedSeriesValue:
    """log(exp(tu) exp(tv)) through order 3, for full vectors u, v."""
    c = qd.bracket
    u, v = np.asarray(u, dtype=float), np.asarray(v, dtype=float)
    uv = _bracket(c, u, v)
    third = (_bracket(c, u, uv) + _bracket(c, v, _bracket(c, v, u))) / 12.0
    return TruncatedSeriesValue(qd.dim1, qd.dim2, "g", (np.zeros_like(u), u + v, 0.5 * uv, third))


def compose_bch(a: TruncatedSeriesValue, b: TruncatedSeriesValue, qd: QuasiDoubleAlgebra) -> TruncatedSeriesValue:
    """log(exp(A(t)) exp(B(t))) through order 3 for series A, B without constant term."""
    c = qd.bracket
    if np.any(a[0]) or np.any(b[0]):
        raise InvalidInput("compose_bch needs series vanishing at t = 0")
    br = lambda p, q: _bracket(c, p, q)  # noqa: E731
    o1 = a[1] + b[1]
    o2 = a[2] + b[2] + 0.5 * br(a[1], b[1])
    o3 = (
        a[3]
        + b[3]
        + 0.5 * (br(a[1], b[2]) + br(a[2], b[1]))
        + (br(a[1], br(a[1], b[1])) + br(b[1], br(b[1], a[1]))) / 12.0
    )
    return TruncatedSeriesValue(qd.dim1, qd.dim2, "g", (np.zeros_like(o1), o1, o2, o3))


def _project(s: TruncatedSeriesValue, codomain: str) -> TruncatedSeriesValue:
    d1 = s.dim1
    keep = np.zeros(s.dim1 + s.dim2, dtype=bool)
    if codomain == "g1":
        keep[:d1] = True
    else:
        keep[d1:] = True
    return TruncatedSeriesValue(s.dim1, s.dim2, codomain, tuple(np.where(keep, o, 0.0) for o in s.orders))


def projected_bch_m(x, y, qd) -> TruncatedSeriesValue:
    """g2 part of BCH(tx, ty), the naive guess for m."""
    o = _Ops(qd)
    return _project(bch_series(o.g2(x), o.g2(y), qd), "g2")


def projected_bch_alpha(x, y, qd) -> TruncatedSeriesValue:
    o = _Ops(qd)
    return _project(bch_series(o.g2(x), o.g2(y), qd), "g1")


def projected_bch_sigma(x, xi, qd) -> TruncatedSeriesValue:
    o = _Ops(qd)
    return _project(bch_series(o.g2(x), o.g1(xi), qd), "g2")


def projected_bch_chi(x, xi, qd) -> TruncatedSeriesValue:
    o = _Ops(qd)
    return _project(bch_series(o.g2(x), o.g1(xi), qd), "g1")


def bch_consistency_report(qd: QuasiDoubleAlgebra, samples: int = 16, seed: int = 0, tol: float = 1e-12) -> VerificationReport:
    """BCH(alpha, m) = BCH(x, y) and BCH(chi, sigma) = BCH(x, xi) through order 3."""
    report = VerificationReport("series-expansions", environment={"dim1": qd.dim1, "dim2": qd.dim2})
    o = _Ops(qd)
    prod, action, codom = [], [], []
    for i in range(samples):
        rng = np.random.default_rng([seed, 30, i])
        x, y = rng.normal(size=o.d2), rng.normal(size=o.d2)
        xi = rng.normal(size=o.d1)
        m, a = expand_m(x, y, qd), expand_alpha(x, y, qd)
        s, c = expand_sigma(x, xi, qd), expand_chi(x, xi, qd)
        lhs, rhs = compose_bch(a, m, qd), bch_series(o.g2(x), o.g2(y), qd)
        prod.append(max(np.abs(lhs[k] - rhs[k]).max() for k in range(4)))
        lhs, rhs = compose_bch(c, s, qd), bch_series(o.g2(x), o.g1(xi), qd)
        action.append(max(np.abs(lhs[k] - rhs[k]).max() for k in range(4)))
        codom.append(max(v.codomain_defect() for v in (m, a, s, c)))
    report.check("series.bch_product", "exp(tx)exp(ty) = exp(alpha) exp(m) to order 3", prod, tol, seed=seed)
    report.check("series.bch_action", "exp(tx)exp(txi) = exp(chi) exp(sigma) to order 3", action, tol, seed=seed)
    report.check("series.codomain", "alpha, chi in g1; m, sigma in g2", codom, tol, seed=seed)
    return report


# --- comparison with the SL(n, C) matrix model -------------------------------

EXPANSIONS = {
    "m": "m(x,y) = x + y + 1/2 mu(x,y) + 1/12 (mu(x,mu(x,y)) + mu(y,mu(y,x))) + 1/3 x^psi(x,y) - 1/6 y^psi(y,x)",
    "alpha": "alpha(x,y) = 1/2 psi(x,y) + 1/12 (psi(x,mu(x,y)) + psi(y,mu(y,x))) + 1/3 psi(x,y)^x - 1/6 psi(y,x)^y",
    "sigma": "sigma(x,xi) = x + x^xi + 1/2 ((x^xi)^xi + x^(xi^x))",
    "chi": "chi(x,xi) = xi + xi^x + 1/2 (xi^(x^xi) + (xi^x)^x)",
}


def model_taylor_coefficients(n: int, x, y, xi, h: float = 1e-2, points: int = 7, richardson: int = 1) -> dict:
    """Taylor coefficients (orders 0-3) of the matrix-model maps in adapted coordinates.

    ``x``, ``y`` are sh(n) coordinates and ``xi`` su(n) coordinates.
    """
    d = n * n - 1
    X = coords_to_matrix(np.concatenate([np.zeros(d), x]), n)
    Y = coords_to_matrix(np.concatenate([np.zeros(d), y]), n)
    XI = coords_to_matrix(np.concatenate([xi, np.zeros(d)]), n)

    def m_curve(t):
        return matrix_to_coords(matrix_log_hpd(loop_mul(expm_hermitian(t * X), expm_hermitian(t * Y))))

    def alpha_curve(t):
        return matrix_to_coords(log_unitary(alpha(expm_hermitian(t * X), expm_hermitian(t * Y))))

    def sigma_curve(t):
        return matrix_to_coords(matrix_log_hpd(sigma(expm_hermitian(t * X), matrix_exp(t * XI))))

    def chi_curve(t):
        return matrix_to_coords(log_unitary(chi(expm_hermitian(t * X), matrix_exp(t * XI))))

    curves = {"m": m_curve, "alpha": alpha_curve, "sigma": sigma_curve, "chi": chi_curve}
    return {k: taylor_coefficients(f, 3, h, points=points, richardson=richardson) for k, f in curves.items()}


def taylor_match_report(
    n: int = 2,
    h: float = 1e-2,
    samples: int = 32,
    seed: int = 0,
    scale: float = 1.0,
    tol_low: float = 1e-6,
    tol_third: float = 1e-4,
) -> VerificationReport:
    """Per-order discrepancy between the expansions and the SL(n, C) model."""
    if n not in (2, 3):
        raise InvalidInput(f"taylor_match_report supports n in {{2, 3}}, got {n}")
    if not 1e-3 <= h <= 1e-1:
        raise InvalidInput(f"step h={h} outside [1e-3, 1e-1]")
    qd = sl_n_model(n)
    d = n * n - 1
    expanders = {"m": expand_m, "alpha": expand_alpha, "sigma": expand_sigma, "chi": expand_chi}
    worst = {(k, order): [] for k in expanders for order in range(4)}
    for i in range(samples):
        rng = np.random.default_rng([seed, 40, i])
        x, y, xi = (rng.normal(size=d) for _ in range(3))
        x, y, xi = (scale * v / np.linalg.norm(v) for v in (x, y, xi))
        numeric = model_taylor_coefficients(n, x, y, xi, h=h)
        for key, expand in expanders.items():
            second = y if key in ("m", "alpha") else xi
            series = expand(x, second, qd)
            for order in range(4):
                worst[(key, order)].append(float(np.abs(numeric[key][order] - series[order]).max()))
    report = VerificationReport(
        "series-expansions",
        environment={"n": n, "h": h, "scale": scale, "scaling": "one-parameter t*x, t*y (t*xi)"},
    )
    for (key, order), defects in worst.items():
        tol = tol_third if order == 3 else tol_low
        report.check(f"series.{key}.order{order}.n{n}", EXPANSIONS[key], defects, tol, seed=seed)
    return report
