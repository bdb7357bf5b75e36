"""The quasi-double group (SL(n, C), SU(n), SH(n)).

Writing a product ``a g`` (a in SH(n), g in SU(n)) in the other order,
``a g = g' a'``, defines the action ``a' = sigma(a, g)`` (written a^g) and
the alpha-twisted action ``g' = chi(a, g)`` (written g^a).  A product of two
loop elements splits as ``a b = alpha(a, b) m(a, b)``.
"""

from __future__ import annotations

import numpy as np

from .loop import loop_mul
from .matrix_core import dagger, fro, hermitian_power, hermitian_sqrt, sample
from .report import VerificationReport

__all__ = [
    "alpha",
    "sigma",
    "chi",
    "group_identity_defects",
    "translation_identity_defects",
    "verify_group_identities",
    "verify_translation_identities",
    "verify_decomposition",
    "GROUP_IDENTITIES",
    "TRANSLATION_IDENTITIES",
]


def _sym(m):
    return 0.5 * (m + dagger(m))


def alpha(a, b) -> np.ndarray:
    """SU(n)-factor of ab: (ab)(b a^2 b)^(-1/2)."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    return a @ b @ hermitian_power(_sym(b @ a @ a @ b), -0.5)


def sigma(a, g) -> np.ndarray:
    """a^g = (g^-1 a^2 g)^(1/2), the SH(n)-factor of ag."""
    a = np.asarray(a, dtype=complex)
    g = np.asarray(g, dtype=complex)
    if np.array_equal(a, np.eye(a.shape[0])):
        # identity is a fixed point of the action
        return a.copy()
    return hermitian_sqrt(_sym(dagger(g) @ a @ a @ g))


def chi(a, g) -> np.ndarray:
    """g^a = (ag)(g^-1 a^2 g)^(-1/2), the SU(n)-factor of ag."""
    a = np.asarray(a, dtype=complex)
    g = np.asarray(g, dtype=complex)
    return a @ g @ hermitian_power(_sym(dagger(g) @ a @ a @ g), -0.5)


GROUP_IDENTITIES = {
    "chi_product": "(gh)^a = g^a h^(a^g)",
    "sigma_action": "(a^g)^h = a^(gh)",
    "chi_twisted_action": "(g^b)^a alpha(a^(g^b), b^g) = alpha(a,b) g^(m(a,b))",
    "sigma_of_product": "m(a,b)^g = m(a^(g^b), b^g)",
    "alpha_cocycle": "alpha(a,b) alpha(m(a,b),c) = alpha(b,c)^a alpha(a^alpha(b,c), m(b,c))",
    "loop_associator": "m(m(a,b),c) = m(a^alpha(b,c), m(b,c))",
}

TRANSLATION_IDENTITIES = {
    "left_translation": "lambda_{m(a,b)}(c) = lambda_{sigma(a,alpha(b,c))}(lambda_b(c))",
    "right_translation": "rho_{m(a,b)}(c) = rho_b(rho_a(sigma(c, alpha(a,b)^-1)))",
    "mixed_translation": "rho_b(lambda_a(c)) = lambda_{sigma(a,alpha(c,b))}(rho_b(c))",
}


def group_identity_defects(g, h, a, b, c) -> dict:
    """Frobenius defects of the six structure identities for one sample."""
    m = loop_mul
    ab = m(a, b)
    bc = m(b, c)
    al_bc = alpha(b, c)
    g_b = chi(b, g)
    return {
        "chi_product": fro(chi(a, g @ h) - chi(a, g) @ chi(sigma(a, g), h)),
        "sigma_action": fro(sigma(sigma(a, g), h) - sigma(a, g @ h)),
        "chi_twisted_action": fro(
            chi(a, g_b) @ alpha(sigma(a, g_b), sigma(b, g)) - alpha(a, b) @ chi(ab, g)
        ),
        "sigma_of_product": fro(sigma(ab, g) - m(sigma(a, g_b), sigma(b, g))),
        "alpha_cocycle": fro(
            alpha(a, b) @ alpha(ab, c) - chi(a, al_bc) @ alpha(sigma(a, al_bc), bc)
        ),
        "loop_associator": fro(m(ab, c) - m(sigma(a, al_bc), bc)),
    }


def translation_identity_defects(a, b, c) -> dict:
    m = loop_mul
    return {
        "left_translation": fro(m(m(a, b), c) - m(sigma(a, alpha(b, c)), m(b, c))),
        "right_translation": fro(m(c, m(a, b)) - m(m(sigma(c, dagger(alpha(a, b))), a), b)),
        "mixed_translation": fro(m(m(a, c), b) - m(sigma(a, alpha(c, b)), m(c, b))),
    }


def _seed(seed: int, *index: int) -> list:
    return [seed, *index]


def _draw(n, scale, seed, ident, i):
    su = [sample("su_n", n, scale, _seed(seed, ident, i, k)) for k in range(2)]
    sh = [sample("sh_n", n, scale, _seed(seed, ident, i, 2 + k)) for k in range(3)]
    return su, sh


def verify_group_identities(
    n: int = 2, samples: int = 64, seed: int = 0, scale: float = 0.3, tol: float = 1e-9
) -> VerificationReport:
    """Evaluate all six structure identities on seeded samples."""
    report = VerificationReport("quasi-double-group", environment={"n": n, "scale": scale})
    for ident, (key, anchor) in enumerate(GROUP_IDENTITIES.items()):
        defects = []
        for i in range(samples):
            (g, h), (a, b, c) = _draw(n, scale, seed, ident, i)
            defects.append(group_identity_defects(g, h, a, b, c)[key])
        report.check(f"group.{key}.n{n}", anchor, defects, tol, seed=seed)
    return report


def verify_translation_identities(
    n: int = 2, samples: int = 64, seed: int = 0, scale: float = 0.3, tol: float = 1e-9
) -> VerificationReport:
    report = VerificationReport("quasi-double-group", environment={"n": n, "scale": scale})
    for ident, (key, anchor) in enumerate(TRANSLATION_IDENTITIES.items()):
        defects = []
        for i in range(samples):
            _, (a, b, c) = _draw(n, scale, seed, 10 + ident, i)
            defects.append(translation_identity_defects(a, b, c)[key])
        report.check(f"translation.{key}.n{n}", anchor, defects, tol, seed=seed)
    return report


def verify_decomposition(
    n: int = 2, samples: int = 64, seed: int = 0, scale: float = 0.3, tol: float = 1e-10
) -> VerificationReport:
    """ab = alpha(a,b) m(a,b), and polar re-projection of g a returns (g, a)."""
    from .matrix_core import polar_project

    report = VerificationReport("quasi-double-group", environment={"n": n, "scale": scale})
    recompose, reproject = [], []
    for i in range(samples):
        (g, _), (a, b, _) = _draw(n, scale, seed, 20, i)
        recompose.append(fro(alpha(a, b) @ loop_mul(a, b) - a @ b))
        g2, a2 = polar_project(g @ a)
        reproject.append(max(fro(g2 - g), fro(a2 - a)))
    report.check(f"decomposition.product.n{n}", "(ab)_G = alpha(a,b) m(a,b)", recompose, tol, seed=seed)
    report.check(f"decomposition.reprojection.n{n}", "polar(g a) = (g, a)", reproject, tol, seed=seed)
    return report
