"""Verification suites run by the command line, one per subcommand.

Every suite returns a :class:`VerificationReport` whose check ids are unique
across suites, so ``all`` can simply concatenate them.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import __version__
from .algebra import (
    PAIRING_CONDITIONS,
    akivis_from_quasi_double,
    akivis_identity_defect,
    coords_to_matrix,
    im_trace_pairing,
    jacobi_check,
    project_components,
    sh_basis,
    sl2_relation_defects,
    sl_n_model,
    verify_algebra_identities,
    QuasiDoubleAlgebra,
    pairing_invariance_defects,
)
from .bialgebra import (
    BialgebraSpec,
    axiom_defects,
    big_bracket_defects,
    build_double,
    check_axioms,
    check_big_bracket,
    check_invariant_pairing,
    corrupt_spec,
    double_bracket,
    random_twisted_spec,
    sh2_bialgebra,
)
from .errors import InvalidInput
from .fields import H_FIELD, extract_tangent_bialgebra, verify_quasi_poisson, verify_translated_field_relations
from .group import verify_decomposition, verify_group_identities, verify_translation_identities
from .loop import (
    akivis_commutator_numeric,
    check_mono_alternative,
    identity,
    loop_left_div,
    loop_mul,
    loop_right_div,
)
from .matrix_core import fro, hermitian_defect, sample
from .report import VerificationReport
from .series import bch_consistency_report, taylor_match_report

__all__ = ["SuiteOptions", "SUITES", "run_suite", "apply_tolerance"]

EXPONENTS = range(-2, 3)
EQUIVALENCE_SPECS = 50


@dataclass(frozen=True)
class SuiteOptions:
    """Flag values shared by all suites; ``None`` means the suite default."""

    n: int | None = None
    samples: int | None = None
    seed: int = 0
    scale: float | None = None
    tol: float | None = None
    fd_step: float | None = None
    radius: float = 0.5
    input_spec: BialgebraSpec | None = None
    input_name: str | None = None

    def sizes(self, default: tuple) -> tuple:
        return default if self.n is None else (self.n,)

    def count(self, default: int) -> int:
        return default if self.samples is None else self.samples

    def spread(self, default: float) -> float:
        return default if self.scale is None else self.scale

    def step(self, default: float) -> float:
        return default if self.fd_step is None else self.fd_step


def _relabel(report: VerificationReport, suffix: str) -> VerificationReport:
    report.records = [dataclasses.replace(r, check_id=r.check_id + suffix) for r in report.records]
    return report


def _require_n(opts: SuiteOptions, allowed: tuple, suite: str) -> None:
    if opts.n is not None and opts.n not in allowed:
        raise InvalidInput(f"{suite} supports --n in {allowed}, got {opts.n}")


# --- loop ---------------------------------------------------------------------


def loop_suite(opts: SuiteOptions) -> VerificationReport:
    _require_n(opts, (2, 3, 4), "verify-loop")
    samples, scale, seed = opts.count(64), opts.spread(0.3), opts.seed
    report = VerificationReport("verify-loop")
    for n in opts.sizes((2, 3)):
        neutral, left, right, mono, closure = [], [], [], [], []
        e = identity(n)
        for i in range(samples):
            a, b, c = (sample("sh_n", n, scale, [seed, 1, n, i, k]) for k in range(3))
            neutral.append(max(fro(loop_mul(a, e) - a), fro(loop_mul(e, a) - a)))
            left.append(fro(loop_mul(a, loop_left_div(a, c)) - c))
            right.append(fro(loop_mul(loop_right_div(c, a), a) - c))
            mono.append(max(check_mono_alternative(a, b, k, l) for k in EXPONENTS for l in EXPONENTS))
            p = loop_mul(a, b)
            eig = np.linalg.eigvalsh(0.5 * (p + p.conj().T))
            closure.append(max(hermitian_defect(p), abs(np.prod(eig) - 1.0), max(0.0, -eig.min())))
        report.check(f"loop.neutral.n{n}", "m(a,e) = m(e,a) = a", neutral, 1e-10, seed=seed)
        report.check(f"loop.left_division.n{n}", "m(a, a\\c) = c", left, 1e-10, seed=seed)
        report.check(f"loop.right_division.n{n}", "m(c/a, a) = c", right, 1e-10, seed=seed)
        report.check(f"loop.mono_alternative.n{n}", "(a b^k) b^l = a b^(k+l), |k|,|l| <= 2", mono, 1e-9, seed=seed)
        report.check(f"loop.closure.n{n}", "m(a,b) is Hermitian, positive definite, det 1", closure, 1e-10, seed=seed)
    report.environment = {"n": list(opts.sizes((2, 3))), "samples": samples, "scale": scale}
    return report


# --- quasi-double group ---------------------------------------------------------


def quasi_double_suite(opts: SuiteOptions) -> VerificationReport:
    _require_n(opts, (2, 3, 4), "verify-quasi-double")
    samples, scale, seed = opts.count(64), opts.spread(0.3), opts.seed
    report = VerificationReport("verify-quasi-double")
    for n in opts.sizes((2, 3)):
        report.extend(verify_decomposition(n, samples, seed, scale))
        report.extend(verify_group_identities(n, samples, seed, scale))
        report.extend(verify_translation_identities(n, samples, seed, scale))
    report.environment = {"n": list(opts.sizes((2, 3))), "samples": samples, "scale": scale}
    return report


# --- quasi-double algebra -------------------------------------------------------


def _perturbed(qd: QuasiDoubleAlgebra, seed: int, size: float = 1e-3) -> QuasiDoubleAlgebra:
    """The same algebra with antisymmetric noise added to the g2 x g2 block."""
    rng = np.random.default_rng([seed, 2])
    c = np.array(qd.bracket)
    d1 = qd.dim1
    noise = size * rng.normal(size=(qd.dim2, qd.dim2, qd.dim1 + qd.dim2))
    c[d1:, d1:] += noise - noise.swapaxes(0, 1)
    return QuasiDoubleAlgebra(qd.dim1, qd.dim2, c)


def double_algebra_suite(opts: SuiteOptions) -> VerificationReport:
    _require_n(opts, (2, 3, 4), "verify-double-algebra")
    seed = opts.seed
    report = VerificationReport("verify-double-algebra")
    for n in opts.sizes((2, 3)):
        qd = sl_n_model(n)
        label = f"sl{n}"
        report.extend(verify_algebra_identities(qd, label=label))
        pairing = pairing_invariance_defects(qd, im_trace_pairing(n))
        for key, anchor in PAIRING_CONDITIONS.items():
            report.check(f"pairing.{key}.{label}", anchor, pairing[key], 1e-12)
        report.check(
            f"akivis.identity.{label}",
            "sum_S3 sign <x1,x2,x3> = sum_cyc [[x1,x2],x3]",
            akivis_identity_defect(akivis_from_quasi_double(qd)),
            1e-12,
        )
        perturbed = verify_algebra_identities(_perturbed(qd, seed), label=label)
        report.check(
            f"algebra.negative_control.{label}",
            "a perturbed bracket is rejected by the identity suite",
            0.0 if not perturbed.passed else 1.0,
            0.5,
            seed=seed,
        )
        if n == 2:
            report.check("sl2.relations.matrix", "basis commutators of sl(2,C)", sl2_relation_defects(), 1e-14)
            report.check("sl2.relations.tensor", "structure tensor of sl(2,C)", sl2_relation_defects(qd.bracket), 1e-14)

    # numeric loop commutator of SH(2) against the tensor mu of sl(2, C)
    h = opts.step(1e-2)
    mu = project_components(sl_n_model(2)).mu
    e = sh_basis(2)
    defects = []
    for i in range(3):
        for j in range(3):
            want = coords_to_matrix(np.concatenate([np.zeros(3), mu[i, j]]), 2)
            defects.append(fro(akivis_commutator_numeric(e[i], e[j], h) - want))
    report.check("akivis.loop_commutator.sh2", "[x,y] from the loop commutator = mu(x,y) = 0", defects, 1e-3)
    report.environment = {"n": list(opts.sizes((2, 3))), "fd_step": h}
    return report


# --- quasi-Lie bialgebras ----------------------------------------------------


def _double_checks(report: VerificationReport, spec: BialgebraSpec, label: str, tol: float) -> None:
    c = double_bracket(spec)
    report.check(f"double.jacobi.{label}", "Jacobi identity of the double bracket", jacobi_check(c), tol)
    report.check(f"double.pairing.{label}", "<M(u,v),w> + <v,M(u,w)> = 0", check_invariant_pairing(c), tol)


def _equivalence_sweep(seed: int, tol: float = 1e-10) -> tuple:
    """Generate valid twists and corrupted tensors; compare the two validity routes."""
    disagreements, margins, invalid = 0, [], 0
    for i in range(EQUIVALENCE_SPECS):
        dim = 3 + i % 2
        spec = random_twisted_spec(dim, [seed, 5, i])
        if i % 2 == 1 or i % 4 == 0:
            spec = corrupt_spec(spec, [seed, 6, i])
        ax = max(axiom_defects(spec).values())
        bb = max(big_bracket_defects(spec).values())
        disagreements += (ax < tol) != (bb < tol)
        invalid += ax >= tol
        margins.append(min(abs(np.log10(max(ax, 1e-300) / tol)), abs(np.log10(max(bb, 1e-300) / tol))))
    return disagreements, min(margins), invalid


def bialgebra_suite(opts: SuiteOptions) -> VerificationReport:
    if opts.n is not None:
        raise InvalidInput("verify-bialgebra takes no --n; pass --input for another spec")
    report = VerificationReport("verify-bialgebra")
    if opts.input_spec is not None:
        spec = opts.input_spec
        report.extend(check_axioms(spec, tol=1e-12, label="input"))
        report.extend(check_big_bracket(spec, tol=1e-12, label="input"))
        _double_checks(report, spec, "input", 1e-12)
        report.environment = {"input": opts.input_name, "dim": spec.dim}
        return report

    seed = opts.seed
    spec = sh2_bialgebra()
    report.extend(check_axioms(spec, label="sh2"))
    report.extend(check_big_bracket(spec, label="sh2"))
    _double_checks(report, spec, "sh2", 1e-12)
    relabeled = build_double(spec).as_quasi_double().bracket
    report.check("double.equals_sl2.sh2", "double of sh(2) = sl(2,C)", float(np.abs(relabeled - sl_n_model(2).bracket).max()), 1e-12)

    samples = opts.count(16)
    twist_ax, twist_jac, twist_pair = [], [], []
    for i in range(samples):
        twisted = random_twisted_spec(3 + i % 2, [seed, 4, i])
        twist_ax.append(max(axiom_defects(twisted).values()))
        c = double_bracket(twisted)
        twist_jac.append(jacobi_check(c))
        twist_pair.append(check_invariant_pairing(c))
    report.check("twist.axioms", "twisted specs satisfy the four axioms", twist_ax, 1e-10, seed=seed)
    report.check("double.jacobi.twist", "Jacobi identity of the double bracket", twist_jac, 1e-10, seed=seed)
    report.check("double.pairing.twist", "<M(u,v),w> + <v,M(u,w)> = 0", twist_pair, 1e-10, seed=seed)

    disagreements, margin, invalid = _equivalence_sweep(seed)
    report.check(
        "big_bracket.equivalence",
        "axioms hold iff {Theta,Theta} = 0 (disagreement count)",
        float(disagreements),
        0.5,
        seed=seed,
    )
    report.environment = {
        "equivalence_specs": EQUIVALENCE_SPECS,
        "equivalence_invalid": invalid,
        "equivalence_min_log10_margin": round(margin, 3),
        "twist_samples": samples,
    }
    return report


# --- series ----------------------------------------------------------------------


def expansions_suite(opts: SuiteOptions) -> VerificationReport:
    _require_n(opts, (2, 3), "verify-expansions")
    h, samples, scale = opts.step(1e-2), opts.count(32), opts.spread(1.0)
    report = VerificationReport("verify-expansions")
    for n in opts.sizes((2,)):
        report.extend(taylor_match_report(n, h=h, samples=samples, seed=opts.seed, scale=scale))
        report.extend(_relabel(bch_consistency_report(sl_n_model(n), seed=opts.seed), f".n{n}"))
    report.environment = {
        "n": list(opts.sizes((2,))),
        "fd_step": h,
        "samples": samples,
        "scale": scale,
        "scaling": "one-parameter t*x, t*y (t*xi)",
    }
    return report


# --- SH(2) quasi-Poisson structure -----------------------------------------------


def sh2_suite(opts: SuiteOptions) -> VerificationReport:
    _require_n(opts, (2,), "verify-sh2")
    h, seed = opts.step(H_FIELD), opts.seed
    samples, scale = opts.count(16), opts.spread(0.5)
    report = VerificationReport("verify-sh2")
    report.extend(verify_translated_field_relations(samples=min(samples, 8), seed=seed, scale=scale, h=h))
    report.extend(verify_quasi_poisson(points=16, radius=opts.radius, samples=samples, seed=seed, h=h))
    tangent = extract_tangent_bialgebra(h=h)
    report.extend(check_axioms(tangent, tol=1e-3, label="tangent"))
    exact = sh2_bialgebra()
    diff = max(float(np.abs(getattr(tangent, k) - getattr(exact, k)).max()) for k in ("mu", "gamma", "psi"))
    report.check("sh2.tangent_match", "recovered (mu, gamma, psi) = (0, [,]_su2, [,]_sl2 on sh2)", diff, 1e-3)
    report.environment = {"fd_step": h, "radius": opts.radius, "grid_points": 16, "samples": samples, "scale": scale}
    return report


SUITES: dict[str, Callable[[SuiteOptions], VerificationReport]] = {
    "verify-loop": loop_suite,
    "verify-quasi-double": quasi_double_suite,
    "verify-double-algebra": double_algebra_suite,
    "verify-bialgebra": bialgebra_suite,
    "verify-expansions": expansions_suite,
    "verify-sh2": sh2_suite,
}


def apply_tolerance(report: VerificationReport, tol: float) -> VerificationReport:
    """Replace the tolerance of every record."""
    report.records = [dataclasses.replace(r, tolerance=float(tol)) for r in report.records]
    return report


def run_suite(name: str, opts: SuiteOptions) -> VerificationReport:
    if name == "all":
        names = list(SUITES)
        if opts.n is not None:
            raise InvalidInput("all runs every suite at its default sizes; --n is not accepted")
    elif name in SUITES:
        names = [name]
    else:
        raise InvalidInput(f"unknown suite {name!r}")
    report = VerificationReport(name)
    envs = {}
    for key in names:
        part = SUITES[key](opts)
        report.records.extend(part.records)
        envs[key] = part.environment
    ids = [r.check_id for r in report.records]
    if len(set(ids)) != len(ids):
        raise RuntimeError("duplicate check ids across suites")
    if opts.tol is not None:
        apply_tolerance(report, opts.tol)
    report.environment = {
        "version": __version__,
        "seed": opts.seed,
        "tol_override": opts.tol,
        "suites": envs,
    }
    return report
