"""End-to-end pipeline: build -> extract -> constants -> Jacobi -> topology.

The pipeline is deterministic: identical spec, flags and seed reproduce the
report dictionary exactly (timings are kept out of it and only surface in
the text rendering).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from . import __version__
from .algebra import (
    DEFAULT_CLOSURE_TOL,
    DEFAULT_JACOBI_TOL,
    compute_structure_constants,
    grading_report,
    jacobi_check,
)
from .corep import build_corep, resolve_extension, verify_corep_law
from .errors import SpecError
from .linalg import frobenius_dist
from .report import SCHEMA_VERSION, matrix_json, tensor_json
from .tangent import extract_tangent_basis, fd_agreement, span_report
from .topology import classify_connectedness, verify_metric_axioms

DEFAULT_LAW_TOL = 1e-9
DEFAULT_METRIC_TOL = 1e-12
DEFAULT_FD_AGREEMENT_TOL = 1e-8
DEFAULT_METHOD_COMPARE_TOL = 1e-7
PHASE_GEN_TOL = 1e-9


@dataclass(frozen=True)
class Flags:
    """Pipeline knobs, echoed into the report for reproducibility."""

    method: str = "both"  # "analytic" | "fd" | "both"
    seed: int = 1234
    trials: int = 200
    tol_closure: float = DEFAULT_CLOSURE_TOL
    tol_jacobi: float = DEFAULT_JACOBI_TOL
    tol_law: float = DEFAULT_LAW_TOL
    type_override: str | None = None
    fd_step: float = 1e-5


@dataclass
class PipelineResult:
    report: dict
    timings: dict = field(default_factory=dict)

    @property
    def failed_checks(self) -> list:
        return [
            name
            for name, entry in self.report["checks"].items()
            if not entry["passed"]
        ]

    @property
    def passed(self) -> bool:
        return not self.failed_checks


def _check(value: float, threshold: float) -> dict:
    return {
        "value": float(value),
        "threshold": float(threshold),
        "passed": bool(value <= threshold),
    }


def _spec_echo(group, a0, corep_type, flags: Flags) -> dict:
    a0_json = None
    if a0 is not None:
        a0_json = {
            "kind": a0.kind,
            "N": matrix_json(a0.matrix_part),
            "signature": int(a0.signature),
            "adjoint": None if a0.adjoint is None else matrix_json(a0.adjoint),
        }
    return {
        "group": {
            "name": group.name,
            "dim": int(group.dim),
            "nParams": int(group.n_params),
            "generators": [matrix_json(g) for g in group.generators],
        },
        "a0": a0_json,
        "type": corep_type,
        "flags": {
            "method": flags.method,
            "seed": int(flags.seed),
            "trials": int(flags.trials),
            "tolClosure": float(flags.tol_closure),
            "tolJacobi": float(flags.tol_jacobi),
            "tolLaw": float(flags.tol_law),
            "fdStep": float(flags.fd_step),
        },
    }


def run_pipeline(spec: dict, flags: Flags = Flags()) -> PipelineResult:
    """Run the full analysis described by an extension spec dictionary."""
    if flags.method not in ("analytic", "fd", "both"):
        raise SpecError(f"method must be 'analytic', 'fd' or 'both', got {flags.method!r}")
    timings: dict = {}
    t0 = time.perf_counter()

    group, a0, corep_type, intertwiner = resolve_extension(
        spec, seed=flags.seed, type_override=flags.type_override
    )
    corep = None if a0 is None else build_corep(group, a0, corep_type)
    rep = group if corep is None else corep
    timings["build"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    basis_method = "fd" if flags.method == "fd" else "analytic"
    basis = extract_tangent_basis(rep, basis_method, flags.fd_step)
    agreement = None
    if flags.method == "both":
        agreement = fd_agreement(rep, flags.fd_step)
    span = span_report(basis)
    timings["tangent"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    constants = compute_structure_constants(basis, tol=flags.tol_closure)
    jacobi = jacobi_check(constants)
    grading = grading_report(basis, constants)
    timings["algebra"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    checks: dict = {}
    metric = None
    connectivity = None
    law_defect = None
    if corep is not None:
        metric = verify_metric_axioms(corep, trials=flags.trials, seed=flags.seed + 1)
        connectivity = classify_connectedness(corep)
        law_defect = verify_corep_law(corep, trials=flags.trials, seed=flags.seed + 2)
        checks["corepLaw"] = _check(law_defect, flags.tol_law)
        checks["metricAxioms"] = _check(metric.max_violation, DEFAULT_METRIC_TOL)
        phase_defect = frobenius_dist(basis.phase_gen, 1j * corep.da0)
        checks["phaseGenerator"] = _check(phase_defect, PHASE_GEN_TOL)
        if corep.type == "b":
            expected = 2 * group.n_params + 1
            checks["typeBRank"] = {
                "value": float(span.real_rank_union),
                "threshold": float(expected),
                "passed": span.real_rank_union == expected,
            }
    if agreement is not None:
        checks["fdAgreement"] = _check(agreement, DEFAULT_FD_AGREEMENT_TOL)
    if constants.closed:
        worst_jacobi = max(
            jacobi.lie_defect, jacobi.defect1, jacobi.defect2, jacobi.defect3
        )
        checks["jacobi"] = _check(worst_jacobi, flags.tol_jacobi)
    timings["topology"] = time.perf_counter() - t0

    report = {
        "schemaVersion": SCHEMA_VERSION,
        "toolVersion": __version__,
        "seed": int(flags.seed),
        "spec": _spec_echo(group, a0, corep_type, flags),
        "corep": None
        if corep is None
        else {
            "type": corep.type,
            "blockDim": int(corep.block_dim),
            "kind": a0.kind,
            "signature": int(a0.signature),
            "N": matrix_json(a0.matrix_part),
            "Da0": matrix_json(corep.da0),
            "intertwiner": None
            if intertwiner is None
            else {
                "sign": intertwiner.sign,
                "residual": float(intertwiner.residual),
                "nullspaceDim": int(intertwiner.nullspace_dim),
            },
        },
        "basis": {
            "method": basis.method,
            "fdStep": float(basis.fd_step),
            "fdAgreement": None if agreement is None else float(agreement),
            "subgroup": [matrix_json(x) for x in basis.subgroup_gens],
            "coset": [matrix_json(x) for x in basis.coset_gens],
            "phase": None if basis.phase_gen is None else matrix_json(basis.phase_gen),
            "span": {
                "realRankSubgroup": span.real_rank_subgroup,
                "realRankCoset": span.real_rank_coset,
                "realRankUnion": span.real_rank_union,
                "complexRankSubgroupPhase": span.complex_rank_subgroup_phase,
                "corollaryTag": span.corollary_tag,
                "cosetDependence": [bool(x) for x in span.coset_dependence],
            },
        },
        "constants": {
            "indexLegend": {
                "subgroup": list(range(1, group.n_params + 1)),
                "coset": list(constants.coset_labels),
                "tensorAxes": {
                    "c": "[p][q][r], all subgroup",
                    "d": "[p][q][r]: p, q coset positions (label order 0, n+1..2n), r subgroup",
                    "e": "[p][q][r]: p subgroup, q, r coset positions",
                },
            },
            "c": tensor_json(constants.c),
            "d": tensor_json(constants.d),
            "e": tensor_json(constants.e),
            "residuals": {
                "c": tensor_json(constants.residual_c),
                "d": tensor_json(constants.residual_d),
                "e": tensor_json(constants.residual_e),
            },
            "worstResidual": float(constants.worst_residual),
            "closed": bool(constants.closed),
            "nonUnique": bool(constants.non_unique),
            "tol": float(constants.tol),
        },
        "jacobi": {
            "lieDefect": float(jacobi.lie_defect),
            "defect1": float(jacobi.defect1),
            "defect2": float(jacobi.defect2),
            "defect3": float(jacobi.defect3),
            "maxIndexWitness": list(jacobi.max_index_witness),
            "advisory": bool(jacobi.advisory),
        },
        "grading": {
            "closed": bool(grading.closed),
            "worstResidual": float(grading.worst_residual),
            "centralX0": grading.central_x0,
        },
        "topology": {
            "metric": None
            if metric is None
            else {
                "maxViolation": float(metric.max_violation),
                "faithfulnessFailures": int(metric.faithfulness_failures),
                "trials": int(metric.trials),
            },
            "connectivity": None
            if connectivity is None
            else {
                "verdict": connectivity.verdict,
                "reason": connectivity.reason,
                "evidence": float(connectivity.evidence),
            },
        },
        "checks": checks,
    }
    return PipelineResult(report=report, timings=timings)
