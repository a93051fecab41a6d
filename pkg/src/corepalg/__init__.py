"""corepalg: matrix algebras of continuous groups with antilinear operations.

The package builds corepresentations of groups G + a0*G, where G is a
parametrized matrix Lie group and a0 an antilinear element with a0^2 = +/-1,
extracts the tangent basis attached to the two convergence points (the unit
matrix and D(a0)), computes the graded structure constants of the resulting
matrix algebra, and verifies the associated span, Jacobi, metric and
connectedness properties numerically.
"""

__version__ = "0.1.0"

from .algebra import (
    GradingReport,
    JacobiReport,
    StructureConstants,
    commutator,
    compute_structure_constants,
    grading_report,
    jacobi_check,
)
from .corep import (
    AntilinearElement,
    Corep,
    IntertwinerResult,
    build_corep,
    corep_product,
    resolve_extension,
    solve_intertwiner,
    verify_corep_law,
)
from .errors import (
    CorepalgError,
    CorepConstructionError,
    DomainError,
    NoIntertwinerError,
    ShapeError,
    SpecError,
    UnknownGroupError,
)
from .groups import (
    GroupPresentation,
    ParameterPoint,
    catalog,
    catalog_names,
    group_from_spec,
    sample_neighborhood,
)
from .linalg import (
    RealSpan,
    family_rank,
    frobenius_dist,
    frobenius_norm,
    lstsq_expand,
    mat_exp,
    real_vec,
)
from .pipeline import Flags, PipelineResult, run_pipeline
from .report import compare_reports, dumps_canonical, render_text
from .tangent import (
    SpanReport,
    TangentBasis,
    extract_coset_generators,
    extract_subgroup_generators,
    extract_tangent_basis,
    fd_agreement,
    span_report,
)
from .topology import (
    ConnectivityVerdict,
    MetricAxiomReport,
    classify_connectedness,
    distance_d1,
    distance_d2,
    verify_metric_axioms,
)

__all__ = [
    "__version__",
    "AntilinearElement",
    "ConnectivityVerdict",
    "Corep",
    "CorepConstructionError",
    "CorepalgError",
    "DomainError",
    "Flags",
    "GradingReport",
    "GroupPresentation",
    "IntertwinerResult",
    "JacobiReport",
    "MetricAxiomReport",
    "NoIntertwinerError",
    "ParameterPoint",
    "PipelineResult",
    "RealSpan",
    "ShapeError",
    "SpanReport",
    "SpecError",
    "StructureConstants",
    "TangentBasis",
    "UnknownGroupError",
    "build_corep",
    "catalog",
    "catalog_names",
    "classify_connectedness",
    "commutator",
    "compare_reports",
    "compute_structure_constants",
    "corep_product",
    "distance_d1",
    "distance_d2",
    "dumps_canonical",
    "extract_coset_generators",
    "extract_subgroup_generators",
    "extract_tangent_basis",
    "family_rank",
    "fd_agreement",
    "frobenius_dist",
    "frobenius_norm",
    "grading_report",
    "group_from_spec",
    "jacobi_check",
    "lstsq_expand",
    "mat_exp",
    "real_vec",
    "render_text",
    "resolve_extension",
    "run_pipeline",
    "sample_neighborhood",
    "solve_intertwiner",
    "span_report",
    "verify_corep_law",
    "verify_metric_axioms",
]
