"""Distance functions on G + a0*G, metric-axiom checks and connectedness.

Two distances are defined on the corepresentation matrices: d1 between
subgroup elements and d2 between coset elements.  The phase alpha0 does not
enter d2; both arguments are evaluated with the phase stripped.  Four metric
conditions are verified numerically (symmetry, zero self-distance,
positivity for separated points, triangle inequality); positivity failures
are demoted to faithfulness warnings because the distance formula cannot
distinguish an unfaithful presentation from a metric defect.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corep import Corep
from .errors import DomainError
from .groups import ParameterPoint, sample_neighborhood
from .linalg import frobenius_dist

_SEPARATION = 1e-3  # minimum parameter distance before positivity is tested
_POSITIVITY_FLOOR = 1e-12


def distance_d1(corep: Corep, p: ParameterPoint, q: ParameterPoint) -> float:
    """Frobenius distance of two subgroup matrices; alpha0 is ignored."""
    return frobenius_dist(
        corep.subgroup_matrix(p.alphas), corep.subgroup_matrix(q.alphas)
    )


def distance_d2(corep: Corep, p: ParameterPoint, q: ParameterPoint) -> float:
    """Frobenius distance of two coset matrices with the phase stripped."""
    return frobenius_dist(
        corep._coset_raw(0.0, p.alphas), corep._coset_raw(0.0, q.alphas)
    )


@dataclass(frozen=True)
class MetricAxiomReport:
    """Largest axiom violation plus demoted positivity (faithfulness) hits."""

    max_violation: float
    faithfulness_failures: int
    trials: int


def verify_metric_axioms(
    corep: Corep,
    trials: int = 100,
    seed: int = 3,
    epsilon: float = 1.0,
) -> MetricAxiomReport:
    """Check the metric conditions on random parameter triples.

    Symmetry, zero self-distance and the triangle inequality contribute to
    ``max_violation``; positivity is tested only for points separated by at
    least 1e-3 in parameter space and its failures are counted separately.
    """
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    raw = sample_neighborhood(corep.group, epsilon, 3 * trials, seed)
    points = [ParameterPoint(rng.uniform(0.0, 2.0 * np.pi), pt.alphas) for pt in raw]
    worst = 0.0
    failures = 0
    for i in range(trials):
        x, y, z = points[3 * i], points[3 * i + 1], points[3 * i + 2]
        for dist in (distance_d1, distance_d2):
            dxy, dyx = dist(corep, x, y), dist(corep, y, x)
            dyz, dxz = dist(corep, y, z), dist(corep, x, z)
            worst = max(
                worst,
                abs(dxy - dyx),              # symmetry
                dist(corep, x, x),           # self-distance
                max(0.0, dxz - dxy - dyz),   # triangle
            )
            separation = float(np.linalg.norm(x.alphas - y.alphas))
            if separation >= _SEPARATION and dxy <= _POSITIVITY_FLOOR:
                failures += 1
    return MetricAxiomReport(worst, failures, trials)


@dataclass(frozen=True)
class ConnectivityVerdict:
    """Rule-based connectedness classification of G + a0*G.

    ``evidence`` is the Frobenius distance of the coset limit point D(a0)
    from the unit matrix: the two convergence points coincide exactly when
    the group stays connected.
    """

    verdict: str  # "connected" | "notConnected"
    reason: str   # "typeA_N_equals_E" | "typeA_N_not_E" | "typeB"
    evidence: float

    def __post_init__(self):
        if self.verdict == "connected" and self.reason != "typeA_N_equals_E":
            raise DomainError("connected verdict requires the N = E branch")


def classify_connectedness(corep: Corep, tol: float = 1e-9) -> ConnectivityVerdict:
    """Classify from (type, N == E); the subgroup is assumed connected.

    Type-a extensions with N = E stay connected (the coset matrices deform
    continuously into the subgroup ones); type-a with N != E and every
    type-b extension are not connected.
    """
    evidence = frobenius_dist(corep.da0, np.eye(corep.block_dim))
    if corep.type == "b":
        return ConnectivityVerdict("notConnected", "typeB", evidence)
    n_defect = frobenius_dist(
        corep.a0.matrix_part, np.eye(corep.group.dim)
    )
    if n_defect <= tol:
        return ConnectivityVerdict("connected", "typeA_N_equals_E", evidence)
    return ConnectivityVerdict("notConnected", "typeA_N_not_E", evidence)
