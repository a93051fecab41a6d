"""Commutators, graded structure constants and Jacobi-relation checks.

Index conventions: subgroup directions carry labels 1..n, coset directions
carry labels {0, n+1, ..., 2n} with 0 the phase direction.  Coset axes of
the tensors are stored phase-first, so axis position k maps to label 0 for
k = 0 and n+k for k >= 1.

Grading targets: subgroup x subgroup and coset x coset commutators are
expanded over the subgroup generators X_1..X_n (the phase generator never
appears on the right of a coset x coset product); subgroup x coset
commutators are expanded over the full coset family including X'_0.  A
commutator that fails to lie in its prescribed span keeps the minimum-norm
projection and a nonzero residual instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError
from .linalg import (
    DEFAULT_RANK_TOL,
    as_matrix,
    family_rank,
    frobenius_norm,
    lstsq_expand,
)
from .tangent import TangentBasis

DEFAULT_CLOSURE_TOL = 1e-8
DEFAULT_JACOBI_TOL = 1e-6  # one contraction amplifies expansion error


def commutator(a, b) -> np.ndarray:
    """[A, B] = A @ B - B @ A for square same-shape matrices."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"commutator needs square matrices, got {a.shape}")
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a @ b - b @ a


@dataclass(frozen=True)
class StructureConstants:
    """Tensors c, d, e with per-commutator least-squares residuals.

    ``c[p, q, r]`` expands [X_p, X_q] over X_r (all subgroup, labels 1..n).
    ``d[ph, qh, r]`` expands [X'_p, X'_q] over X_r, with ph, qh coset axis
    positions.  ``e[p, qh, rh]`` expands [X_p, X'_q] over the coset family.
    c and d are exactly antisymmetric in their first two axes (computed for
    p < q and reflected); reversed-slot mixed products are read through
    commutator antisymmetry [X'_q, X_p] = -[X_p, X'_q].
    """

    c: np.ndarray
    d: np.ndarray
    e: np.ndarray
    residual_c: np.ndarray
    residual_d: np.ndarray
    residual_e: np.ndarray
    coset_labels: tuple
    tol: float
    closed: bool
    non_unique: bool
    field: str = "real"

    @property
    def n(self) -> int:
        return self.c.shape[0]

    @property
    def worst_residual(self) -> float:
        worst = 0.0
        for r in (self.residual_c, self.residual_d, self.residual_e):
            if r.size:
                worst = max(worst, float(np.max(r)))
        return worst


def _expand(target, span, field):
    if not span:
        return np.zeros(0), frobenius_norm(target)
    coeffs, residual = lstsq_expand(target, span, field)
    if field == "real":
        coeffs = coeffs.real.astype(float)
    return coeffs, residual


def compute_structure_constants(
    basis: TangentBasis, tol: float = DEFAULT_CLOSURE_TOL, field: str = "real"
) -> StructureConstants:
    """Expand every graded commutator class and collect the tensors.

    Coefficients are real by default, matching the real-vector-space setting;
    ``field="complex"`` is a diagnostic mode for probing complex spans.
    """
    subs = list(basis.subgroup_gens)
    coset = basis.coset_family()
    n, nc = len(subs), len(coset)
    labels = (0, *range(n + 1, 2 * n + 1)) if nc else ()
    dtype = float if field == "real" else complex

    c = np.zeros((n, n, n), dtype=dtype)
    res_c = np.zeros((n, n))
    for p in range(n):
        for q in range(p + 1, n):
            coeffs, resid = _expand(commutator(subs[p], subs[q]), subs, field)
            c[p, q] = coeffs
            c[q, p] = -coeffs
            res_c[p, q] = res_c[q, p] = resid

    d = np.zeros((nc, nc, n), dtype=dtype)
    res_d = np.zeros((nc, nc))
    for p in range(nc):
        for q in range(p + 1, nc):
            coeffs, resid = _expand(commutator(coset[p], coset[q]), subs, field)
            d[p, q] = coeffs
            d[q, p] = -coeffs
            res_d[p, q] = res_d[q, p] = resid

    e = np.zeros((n, nc, nc), dtype=dtype)
    res_e = np.zeros((n, nc))
    for p in range(n):
        for q in range(nc):
            coeffs, resid = _expand(commutator(subs[p], coset[q]), coset, field)
            e[p, q] = coeffs
            res_e[p, q] = resid

    residuals = [r for r in (res_c, res_d, res_e) if r.size]
    closed = all(float(np.max(r)) <= tol for r in residuals) if residuals else True
    non_unique = family_rank(subs, field, DEFAULT_RANK_TOL) < n or (
        nc > 0 and family_rank(coset, field, DEFAULT_RANK_TOL) < nc
    )
    return StructureConstants(
        c=c,
        d=d,
        e=e,
        residual_c=res_c,
        residual_d=res_d,
        residual_e=res_e,
        coset_labels=labels,
        tol=tol,
        closed=closed,
        non_unique=non_unique,
        field=field,
    )


@dataclass(frozen=True)
class JacobiReport:
    """Max-norm defects of the four contracted Jacobi identities.

    ``lie_defect`` is the classic identity on c alone; defects 1-3 are the
    mixed relations coupling c, d and e (double commutators with one, two
    and three coset slots respectively).  ``max_index_witness`` locates the
    worst violation as (relation, free indices in paper labels).
    ``advisory`` marks reports computed from a non-closed expansion.
    """

    lie_defect: float
    defect1: float
    defect2: float
    defect3: float
    max_index_witness: tuple
    advisory: bool = False


def _max_abs(arr) -> float:
    return float(np.max(np.abs(arr))) if arr.size else 0.0


def _witness(arr, sub_axes, labels):
    """argmax index tuple of |arr|, mapped to paper labels per axis kind."""
    if not arr.size:
        return ()
    idx = np.unravel_index(int(np.argmax(np.abs(arr))), arr.shape)
    out = []
    for pos, is_sub in zip(idx, sub_axes):
        out.append(int(pos) + 1 if is_sub else labels[pos])
    return tuple(out)


def jacobi_check(sc: StructureConstants) -> JacobiReport:
    """Evaluate the contracted Jacobi identities on the computed tensors."""
    c, d, e = sc.c, sc.d, sc.e
    labels = sc.coset_labels

    # [[X_p, X_q], X_r] + cyclic, all subgroup.
    lie = np.zeros(0)
    if c.size:
        lie = (
            np.einsum("pqs,srt->pqrt", c, c)
            + np.einsum("qrs,spt->pqrt", c, c)
            + np.einsum("rps,sqt->pqrt", c, c)
        )
    # [[X_p, X_q], X'_r]: c e - e e + e e, free (p, q subgroup; r, t coset).
    rel1 = np.zeros(0)
    if c.size and e.size:
        rel1 = (
            np.einsum("pqs,srt->pqrt", c, e)
            - np.einsum("qrs,pst->pqrt", e, e)
            + np.einsum("prs,qst->pqrt", e, e)
        )
    elif e.size:
        rel1 = -np.einsum("qrs,pst->pqrt", e, e) + np.einsum("prs,qst->pqrt", e, e)
    # [[X_p, X'_q], X'_r]: e d + d c - e d, free (p, t subgroup; q, r coset).
    rel2 = np.zeros(0)
    if d.size and e.size:
        rel2 = np.einsum("pqs,srt->pqrt", e, d) - np.einsum("prs,sqt->pqrt", e, d)
        if c.size:
            rel2 = rel2 + np.einsum("qrs,spt->pqrt", d, c)
    # [[X'_p, X'_q], X'_r] + cyclic, free indices all coset.
    rel3 = np.zeros(0)
    if d.size and e.size:
        rel3 = (
            np.einsum("pqs,srt->pqrt", d, e)
            + np.einsum("qrs,spt->pqrt", d, e)
            + np.einsum("rps,sqt->pqrt", d, e)
        )

    defects = (
        ("lie", lie, (True, True, True, True)),
        ("relation1", rel1, (True, True, False, False)),
        ("relation2", rel2, (True, False, False, True)),
        ("relation3", rel3, (False, False, False, False)),
    )
    worst_name, worst_val, worst_wit = "lie", 0.0, ()
    values = {}
    for name, arr, sub_axes in defects:
        val = _max_abs(arr)
        values[name] = val
        if val > worst_val:
            worst_name, worst_val = name, val
            worst_wit = _witness(arr, sub_axes, labels)
    return JacobiReport(
        lie_defect=values["lie"],
        defect1=values["relation1"],
        defect2=values["relation2"],
        defect3=values["relation3"],
        max_index_witness=(worst_name, *worst_wit),
        advisory=not sc.closed,
    )


@dataclass(frozen=True)
class GradingReport:
    closed: bool
    worst_residual: float
    central_x0: bool | None  # None when the basis has no coset part


def grading_report(basis: TangentBasis, sc: StructureConstants) -> GradingReport:
    """Closure verdict plus the centrality flag for the phase generator."""
    central = None
    if basis.has_coset:
        worst_comm = 0.0
        for x in list(basis.subgroup_gens) + list(basis.coset_gens):
            worst_comm = max(worst_comm, frobenius_norm(commutator(basis.phase_gen, x)))
        central = worst_comm <= sc.tol
    return GradingReport(
        closed=sc.closed, worst_residual=sc.worst_residual, central_x0=central
    )
