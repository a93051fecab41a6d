"""Tangent-basis extraction at the two convergence points.

Subgroup generators X_1..X_n come from differentiating D(g) at the origin;
coset generators X'_0 (the phase direction) and X'_{n+1}..X'_{2n} come from
differentiating exp(i*alpha0) D(a0 g) at alpha0 = alpha = 0.  Both an
analytic path (exact derivatives of the construction) and a central
finite-difference path with one Richardson extrapolation level are provided;
their agreement is the guard on the adopted multiplication law.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .corep import Corep
from .errors import DomainError
from .groups import GroupPresentation
from .linalg import DEFAULT_RANK_TOL, family_rank

DEFAULT_FD_STEP = 1e-5
_MAX_FD_STEP = 0.5

#: External labels of the coset directions are {0, n+1, ..., 2n}; internally
#: they are stored phase-first, then by subgroup direction 1..n.


@dataclass(frozen=True)
class TangentBasis:
    """Extracted basis matrices, all of the corep block dimension m."""

    subgroup_gens: tuple
    coset_gens: tuple
    phase_gen: np.ndarray | None
    method: str  # "analytic" | "finiteDifference"
    fd_step: float = 0.0

    @property
    def n(self) -> int:
        return len(self.subgroup_gens)

    @property
    def has_coset(self) -> bool:
        return self.phase_gen is not None

    def coset_family(self) -> list:
        """Phase generator followed by the directional coset generators."""
        if not self.has_coset:
            return []
        return [self.phase_gen, *self.coset_gens]


def _check_step(h: float) -> None:
    if not (0.0 < h <= _MAX_FD_STEP):
        raise DomainError(f"finite-difference step must be in (0, {_MAX_FD_STEP}], got {h}")


def _check_method(method: str) -> None:
    if method not in ("analytic", "fd"):
        raise DomainError(f"method must be 'analytic' or 'fd', got {method!r}")


def richardson_derivative(fn, h: float) -> np.ndarray:
    """One Richardson level on the O(h^2) central difference of fn at 0."""
    def central(step):
        return (fn(step) - fn(-step)) / (2.0 * step)

    return (4.0 * central(h / 2.0) - central(h)) / 3.0


def _analytic_subgroup(rep) -> list:
    if isinstance(rep, GroupPresentation):
        return [gen.copy() for gen in rep.generators]
    return [rep.lift_tangent(gen) for gen in rep.group.generators]


def _subgroup_fn(rep):
    if isinstance(rep, GroupPresentation):
        return rep.evaluate
    return rep.subgroup_matrix


def extract_subgroup_generators(rep, method: str = "analytic", h: float = DEFAULT_FD_STEP):
    """X_p = dD/dalpha_p at the origin, for a Corep or bare group.

    The analytic path returns the presentation generators (block-doubled for
    type-b coreps); the finite-difference path differentiates the evaluated
    matrices directly.
    """
    _check_method(method)
    if method == "analytic":
        return _analytic_subgroup(rep)
    _check_step(h)
    n = rep.n_params if isinstance(rep, GroupPresentation) else rep.group.n_params
    fn = _subgroup_fn(rep)
    gens = []
    for p in range(n):
        unit = np.zeros(n)
        unit[p] = 1.0
        gens.append(richardson_derivative(lambda t: fn(t * unit), h))
    return gens


def extract_coset_generators(corep: Corep, method: str = "analytic", h: float = DEFAULT_FD_STEP):
    """(X'_0, [X'_{n+1}..X'_{2n}]) from the coset matrices.

    Analytically X'_0 = i*D(a0) and X'_q = D(a0) @ conj(X_q); the
    finite-difference path differentiates exp(i*alpha0) D(a0) conj(D(g))
    in alpha0 and in each subgroup direction.
    """
    _check_method(method)
    n = corep.group.n_params
    if method == "analytic":
        phase = 1j * corep.da0
        coset = [corep.da0 @ np.conj(x) for x in _analytic_subgroup(corep)]
        return phase, coset
    _check_step(h)
    zero = np.zeros(n)
    phase = richardson_derivative(lambda t: corep._coset_raw(t, zero), h)
    coset = []
    for q in range(n):
        unit = np.zeros(n)
        unit[q] = 1.0
        coset.append(richardson_derivative(lambda t: corep._coset_raw(0.0, t * unit), h))
    return phase, coset


def extract_tangent_basis(rep, method: str = "analytic", h: float = DEFAULT_FD_STEP) -> TangentBasis:
    """Full basis for a Corep, or the subgroup-only basis for a bare group."""
    _check_method(method)
    subs = extract_subgroup_generators(rep, method, h)
    if isinstance(rep, GroupPresentation):
        phase, coset = None, []
    else:
        phase, coset = extract_coset_generators(rep, method, h)
    return TangentBasis(
        subgroup_gens=tuple(subs),
        coset_gens=tuple(coset),
        phase_gen=phase,
        method="analytic" if method == "analytic" else "finiteDifference",
        fd_step=0.0 if method == "analytic" else h,
    )


def fd_agreement(rep, h: float = DEFAULT_FD_STEP) -> float:
    """Max entrywise deviation between analytic and finite-difference bases."""
    ana = extract_tangent_basis(rep, "analytic")
    num = extract_tangent_basis(rep, "fd", h)
    pairs = list(zip(ana.subgroup_gens, num.subgroup_gens))
    pairs += list(zip(ana.coset_gens, num.coset_gens))
    if ana.phase_gen is not None:
        pairs.append((ana.phase_gen, num.phase_gen))
    if not pairs:
        return 0.0
    return max(float(np.max(np.abs(a - b))) for a, b in pairs)


@dataclass(frozen=True)
class SpanReport:
    """Rank structure of the extracted basis and the matched span pattern.

    ``corollary_tag`` is "2.1" when every directional coset generator is
    real-dependent on the subgroup generators and the union has rank n+1,
    "2.2" when the union has real rank 2n+1, "lie" for a coset-free basis,
    and "irregular" otherwise.
    """

    real_rank_subgroup: int
    real_rank_coset: int
    real_rank_union: int
    complex_rank_subgroup_phase: int
    corollary_tag: str
    coset_dependence: tuple

    @property
    def union_expected_21(self) -> int:
        return self.real_rank_subgroup + 1


def span_report(basis: TangentBasis, tol: float = DEFAULT_RANK_TOL) -> SpanReport:
    """Real/complex rank diagnostics for the extracted basis."""
    subs = list(basis.subgroup_gens)
    coset = basis.coset_family()
    n = len(subs)
    rank_sub = family_rank(subs, "real", tol)
    rank_coset = family_rank(coset, "real", tol)
    rank_union = family_rank(subs + coset, "real", tol)
    phase_family = subs + ([basis.phase_gen] if basis.has_coset else [])
    rank_complex = family_rank(phase_family, "complex", tol)
    dependence = tuple(
        family_rank(subs + [x], "real", tol) == rank_sub for x in basis.coset_gens
    )
    if not coset:
        tag = "lie"
    elif all(dependence) and rank_union == n + 1:
        tag = "2.1"
    elif rank_union == 2 * n + 1:
        tag = "2.2"
    else:
        tag = "irregular"
    return SpanReport(
        real_rank_subgroup=rank_sub,
        real_rank_coset=rank_coset,
        real_rank_union=rank_union,
        complex_rank_subgroup_phase=rank_complex,
        corollary_tag=tag,
        coset_dependence=dependence,
    )
