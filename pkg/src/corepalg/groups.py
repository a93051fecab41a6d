"""Parametrized matrix Lie groups: catalog, evaluation, neighborhood sampling.

A group is presented by ``n`` one-parameter generators ``A_1..A_n`` and is
evaluated in canonical coordinates of the second kind,

    D(alpha) = exp(alpha_1 A_1) @ ... @ exp(alpha_n A_n),

so that ``dD/dalpha_p`` at the origin equals ``A_p`` exactly.  Faithfulness
of the presentation is asserted by the caller, not verified; the declared
``n_params`` is taken as the number of essential parameters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ShapeError, SpecError, UnknownGroupError
from .linalg import as_matrix, mat_exp

_TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class ParameterPoint:
    """Coordinates (alpha0; alpha_1..alpha_n) with alpha0 kept in [0, 2*pi).

    ``alpha0`` is the extra coset phase; it is identified modulo 2*pi at
    construction so that equivalent phases produce identical matrices.
    """

    alpha0: float
    alphas: np.ndarray

    def __post_init__(self):
        if not np.isfinite(self.alpha0):
            raise DomainError("alpha0 is not finite")
        a0 = float(np.mod(self.alpha0, _TWO_PI))
        if a0 >= _TWO_PI:  # guard the half-open interval against rounding
            a0 = 0.0
        object.__setattr__(self, "alpha0", a0)
        arr = np.array(self.alphas, dtype=float).reshape(-1)
        if arr.size and not np.all(np.isfinite(arr)):
            raise DomainError("parameters contain non-finite values")
        object.__setattr__(self, "alphas", arr)


@dataclass(frozen=True)
class GroupPresentation:
    """A matrix Lie group presented by one-parameter generators."""

    name: str
    dim: int
    n_params: int
    generators: np.ndarray  # (n, d, d) complex

    def __post_init__(self):
        gens = np.asarray(self.generators, dtype=complex)
        if gens.size == 0 and self.n_params == 0:
            gens = np.zeros((0, self.dim, self.dim), dtype=complex)
        if gens.shape != (self.n_params, self.dim, self.dim):
            raise ShapeError(
                f"generators must have shape ({self.n_params}, {self.dim}, "
                f"{self.dim}), got {gens.shape}"
            )
        if gens.size and not np.all(np.isfinite(gens)):
            raise DomainError("generators contain non-finite entries")
        object.__setattr__(self, "generators", gens)

    def evaluate(self, alphas) -> np.ndarray:
        """D(alpha) as the ordered product of one-parameter exponentials."""
        alphas = np.asarray(alphas, dtype=float).reshape(-1)
        if alphas.size != self.n_params:
            raise ShapeError(
                f"{self.name} takes {self.n_params} parameters, got {alphas.size}"
            )
        out = np.eye(self.dim, dtype=complex)
        for a, gen in zip(alphas, self.generators):
            out = out @ mat_exp(a * gen)
        return out


def _so3_generators():
    l1 = [[0, 0, 0], [0, 0, -1], [0, 1, 0]]
    l2 = [[0, 0, 1], [0, 0, 0], [-1, 0, 0]]
    l3 = [[0, -1, 0], [1, 0, 0], [0, 0, 0]]
    return np.array([l1, l2, l3], dtype=complex)


PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

_CATALOG = {
    "U1": (1, 1, np.array([[[1j]]])),
    "SO2": (2, 1, np.array([[[0, -1], [1, 0]]], dtype=complex)),
    "SO3": (3, 3, _so3_generators()),
    "SU2": (2, 3, 0.5j * np.array(PAULI)),
    "SL2R": (
        2,
        3,
        np.array(
            [[[1, 0], [0, -1]], [[0, 1], [0, 0]], [[0, 0], [1, 0]]], dtype=complex
        ),
    ),
}


def catalog(name: str) -> GroupPresentation:
    """Look up a built-in group presentation by name."""
    try:
        dim, n, gens = _CATALOG[name]
    except KeyError:
        raise UnknownGroupError(
            f"unknown group {name!r}; catalog: {sorted(_CATALOG)}"
        ) from None
    return GroupPresentation(name, dim, n, gens)


def catalog_names() -> tuple:
    return tuple(sorted(_CATALOG))


def matrix_from_json(rows) -> np.ndarray:
    """Parse a matrix given as rows of [re, im] entry pairs."""
    try:
        arr = np.asarray(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise SpecError(f"malformed matrix: {exc}") from None
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise SpecError(
            f"matrix must be rows of [re, im] pairs, got array shape {arr.shape}"
        )
    return as_matrix(arr[..., 0] + 1j * arr[..., 1])


def group_from_spec(spec) -> GroupPresentation:
    """Build a presentation from a catalog name or an inline JSON object.

    Inline form: ``{"name": str, "d": int, "n": int, "generators": [matrix]}``
    with each matrix given row-major as ``[[re, im], ...]`` entry pairs.
    """
    if isinstance(spec, str):
        return catalog(spec)
    if not isinstance(spec, dict):
        raise SpecError(f"group spec must be a name or an object, got {type(spec)}")
    missing = {"name", "d", "n", "generators"} - set(spec)
    if missing:
        raise SpecError(f"group spec is missing fields: {sorted(missing)}")
    gens = [matrix_from_json(g) for g in spec["generators"]]
    d, n = int(spec["d"]), int(spec["n"])
    if len(gens) != n:
        raise SpecError(f"group spec declares n={n} but lists {len(gens)} generators")
    for g in gens:
        if g.shape != (d, d):
            raise SpecError(f"generator shape {g.shape} does not match d={d}")
    stack = np.array(gens) if gens else np.zeros((0, d, d), dtype=complex)
    return GroupPresentation(str(spec["name"]), d, n, stack)


def sample_neighborhood(
    group: GroupPresentation,
    epsilon: float,
    count: int,
    seed: int,
    alpha0: float | None = None,
) -> list:
    """Seeded uniform samples from the open parameter ball of radius epsilon.

    When ``alpha0`` is given, the fixed phase is attached to every point (the
    fixed-alpha0 slice of the coset neighborhood); otherwise points carry
    ``alpha0 = 0``.
    """
    if epsilon <= 0:
        raise DomainError(f"epsilon must be positive, got {epsilon}")
    if count <= 0:
        raise DomainError(f"count must be positive, got {count}")
    rng = np.random.default_rng(seed)
    n = group.n_params
    a0 = 0.0 if alpha0 is None else float(alpha0)
    points = []
    for _ in range(count):
        if n == 0:
            vec = np.zeros(0)
        else:
            direction = rng.standard_normal(n)
            norm = np.linalg.norm(direction)
            while norm == 0.0:
                direction = rng.standard_normal(n)
                norm = np.linalg.norm(direction)
            vec = direction / norm * (epsilon * rng.random() ** (1.0 / n))
        points.append(ParameterPoint(a0, vec))
    return points
