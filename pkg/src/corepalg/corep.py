"""Antilinear extensions G + a0*G and their corepresentation matrices.

The antilinear element acts as a matrix followed by coordinate complex
conjugation, so operator products obey

    (M1, linear) * (M2, f)      = (M1 @ M2, f)
    (M1, antilinear) * (M2, f)  = (M1 @ conj(M2), not f)

Subgroup elements get the matrices D(g); coset elements a0*g get
exp(i*alpha0) * D(a0) @ conj(D(g)), carrying the extra phase parameter
alpha0 that only coset matrices depend on.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CorepConstructionError,
    DomainError,
    NoIntertwinerError,
    ShapeError,
    SpecError,
)
from .groups import GroupPresentation, ParameterPoint, group_from_spec, matrix_from_json
from .linalg import as_matrix, frobenius_dist, frobenius_norm

_SIGNATURE_TOL = 1e-9
_INTERTWINE_TOL = 1e-8  # max equation defect accepted for a type-a build
_NULLSPACE_RTOL = 1e-9


@dataclass(frozen=True)
class AntilinearElement:
    """The element a0: matrix part N plus implicit conjugation.

    ``signature`` is the sign s in a0^2 = s*1, realized as N @ conj(N) = s*E.
    ``kind`` is "K" (pure conjugation; the N = E convention is available when
    the representation is self-conjugate) or "Theta" (general antiunitary).
    For kind "Theta" the adjoint action of Theta on the subgroup is supplied
    as a matrix T with D(g') = inv(T) @ D(g) @ T; None means the identity.
    """

    matrix_part: np.ndarray
    signature: int
    kind: str = "K"
    adjoint: np.ndarray | None = None

    def __post_init__(self):
        n = as_matrix(self.matrix_part)
        if n.shape[0] != n.shape[1]:
            raise ShapeError(f"N must be square, got shape {n.shape}")
        object.__setattr__(self, "matrix_part", n)
        if self.signature not in (1, -1):
            raise DomainError(f"signature must be +1 or -1, got {self.signature}")
        if self.kind not in ("K", "Theta"):
            raise DomainError(f"kind must be 'K' or 'Theta', got {self.kind!r}")
        if self.adjoint is not None:
            adj = as_matrix(self.adjoint)
            if adj.shape != n.shape:
                raise ShapeError(
                    f"adjoint shape {adj.shape} does not match N shape {n.shape}"
                )
            object.__setattr__(self, "adjoint", adj)

    def signature_defect(self) -> float:
        """Frobenius distance of N @ conj(N) from signature * E."""
        n = self.matrix_part
        eye = np.eye(n.shape[0], dtype=complex)
        return frobenius_dist(n @ np.conj(n), self.signature * eye)


@dataclass(frozen=True)
class IntertwinerResult:
    matrix: np.ndarray
    sign: int | None
    residual: float
    nullspace_dim: int


def _adjoint_map(adjoint: np.ndarray | None):
    """Return M -> D(g') for the supplied Theta adjoint (identity if None)."""
    if adjoint is None:
        return lambda m: m
    adj_inv = np.linalg.inv(adjoint)
    return lambda m: adj_inv @ m @ adjoint


def _equation_defect(n_mat, mats, mats_prime) -> float:
    return max(
        frobenius_norm(n_mat @ np.conj(mp) - m @ n_mat)
        for m, mp in zip(mats, mats_prime)
    )


def solve_intertwiner(
    group: GroupPresentation,
    a0_kind: str = "K",
    samples: int | None = None,
    seed: int = 7,
    adjoint=None,
) -> IntertwinerResult:
    """Solve N @ conj(D(g')) = D(g) @ N over sampled group elements.

    The homogeneous system is stacked over the samples and solved by SVD
    null space.  N is normalized so that N @ conj(N) = +/-E and its largest
    entry is real positive.  ``sign`` is +1 or -1 when N @ conj(N) is a
    scalar matrix, None otherwise (irrep-pair case).  For kind "K" the
    identity matrix is preferred whenever it already solves the system.
    """
    if a0_kind not in ("K", "Theta"):
        raise DomainError(f"a0 kind must be 'K' or 'Theta', got {a0_kind!r}")
    n_par = group.n_params
    if samples is None:
        samples = 4 * n_par + 4
    if samples < 2 * n_par + 2:
        raise DomainError(f"need at least {2 * n_par + 2} samples, got {samples}")
    if adjoint is not None:
        adjoint = as_matrix(adjoint)
    prime = _adjoint_map(adjoint)
    rng = np.random.default_rng(seed)
    mats = [group.evaluate(rng.uniform(-1.5, 1.5, n_par)) for _ in range(samples)]
    mats_prime = [prime(m) for m in mats]
    d = group.dim
    eye = np.eye(d, dtype=complex)

    # Row-major vec identities: vec(N@C) = kron(I, C.T) vec(N),
    # vec(M@N) = kron(M, I) vec(N).
    system = np.concatenate(
        [
            np.kron(eye, np.conj(mp).T) - np.kron(m, eye)
            for m, mp in zip(mats, mats_prime)
        ]
    )
    svals = np.linalg.svd(system, compute_uv=False)
    smax = svals[0] if svals.size else 0.0
    null_dim = int(np.count_nonzero(svals <= _NULLSPACE_RTOL * max(smax, 1.0)))

    defect_eye = _equation_defect(eye, mats, mats_prime)
    if defect_eye <= _SIGNATURE_TOL:
        return IntertwinerResult(eye, 1, defect_eye, null_dim)
    if null_dim == 0:
        raise NoIntertwinerError(
            f"no intertwiner for {group.name}+{a0_kind}: smallest singular "
            f"value {svals[-1]:.3e} of the intertwining system is nonzero"
        )
    _, _, vh = np.linalg.svd(system)
    n_mat = vh[-1].reshape(d, d)

    prod = n_mat @ np.conj(n_mat)
    lam = np.trace(prod) / d
    sign = None
    if abs(lam) > 1e-12 and frobenius_norm(prod - lam * eye) <= 1e-7 * frobenius_norm(prod):
        n_mat = n_mat / np.sqrt(abs(lam))
        sign = 1 if lam.real > 0 else -1
    # Fix the overall phase: largest entry (first in row-major order on ties)
    # becomes real positive.  N @ conj(N) is phase-invariant.
    flat = np.abs(n_mat).reshape(-1)
    idx = int(np.argmax(flat >= flat.max() * (1.0 - 1e-9)))
    pivot = n_mat.reshape(-1)[idx]
    n_mat = n_mat * (np.conj(pivot) / abs(pivot))
    residual = _equation_defect(n_mat, mats, mats_prime)
    return IntertwinerResult(n_mat, sign, residual, null_dim)


def intertwining_residual(
    group: GroupPresentation,
    a0: AntilinearElement,
    samples: int | None = None,
    seed: int = 23,
) -> float:
    """Max defect of N @ conj(D(g')) - D(g) @ N over sampled elements."""
    n_par = group.n_params
    if samples is None:
        samples = 4 * n_par + 4
    prime = _adjoint_map(a0.adjoint)
    rng = np.random.default_rng(seed)
    mats = [group.evaluate(rng.uniform(-1.5, 1.5, n_par)) for _ in range(samples)]
    return _equation_defect(a0.matrix_part, mats, [prime(m) for m in mats])


@dataclass(frozen=True)
class Corep:
    """A full corepresentation of G + a0*G.

    Type "a" keeps the block dimension m = d with D(g) = Delta(g) and
    D(a0) = N.  Type "b" doubles to m = 2d with
    D(g) = diag(Delta(g), partner(g)), partner(g) = inv(N) conj(Delta(g')) N,
    and D(a0) the off-diagonal block matrix [[0, s*E], [E, 0]].
    """

    group: GroupPresentation
    a0: AntilinearElement
    type: str
    block_dim: int
    da0: np.ndarray

    def conjugate_partner(self, m) -> np.ndarray:
        """inv(N) @ conj(D(g')) @ N evaluated on a subgroup matrix."""
        n = self.a0.matrix_part
        prime = _adjoint_map(self.a0.adjoint)
        return np.linalg.inv(n) @ np.conj(prime(as_matrix(m))) @ n

    def lift(self, m) -> np.ndarray:
        """Corepresentation matrix of the subgroup element with matrix m."""
        m = as_matrix(m)
        if self.type == "a":
            return m
        d = self.group.dim
        out = np.zeros((2 * d, 2 * d), dtype=complex)
        out[:d, :d] = m
        out[d:, d:] = self.conjugate_partner(m)
        return out

    def lift_tangent(self, a) -> np.ndarray:
        """Derivative of the lift at the identity along tangent matrix a."""
        a = as_matrix(a)
        if self.type == "a":
            return a
        d = self.group.dim
        n = self.a0.matrix_part
        prime = _adjoint_map(self.a0.adjoint)
        out = np.zeros((2 * d, 2 * d), dtype=complex)
        out[:d, :d] = a
        out[d:, d:] = np.linalg.inv(n) @ np.conj(prime(a)) @ n
        return out

    def subgroup_matrix(self, alphas) -> np.ndarray:
        """D(g(alpha)); no alpha0 argument exists on the subgroup path."""
        return self.lift(self.group.evaluate(alphas))

    def coset_matrix(self, point: ParameterPoint) -> np.ndarray:
        """exp(i*alpha0) * D(a0) @ conj(D(g(alpha)))."""
        return self._coset_raw(point.alpha0, point.alphas)

    def _coset_raw(self, alpha0: float, alphas) -> np.ndarray:
        return np.exp(1j * alpha0) * (self.da0 @ np.conj(self.subgroup_matrix(alphas)))


def build_corep(
    group: GroupPresentation, a0: AntilinearElement, corep_type: str
) -> Corep:
    """Assemble the corepresentation, validating the a0 data.

    Preconditions: N @ conj(N) = signature * E within 1e-9 for either type;
    for type "a" the intertwining equation must additionally hold within
    1e-8 (checked on sampled elements).
    """
    d = group.dim
    n = a0.matrix_part
    if n.shape != (d, d):
        raise ShapeError(f"N has shape {n.shape}, expected ({d}, {d})")
    sig_defect = a0.signature_defect()
    if sig_defect > _SIGNATURE_TOL:
        raise CorepConstructionError(
            f"signature violation: |N conj(N) - ({a0.signature:+d})E| = "
            f"{sig_defect:.3e} exceeds {_SIGNATURE_TOL:.0e}"
        )
    if corep_type == "a":
        resid = intertwining_residual(group, a0)
        if resid > _INTERTWINE_TOL:
            raise CorepConstructionError(
                f"type-a build rejected: intertwining residual {resid:.3e} "
                f"exceeds {_INTERTWINE_TOL:.0e}"
            )
        return Corep(group, a0, "a", d, n.copy())
    if corep_type == "b":
        eye = np.eye(d, dtype=complex)
        da0 = np.zeros((2 * d, 2 * d), dtype=complex)
        da0[:d, d:] = a0.signature * eye
        da0[d:, :d] = eye
        check = frobenius_dist(da0 @ np.conj(da0), a0.signature * np.eye(2 * d))
        if check > _SIGNATURE_TOL:  # cannot happen for s = +/-1; guards edits
            raise CorepConstructionError(f"Da0 conj(Da0) defect {check:.3e}")
        return Corep(group, a0, "b", 2 * d, da0)
    raise DomainError(f"corep type must be 'a' or 'b', got {corep_type!r}")


def corep_product(x, y):
    """Multiply two (matrix, antilinear_flag) operator pairs."""
    m1, f1 = x
    m2, f2 = y
    m1, m2 = as_matrix(m1), as_matrix(m2)
    if m1.shape[1] != m2.shape[0]:
        raise ShapeError(f"cannot multiply shapes {m1.shape} and {m2.shape}")
    prod = m1 @ (np.conj(m2) if f1 else m2)
    return prod, bool(f1) != bool(f2)


def verify_corep_law(corep: Corep, trials: int = 100, seed: int = 11) -> float:
    """Max Frobenius defect of the four product classes on random samples.

    Checks g*h, a*g, g*a and a*b against the corepresentation matrices of
    the product elements, where the adjoint image of g under a0 is read off
    from conj(inv(Da0) D(g) Da0) (equal to g itself for type-a builds, where
    the intertwining equation makes a0 commute with the subgroup).
    """
    if trials < 1:
        raise DomainError(f"trials must be >= 1, got {trials}")
    rng = np.random.default_rng(seed)
    n_par = corep.group.n_params
    d = corep.group.dim
    s = corep.a0.signature
    da0 = corep.da0
    da0_inv = np.linalg.inv(da0)
    worst = 0.0
    for _ in range(trials):
        m1 = corep.group.evaluate(rng.uniform(-1.2, 1.2, n_par))
        m2 = corep.group.evaluate(rng.uniform(-1.2, 1.2, n_par))
        t1, t2 = rng.uniform(0.0, 2.0 * np.pi, 2)
        d1, d2 = corep.lift(m1), corep.lift(m2)
        a1 = np.exp(1j * t1) * (da0 @ np.conj(d1))
        a2 = np.exp(1j * t2) * (da0 @ np.conj(d2))
        lift_12 = corep.lift(m1 @ m2)
        if corep.type == "a":
            sigma1 = m1
        else:
            sigma1 = np.conj(da0_inv @ d1 @ da0)[:d, :d]
        lift_s2 = corep.lift(sigma1 @ m2)

        gg, _ = corep_product((d1, False), (d2, False))
        ag, _ = corep_product((a1, True), (d2, False))
        ga, _ = corep_product((d1, False), (a2, True))
        aa, _ = corep_product((a1, True), (a2, True))
        worst = max(
            worst,
            frobenius_dist(gg, lift_12),
            frobenius_dist(ag, np.exp(1j * t1) * (da0 @ np.conj(lift_12))),
            frobenius_dist(ga, np.exp(1j * t2) * (da0 @ np.conj(lift_s2))),
            frobenius_dist(aa, np.exp(1j * (t1 - t2)) * s * lift_s2),
        )
    return worst


def resolve_extension(spec: dict, seed: int = 7, type_override: str | None = None):
    """Resolve an extension spec into (group, a0, corep_type, intertwiner).

    Spec form: ``{"group": name|object, "a0": {"kind", "N"?, "signature"?,
    "adjoint"?} | null, "type": "a"|"b"|"auto"}``.  With ``a0: null`` the
    remaining fields are ignored and a plain Lie pipeline is requested
    (returns (group, None, None, None)).  Type "auto" solves the
    intertwining equation when N is absent and picks the type from the sign
    of N @ conj(N).
    """
    if "group" not in spec:
        raise SpecError("extension spec is missing the 'group' field")
    group = group_from_spec(spec["group"])
    a0_spec = spec.get("a0")
    if a0_spec is None:
        return group, None, None, None
    if not isinstance(a0_spec, dict):
        raise SpecError("'a0' must be an object or null")
    kind = a0_spec.get("kind", "K")
    if kind not in ("K", "Theta"):
        raise SpecError(f"a0.kind must be 'K' or 'Theta', got {kind!r}")
    adjoint = None
    if a0_spec.get("adjoint") is not None:
        adjoint = matrix_from_json(a0_spec["adjoint"])
    requested = type_override or spec.get("type", "auto")
    if requested not in ("a", "b", "auto"):
        raise SpecError(f"type must be 'a', 'b' or 'auto', got {requested!r}")

    intertwiner = None
    if a0_spec.get("N") is not None:
        n_mat = matrix_from_json(a0_spec["N"])
    else:
        try:
            intertwiner = solve_intertwiner(group, kind, seed=seed, adjoint=adjoint)
        except NoIntertwinerError as exc:
            raise SpecError(
                f"{exc}; supply a0.N and type 'b' explicitly to build the "
                "doubled corepresentation"
            ) from exc
        if intertwiner.sign is None:
            raise SpecError(
                "N conj(N) is not a scalar matrix (irrep-pair case, not "
                "supported); supply a0.N explicitly"
            )
        n_mat = intertwiner.matrix

    prod = n_mat @ np.conj(n_mat)
    dim = n_mat.shape[0]
    lam = np.trace(prod) / dim
    scalar_defect = frobenius_norm(prod - lam * np.eye(dim))
    declared = a0_spec.get("signature")
    if declared is not None:
        sig = int(declared)
        defect = frobenius_dist(prod, sig * np.eye(dim))
        if defect > _SIGNATURE_TOL:
            raise SpecError(
                f"signature violation: |N conj(N) - ({sig:+d})E| = {defect:.3e}"
            )
    else:
        if scalar_defect > _SIGNATURE_TOL or min(abs(lam - 1), abs(lam + 1)) > _SIGNATURE_TOL:
            raise SpecError(
                f"signature violation: N conj(N) is not +/-E "
                f"(scalar part {lam:.6g}, off-scalar defect {scalar_defect:.3e})"
            )
        sig = 1 if lam.real > 0 else -1

    a0 = AntilinearElement(n_mat, sig, kind, adjoint)
    corep_type = requested if requested != "auto" else ("a" if sig > 0 else "b")
    return group, a0, corep_type, intertwiner
