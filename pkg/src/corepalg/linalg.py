"""Dense complex-matrix kernel: exponential, Frobenius geometry, ranks and
least-squares expansions over R or C.

Matrices are plain ``numpy.ndarray`` values (complex128) and are treated as
immutable.  The real vectorization order is fixed as [Re entries row-major,
then Im entries row-major] so that expansion coefficients and their signs are
reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ShapeError

#: Relative singular-value cutoff for numerical ranks; two orders above the
#: double-precision noise accumulated by exponential/product chains.
DEFAULT_RANK_TOL = 1e-9

_EXP_THETA = 0.5
_EXP_ORDER = 18  # series remainder < 1e-22 once the norm is scaled below theta


def as_matrix(a) -> np.ndarray:
    """Coerce to a finite 2-d complex matrix."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ShapeError(f"expected a matrix, got array of shape {m.shape}")
    if m.size and not np.all(np.isfinite(m)):
        raise DomainError("matrix contains non-finite entries")
    return m


def frobenius_norm(a) -> float:
    return float(np.linalg.norm(np.asarray(a, dtype=complex), "fro"))


def frobenius_dist(a, b) -> float:
    """+sqrt(sum_jk |a_jk - b_jk|^2) for two same-shape matrices."""
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b, "fro"))


def mat_exp(a) -> np.ndarray:
    """Matrix exponential via scaling-and-squaring around a Taylor core.

    The argument is scaled below Frobenius norm 0.5, the series is summed by
    Horner's scheme to order 18, and the result is squared back up.
    """
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"mat_exp needs a square matrix, got shape {a.shape}")
    if a.shape[0] == 0:
        return np.zeros((0, 0), dtype=complex)
    norm = frobenius_norm(a)
    squarings = 0
    if norm > _EXP_THETA:
        squarings = min(64, int(np.ceil(np.log2(norm / _EXP_THETA))))
    b = a / (2.0**squarings)
    eye = np.eye(a.shape[0], dtype=complex)
    out = eye
    for k in range(_EXP_ORDER, 0, -1):
        out = eye + (b @ out) / k
    for _ in range(squarings):
        out = out @ out
    return out


def real_vec(a) -> np.ndarray:
    """Flatten into the fixed real order [Re row-major, Im row-major]."""
    flat = np.asarray(a, dtype=complex).reshape(-1)
    return np.concatenate([flat.real, flat.imag])


def _vec_stack(mats, field: str) -> np.ndarray:
    if field == "real":
        return np.array([real_vec(m) for m in mats])
    if field == "complex":
        return np.array([np.asarray(m, dtype=complex).reshape(-1) for m in mats])
    raise DomainError(f"field must be 'real' or 'complex', got {field!r}")


def _require_same_shape(mats) -> None:
    shape = mats[0].shape
    for m in mats[1:]:
        if m.shape != shape:
            raise ShapeError(f"family mixes shapes {shape} and {m.shape}")


def family_rank(vectors, field: str = "real", tol: float = DEFAULT_RANK_TOL) -> int:
    """Numerical rank of a family of same-shape matrices over R or C.

    Counts singular values above ``tol`` times the largest one.  Over the
    reals each matrix is split into its real and imaginary parts first.  An
    empty family has rank 0 by convention.
    """
    mats = [as_matrix(v) for v in vectors]
    if not mats:
        return 0
    _require_same_shape(mats)
    svals = np.linalg.svd(_vec_stack(mats, field), compute_uv=False)
    if svals.size == 0 or svals[0] == 0.0:
        return 0
    return int(np.count_nonzero(svals > tol * svals[0]))


def lstsq_expand(target, basis, field: str = "real"):
    """Least-squares expansion of ``target`` over a matrix ``basis``.

    Returns ``(coefficients, residual)`` where the residual is the Frobenius
    norm of ``target - sum_i coeff_i basis_i``, minimal over the chosen
    coefficient field.  A rank-deficient basis yields the minimum-norm
    solution.
    """
    mats = [as_matrix(b) for b in basis]
    if not mats:
        raise DomainError("expansion basis is empty")
    target = as_matrix(target)
    _require_same_shape(mats + [target])
    a = _vec_stack(mats, field).T
    rhs = real_vec(target) if field == "real" else target.reshape(-1)
    coeffs, *_ = np.linalg.lstsq(a, rhs, rcond=None)
    recon = sum(c * m for c, m in zip(coeffs, mats))
    return coeffs, frobenius_dist(target, recon)


@dataclass(frozen=True)
class RealSpan:
    """A family of same-shape matrices together with its ranks over R and C."""

    vectors: tuple
    real_rank: int
    complex_rank: int
    tolerance: float

    @classmethod
    def from_vectors(cls, vectors, tol: float = DEFAULT_RANK_TOL) -> "RealSpan":
        mats = tuple(as_matrix(v) for v in vectors)
        return cls(
            vectors=mats,
            real_rank=family_rank(mats, "real", tol),
            complex_rank=family_rank(mats, "complex", tol),
            tolerance=tol,
        )
