"""Dense complex matrices, the tolerance model, and basic factorizations.

All matrices are 2-D numpy arrays of complex128. Every rank decision in the
library goes through the cutoff rule defined here: a singular value counts
toward the rank iff it exceeds rank_rtol times a reference scale. The
reference scale is the matrix's own largest singular value by default, but
callers working with derived quantities (matrix powers, blocks extracted
from a decomposition) can anchor the cutoff to the parent matrix's scale
via the `scale` argument; noise floors are set by the data a matrix was
computed from, not by the matrix itself.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import DomainError, NumericError, ShapeError

_EPS = float(np.finfo(np.float64).eps)

DEFAULT_RESIDUAL_ATOL = 1e-10


@dataclass(frozen=True)
class Tolerances:
    """Thresholds governing floating-point rank and equality decisions.

    rank_rtol: relative singular-value cutoff. None selects the per-matrix
        default max(rows, cols) * machine epsilon.
    residual_atol: absolute threshold for equation residuals, applied as
        ``residual <= residual_atol * max(1, scale)``.
    """

    rank_rtol: float | None = None
    residual_atol: float = DEFAULT_RESIDUAL_ATOL

    def __post_init__(self):
        if self.rank_rtol is not None:
            if self.rank_rtol < 0:
                raise DomainError("rank_rtol must be nonnegative")
            if 0 < self.rank_rtol < _EPS:
                raise DomainError("nonzero rank_rtol must be at least machine epsilon")
        if self.residual_atol < 0:
            raise DomainError("residual_atol must be nonnegative")

    def effective_rtol(self, shape: tuple[int, int]) -> float:
        if self.rank_rtol is not None:
            return self.rank_rtol
        return max(shape) * _EPS if min(shape) > 0 else _EPS

    def rank_cutoff(self, shape: tuple[int, int], ref: float) -> float:
        """Absolute singular-value cutoff for a matrix of the given shape."""
        return self.effective_rtol(shape) * ref

    def close(self, residual: float, scale: float = 1.0) -> bool:
        """True iff a residual is negligible relative to max(1, scale)."""
        return residual <= self.residual_atol * max(1.0, scale)


DEFAULT_TOL = Tolerances()


def resolve_tol(tol: Tolerances | None) -> Tolerances:
    return DEFAULT_TOL if tol is None else tol


class SVDResult(NamedTuple):
    """Full SVD: a = u @ diag(singular_values) @ v.conj().T (rectangular diag)."""

    u: np.ndarray
    singular_values: np.ndarray
    v: np.ndarray


class QRPivoted(NamedTuple):
    """Column-pivoted QR: a[:, perm] = q @ r with |diag(r)| nonincreasing."""

    q: np.ndarray
    r: np.ndarray
    perm: np.ndarray


def as_matrix(a) -> np.ndarray:
    """Validate and return a as a 2-D complex128 array with finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ShapeError(f"expected a 2-D matrix, got ndim={m.ndim}")
    if m.size and not np.all(np.isfinite(m)):
        raise DomainError("matrix entries must be finite")
    return m


def multiply(a, b) -> np.ndarray:
    """Matrix product with explicit conformability checking."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape[0]}x{a.shape[1]} by {b.shape[0]}x{b.shape[1]}")
    return a @ b


def conjugate_transpose(a) -> np.ndarray:
    return as_matrix(a).conj().T


def frobenius(a) -> float:
    return float(np.linalg.norm(a))


def sigma_max(a) -> float:
    """Largest singular value; 0 for an empty matrix."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    try:
        s = np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"SVD failed: {exc}") from exc
    return float(s[0]) if s.size else 0.0


def rank(a, tol: Tolerances | None = None, scale: float | None = None) -> int:
    """Numerical rank: singular values above rank_rtol * max(sigma_max, scale)."""
    a = as_matrix(a)
    tol = resolve_tol(tol)
    if a.size == 0:
        return 0
    try:
        s = np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"SVD failed: {exc}") from exc
    if s.size == 0:
        return 0
    ref = max(float(s[0]), scale or 0.0)
    return int(np.count_nonzero(s > tol.rank_cutoff(a.shape, ref)))


def svd(a) -> SVDResult:
    """Full singular value decomposition of a."""
    a = as_matrix(a)
    if a.size == 0:
        m, n = a.shape
        return SVDResult(np.eye(m, dtype=np.complex128), np.zeros(0), np.eye(n, dtype=np.complex128))
    try:
        u, s, vh = np.linalg.svd(a, full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"SVD did not converge: {exc}") from exc
    return SVDResult(u, s, vh.conj().T)


def qr_column_pivoted(a) -> QRPivoted:
    """QR with column pivoting; q is a full m x m unitary."""
    a = as_matrix(a)
    m, n = a.shape
    if a.size == 0:
        return QRPivoted(np.eye(m, dtype=np.complex128), np.zeros((m, n), dtype=np.complex128),
                         np.arange(n))
    q, r, perm = scipy.linalg.qr(a, pivoting=True)
    return QRPivoted(np.asarray(q, dtype=np.complex128), np.asarray(r, dtype=np.complex128), perm)
