"""Moore-Penrose inverse, orthogonal projectors, matrix index, and
rank-based range / null-space predicates."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ShapeError
from .matrix import Tolerances, as_matrix, rank, resolve_tol, sigma_max


@dataclass(frozen=True)
class IndexReport:
    """Result of the index computation for a square matrix.

    index: smallest k >= 0 with rank(B^k) = rank(B^(k+1)).
    rank_sequence: rank(B^j) for j = 0 .. index + 1.
    """

    index: int
    rank_sequence: tuple[int, ...] = field(default_factory=tuple)


def pinv(a, tol: Tolerances | None = None, scale: float | None = None,
         fixed_rank: int | None = None) -> np.ndarray:
    """Moore-Penrose inverse via SVD with a relative singular-value cutoff.

    `scale` optionally anchors the cutoff to a parent matrix's largest
    singular value when `a` is a derived quantity (power, extracted block).
    `fixed_rank` bypasses the cutoff and keeps exactly that many singular
    values; callers use it when the rank is known from structure and the
    trailing singular values of `a` are pure rounding noise.
    """
    a = as_matrix(a)
    tol = resolve_tol(tol)
    m, n = a.shape
    if a.size == 0:
        return np.zeros((n, m), dtype=np.complex128)
    u, s, vh = np.linalg.svd(a)
    if fixed_rank is None:
        ref = max(float(s[0]) if s.size else 0.0, scale or 0.0)
        cutoff = tol.rank_cutoff(a.shape, ref)
        r = int(np.count_nonzero(s > cutoff))
    else:
        r = min(int(fixed_rank), int(np.count_nonzero(s > 0.0)))
    if r == 0:
        return np.zeros((n, m), dtype=np.complex128)
    return (vh[:r].conj().T / s[:r]) @ u[:, :r].conj().T


def proj_range(b, tol: Tolerances | None = None, scale: float | None = None,
               fixed_rank: int | None = None) -> np.ndarray:
    """Orthogonal projector P_B = B B^+ onto the range of B."""
    b = as_matrix(b)
    return b @ pinv(b, tol, scale, fixed_rank=fixed_rank)


def proj_corange(b, tol: Tolerances | None = None, scale: float | None = None,
                 fixed_rank: int | None = None) -> np.ndarray:
    """Orthogonal projector Q_B = B^+ B onto the range of B*."""
    b = as_matrix(b)
    return pinv(b, tol, scale, fixed_rank=fixed_rank) @ b


def power(b, q: int) -> np.ndarray:
    """B^q for a square B, with B^0 = I."""
    b = as_matrix(b)
    if b.shape[0] != b.shape[1]:
        raise ShapeError(f"power requires a square matrix, got {b.shape[0]}x{b.shape[1]}")
    if not isinstance(q, (int, np.integer)) or q < 0:
        raise DomainError(f"exponent must be a nonnegative integer, got {q!r}")
    return np.linalg.matrix_power(b, int(q))


def matrix_index(b, tol: Tolerances | None = None) -> IndexReport:
    """Index of a square matrix: rank stabilization point of its powers.

    Powers are computed iteratively; the rank of B^j is taken relative to
    sigma_max(B)^j. The search is capped at n (the index never exceeds n).
    """
    b = as_matrix(b)
    n = b.shape[0]
    if n != b.shape[1]:
        raise ShapeError(f"matrix_index requires a square matrix, got {b.shape[0]}x{b.shape[1]}")
    tol = resolve_tol(tol)
    s1 = sigma_max(b)
    ranks = [n]
    bj = np.eye(n, dtype=np.complex128)
    for j in range(1, n + 2):
        bj = bj @ b
        ranks.append(rank(bj, tol, scale=s1 ** j))
        if ranks[-1] == ranks[-2]:
            return IndexReport(index=j - 1, rank_sequence=tuple(ranks))
    return IndexReport(index=n, rank_sequence=tuple(ranks))


def range_contained(x, y, tol: Tolerances | None = None,
                    scale: float | None = None) -> bool:
    """True iff R(x) is contained in R(y), decided as rank([y | x]) = rank(y).

    `scale` anchors the rank cutoff when x or y is a derived quantity whose
    entries may be pure rounding noise.
    """
    x = as_matrix(x)
    y = as_matrix(y)
    if x.shape[0] != y.shape[0]:
        raise ShapeError(f"range_contained needs equal row counts, got {x.shape[0]} and {y.shape[0]}")
    stacked = np.hstack([y, x])
    ref = max(sigma_max(stacked), scale or 0.0)
    return rank(stacked, tol, scale=ref) == rank(y, tol, scale=ref)


def nullspace_contained(y, x, tol: Tolerances | None = None,
                        scale: float | None = None) -> bool:
    """True iff N(y) is contained in N(x), decided as rank(rows(y, x)) = rank(y).

    `scale` anchors the rank cutoff as in `range_contained`.
    """
    x = as_matrix(x)
    y = as_matrix(y)
    if x.shape[1] != y.shape[1]:
        raise ShapeError(f"nullspace_contained needs equal column counts, got {y.shape[1]} and {x.shape[1]}")
    stacked = np.vstack([y, x])
    ref = max(sigma_max(stacked), scale or 0.0)
    return rank(stacked, tol, scale=ref) == rank(y, tol, scale=ref)


__all__ = [
    "IndexReport",
    "pinv",
    "proj_range",
    "proj_corange",
    "power",
    "matrix_index",
    "range_contained",
    "nullspace_contained",
]
