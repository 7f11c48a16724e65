"""Generalized inverses of square matrices: Drazin, group, core, core-EP,
BT, and the q-BT inverse (A P_{A^q})^+.

The q-BT inverse interpolates the family: q = 0 gives the Moore-Penrose
inverse, q = 1 the BT inverse, and any q >= Ind(A) the core-EP inverse.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, ShapeError
from .matrix import Tolerances, as_matrix, frobenius, rank, resolve_tol, sigma_max
from .projectors import (
    matrix_index,
    nullspace_contained,
    pinv,
    power,
    proj_range,
    range_contained,
)


def _require_square(a, name: str) -> np.ndarray:
    a = as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise ShapeError(f"{name} requires a square matrix, got {a.shape[0]}x{a.shape[1]}")
    return a


def check_q(q) -> int:
    """Validate a q-BT exponent: any nonnegative integer."""
    if not isinstance(q, (int, np.integer)) or q < 0:
        raise DomainError(f"q must be a nonnegative integer, got {q!r}")
    return int(q)


def drazin(a, tol: Tolerances | None = None) -> np.ndarray:
    """Drazin inverse A^d = A^k (A^(2k+1))^+ A^k with k = Ind(A)."""
    a = _require_square(a, "drazin")
    tol = resolve_tol(tol)
    k = matrix_index(a, tol).index
    s1 = sigma_max(a)
    ak = power(a, k)
    mid = pinv(power(a, 2 * k + 1), tol, scale=s1 ** (2 * k + 1))
    return ak @ mid @ ak


def group_inverse(a, tol: Tolerances | None = None) -> np.ndarray:
    """Group inverse A^#, defined only when Ind(A) <= 1."""
    a = _require_square(a, "group_inverse")
    tol = resolve_tol(tol)
    k = matrix_index(a, tol).index
    if k > 1:
        raise DomainError(f"group inverse requires index <= 1, computed index is {k}")
    s1 = sigma_max(a)
    return a @ pinv(power(a, 3), tol, scale=s1 ** 3) @ a


def core_inverse(a, tol: Tolerances | None = None) -> np.ndarray:
    """Core inverse A^# A A^+, defined only when Ind(A) <= 1."""
    a = _require_square(a, "core_inverse")
    tol = resolve_tol(tol)
    return group_inverse(a, tol) @ a @ pinv(a, tol)


def qbt_inverse(a, q: int, tol: Tolerances | None = None,
                scale: float | None = None) -> np.ndarray:
    """q-BT inverse (A P_{A^q})^+ where P projects onto the range of A^q.

    `scale` anchors the internal rank cutoffs when `a` is a block derived
    from a larger matrix.
    """
    a = _require_square(a, "qbt_inverse")
    q = check_q(q)
    tol = resolve_tol(tol)
    s1 = max(sigma_max(a), scale or 0.0)
    # A P_{A^q} equals A^{q+1} (A^q)^+ and so has rank exactly
    # rank(A^{q+1}).  Decide that rank on the power itself, whose anchor
    # grows with q, and pin the final pseudoinverse to it: the trailing
    # singular values of A P_{A^q} are rounding noise at the scale of A and
    # a flat cutoff on the product cannot reliably reject them.
    r = rank(power(a, q + 1), tol, scale=s1 ** (q + 1))
    if r == 0:
        return np.zeros_like(np.asarray(a, dtype=np.complex128))
    p = proj_range(power(a, q), tol, scale=s1 ** q)
    return pinv(a @ p, tol, scale=s1, fixed_rank=r)


def bt_inverse(a, tol: Tolerances | None = None) -> np.ndarray:
    """BT inverse (A P_A)^+."""
    return qbt_inverse(a, 1, tol)


def core_ep(a, tol: Tolerances | None = None) -> np.ndarray:
    """Core-EP inverse (A P_{A^k})^+ with k = Ind(A)."""
    a = _require_square(a, "core_ep")
    tol = resolve_tol(tol)
    k = matrix_index(a, tol).index
    return qbt_inverse(a, k, tol)


def outer_inverse_check(a, x, range_gen, null_gen,
                        tol: Tolerances | None = None,
                        scale: float | None = None) -> bool:
    """True iff X is the outer inverse of A with R(X) = R(range_gen) and
    N(X) = N(null_gen): XAX = X plus both set equalities (rank-based).

    `scale` anchors the rank decisions when the generators are derived
    products whose entries may be rounding noise.
    """
    a = as_matrix(a)
    x = as_matrix(x)
    range_gen = as_matrix(range_gen)
    null_gen = as_matrix(null_gen)
    if x.shape != (a.shape[1], a.shape[0]):
        raise ShapeError(f"candidate must be {a.shape[1]}x{a.shape[0]}, got {x.shape[0]}x{x.shape[1]}")
    if range_gen.shape[0] != x.shape[0]:
        raise ShapeError("range generator must have as many rows as the candidate")
    if null_gen.shape[1] != x.shape[1]:
        raise ShapeError("null-space generator must have as many columns as the candidate")
    tol = resolve_tol(tol)
    if not tol.close(frobenius(x @ a @ x - x), frobenius(x)):
        return False
    if not (range_contained(x, range_gen, tol, scale=scale)
            and range_contained(range_gen, x, tol, scale=scale)):
        return False
    return (nullspace_contained(null_gen, x, tol, scale=scale)
            and nullspace_contained(x, null_gen, tol, scale=scale))


__all__ = [
    "check_q",
    "drazin",
    "group_inverse",
    "core_inverse",
    "core_ep",
    "bt_inverse",
    "qbt_inverse",
    "outer_inverse_check",
]
