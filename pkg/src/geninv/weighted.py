"""W-weighted generalized inverses of a rectangular pair (A, W).

A is m x n, W is n x m and nonzero. The central object is the W-weighted
q-BT inverse (W A W P_{(AW)^q})^+, which reduces to (WAW)^+ at q = 0, to
the W-weighted BT inverse at q = 1, and to the W-weighted core-EP inverse
for q >= k = max(Ind(AW), Ind(WA)).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classical import check_q, drazin, qbt_inverse
from .errors import DomainError, NumericError, ShapeError
from .matrix import Tolerances, as_matrix, frobenius, rank, resolve_tol, sigma_max
from .projectors import matrix_index, pinv, power, proj_range


@dataclass(frozen=True)
class WeightedPair:
    """A validated (A, W) pair with cached indices.

    ind_aw = Ind(AW), ind_wa = Ind(WA), k = max of both. The indices of AW
    and WA can differ by at most one; a larger spread indicates a rank
    misclassification and is rejected.
    """

    a: np.ndarray
    w: np.ndarray
    ind_aw: int
    ind_wa: int
    k: int

    @classmethod
    def from_matrices(cls, a, w, tol: Tolerances | None = None) -> "WeightedPair":
        a = as_matrix(a)
        w = as_matrix(w)
        if a.shape[0] != w.shape[1] or a.shape[1] != w.shape[0]:
            raise ShapeError(
                f"weight must be {a.shape[1]}x{a.shape[0]} for a {a.shape[0]}x{a.shape[1]} matrix, "
                f"got {w.shape[0]}x{w.shape[1]}")
        if not np.any(w):
            raise DomainError("weight matrix must be nonzero")
        tol = resolve_tol(tol)
        ind_aw = matrix_index(a @ w, tol).index
        ind_wa = matrix_index(w @ a, tol).index
        if abs(ind_aw - ind_wa) > 1:
            raise NumericError(
                f"computed indices Ind(AW)={ind_aw}, Ind(WA)={ind_wa} differ by more than one; "
                "rank tolerance misclassification")
        a = a.copy()
        w = w.copy()
        a.setflags(write=False)
        w.setflags(write=False)
        return cls(a=a, w=w, ind_aw=ind_aw, ind_wa=ind_wa, k=max(ind_aw, ind_wa))

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape


def _wqbt_rank(a: np.ndarray, w: np.ndarray, q: int, tol: Tolerances,
               sa: float, sw: float) -> int:
    """Exact rank of W A W P_{(AW)^q}, decided on W (AW)^{q+1}.

    W A W maps R((AW)^q) onto R(W (AW)^{q+1}), so the two ranks agree.
    Deciding on the power keeps the rank anchor growing with q; the
    trailing singular values of the product itself are rounding noise at
    the scale of the factors, which a flat cutoff cannot reliably reject.
    """
    probe = w @ power(a @ w, q + 1)
    return rank(probe, tol, scale=sw * (sa * sw) ** (q + 1))


def _wqbt_raw(a: np.ndarray, w: np.ndarray, q: int, tol: Tolerances,
              scale_a: float | None = None, scale_w: float | None = None) -> np.ndarray:
    """(W A W P_{(AW)^q})^+ on raw arrays; tolerates W = 0 (used on blocks)."""
    sa = scale_a if scale_a is not None else sigma_max(a)
    sw = scale_w if scale_w is not None else sigma_max(w)
    r = _wqbt_rank(a, w, q, tol, sa, sw)
    if r == 0:
        return np.zeros(a.shape, dtype=np.complex128)
    aw = a @ w
    p = proj_range(power(aw, q), tol, scale=(sa * sw) ** q)
    return pinv(w @ a @ w @ p, tol, scale=sw * sa * sw, fixed_rank=r)


def weighted_qbt(p: WeightedPair, q: int, tol: Tolerances | None = None) -> np.ndarray:
    """W-weighted q-BT inverse (W A W P_{(AW)^q})^+, shape m x n."""
    q = check_q(q)
    tol = resolve_tol(tol)
    return _wqbt_raw(p.a, p.w, q, tol)


def weighted_bt(p: WeightedPair, tol: Tolerances | None = None) -> np.ndarray:
    """W-weighted BT inverse (W A W P_{AW})^+; the q = 1 member of the family."""
    return weighted_qbt(p, 1, tol)


def weighted_core_ep(p: WeightedPair, tol: Tolerances | None = None) -> np.ndarray:
    """W-weighted core-EP inverse (W A W P_{(AW)^k})^+ with k = max index."""
    return weighted_qbt(p, p.k, tol)


def weighted_drazin(p: WeightedPair, tol: Tolerances | None = None) -> np.ndarray:
    """W-weighted Drazin inverse A (WA)^d (WA)^d."""
    tol = resolve_tol(tol)
    d = drazin(p.w @ p.a, tol)
    return p.a @ d @ d


def weighted_qbt_product_forms(p: WeightedPair, q: int,
                               tol: Tolerances | None = None) -> tuple[np.ndarray, np.ndarray]:
    """The two product expressions for the W-weighted q-BT inverse:

    [W (AW)^(q+1) ((AW)^q)^+]^+  and  [(WA)^(q+1) W ((AW)^q)^+]^+.
    """
    q = check_q(q)
    tol = resolve_tol(tol)
    sa, sw = sigma_max(p.a), sigma_max(p.w)
    r = _wqbt_rank(p.a, p.w, q, tol, sa, sw)
    if r == 0:
        zero = np.zeros(p.shape, dtype=np.complex128)
        return zero, zero.copy()
    aw = p.a @ p.w
    wa = p.w @ p.a
    pq_pinv = pinv(power(aw, q), tol, scale=(sa * sw) ** q)
    scale = sw * sa * sw
    x1 = pinv(p.w @ power(aw, q + 1) @ pq_pinv, tol, scale=scale, fixed_rank=r)
    x2 = pinv(power(wa, q + 1) @ p.w @ pq_pinv, tol, scale=scale, fixed_rank=r)
    return x1, x2


def weighted_qbt_via_square(p: WeightedPair, q: int,
                            tol: Tolerances | None = None) -> np.ndarray:
    """(W ((AW)^{q-BT})^+)^+: the weighted inverse through the square q-BT
    inverse of the product AW."""
    q = check_q(q)
    tol = resolve_tol(tol)
    sa, sw = sigma_max(p.a), sigma_max(p.w)
    r = _wqbt_rank(p.a, p.w, q, tol, sa, sw)
    if r == 0:
        return np.zeros(p.shape, dtype=np.complex128)
    aw_qbt = qbt_inverse(p.a @ p.w, q, tol)
    inner = pinv(aw_qbt, tol)
    return pinv(p.w @ inner, tol, scale=sw * sa * sw, fixed_rank=r)


def cline_shift_check(p: WeightedPair, ell: int, tol: Tolerances | None = None) -> bool:
    """Check the shift identity (AW)^(l-1) A = A (WA)^(l-1) for l >= 1.

    Always true mathematically; a false return signals an arithmetic bug.
    """
    if not isinstance(ell, (int, np.integer)) or ell < 1:
        raise DomainError(f"ell must be a positive integer, got {ell!r}")
    tol = resolve_tol(tol)
    left = power(p.a @ p.w, ell - 1) @ p.a
    right = p.a @ power(p.w @ p.a, ell - 1)
    return tol.close(frobenius(left - right), frobenius(right))


def dual_representation_gap(p: WeightedPair, q: int,
                            tol: Tolerances | None = None) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """The triple (A^{qbt,W}, ((AW)^{qbt})^2 A, A ((WA)^{qbt})^2).

    Exposed as data: for 1 <= q < k the three generally differ, for q >= k
    the first and third coincide while the second may still differ.
    """
    q = check_q(q)
    tol = resolve_tol(tol)
    x = weighted_qbt(p, q, tol)
    aw_qbt = qbt_inverse(p.a @ p.w, q, tol)
    wa_qbt = qbt_inverse(p.w @ p.a, q, tol)
    return x, aw_qbt @ aw_qbt @ p.a, p.a @ wa_qbt @ wa_qbt


__all__ = [
    "WeightedPair",
    "weighted_qbt",
    "weighted_bt",
    "weighted_core_ep",
    "weighted_drazin",
    "weighted_qbt_product_forms",
    "weighted_qbt_via_square",
    "cline_shift_check",
    "dual_representation_gap",
]
