"""Command-line interface.

Subcommands: one per inverse kind (pinv, drazin, group, core, core-ep,
bt, qbt, and the weighted wdrazin, wcore-ep, wbt, wqbt), `decompose` for
the block decompositions, and `verify` for the conformance suites.
Matrices are read from CSV or JSON files and results are written to
stdout in the input's format.

Exit codes: 0 success, 2 usage error, 3 parse error, 4 domain error,
5 verification failure.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

import numpy as np

from . import exact as ex
from .classical import (bt_inverse, core_ep, core_inverse, drazin,
                        group_inverse, qbt_inverse)
from .decomposition import core_ep_decompose, weighted_core_ep_decompose
from .errors import (DecompositionError, DomainError, NumericError,
                     ParseError, ShapeError)
from .io import format_matrix, load_matrix
from .matrix import (Tolerances, as_matrix, conjugate_transpose, frobenius,
                     resolve_tol, sigma_max)
from .projectors import matrix_index, pinv, power, proj_range
from .verify import run_all, run_example_checks, run_random_corpus
from .weighted import (WeightedPair, weighted_bt, weighted_core_ep,
                       weighted_drazin, weighted_qbt)

SQUARE_KINDS = ("pinv", "drazin", "group", "core", "core-ep", "bt", "qbt")
WEIGHTED_KINDS = ("wdrazin", "wcore-ep", "wbt", "wqbt")
INVERSE_KINDS = SQUARE_KINDS + WEIGHTED_KINDS
Q_KINDS = ("qbt", "wqbt")


class UsageError(Exception):
    """A post-parse command-line usage problem (exit code 2)."""


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geninv",
        description="Generalized matrix inverses over CSV/JSON matrix files.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add_common(p, weighted: bool, with_q: bool):
        p.add_argument("a", help="matrix file (CSV or JSON)")
        if weighted:
            p.add_argument("w", help="weight matrix file (CSV or JSON)")
        if with_q:
            p.add_argument("--q", type=int, required=True,
                           help="exponent of the range projector (q >= 0)")
        p.add_argument("--exact", action="store_true",
                       help="compute on the exact rational path")
        p.add_argument("--verify", action="store_true",
                       help="append residuals of the defining equations")
        p.add_argument("--tol", type=float, default=None,
                       help="residual tolerance (overrides GENINV_TOL)")

    descriptions = {
        "pinv": "Moore-Penrose inverse",
        "drazin": "Drazin inverse",
        "group": "group inverse (index at most 1)",
        "core": "core inverse (index at most 1)",
        "core-ep": "core-EP inverse",
        "bt": "BT inverse",
        "qbt": "q-BT inverse",
        "wdrazin": "W-weighted Drazin inverse",
        "wcore-ep": "W-weighted core-EP inverse",
        "wbt": "W-weighted BT inverse",
        "wqbt": "W-weighted q-BT inverse",
    }
    for kind in INVERSE_KINDS:
        p = sub.add_parser(kind, help=descriptions[kind])
        add_common(p, weighted=kind in WEIGHTED_KINDS, with_q=kind in Q_KINDS)

    dec = sub.add_parser("decompose", help="block decompositions")
    dec.add_argument("kind", choices=("core-ep", "weighted-core-ep"))
    dec.add_argument("a", help="matrix file (CSV or JSON)")
    dec.add_argument("w", nargs="?", default=None,
                     help="weight matrix file (required for weighted-core-ep)")
    dec.add_argument("--tol", type=float, default=None,
                     help="residual tolerance (overrides GENINV_TOL)")

    ver = sub.add_parser("verify", help="run the conformance checks")
    ver.add_argument("scope", choices=("examples", "corpus", "all"))
    ver.add_argument("--seed", type=int, default=1, help="corpus seed (default 1)")
    ver.add_argument("--count", type=int, default=100,
                     help="number of corpus pairs (default 100)")
    ver.add_argument("--max-dim", type=int, default=8,
                     help="largest matrix dimension in the corpus (default 8)")
    ver.add_argument("--json", metavar="PATH", default=None,
                     help="also write the report as JSON to PATH")
    ver.add_argument("--tol", type=float, default=None,
                     help="residual tolerance (overrides GENINV_TOL)")
    return parser


def _resolve_tolerance(args) -> Tolerances | None:
    value = getattr(args, "tol", None)
    if value is None:
        env = os.environ.get("GENINV_TOL")
        if env is not None and env.strip():
            try:
                value = float(env)
            except ValueError:
                raise UsageError(f"GENINV_TOL is not a number: {env!r}") from None
    if value is None:
        return None
    if not math.isfinite(value) or value <= 0:
        raise UsageError(f"tolerance must be a positive finite number, got {value}")
    return Tolerances(residual_atol=value)


# --------------------------------------------------------------------------
# inverse command


def _float_inverse(kind: str, a, w, q, tol) -> np.ndarray:
    if kind == "pinv":
        return pinv(a, tol)
    if kind == "drazin":
        return drazin(a, tol)
    if kind == "group":
        return group_inverse(a, tol)
    if kind == "core":
        return core_inverse(a, tol)
    if kind == "core-ep":
        return core_ep(a, tol)
    if kind == "bt":
        return bt_inverse(a, tol)
    if kind == "qbt":
        return qbt_inverse(a, q, tol)
    pair = WeightedPair.from_matrices(a, w, tol)
    if kind == "wdrazin":
        return weighted_drazin(pair, tol)
    if kind == "wcore-ep":
        return weighted_core_ep(pair, tol)
    if kind == "wbt":
        return weighted_bt(pair, tol)
    return weighted_qbt(pair, q, tol)


def _exact_inverse(kind: str, a, w, q) -> np.ndarray:
    if kind == "pinv":
        return ex.exact_pinv(a)
    if kind == "drazin":
        return ex.exact_drazin(a)
    if kind == "group":
        return ex.exact_group(a)
    if kind == "core":
        return ex.exact_core(a)
    if kind == "core-ep":
        return ex.exact_core_ep(a)
    if kind == "bt":
        return ex.exact_bt(a)
    if kind == "qbt":
        return ex.exact_qbt(a, q)
    if kind == "wdrazin":
        return ex.exact_weighted_drazin(a, w)
    if kind == "wcore-ep":
        return ex.exact_weighted_core_ep(a, w)
    if kind == "wbt":
        return ex.exact_weighted_bt(a, w)
    return ex.exact_weighted_qbt(a, w, q)


def _rel(x: np.ndarray, y: np.ndarray) -> float:
    return frobenius(x - y) / max(1.0, frobenius(y))


def _penrose(b: np.ndarray, x: np.ndarray) -> dict[str, float]:
    bx = b @ x
    xb = x @ b
    return {
        "penrose1": _rel(b @ xb, b),
        "penrose2": _rel(x @ bx, x),
        "penrose3": _rel(conjugate_transpose(bx), bx),
        "penrose4": _rel(conjugate_transpose(xb), xb),
    }


def _float_residuals(kind: str, a, w, x, q, tol) -> dict[str, float]:
    """Residuals of the defining equations of each inverse kind."""
    tol = resolve_tol(tol)
    if kind == "pinv":
        return _penrose(a, x)
    if kind in ("drazin", "group"):
        k = 1 if kind == "group" else matrix_index(a, tol).index
        return {
            "outer": _rel(x @ a @ x, x),
            "commute": _rel(a @ x, x @ a),
            "chain": _rel(x @ power(a, k + 1), power(a, k)),
        }
    if kind == "core":
        return {
            "outer": _rel(x @ a @ x, x),
            "hermitian_left": _rel(conjugate_transpose(a @ x), a @ x),
            "chain": _rel(x @ a @ a, a),
        }
    if kind in ("core-ep", "bt", "qbt"):
        if kind == "core-ep":
            q = matrix_index(a, tol).index
        elif kind == "bt":
            q = 1
        s1 = sigma_max(a)
        b = a @ proj_range(power(a, q), tol, scale=s1 ** q)
        return _penrose(b, x)
    aw = a @ w
    waw = w @ aw
    sa, sw = sigma_max(a), sigma_max(w)
    if kind == "wdrazin":
        k = max(matrix_index(aw, tol).index, matrix_index(w @ a, tol).index)
        return {
            "outer": _rel(x @ waw @ x, x),
            "commute": _rel(aw @ x, x @ w @ a),
            "chain": _rel(x @ w @ power(aw, k + 1), power(aw, k)),
        }
    if kind == "wcore-ep":
        q = max(matrix_index(aw, tol).index, matrix_index(w @ a, tol).index)
    elif kind == "wbt":
        q = 1
    b = waw @ proj_range(power(aw, q), tol, scale=(sa * sw) ** q)
    return _penrose(b, x)


def _exact_residuals(kind: str, a, w, x, q) -> dict[str, float]:
    """Same residuals on the exact path; exact agreement prints as zero."""
    mm = ex._matmul
    if kind == "pinv":
        b = a
    elif kind in ("drazin", "group"):
        k = 1 if kind == "group" else ex.exact_index(a)
        return {
            "outer": _rel(ex.float_of(mm(mm(x, a), x)), ex.float_of(x)),
            "commute": _rel(ex.float_of(mm(a, x)), ex.float_of(mm(x, a))),
            "chain": _rel(ex.float_of(mm(x, ex.exact_power(a, k + 1))),
                          ex.float_of(ex.exact_power(a, k))),
        }
    elif kind == "core":
        ax = ex.float_of(mm(a, x))
        return {
            "outer": _rel(ex.float_of(mm(mm(x, a), x)), ex.float_of(x)),
            "hermitian_left": _rel(conjugate_transpose(ax), ax),
            "chain": _rel(ex.float_of(mm(mm(x, a), a)), ex.float_of(a)),
        }
    elif kind in ("core-ep", "bt", "qbt"):
        if kind == "core-ep":
            q = ex.exact_index(a)
        elif kind == "bt":
            q = 1
        b = mm(a, ex.exact_proj_range(ex.exact_power(a, q)))
    elif kind == "wdrazin":
        aw, wa = mm(a, w), mm(w, a)
        k = max(ex.exact_index(aw), ex.exact_index(wa))
        waw = mm(w, aw)
        return {
            "outer": _rel(ex.float_of(mm(mm(x, waw), x)), ex.float_of(x)),
            "commute": _rel(ex.float_of(mm(aw, x)), ex.float_of(mm(x, wa))),
            "chain": _rel(ex.float_of(mm(mm(x, w), ex.exact_power(aw, k + 1))),
                          ex.float_of(ex.exact_power(aw, k))),
        }
    else:
        aw = mm(a, w)
        if kind == "wcore-ep":
            q = max(ex.exact_index(aw), ex.exact_index(mm(w, a)))
        elif kind == "wbt":
            q = 1
        b = mm(mm(w, aw), ex.exact_proj_range(ex.exact_power(aw, q)))
    return _penrose(ex.float_of(b), ex.float_of(x))


def _cmd_inverse(args) -> int:
    tol = _resolve_tolerance(args)
    kind = args.command
    exact = args.exact
    q = getattr(args, "q", None)
    if q is not None and q < 0:
        raise UsageError(f"--q must be nonnegative, got {q}")
    a, fmt = load_matrix(args.a, exact=exact)
    w = None
    if kind in WEIGHTED_KINDS:
        w, _ = load_matrix(args.w, exact=exact)
    if exact:
        result = _exact_inverse(kind, a, w, q)
    else:
        a = as_matrix(a)
        if w is not None:
            w = as_matrix(w)
        result = _float_inverse(kind, a, w, q, tol)
    print(format_matrix(result, fmt))
    if args.verify:
        if exact:
            residuals = _exact_residuals(kind, a, w, result, q)
        else:
            residuals = _float_residuals(kind, a, w, result, q, tol)
        print()
        for name, value in residuals.items():
            print(f"residual {name} = {value:.6e}")
    return 0


# --------------------------------------------------------------------------
# decompose command


def _print_block(label: str, block: np.ndarray, fmt: str) -> None:
    print(f"{label}:")
    text = format_matrix(np.asarray(block), fmt)
    print(text if text else "(empty)")


def _cmd_decompose(args) -> int:
    tol = _resolve_tolerance(args)
    if args.kind == "weighted-core-ep" and args.w is None:
        raise UsageError("decompose weighted-core-ep requires a weight matrix file")
    if args.kind == "core-ep" and args.w is not None:
        raise UsageError("decompose core-ep takes a single matrix file")
    a, fmt = load_matrix(args.a)
    a = as_matrix(a)
    if args.kind == "core-ep":
        d = core_ep_decompose(a, tol)
        print(f"rank = {d.rank}")
        print(f"index = {d.index}")
        for label, block in (("U", d.u), ("T", d.t), ("S", d.s), ("N", d.nil)):
            _print_block(label, block, fmt)
        eye = np.eye(d.u.shape[0])
        nil_pow = power(d.nil, d.index) if d.nil.size else d.nil
        residuals = {
            "reconstruction": _rel(d.compose(), a),
            "unitarity": frobenius(conjugate_transpose(d.u) @ d.u - eye),
            "nilpotency": frobenius(nil_pow) / max(1.0, sigma_max(a) ** max(d.index, 1)),
        }
    else:
        w, _ = load_matrix(args.w)
        pair = WeightedPair.from_matrices(a, as_matrix(w), tol)
        d = weighted_core_ep_decompose(pair, tol)
        print(f"t = {d.t_dim}")
        print(f"ind_aw = {d.ind_aw}")
        print(f"ind_wa = {d.ind_wa}")
        blocks = (("U", d.u), ("V", d.v), ("A1", d.a1), ("A2", d.a2),
                  ("A3", d.a3), ("W1", d.w1), ("W2", d.w2), ("W3", d.w3))
        for label, block in blocks:
            _print_block(label, block, fmt)
        sa, sw = sigma_max(pair.a), sigma_max(pair.w)
        residuals = {
            "reconstruction_a": _rel(d.compose_a(), pair.a),
            "reconstruction_w": _rel(d.compose_w(), pair.w),
            "unitarity_u": frobenius(conjugate_transpose(d.u) @ d.u - np.eye(d.u.shape[0])),
            "unitarity_v": frobenius(conjugate_transpose(d.v) @ d.v - np.eye(d.v.shape[0])),
            "nilpotency_aw": frobenius(power(d.a3 @ d.w3, d.ind_aw))
            / max(1.0, (sa * sw) ** d.ind_aw),
            "nilpotency_wa": frobenius(power(d.w3 @ d.a3, d.ind_wa))
            / max(1.0, (sw * sa) ** d.ind_wa),
        }
    print()
    for name, value in residuals.items():
        print(f"residual {name} = {value:.6e}")
    return 0


# --------------------------------------------------------------------------
# verify command


def _cmd_verify(args) -> int:
    tol = _resolve_tolerance(args)
    if args.scope == "examples":
        report = run_example_checks(tol)
    elif args.scope == "corpus":
        report = run_random_corpus(args.seed, args.count, args.max_dim, tol)
    else:
        report = run_all(args.seed, args.count, args.max_dim, tol)
    print(report.to_text())
    if args.json is not None:
        try:
            with open(args.json, "w", encoding="utf-8") as handle:
                handle.write(report.to_json())
                handle.write("\n")
        except OSError as exc:
            raise UsageError(f"cannot write {args.json}: {exc.strerror or exc}") from exc
    return 0 if report.passed else 5


# --------------------------------------------------------------------------


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        if code is None:
            return 0
        return code if isinstance(code, int) else 2
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "decompose":
            return _cmd_decompose(args)
        return _cmd_inverse(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 3
    except (DomainError, ShapeError, NumericError, DecompositionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
