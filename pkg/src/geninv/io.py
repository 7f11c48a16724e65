"""Matrix file input and output.

Two formats: CSV (one row per line, comma-separated entries) and JSON
(object with `rows`, `cols`, `data`). Complex entries are written as `a`,
`bi`, or `a+bi` / `a-bi`, with components given as decimals or fractions
`p/q`. Parsing targets either the float path (complex128 arrays) or the
exact path (Gaussian-rational object arrays); printing floats uses 17
significant digits and printing exact values uses fraction strings, so a
parse/print round trip is lossless in both directions.
"""

from __future__ import annotations

import json
from fractions import Fraction

import numpy as np

from .errors import ParseError
from .exact import GaussianRational

_IMAG_SUFFIXES = "iIjJ"


def _split_complex(token: str) -> tuple[str | None, str | None]:
    """Split a complex token into raw (real, imaginary) component strings.

    Either part may be None when absent; an empty imaginary coefficient
    (as in `i` or `-i`) comes back as its sign alone.
    """
    t = token.strip()
    if not t:
        raise ValueError("empty entry")
    split = -1
    for idx in range(1, len(t)):
        if t[idx] in "+-" and t[idx - 1] not in "eE":
            split = idx
            break
    if split == -1:
        if t[-1] in _IMAG_SUFFIXES:
            return None, t[:-1]
        return t, None
    rest = t[split:]
    if rest[-1] not in _IMAG_SUFFIXES:
        raise ValueError(f"trailing component of {token.strip()!r} is not imaginary")
    return t[:split], rest[:-1]


def _fraction(text: str) -> Fraction:
    """Fraction from a decimal or p/q string; bare signs mean unit values."""
    if text in ("", "+"):
        return Fraction(1)
    if text == "-":
        return Fraction(-1)
    return Fraction(text)


def _parse_token(token: str, exact: bool):
    """One complex entry from its textual form."""
    re_part, im_part = _split_complex(token)
    real = _fraction(re_part) if re_part is not None else Fraction(0)
    imag = _fraction(im_part) if im_part is not None else Fraction(0)
    if exact:
        return GaussianRational(real, imag)
    return complex(float(real), float(imag))


def parse_entry(token: str, exact: bool = False):
    """Parse a single complex entry; raises ParseError on bad syntax."""
    try:
        return _parse_token(token, exact)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad matrix entry {token.strip()!r}: {exc}") from exc


def _finish(rows: list[list], exact: bool) -> np.ndarray:
    if not rows:
        raise ParseError("matrix file contains no rows")
    if exact:
        out = np.empty((len(rows), len(rows[0])), dtype=object)
        for i, row in enumerate(rows):
            for j, value in enumerate(row):
                out[i, j] = value
        return out
    return np.array(rows, dtype=np.complex128)


def _parse_csv(text: str, exact: bool) -> np.ndarray:
    rows: list[list] = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split(",")
        if width is None:
            width = len(parts)
        elif len(parts) != width:
            raise ParseError(
                f"row has {len(parts)} entries, expected {width}", line=lineno, column=1)
        row = []
        offset = 0
        for part in parts:
            column = offset + len(part) - len(part.lstrip()) + 1
            try:
                row.append(_parse_token(part, exact))
            except (ValueError, ZeroDivisionError) as exc:
                raise ParseError(f"bad matrix entry {part.strip()!r}: {exc}",
                                 line=lineno, column=column) from exc
            offset += len(part) + 1
        rows.append(row)
    return _finish(rows, exact)


def _json_component(value, where: str) -> Fraction:
    if isinstance(value, bool) or not isinstance(value, (int, float, str)):
        raise ParseError(f"{where}: component {value!r} is not a number or fraction string")
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        raise ParseError(f"{where}: bad component {value!r}: {exc}") from exc


def _json_entry(value, exact: bool, where: str):
    if isinstance(value, str):
        try:
            return _parse_token(value, exact)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"{where}: bad matrix entry {value!r}: {exc}") from exc
    if isinstance(value, bool):
        raise ParseError(f"{where}: entry {value!r} is not a number")
    if isinstance(value, (int, float)):
        real, imag = _json_component(value, where), Fraction(0)
    elif isinstance(value, list):
        if len(value) != 2:
            raise ParseError(f"{where}: a complex entry must be a 2-array [re, im]")
        real = _json_component(value[0], where)
        imag = _json_component(value[1], where)
    else:
        raise ParseError(f"{where}: entry {value!r} is not a number, string, or 2-array")
    if exact:
        return GaussianRational(real, imag)
    return complex(float(real), float(imag))


def _parse_json(text: str, exact: bool) -> np.ndarray:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    if not isinstance(doc, dict):
        raise ParseError("top-level JSON value must be an object with rows, cols, data")
    for key in ("rows", "cols", "data"):
        if key not in doc:
            raise ParseError(f"missing required key {key!r}")
    m, n, data = doc["rows"], doc["cols"], doc["data"]
    if not isinstance(m, int) or not isinstance(n, int) or isinstance(m, bool) \
            or isinstance(n, bool) or m < 1 or n < 1:
        raise ParseError("rows and cols must be positive integers")
    if not isinstance(data, list) or len(data) != m:
        raise ParseError(f"data must be an array of {m} rows")
    rows = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"data row {i} must be an array of {n} entries")
        rows.append([_json_entry(v, exact, f"data[{i}][{j}]") for j, v in enumerate(row)])
    return _finish(rows, exact)


def parse_matrix(text: str, fmt: str, exact: bool = False) -> np.ndarray:
    """Matrix from file text in the given format ('csv' or 'json').

    Returns a complex128 array, or an object array of Gaussian rationals
    when `exact` is set.
    """
    if fmt == "csv":
        return _parse_csv(text, exact)
    if fmt == "json":
        return _parse_json(text, exact)
    raise ParseError(f"unknown matrix format {fmt!r} (expected 'csv' or 'json')")


def detect_format(path: str, text: str | None = None) -> str:
    """'csv' or 'json', from the file suffix or, failing that, the content."""
    lowered = str(path).lower()
    if lowered.endswith(".json"):
        return "json"
    if lowered.endswith(".csv"):
        return "csv"
    if text is not None and text.lstrip().startswith("{"):
        return "json"
    return "csv"


def load_matrix(path: str, exact: bool = False) -> tuple[np.ndarray, str]:
    """Read and parse a matrix file; returns (matrix, detected format)."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror or exc}") from exc
    fmt = detect_format(path, text)
    try:
        return parse_matrix(text, fmt, exact), fmt
    except ParseError as exc:
        raise ParseError(f"{path}: {exc.args[0] if exc.args else exc}") from exc


def _g17(value: float) -> str:
    return "%.17g" % value


def format_complex(z: complex) -> str:
    """Text form of one float entry: `a`, `bi`, or `a+bi` / `a-bi`."""
    z = complex(z)
    if z.imag == 0:
        return _g17(z.real)
    imag = _g17(abs(z.imag)) + "i"
    if z.real == 0:
        return imag if z.imag > 0 else "-" + imag
    return _g17(z.real) + ("+" if z.imag > 0 else "-") + imag


def _is_exact(matrix: np.ndarray) -> bool:
    return matrix.dtype == object


def _format_csv(matrix: np.ndarray) -> str:
    exact = _is_exact(matrix)
    lines = []
    for row in matrix:
        if exact:
            lines.append(",".join(str(v) for v in row))
        else:
            lines.append(",".join(format_complex(v) for v in row))
    return "\n".join(lines)


def _json_value(value, exact: bool):
    if exact:
        if value.imag == 0:
            return str(value.real)
        return [str(value.real), str(value.imag)]
    z = complex(value)
    if z.imag == 0:
        return z.real
    return [z.real, z.imag]


def _format_json(matrix: np.ndarray) -> str:
    exact = _is_exact(matrix)
    m, n = matrix.shape
    data = [[_json_value(matrix[i, j], exact) for j in range(n)] for i in range(m)]
    return json.dumps({"rows": m, "cols": n, "data": data})


def format_matrix(matrix: np.ndarray, fmt: str) -> str:
    """Render a matrix (float or exact) as CSV or JSON text."""
    matrix = np.asarray(matrix)
    if matrix.ndim != 2:
        raise ParseError(f"expected a 2-D matrix, got {matrix.ndim}-D")
    if fmt == "csv":
        return _format_csv(matrix)
    if fmt == "json":
        return _format_json(matrix)
    raise ParseError(f"unknown matrix format {fmt!r} (expected 'csv' or 'json')")


__all__ = [
    "parse_entry",
    "parse_matrix",
    "detect_format",
    "load_matrix",
    "format_complex",
    "format_matrix",
]
