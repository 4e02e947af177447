"""JSON interchange for matrices and vectors.

Matrices are ``{"rows": n, "cols": m, "data": [[re, im], ...]}`` in row-major
order; vectors are ``{"dim": n, "data": [[re, im], ...]}``.  Every number must
be a finite IEEE-754 double.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .errors import ReidLabError

__all__ = [
    "MatrixFormatError",
    "matrix_to_json",
    "matrix_from_json",
    "vector_to_json",
    "vector_from_json",
    "load_matrix",
    "save_matrix",
    "load_vector",
]


class MatrixFormatError(ReidLabError, ValueError):
    pass


def _pairs(z: np.ndarray) -> list:
    return [[float(v.real), float(v.imag)] for v in np.asarray(z, dtype=np.complex128).ravel()]


def _complex_entries(data, count: int) -> np.ndarray:
    if not isinstance(data, list) or len(data) != count:
        raise MatrixFormatError(f"'data' must be a list of {count} [re, im] pairs")
    out = np.empty(count, dtype=np.complex128)
    for i, pair in enumerate(data):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
        ):
            raise MatrixFormatError(f"entry {i} is not a [re, im] pair of numbers: {pair!r}")
        re, im = float(pair[0]), float(pair[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise MatrixFormatError(f"entry {i} is not finite: {pair!r}")
        out[i] = complex(re, im)
    return out


def _positive_int(obj: dict, key: str) -> int:
    v = obj.get(key)
    if not isinstance(v, int) or isinstance(v, bool) or v < 1:
        raise MatrixFormatError(f"'{key}' must be a positive integer, got {v!r}")
    return v


def matrix_to_json(M) -> dict:
    M = np.asarray(M)
    if M.ndim != 2:
        raise MatrixFormatError(f"expected a 2-D array, got shape {M.shape}")
    return {"rows": int(M.shape[0]), "cols": int(M.shape[1]), "data": _pairs(M)}


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise MatrixFormatError("matrix JSON must be an object")
    rows, cols = _positive_int(obj, "rows"), _positive_int(obj, "cols")
    return _complex_entries(obj.get("data"), rows * cols).reshape(rows, cols)


def vector_to_json(x) -> dict:
    x = np.asarray(x).ravel()
    return {"dim": int(x.shape[0]), "data": _pairs(x)}


def vector_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise MatrixFormatError("vector JSON must be an object")
    dim = _positive_int(obj, "dim")
    return _complex_entries(obj.get("data"), dim)


def _read_json(path) -> object:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MatrixFormatError(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MatrixFormatError(f"{path} is not valid JSON: {exc}") from exc


def load_matrix(path) -> np.ndarray:
    return matrix_from_json(_read_json(path))


def load_vector(path) -> np.ndarray:
    return vector_from_json(_read_json(path))


def save_matrix(path, M) -> None:
    Path(path).write_text(json.dumps(matrix_to_json(M)) + "\n")
