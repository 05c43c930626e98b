"""Matrix file formats: Matrix Market (array/coordinate) and a plain CSV.

The CSV layout is a ``c0,c1,...`` header row, then one matrix row per line. Complex entries
are written as ``a+bi`` with 17 significant digits so a write/read cycle is
exact in double precision.
"""

from __future__ import annotations

import io
import os

import numpy as np
import scipy.io
import scipy.sparse

from .errors import InvalidMatrix


def read_mm(path) -> np.ndarray:
    """Read a Matrix Market file into a dense array."""
    try:
        M = scipy.io.mmread(os.fspath(path))
    except (ValueError, OSError) as exc:
        raise InvalidMatrix(f"cannot read Matrix Market file {path}: {exc}") from exc
    if scipy.sparse.issparse(M):
        M = M.toarray()
    return np.asarray(M)


def write_mm(path, A, comment: str = "") -> None:
    """Write ``A`` in Matrix Market ``array`` format (general symmetry)."""
    A = np.atleast_2d(np.asarray(A))
    field = "complex" if np.iscomplexobj(A) else "real"
    scipy.io.mmwrite(os.fspath(path), A, comment=comment, field=field,
                     precision=17, symmetry="general")


def format_scalar(x) -> str:
    x = complex(x)
    if x.imag == 0.0:
        return f"{x.real:.17g}"
    return f"{x.real:.17g}{x.imag:+.17g}i"


def parse_scalar(token: str) -> complex:
    token = token.strip().replace(" ", "")
    if not token:
        raise InvalidMatrix("empty CSV field")
    if token.endswith(("i", "j")):
        token = token[:-1] + "j"
        # "i" alone or "-i" means unit imaginary
        if token in ("j", "+j", "-j"):
            token = token.replace("j", "1j")
    try:
        return complex(token)
    except ValueError as exc:
        raise InvalidMatrix(f"bad matrix entry {token!r}") from exc


def write_csv(path_or_buf, A) -> None:
    """Write one matrix row per line under a ``c0,c1,...`` header row."""
    A = np.atleast_2d(np.asarray(A))
    lines = [",".join(f"c{j}" for j in range(A.shape[1]))]
    lines += [",".join(format_scalar(v) for v in row) for row in A]
    text = "\n".join(lines) + "\n"
    if isinstance(path_or_buf, io.TextIOBase):
        path_or_buf.write(text)
    else:
        with open(path_or_buf, "w") as fh:
            fh.write(text)


def read_csv(path) -> np.ndarray:
    """Read a matrix CSV; a leading header row (``c0,c1,...``) is skipped."""
    with open(path) as fh:
        lines = [line for line in fh if line.strip()]
    if lines and lines[0].lstrip()[:1].isalpha() and lines[0].lstrip()[:1] not in "iI":
        lines = lines[1:]
    rows = [[parse_scalar(t) for t in line.split(",")] for line in lines]
    if not rows or len({len(r) for r in rows}) != 1:
        raise InvalidMatrix(f"{path}: ragged or empty CSV matrix")
    A = np.array(rows, dtype=complex)
    if np.all(A.imag == 0):
        return A.real.copy()
    return A


def read_matrix(path) -> np.ndarray:
    """Dispatch on extension: ``.csv`` is CSV, anything else Matrix Market."""
    if os.fspath(path).lower().endswith(".csv"):
        return read_csv(path)
    return read_mm(path)


def write_matrix(path, A) -> None:
    if os.fspath(path).lower().endswith(".csv"):
        write_csv(path, A)
    else:
        write_mm(path, A)
