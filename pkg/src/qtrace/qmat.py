"""QMAT v1 text format for dense complex matrices.

Layout::

    QMAT 1
    <rows> <cols>
    <re> <im>        entry (0,0)
    <re> <im>        entry (0,1)
    ...

Entries are row-major: entry (i, j) sits on data line i*cols + j.  The
parser is strict: wrong magic, wrong entry count, or malformed numbers
raise QmatFormatError.  The writer emits shortest round-trip float
representations, so writing is deterministic and lossless.
"""

from __future__ import annotations

import os
import tempfile

import numpy as np

__all__ = ["QmatFormatError", "read_qmat", "write_qmat"]

_MAGIC = "QMAT 1"


class QmatFormatError(ValueError):
    """Raised when a QMAT file does not conform to the v1 layout."""


def read_qmat(path) -> np.ndarray:
    with open(path, "r", encoding="ascii") as fh:
        lines = [ln.strip() for ln in fh]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0] != _MAGIC:
        raise QmatFormatError(f"{path}: missing '{_MAGIC}' header")
    if len(lines) < 2:
        raise QmatFormatError(f"{path}: missing dimension line")
    parts = lines[1].split()
    if len(parts) != 2:
        raise QmatFormatError(f"{path}: dimension line must be '<rows> <cols>'")
    try:
        rows, cols = int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise QmatFormatError(f"{path}: non-integer dimensions") from exc
    if rows < 1 or cols < 1:
        raise QmatFormatError(f"{path}: dimensions must be positive")
    data = lines[2:]
    if len(data) != rows * cols:
        raise QmatFormatError(
            f"{path}: expected {rows * cols} entry lines, found {len(data)}"
        )
    out = np.empty((rows, cols), dtype=np.complex128)
    for idx, ln in enumerate(data):
        fields = ln.split()
        if len(fields) != 2:
            raise QmatFormatError(f"{path}: entry line {idx} must be '<re> <im>'")
        try:
            re, im = float(fields[0]), float(fields[1])
        except ValueError as exc:
            raise QmatFormatError(f"{path}: bad number on entry line {idx}") from exc
        out[idx // cols, idx % cols] = complex(re, im)
    return out


def write_qmat(path, matrix) -> None:
    """Write matrix to path atomically (temp file + rename on success)."""
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={m.ndim}")
    rows, cols = m.shape
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".qmat.tmp")
    try:
        with os.fdopen(fd, "w", encoding="ascii") as fh:
            fh.write(f"{_MAGIC}\n{rows} {cols}\n")
            for i in range(rows):
                for j in range(cols):
                    z = m[i, j]
                    fh.write(f"{float(z.real)!r} {float(z.imag)!r}\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
