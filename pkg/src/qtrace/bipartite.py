"""Bipartite partial traces at three optimization levels.

An operator O on H_a (x) H_b is stored dense with the composite row index
r = k*db + j (k indexes a, j indexes b, both 0-based).  Tracing over b:

  direct   O^a = sum_j (I_a (x) <j|) O (I_a (x) |j>), dense products included;
  semi     O^a[k,l] = sum_{alpha,beta} O[k*db+alpha, l*db+beta]
                      * sum_j conj(basis[j,alpha]) * basis[j,beta],
           for an arbitrary orthonormal basis given as rows;
  fast     O^a[k,l] = sum_j O[k*db+j, l*db+j], computational basis only,
           no multiplications at all.

Each routine optionally fills an OpCounter with the scalar multiplications
(mops) and additions (sops) it actually executes, stored zeros included on
the direct path.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

import numpy as np

from .linalg import as_complex_matrix, is_hermitian, require_square
from .opcount import OpCounter

__all__ = [
    "BipartiteDims",
    "ptrace_b_direct",
    "ptrace_a_direct",
    "ptrace_b_semi",
    "ptrace_b_fast",
    "ptrace_a_fast",
    "ptrace_b_fast_hermitian",
]

BASIS_UNITARITY_TOL = 1e-10
HERMITIAN_INPUT_TOL = 1e-10


class BipartiteDims(NamedTuple):
    """Factor dimensions (da, db) of a composite operator."""

    da: int
    db: int


def _checked(op, dims) -> tuple[np.ndarray, int, int]:
    a = require_square(op)
    da, db = int(dims[0]), int(dims[1])
    if da < 1 or db < 1:
        raise ValueError(f"dimensions must be >= 1, got ({da}, {db})")
    if da * db != a.shape[0]:
        raise ValueError(
            f"dimension mismatch: da*db = {da * db} but operator has size {a.shape[0]}"
        )
    return a, da, db


def ptrace_b_direct(op, dims, counter: Optional[OpCounter] = None) -> np.ndarray:
    """Trace over the second factor by materializing every lifted basis vector.

    Intentionally naive: for each computational-basis vector |j> of H_b the
    dense matrices I_a(x)<j| and I_a(x)|j> are built and the full dense
    products taken, so the cost scales like da^3*db^3 multiplications.  The
    products run as explicit contractions, not BLAS matmuls: a blocked
    kernel would hide the per-element cost the counter charges (stored
    zeros included), and paying that cost is this method's point.
    """
    a, da, db = _checked(op, dims)
    if counter is not None:
        counter.reset()
    d = da * db
    rows = np.arange(da)
    out = np.zeros((da, da), dtype=np.complex128)
    for j in range(db):
        lifted_bra = np.zeros((da, d), dtype=np.complex128)
        lifted_bra[rows, rows * db + j] = 1.0                        # I_a (x) <j|
        lifted_ket = lifted_bra.conj().T.copy()                      # I_a (x) |j>
        left = np.einsum("ik,kl->il", lifted_bra, a, optimize=False)
        term = np.einsum("ik,kl->il", left, lifted_ket, optimize=False)
        if j == 0:
            out = term
        else:
            out += term
        if counter is not None:
            counter.add_mops(2 * da * da * db)            # both Kronecker lifts
            counter.add_mops(da * da * da * db * db)      # lifted_bra @ a
            counter.add_mops(da * da * da * db)           # left @ lifted_ket
            counter.add_sops(da * da * db * (d - 1))      # lifted_bra @ a
            counter.add_sops(da * da * (d - 1))           # left @ lifted_ket
            if j > 0:
                counter.add_sops(da * da)                 # accumulation
    return out


def ptrace_a_direct(op, dims) -> np.ndarray:
    """Trace over the first factor: sum_j (<j| (x) I_b) O (|j> (x) I_b)."""
    a, da, db = _checked(op, dims)
    d = da * db
    rows = np.arange(db)
    out = np.zeros((db, db), dtype=np.complex128)
    for j in range(da):
        lifted_bra = np.zeros((db, d), dtype=np.complex128)
        lifted_bra[rows, j * db + rows] = 1.0                        # <j| (x) I_b
        lifted_ket = lifted_bra.conj().T.copy()                      # |j> (x) I_b
        left = np.einsum("ik,kl->il", lifted_bra, a, optimize=False)
        out += np.einsum("ik,kl->il", left, lifted_ket, optimize=False)
    return out


def ptrace_b_semi(op, dims, basis, counter: Optional[OpCounter] = None) -> np.ndarray:
    """Trace over the second factor in an arbitrary orthonormal basis.

    ``basis`` is db x db with row j holding the components of the j-th
    basis ket; rows must be orthonormal within 1e-10.  Exploits the zeros
    of the lifted identities but not of the basis vectors themselves, so
    each of the da^2 output elements costs db^2*(db+1) multiplications.
    """
    a, da, db = _checked(op, dims)
    b = as_complex_matrix(basis)
    if b.shape != (db, db):
        raise ValueError(f"basis must be {db}x{db}, got {b.shape}")
    if np.max(np.abs(b @ b.conj().T - np.eye(db)), initial=0.0) > BASIS_UNITARITY_TOL:
        raise ValueError("basis rows are not orthonormal within tolerance")
    if counter is not None:
        counter.reset()
    bc = b.conj()
    out = np.empty((da, da), dtype=np.complex128)
    for k in range(da):
        for l in range(da):
            block = a[k * db:(k + 1) * db, l * db:(l + 1) * db]
            # The Gram factor is recomputed per element: the executed op
            # count must stay aligned with the middle-level accounting
            # (db^2*(db+1) mops per element), which never hoists it.
            gram = bc.T @ b
            row_dots = np.einsum("ab,ab->a", block, gram)
            val = row_dots[0]
            for alpha in range(1, db):
                val = val + row_dots[alpha]
            out[k, l] = val
            if counter is not None:
                counter.add_mops(db * db * db + db * db)
                counter.add_sops(db * db * (db - 1) + db * db - 1)
    return out


def ptrace_b_fast(op, dims, counter: Optional[OpCounter] = None) -> np.ndarray:
    """Computational-basis trace over the second factor, sums only.

    O^a[k,l] = sum_j O[k*db+j, l*db+j], accumulated in ascending j.
    Executes exactly da^2*(db-1) scalar sums and no multiplications.
    """
    a, da, db = _checked(op, dims)
    if counter is not None:
        counter.reset()
    out = a[0::db, 0::db].copy()
    for j in range(1, db):
        out += a[j::db, j::db]
    if counter is not None:
        counter.add_sops(da * da * (db - 1))
    return out


def ptrace_a_fast(op, dims) -> np.ndarray:
    """Computational-basis trace over the first factor.

    O^b[k,l] = sum_j O[j*db+k, j*db+l]: the sum of the da diagonal blocks,
    db^2*(da-1) scalar sums.
    """
    a, da, db = _checked(op, dims)
    out = a[0:db, 0:db].copy()
    for j in range(1, da):
        out += a[j * db:(j + 1) * db, j * db:(j + 1) * db]
    return out


def ptrace_b_fast_hermitian(op, dims, counter: Optional[OpCounter] = None) -> np.ndarray:
    """Fast trace over the second factor computing only the upper triangle.

    Requires a Hermitian input (within 1e-10); the strict lower triangle is
    filled by conjugation, saving da*(da-1)*(db-1)/2 of the fast method's
    sums.  Non-Hermitian input is rejected, never symmetrized.
    """
    a, da, db = _checked(op, dims)
    if not is_hermitian(a, HERMITIAN_INPUT_TOL):
        raise ValueError("ptrace_b_fast_hermitian requires a Hermitian operator")
    if counter is not None:
        counter.reset()
    rows, cols = np.triu_indices(da)
    acc = a[0::db, 0::db][rows, cols]
    for j in range(1, db):
        acc = acc + a[j::db, j::db][rows, cols]
    out = np.zeros((da, da), dtype=np.complex128)
    out[rows, cols] = acc
    strict = rows < cols
    out[cols[strict], rows[strict]] = acc[strict].conj()
    if counter is not None:
        counter.add_sops((db - 1) * (da * (da + 1) // 2))
    return out
