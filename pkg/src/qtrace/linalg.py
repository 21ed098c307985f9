"""Dense complex matrix utilities shared by the trace routines.

All matrices are numpy arrays of complex128 in row-major layout.  Helpers
here validate shapes and raise ValueError on mismatch; they never repair
an ill-formed input.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "as_complex_matrix",
    "require_square",
    "kron",
    "trace",
    "dagger",
    "is_hermitian",
    "random_density_matrix",
    "random_unitary",
]

HERMITIAN_TOL = 1e-12


def as_complex_matrix(m) -> np.ndarray:
    """Return m as a 2-D complex128 array, raising ValueError otherwise."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got ndim={a.ndim}")
    return a


def require_square(m) -> np.ndarray:
    a = as_complex_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product of two matrices."""
    return np.kron(as_complex_matrix(a), as_complex_matrix(b))


def trace(m) -> complex:
    """Trace of a square matrix."""
    return complex(np.trace(require_square(m)))


def dagger(m) -> np.ndarray:
    """Conjugate transpose."""
    return as_complex_matrix(m).conj().T.copy()


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    """True when max|M - M^dagger| <= tol."""
    a = require_square(m)
    return bool(np.max(np.abs(a - a.conj().T), initial=0.0) <= tol)


def random_density_matrix(d: int, seed: int) -> np.ndarray:
    """Random d x d density matrix G G^dagger / tr(G G^dagger).

    G has independent standard complex normal entries drawn from a
    generator seeded with ``seed``.  The result is Hermitian, positive
    semidefinite and unit trace up to roundoff.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    rng = np.random.default_rng(seed)
    g = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(d: int, seed: int) -> np.ndarray:
    """Haar-distributed d x d unitary.

    QR factorization of a seeded complex Gaussian matrix, with the phases
    of the R diagonal absorbed into Q so the distribution is exactly Haar.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    rng = np.random.default_rng(seed)
    a = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(a)
    diag = np.diag(r)
    return q @ np.diag((diag / np.abs(diag)).conj())
