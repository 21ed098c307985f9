"""Reduced density matrices via the Bloch parametrization.

A d-level state expands over the generalized Gell-Mann generators as
rho = I/d + sum_j (gamma_j/2) Gamma_j with real gamma_j = tr(Gamma_j rho).
The generators come in three groups (1-based indices in the formulas):

  diagonal      Gamma_j    = sqrt(2/(j(j+1))) (sum_{k<=j}|k><k| - j|j+1><j+1|)
  symmetric     Gamma_(k,l) = |k><l| + |l><k|          for k < l
  antisymmetric Gamma_(k,l) = -i(|k><l| - |l><k|)

ordered diagonal first (ascending j), then symmetric, then antisymmetric
(both lexicographic in (k, l)).  tr(Gamma_i Gamma_j) = 2 delta_ij.

For a composite state on H_a (x) H_b the routines below compute the Bloch
vector of the b-marginal Tr_a(rho), whose entries enter through
S[l,k] = sum_beta rho[beta*db+l, beta*db+k].  reduced_state_bloch
reassembles Tr_a(rho) itself from the diagonal-group components plus the
off-diagonal sums, never materializing the symmetric/antisymmetric
components.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .bipartite import _checked
from .linalg import is_hermitian, require_square
from .opcount import OpCounter

__all__ = [
    "GellMannBasis",
    "BlochVector",
    "gellmann_basis",
    "bloch_from_state",
    "state_from_bloch",
    "bloch_b_direct",
    "bloch_b_fast",
    "reduced_state_bloch",
]

HERMITIAN_INPUT_TOL = 1e-10
GAMMA_IMAG_TOL = 1e-11


@dataclass(frozen=True)
class GellMannBasis:
    """Generalized Gell-Mann generators of SU(d), in fixed order.

    ``pairs`` holds the shared 1-based (k, l) index order of the symmetric
    and antisymmetric groups.
    """

    d: int
    diagonal: tuple
    symmetric: tuple
    antisymmetric: tuple
    pairs: tuple

    def all(self) -> list[np.ndarray]:
        """Every generator: diagonal, then symmetric, then antisymmetric."""
        return list(self.diagonal) + list(self.symmetric) + list(self.antisymmetric)

    def __len__(self) -> int:
        return self.d * self.d - 1


@dataclass
class BlochVector:
    """Real expansion coefficients over a GellMannBasis, grouped as stored."""

    d: int
    gamma1: np.ndarray
    gamma2: np.ndarray
    gamma3: np.ndarray

    def as_array(self) -> np.ndarray:
        return np.concatenate([self.gamma1, self.gamma2, self.gamma3])

    def norm_squared(self) -> float:
        v = self.as_array()
        return float(v @ v)

    def purity_bound(self) -> float:
        """Upper bound 2(d-1)/d on norm_squared for density-matrix sources."""
        return 2.0 * (self.d - 1) / self.d


def gellmann_basis(d: int) -> GellMannBasis:
    """Construct the d-dimensional generator set (d >= 2)."""
    if d < 2:
        raise ValueError(f"generator basis needs d >= 2, got {d}")
    diagonal = []
    for j in range(1, d):
        coef = math.sqrt(2.0 / (j * (j + 1)))
        m = np.zeros((d, d), dtype=np.complex128)
        for k in range(j):
            m[k, k] = coef
        m[j, j] = -j * coef
        diagonal.append(m)
    pairs = [(k, l) for k in range(1, d + 1) for l in range(k + 1, d + 1)]
    symmetric = []
    antisymmetric = []
    for k, l in pairs:
        s = np.zeros((d, d), dtype=np.complex128)
        s[k - 1, l - 1] = 1.0
        s[l - 1, k - 1] = 1.0
        symmetric.append(s)
        t = np.zeros((d, d), dtype=np.complex128)
        t[k - 1, l - 1] = -1.0j
        t[l - 1, k - 1] = 1.0j
        antisymmetric.append(t)
    return GellMannBasis(
        d=d,
        diagonal=tuple(diagonal),
        symmetric=tuple(symmetric),
        antisymmetric=tuple(antisymmetric),
        pairs=tuple(pairs),
    )


def _real_gamma(value: complex, what: str) -> float:
    if abs(value.imag) > GAMMA_IMAG_TOL:
        raise ValueError(
            f"imaginary residue {value.imag:.3e} on {what} exceeds {GAMMA_IMAG_TOL}; "
            "input is effectively non-Hermitian"
        )
    return float(value.real)


def _split_gamma(d: int, flat: list[float]) -> BlochVector:
    n_diag = d - 1
    n_pair = d * (d - 1) // 2
    return BlochVector(
        d=d,
        gamma1=np.array(flat[:n_diag], dtype=np.float64),
        gamma2=np.array(flat[n_diag:n_diag + n_pair], dtype=np.float64),
        gamma3=np.array(flat[n_diag + n_pair:], dtype=np.float64),
    )


def bloch_from_state(rho_b, basis: GellMannBasis) -> BlochVector:
    """Bloch vector of a single-party state: gamma_j = tr(Gamma_j rho_b)."""
    rho = require_square(rho_b)
    if rho.shape[0] != basis.d:
        raise ValueError(f"state has size {rho.shape[0]} but basis has d={basis.d}")
    if not is_hermitian(rho, HERMITIAN_INPUT_TOL):
        raise ValueError("bloch_from_state requires a Hermitian state")
    flat = [
        _real_gamma(complex(np.trace(g @ rho)), f"gamma[{i}]")
        for i, g in enumerate(basis.all())
    ]
    return _split_gamma(basis.d, flat)


def state_from_bloch(gamma: BlochVector, basis: GellMannBasis) -> np.ndarray:
    """Literal reconstruction rho = I/d + sum_j (gamma_j/2) Gamma_j."""
    if gamma.d != basis.d:
        raise ValueError(f"vector has d={gamma.d} but basis has d={basis.d}")
    d = basis.d
    rho = np.eye(d, dtype=np.complex128) / d
    for coef, g in zip(gamma.as_array(), basis.all()):
        rho += (coef / 2.0) * g
    return rho


def bloch_b_direct(rho, dims, counter: Optional[OpCounter] = None) -> BlochVector:
    """Bloch vector of Tr_a(rho) by the definition gamma_j = tr((I_a (x) Gamma_j) rho).

    Builds each lifted generator densely and takes the full product with
    rho before summing the diagonal; the deliberately unoptimized path.
    Generator construction itself is not charged to the counter.
    """
    a, da, db = _checked(rho, dims)
    if not is_hermitian(a, HERMITIAN_INPUT_TOL):
        raise ValueError("bloch_b_direct requires a Hermitian operator")
    if counter is not None:
        counter.reset()
    basis = gellmann_basis(db)
    d = da * db
    eye = np.eye(da, dtype=np.complex128)
    flat = []
    for i, g in enumerate(basis.all()):
        lifted = np.kron(eye, g)
        product = lifted @ a
        val = complex(np.trace(product))
        flat.append(_real_gamma(val, f"gamma[{i}]"))
        if counter is not None:
            counter.add_mops(da * da * db * db)   # Kronecker lift
            counter.add_mops(d * d * d)           # lifted @ rho
            counter.add_sops(d * d * (d - 1))     # lifted @ rho
            counter.add_sops(d - 1)               # diagonal sum
    return _split_gamma(db, flat)


def _block_diag_sums(a: np.ndarray, da: int, db: int) -> tuple[np.ndarray, int]:
    """sum_beta of the diagonals of the da diagonal blocks, ascending beta.

    Returns the db sums and the executed scalar-add count db*(da-1).
    """
    gdiag = np.diagonal(a)
    out = gdiag[0:db].copy()
    for beta in range(1, da):
        out += gdiag[beta * db:(beta + 1) * db]
    return out, db * (da - 1)


def _gamma1_from_diag(diag_sums: np.ndarray, db: int):
    """Diagonal-group components from cached block-diagonal sums.

    gamma1[j-1] = sqrt(2/(j(j+1))) (sum_{alpha<j} S[alpha,alpha] - j S[j,j]),
    with the partial sums kept as a running prefix.  Returns the components,
    the coefficient list, and the executed (mops, sops).
    """
    gamma1 = []
    coefs = []
    mops = 0
    sops = 0
    prefix = diag_sums[0] if db > 1 else None
    for j in range(1, db):
        if j >= 2:
            prefix = prefix + diag_sums[j - 1]
            sops += 1
        coef = math.sqrt(2.0 / (j * (j + 1)))
        mops += 3                                  # j(j+1), divide, sqrt
        val = coef * (prefix - j * diag_sums[j])
        mops += 2                                  # j*S and coef*(...)
        sops += 1                                  # the subtraction
        gamma1.append(_real_gamma(complex(val), f"gamma1[{j - 1}]"))
        coefs.append(coef)
    return gamma1, coefs, mops, sops


def bloch_b_fast(rho, dims, counter: Optional[OpCounter] = None) -> BlochVector:
    """Bloch vector of Tr_a(rho) exploiting the generators' sparsity.

    With S[l,k] = sum_beta rho[beta*db+l, beta*db+k] (1-based k < l):
    gamma1 as in the diagonal-group formula, gamma2_(k,l) = 2 Re S[l-1,k-1],
    gamma3_(k,l) = 2 Im S[l-1,k-1].
    """
    a, da, db = _checked(rho, dims)
    if not is_hermitian(a, HERMITIAN_INPUT_TOL):
        raise ValueError("bloch_b_fast requires a Hermitian operator")
    if counter is not None:
        counter.reset()
    s = a[0:db, 0:db].copy()
    for beta in range(1, da):
        s += a[beta * db:(beta + 1) * db, beta * db:(beta + 1) * db]
    sops = db * db * (da - 1)
    gamma1, _, g_mops, g_sops = _gamma1_from_diag(np.diagonal(s), db)
    mops = g_mops
    sops += g_sops
    gamma2 = []
    gamma3 = []
    for k in range(1, db + 1):
        for l in range(k + 1, db + 1):
            z = s[l - 1, k - 1]
            gamma2.append(2.0 * z.real)
            gamma3.append(2.0 * z.imag)
            mops += 2
    if counter is not None:
        counter.add_mops(mops)
        counter.add_sops(sops)
    return BlochVector(
        d=db,
        gamma1=np.array(gamma1, dtype=np.float64),
        gamma2=np.array(gamma2, dtype=np.float64),
        gamma3=np.array(gamma3, dtype=np.float64),
    )


def reduced_state_bloch(rho, dims, counter: Optional[OpCounter] = None) -> np.ndarray:
    """Tr_a(rho) assembled from the Bloch expansion without full products.

    Computes only the diagonal-group components gamma1; the diagonal of the
    result follows the recursion (0-based)

        xi_0 = 1/db,  xi_j = gamma1[j-1]/sqrt(2 j (j+1)),
        Delta[0,0] = sum_k xi_k,
        Delta[j,j] = Delta[j-1,j-1] + (j-1) xi_{j-1} - (j+1) xi_j,

    and the off-diagonal entries are the sums
    Theta[l,k] = sum_beta rho[beta*db+l, beta*db+k] for l > k, mirrored by
    conjugation.  Assumes unit trace (the I/db term); input must be
    Hermitian within 1e-10.  Executed ops stay within mops <= 12(db-1)+1
    and sops <= db^2(da-1) + 5(db-1) + 1.
    """
    a, da, db = _checked(rho, dims)
    if not is_hermitian(a, HERMITIAN_INPUT_TOL):
        raise ValueError("reduced_state_bloch requires a Hermitian operator")
    if counter is not None:
        counter.reset()
    mops = 0
    sops = 0
    out = np.zeros((db, db), dtype=np.complex128)

    if db == 1:
        out[0, 0] = 1.0 / db
        if counter is not None:
            counter.add_mops(1)
        return out

    diag_sums, d_sops = _block_diag_sums(a, da, db)
    sops += d_sops
    gamma1, coefs, g_mops, g_sops = _gamma1_from_diag(diag_sums, db)
    mops += g_mops
    sops += g_sops

    # xi_j = gamma1[j-1] / sqrt(2 j (j+1)) = gamma1[j-1] * coef_j / 2
    xi = [1.0 / db]
    mops += 1
    for g, c in zip(gamma1, coefs):
        xi.append(g * c * 0.5)
        mops += 2

    delta = xi[0]
    for k in range(1, db):
        delta = delta + xi[k]
        sops += 1
    out[0, 0] = delta
    for j in range(1, db):
        delta = delta + (j - 1) * xi[j - 1] - (j + 1) * xi[j]
        mops += 2
        sops += 2
        out[j, j] = delta

    rows, cols = np.tril_indices(db, k=-1)
    theta = a[rows, cols].copy()
    for beta in range(1, da):
        off = beta * db
        theta = theta + a[rows + off, cols + off]
    sops += (da - 1) * (db * (db - 1) // 2)
    out[rows, cols] = theta
    out[cols, rows] = theta.conj()

    if counter is not None:
        counter.add_mops(mops)
        counter.add_sops(sops)
    return out
