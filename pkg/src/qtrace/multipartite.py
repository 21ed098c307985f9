"""Inner-party tracing and the general sequential multipartite partial trace.

For a tripartition H_a (x) H_b (x) H_c the composite row index is
r = j*db*dc + k*dc + l (j over a, k over b, l over c, 0-based).  Tracing
the middle party needs no multiplications:

  O^{ac}[j*dc+l, m*dc+o] = sum_k O[j*db*dc + k*dc + l, m*db*dc + k*dc + o]

An arbitrary multipartite trace reduces to repeated inner traces: each
traced subsystem is eliminated with everything currently to its left as
the effective a-party and everything to its right as the c-party.  Kept
subsystems keep their original relative order.
"""

from __future__ import annotations

import itertools
from math import prod
from typing import Optional, Sequence

import numpy as np

from .linalg import is_hermitian, require_square
from .opcount import OpCounter

__all__ = [
    "ptrace_inner",
    "ptrace_inner_hermitian",
    "partial_trace",
    "partial_trace_direct",
    "reduced_dimension",
]

HERMITIAN_INPUT_TOL = 1e-10


def _checked_tripartite(op, da: int, db: int, dc: int) -> np.ndarray:
    a = require_square(op)
    if min(da, db, dc) < 1:
        raise ValueError(f"dimensions must be >= 1, got ({da}, {db}, {dc})")
    if da * db * dc != a.shape[0]:
        raise ValueError(
            f"dimension mismatch: da*db*dc = {da * db * dc} "
            f"but operator has size {a.shape[0]}"
        )
    return a


def _outer_indices(da: int, db: int, dc: int) -> np.ndarray:
    """Composite indices {j*db*dc + l} enumerating (a, c) pairs, j major."""
    return (np.arange(da)[:, None] * (db * dc) + np.arange(dc)[None, :]).ravel()


def ptrace_inner(op, da: int, db: int, dc: int,
                 counter: Optional[OpCounter] = None) -> np.ndarray:
    """Trace over the middle party of a tripartition.

    Result is (da*dc) x (da*dc); executes exactly da^2*dc^2*(db-1) scalar
    sums and no multiplications.  da = 1 and dc = 1 reduce to the bipartite
    fast traces.
    """
    a = _checked_tripartite(op, da, db, dc)
    if counter is not None:
        counter.reset()
    base = _outer_indices(da, db, dc)
    out = a[np.ix_(base, base)]
    for k in range(1, db):
        idx = base + k * dc
        out += a[np.ix_(idx, idx)]
    if counter is not None:
        counter.add_sops(da * da * dc * dc * (db - 1))
    return out


def ptrace_inner_hermitian(op, da: int, db: int, dc: int,
                           counter: Optional[OpCounter] = None) -> np.ndarray:
    """Inner trace computing only the upper triangle of the result.

    Requires Hermitian input (within 1e-10); saves
    da*dc*(da*dc-1)*(db-1)/2 sums relative to ptrace_inner.
    """
    a = _checked_tripartite(op, da, db, dc)
    if not is_hermitian(a, HERMITIAN_INPUT_TOL):
        raise ValueError("ptrace_inner_hermitian requires a Hermitian operator")
    if counter is not None:
        counter.reset()
    n = da * dc
    base = _outer_indices(da, db, dc)
    rows, cols = np.triu_indices(n)
    grows = base[rows]
    gcols = base[cols]
    acc = a[grows, gcols]
    for k in range(1, db):
        off = k * dc
        acc = acc + a[grows + off, gcols + off]
    out = np.zeros((n, n), dtype=np.complex128)
    out[rows, cols] = acc
    strict = rows < cols
    out[cols[strict], rows[strict]] = acc[strict].conj()
    if counter is not None:
        counter.add_sops((db - 1) * (n * (n + 1) // 2))
    return out


def _checked_system(rho, dims: Sequence[int], mask: Sequence[int]):
    a = require_square(rho)
    dims = [int(d) for d in dims]
    mask = [int(m) for m in mask]
    if len(dims) < 1:
        raise ValueError("dims must name at least one subsystem")
    if len(dims) != len(mask):
        raise ValueError(f"dims has {len(dims)} entries but mask has {len(mask)}")
    if any(d < 1 for d in dims):
        raise ValueError(f"subsystem dimensions must be >= 1, got {dims}")
    if any(m not in (0, 1) for m in mask):
        raise ValueError(f"mask entries must be 0 (trace out) or 1 (keep), got {mask}")
    if not any(mask):
        raise ValueError("mask must keep at least one subsystem")
    if prod(dims) != a.shape[0]:
        raise ValueError(
            f"dimension mismatch: product(dims) = {prod(dims)} "
            f"but operator has size {a.shape[0]}"
        )
    return a, dims, mask


def partial_trace(rho, dims: Sequence[int], mask: Sequence[int],
                  hermitian: bool = False) -> np.ndarray:
    """Trace out every subsystem whose mask entry is 0.

    Traced subsystems are eliminated left to right, each via ptrace_inner
    on the (left survivors, target, right survivors) tripartition; the
    result is independent of that order.  ``hermitian`` selects the
    triangle-only inner trace (input must then be Hermitian within 1e-10).
    """
    a, dims, mask = _checked_system(rho, dims, mask)
    step = ptrace_inner_hermitian if hermitian else ptrace_inner
    cur = np.array(a, dtype=np.complex128)
    cur_dims = list(dims)
    removed = 0
    for pos, flag in enumerate(mask):
        if flag:
            continue
        p = pos - removed
        da = prod(cur_dims[:p])
        dc = prod(cur_dims[p + 1:])
        cur = step(cur, da, cur_dims[p], dc)
        del cur_dims[p]
        removed += 1
    return cur


def partial_trace_direct(rho, dims: Sequence[int], mask: Sequence[int]) -> np.ndarray:
    """Reference partial trace straight from the definition.

    Sums M rho M^dagger over the joint computational basis of the traced
    subsystems, with M the Kronecker chain of identities on kept
    subsystems and basis bras on traced ones.  Dense products throughout;
    used as the independent oracle and as the CLI's direct method.
    """
    a, dims, mask = _checked_system(rho, dims, mask)
    traced = [i for i, m in enumerate(mask) if m == 0]
    if not traced:
        return np.array(a, dtype=np.complex128)
    dk = reduced_dimension(dims, mask)
    out = np.zeros((dk, dk), dtype=np.complex128)
    for combo in itertools.product(*(range(dims[t]) for t in traced)):
        sel = dict(zip(traced, combo))
        factors = []
        for s, d in enumerate(dims):
            if s in sel:
                bra = np.zeros((1, d), dtype=np.complex128)
                bra[0, sel[s]] = 1.0
                factors.append(bra)
            else:
                factors.append(np.eye(d, dtype=np.complex128))
        lifted = factors[0]
        for f in factors[1:]:
            lifted = np.kron(lifted, f)
        out += lifted @ a @ lifted.conj().T
    return out


def reduced_dimension(dims: Sequence[int], mask: Sequence[int]) -> int:
    """Product of the kept subsystem dimensions."""
    dims = [int(d) for d in dims]
    mask = [int(m) for m in mask]
    if len(dims) != len(mask):
        raise ValueError(f"dims has {len(dims)} entries but mask has {len(mask)}")
    return prod(d for d, m in zip(dims, mask) if m)
