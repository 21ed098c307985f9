"""Analytic operation-count model for the reduction methods.

Every trace/reconstruction routine in this package has a closed-form count
of scalar multiplications (mops) and scalar additions (sops) as a function
of the subsystem dimensions.  The formulas here are exact integers; they
are validated against the instrumented counters in the implementation
(equality for the optimized paths, a bounded constant factor for the
dense paths, whose intermediate-product bookkeeping admits variants).

Naming: for bipartite methods the operator lives on H_a (x) H_b with the
b party traced out (direct_b, semi_b, fast_b, fast_b_hermitian).  Inner
methods trace the middle party of H_a (x) H_b (x) H_c.  Bloch methods
produce the b-marginal, tracing out a (bloch_direct, bloch_semi,
bloch_gellmann; the last is the reconstruction route of
reduced_state_bloch).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

__all__ = [
    "Method",
    "CostEstimate",
    "cost_estimate",
    "asymptotic_exponents",
    "cost_direct_steps",
]


class Method(str, enum.Enum):
    """Closed enumeration of the modeled reduction methods."""

    DIRECT_B = "direct_b"
    SEMI_B = "semi_b"
    FAST_B = "fast_b"
    FAST_B_HERMITIAN = "fast_b_hermitian"
    INNER_DIRECT = "inner_direct"
    INNER_FAST = "inner_fast"
    INNER_FAST_HERMITIAN = "inner_fast_hermitian"
    BLOCH_DIRECT = "bloch_direct"
    BLOCH_SEMI = "bloch_semi"
    BLOCH_GELLMANN = "bloch_gellmann"


_INNER_METHODS = frozenset(
    {Method.INNER_DIRECT, Method.INNER_FAST, Method.INNER_FAST_HERMITIAN}
)


@dataclass(frozen=True)
class CostEstimate:
    """Exact predicted operation counts (integer arithmetic throughout)."""

    mops: int
    sops: int

    def __post_init__(self):
        if not isinstance(self.mops, int) or not isinstance(self.sops, int):
            raise TypeError("operation counts must be integers")
        if self.mops < 0 or self.sops < 0:
            raise ValueError("operation counts must be non-negative")

    def as_tuple(self) -> tuple[int, int]:
        return (self.mops, self.sops)


def _check_dim(name: str, value: int) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    if value < 1:
        raise ValueError(f"{name} must be >= 1, got {value}")
    return value


def cost_estimate(
    method: Method, da: int, db: int, dc: Optional[int] = None
) -> CostEstimate:
    """Predicted (mops, sops) for one reduction at the given dimensions.

    ``dc`` is required for the inner methods and rejected otherwise.
    """
    method = Method(method)
    da = _check_dim("da", da)
    db = _check_dim("db", db)
    if method in _INNER_METHODS:
        if dc is None:
            raise ValueError(f"{method.value} requires dc")
        dc = _check_dim("dc", dc)
    elif dc is not None:
        raise ValueError(f"{method.value} does not take dc")

    if method is Method.DIRECT_B:
        return CostEstimate(
            mops=da**2 * db**2 * (2 + da * (db + 1)),
            sops=da**2 * db * (da * db - 1) * (db + 1),
        )
    if method is Method.SEMI_B:
        return CostEstimate(
            mops=da**2 * db**2 * (db + 1),
            sops=da**2 * db * (db**2 - 1),
        )
    if method is Method.FAST_B:
        return CostEstimate(mops=0, sops=da**2 * (db - 1))
    if method is Method.FAST_B_HERMITIAN:
        return CostEstimate(
            mops=0,
            sops=da**2 * (db - 1) - da * (da - 1) * (db - 1) // 2,
        )
    if method is Method.INNER_DIRECT:
        return CostEstimate(
            mops=da**2 * db**2 * dc**2 * (da * dc * (db + 1) + 2),
            sops=da**2 * db * dc**2 * (db + 1) * (da * db * dc - 1),
        )
    if method is Method.INNER_FAST:
        return CostEstimate(mops=0, sops=da**2 * dc**2 * (db - 1))
    if method is Method.INNER_FAST_HERMITIAN:
        n = da * dc
        return CostEstimate(
            mops=0,
            sops=n**2 * (db - 1) - n * (n - 1) * (db - 1) // 2,
        )
    if method is Method.BLOCH_DIRECT:
        return CostEstimate(
            mops=db**2 * (db**2 + da**2 * (db**2 - 1) * (da * db + 1)),
            sops=(db**2 - 1) * (da**2 * db**2 + 1) * (da * db - 1)
            + db**2 * (db**2 - 2)
            + db,
        )
    if method is Method.BLOCH_SEMI:
        return CostEstimate(
            mops=2 * db**2 * (db**2 - 1),
            sops=db**2 * ((db**2 - 1) * da - 1) + db,
        )
    if method is Method.BLOCH_GELLMANN:
        return CostEstimate(
            mops=12 * (db - 1) + 1,
            sops=db**2 * (da - 1) + 5 * (db - 1) + 1,
        )
    raise ValueError(f"unhandled method {method!r}")


_EXPONENTS = {
    Method.DIRECT_B: (3, 3),
    Method.SEMI_B: (2, 3),
    Method.FAST_B: (2, 1),
    Method.FAST_B_HERMITIAN: (2, 1),
    Method.INNER_DIRECT: (3, 3),
    Method.INNER_FAST: (2, 1),
    Method.INNER_FAST_HERMITIAN: (2, 1),
    Method.BLOCH_DIRECT: (3, 5),
    Method.BLOCH_SEMI: (1, 4),
    Method.BLOCH_GELLMANN: (1, 2),
}


def asymptotic_exponents(method: Method) -> tuple[int, int]:
    """Leading exponents (p, q) of da^p db^q for the dominant op count.

    For the inner methods the outer parties act jointly, so p reads on
    the combined dimension da*dc and q on the traced middle party.
    """
    return _EXPONENTS[Method(method)]


def cost_direct_steps(da: int, db: int) -> list[tuple[str, CostEstimate]]:
    """Per-basis-vector step breakdown of the definition-based trace.

    For each of the db basis vectors the method lifts the bra and ket,
    multiplies the operator from the left, then from the right.  Rows are
    (label, per-step costs); summing all rows db times reproduces
    cost_estimate(direct_b) up to the accumulation adds.
    """
    da = _check_dim("da", da)
    db = _check_dim("db", db)
    d = da * db
    return [
        ("lift_bra", CostEstimate(mops=da**2 * db, sops=0)),
        ("lift_ket", CostEstimate(mops=da**2 * db, sops=0)),
        (
            "left_product",
            CostEstimate(mops=da**3 * db**2, sops=da**2 * db * (d - 1)),
        ),
        (
            "right_product",
            CostEstimate(mops=da**3 * db, sops=da**2 * (d - 1)),
        ),
    ]
