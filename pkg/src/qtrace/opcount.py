"""Mutable tally of scalar multiplications and additions.

Multiplication-like operations (multiply, divide, square root) count as
mops; addition-like operations (add, subtract) count as sops.
Conjugation and sign flips are free.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class OpCounter:
    """Running totals of scalar multiplications (mops) and sums (sops)."""

    mops: int = 0
    sops: int = 0

    def reset(self) -> None:
        self.mops = 0
        self.sops = 0

    def add_mops(self, n: int) -> None:
        self.mops += n

    def add_sops(self, n: int) -> None:
        self.sops += n

    def as_tuple(self) -> tuple[int, int]:
        return (self.mops, self.sops)
