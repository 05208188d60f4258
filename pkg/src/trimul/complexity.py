"""Operation counts and complexity exponents of the doubled-block schemes.

A 2x2 blocking of m x m operands (m = 2n even) removes the cross products
structurally and multiplies the per-block count by 8, giving

    M_disjoint(m) = m^3 + 12 m^2 + 36 m        (all three products)
    M_single(m)   = m^3/3 + 4 m^2 + (32/3) m   (one product)

Since the disjoint scheme delivers three independent products for one
multiplication budget, the per-product cost is M_disjoint/3, and

    omega <= log_m(M_disjoint(m) / 3)   or   log_m(M_single(m)).

Both bounds are minimized at m = 48, where M_disjoint/3 = 46656 = 6^6
exactly and the exponents land just below 2.77706 and 2.776706.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction


def _require_even(m: int):
    if m % 2 != 0 or m < 4:
        raise ValueError(f"block size must be even and >= 4, got {m}")


def m_disjoint(m: int) -> int:
    """Multiplication count of the blocked disjoint scheme, exact."""
    _require_even(m)
    return m ** 3 + 12 * m ** 2 + 36 * m


def m_single(m: int) -> Fraction:
    """Multiplication count of the blocked single-product scheme, exact."""
    _require_even(m)
    return Fraction(m ** 3, 3) + 4 * m ** 2 + Fraction(32 * m, 3)


def omega(m: int, kind: str) -> float:
    """Exponent bound at block size m; only this final log is floating."""
    if kind == "disjoint":
        return math.log(m_disjoint(m) / 3) / math.log(m)
    if kind == "single":
        return math.log(m_single(m)) / math.log(m)
    raise ValueError(f"kind must be 'disjoint' or 'single', got {kind!r}")


def find_min_omega(kind: str, m_lo: int = 4, m_hi: int = 1000) -> tuple[int, float]:
    """Scan even block sizes in [m_lo, m_hi] for the smallest exponent.

    Ties break toward the smaller block size.
    """
    _require_even(m_lo)
    _require_even(m_hi)
    if m_lo > m_hi:
        raise ValueError("empty scan range")
    best_m, best_omega = m_lo, omega(m_lo, kind)
    for m in range(m_lo + 2, m_hi + 1, 2):
        value = omega(m, kind)
        if value < best_omega:
            best_m, best_omega = m, value
    return best_m, best_omega


@dataclass(frozen=True)
class ComplexityReport:
    """Counts and exponents at one even block size."""

    m: int
    m_disjoint: int
    m_single: Fraction
    omega_disjoint: float
    omega_single: float

    @classmethod
    def at(cls, m: int) -> "ComplexityReport":
        return cls(m=m, m_disjoint=m_disjoint(m), m_single=m_single(m),
                   omega_disjoint=omega(m, "disjoint"),
                   omega_single=omega(m, "single"))


def scan(m_lo: int = 4, m_hi: int = 1000) -> list[ComplexityReport]:
    """Reports for every even block size in [m_lo, m_hi]."""
    _require_even(m_lo)
    _require_even(m_hi)
    return [ComplexityReport.at(m) for m in range(m_lo, m_hi + 1, 2)]
