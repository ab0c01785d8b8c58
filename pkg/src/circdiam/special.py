"""Riemann zeta for real s > 1."""

from __future__ import annotations

from scipy import special


def zeta(s: float) -> float:
    if s <= 1:
        raise ValueError(f"zeta(s) needs s > 1, got {s}")
    return float(special.zeta(s))
