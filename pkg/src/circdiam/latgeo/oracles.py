"""Parametrised unimodular lattices with closed-form covering radii.

omega_lattice(alpha, beta, gamma) has rho(K, L) = delta^{-1/2} for the unit
square K, and kappa_lattice(alpha, beta, gamma) has rho(Delta, L) =
kappa^{-1/2} for the simplex; both are used as test oracles for the coverage
engine.
"""

from __future__ import annotations

import numpy as np

from ..errors import ValidationError
from .lattice import RealLattice


def delta(alpha: float, beta: float, gamma: float) -> float:
    return (1 - alpha) * beta + alpha * gamma


def kappa(alpha: float, beta: float, gamma: float) -> float:
    return 0.25 + alpha * beta + alpha * gamma + beta * gamma


def in_omega(alpha: float, beta: float, gamma: float) -> bool:
    return all(0 < x < 1 for x in (alpha, beta, gamma)) and beta + gamma > 1


def in_kappa_region(alpha: float, beta: float, gamma: float) -> bool:
    return (
        all(-0.5 < x < 0.5 for x in (alpha, beta, gamma))
        and alpha + beta > 0
        and alpha + gamma > 0
        and beta + gamma > 0
        and alpha + beta + gamma < 0.5
    )


def omega_lattice(alpha: float, beta: float, gamma: float) -> RealLattice:
    """delta^{-1/2} (Z(alpha, -beta) + Z(1, gamma - beta))."""
    if not in_omega(alpha, beta, gamma):
        raise ValidationError(f"({alpha}, {beta}, {gamma}) is outside (0,1)^3 with beta + gamma > 1")
    d = delta(alpha, beta, gamma)
    basis = d**-0.5 * np.array([[alpha, -beta], [1.0, gamma - beta]])
    return RealLattice(basis=basis, covolume=1.0)


def kappa_lattice(alpha: float, beta: float, gamma: float) -> RealLattice:
    """kappa^{-1/2} (Z(-1/2 + gamma, -alpha - gamma) + Z(beta + gamma, -1/2 - gamma))."""
    if not in_kappa_region(alpha, beta, gamma):
        raise ValidationError(f"({alpha}, {beta}, {gamma}) is outside the kappa parameter region")
    kap = kappa(alpha, beta, gamma)
    basis = kap**-0.5 * np.array([[-0.5 + gamma, -alpha - gamma], [beta + gamma, -0.5 - gamma]])
    return RealLattice(basis=basis, covolume=1.0)


def sample_omega(rng: np.random.Generator) -> tuple[float, float, float]:
    """Uniform point of Omega by rejection from the unit cube."""
    while True:
        p = rng.random(3)
        if in_omega(*p):
            return tuple(float(x) for x in p)


def sample_kappa_region(rng: np.random.Generator) -> tuple[float, float, float]:
    while True:
        p = rng.random(3) - 0.5
        if in_kappa_region(*p):
            return tuple(float(x) for x in p)
