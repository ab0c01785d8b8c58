"""Kernel lattices of circulant graphs and their geometric invariants."""

from .covering import covering_radius_2d, covering_radius_2d_result, rescaled_covering_radius
from .enumerate import psi_directed, psi_undirected, shortest_nonneg, shortest_weighted_l1, torus_moment_mc
from .lattice import IntegerLattice, RealLattice, kernel_lattice, rescale
from .oracles import delta, kappa, kappa_lattice, omega_lattice
from .polygons import Polytope2, crosspolytope, simplex, unit_square, weighted_crosspolytope, weighted_simplex

__all__ = [
    "IntegerLattice",
    "Polytope2",
    "RealLattice",
    "covering_radius_2d",
    "covering_radius_2d_result",
    "crosspolytope",
    "delta",
    "kappa",
    "kappa_lattice",
    "kernel_lattice",
    "omega_lattice",
    "psi_directed",
    "psi_undirected",
    "rescale",
    "rescaled_covering_radius",
    "shortest_nonneg",
    "shortest_weighted_l1",
    "simplex",
    "torus_moment_mc",
    "unit_square",
    "weighted_crosspolytope",
    "weighted_simplex",
]
