"""Corolla polynomials of half-edge graphs."""

from .corolla_poly import (
    component_count_c,
    corolla,
    corolla_by_definition,
    corolla_by_recurrence,
    corolla_by_subsets,
    corolla_restricted,
    vertex_sum,
)
from .cycles import Cycle, enumerate_cycles, disjoint_families
from .genvalence import contraction_deletion_residual, general_corolla, vertex_pair_sum
from .halfedge import HalfEdgeGraph, build_graph, stats
from .kernels import HAVE_EXTENSION
from .multipoly import Monomial, Polynomial, parse_polynomial
from .universal import potts_poly, universal_poly, universal_tilde

__version__ = "0.1.0"
