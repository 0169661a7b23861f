"""Corolla polynomial for arbitrary valences and the contraction-deletion residual.

At every vertex a selection keeps exactly two half-edges and takes all the
others.  A vertex produced by a split-mode contraction only admits kept
pairs with one half-edge from each endpoint block.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import combinations, product
from typing import Sequence

from .cycles import Cycle, enumerate_cycles, iter_disjoint_families
from .halfedge import HalfEdgeGraph, contract_edge, delete_halfedge, delete_halfedges
from .kernels import selection_scan
from .multipoly import Monomial, Polynomial, mask_of

__all__ = [
    "PathMismatchError",
    "allowed_pairs",
    "vertex_pair_sum",
    "general_corolla",
    "general_corolla_by_families",
    "general_corolla_by_subsets",
    "contraction_deletion_residual",
    "contraction_deletion_terms",
]


class PathMismatchError(AssertionError):
    """The two computation routes for the general corolla polynomial disagree."""


def allowed_pairs(G: HalfEdgeGraph, v: int) -> list[tuple[int, int]]:
    """Unordered pairs of half-edges that may be kept at ``v``."""
    split = G.splits[v]
    if split is None:
        return list(combinations(G.vertices[v], 2))
    left, right = split
    return [tuple(sorted(p)) for p in product(left, right)]


def _kept_pair_options(G: HalfEdgeGraph, v: int) -> list[int]:
    full = mask_of(G.vertices[v])
    return [full & ~mask_of(pair) for pair in allowed_pairs(G, v)]


def vertex_pair_sum(G: HalfEdgeGraph, v: int) -> Polynomial:
    """Sum over kept pairs of the product of the remaining variables at ``v``."""
    if G.valence(v) < 2:
        raise ValueError(f"vertex {v} has valence {G.valence(v)} < 2")
    return Polynomial.from_masks(_kept_pair_options(G, v))


def general_corolla_by_subsets(G: HalfEdgeGraph) -> Polynomial:
    options = [_kept_pair_options(G, v) for v in range(G.n_vertices)]
    return Polynomial.from_masks(rec[0] for rec in selection_scan(G, options, acyclic_only=True))


def _cycle_allowed(G: HalfEdgeGraph, C: Cycle) -> bool:
    for v in C.vertex_set:
        split = G.splits[v]
        if split is None:
            continue
        used = [h for h in G.vertices[v] if h in C.halfedge_set]
        if sum(h in split[0] for h in used) != 1:
            return False
    return True


def general_corolla_by_families(G: HalfEdgeGraph) -> Polynomial:
    cycles = [C for C in enumerate_cycles(G) if _cycle_allowed(G, C)]
    options = [_kept_pair_options(G, v) for v in range(G.n_vertices)]
    acc: dict[int, int] = defaultdict(int)
    for fam in iter_disjoint_families(cycles):
        sign = -1 if len(fam) % 2 else 1
        base = 0
        covered = 0
        for C in fam:
            covered |= C.vertex_mask
            for v in C.vertex_set:
                for h in G.vertices[v]:
                    if h not in C.halfedge_set:
                        base |= 1 << h
        free = [options[v] for v in range(G.n_vertices) if not covered >> v & 1]
        for combo in product(*free):
            m = base
            for part in combo:
                m |= part
            acc[m] += sign
    return Polynomial((Monomial(m), c) for m, c in acc.items())


def general_corolla(G: HalfEdgeGraph, method: str = "subsets") -> Polynomial:
    """``method`` is ``subsets``, ``families`` or ``both`` (computes and compares)."""
    if method == "subsets":
        return general_corolla_by_subsets(G)
    if method == "families":
        return general_corolla_by_families(G)
    if method == "both":
        a = general_corolla_by_subsets(G)
        b = general_corolla_by_families(G)
        if a != b:
            raise PathMismatchError(f"subset and family routes differ by {(a - b).text()}")
        return a
    raise ValueError(f"unknown method {method!r}")


def contraction_deletion_terms(
    G: HalfEdgeGraph, e: Sequence[int], mode: str = "split"
) -> dict[str, Polynomial]:
    """The five polynomials entering the contraction-deletion relation for edge ``e``."""
    h, k = e
    contracted = contract_edge(G, (h, k), mode)
    return {
        "G": general_corolla(G),
        "G/e": general_corolla(contracted),
        "G-h": general_corolla(delete_halfedge(G, h)),
        "G-k": general_corolla(delete_halfedge(G, k)),
        "G-hk": general_corolla(delete_halfedges(G, (h, k))),
    }


def contraction_deletion_residual(G: HalfEdgeGraph, e: Sequence[int], mode: str = "split") -> Polynomial:
    """Right side minus left side of
    C(G) = C(G/e) + a_h C(G-h) + a_k C(G-k) - a_h a_k C(G-hk)."""
    h, k = e
    t = contraction_deletion_terms(G, e, mode)
    ah, ak = Polynomial.var(h), Polynomial.var(k)
    rhs = t["G/e"] + ah * t["G-h"] + ak * t["G-k"] - (ah * ak) * t["G-hk"]
    return rhs - t["G"]
