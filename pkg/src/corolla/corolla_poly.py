"""The corolla polynomial of 3-regular half-edge graphs.

Three independent routes are provided:

* :func:`corolla_by_definition` -- the alternating sum over families of
  vertex-disjoint cycles, each cycle vertex contributing its opposite
  half-edge and each free vertex the sum of its half-edge variables;
* :func:`corolla_by_subsets` -- the sum over one-per-vertex selections whose
  removal leaves no cycle;
* :func:`corolla_by_recurrence` -- memoized vertex recurrence.
"""

from __future__ import annotations

from collections import defaultdict
from itertools import product
from typing import Callable, Iterable, Sequence

from .cycles import Cycle, enumerate_cycles, iter_disjoint_families, opposite_halfedge
from .halfedge import (
    HalfEdgeGraph,
    canonical_key,
    components,
    delete_halfedges,
    induced_subgraph,
    join_external,
    remove_edge_set,
    remove_vertex,
)
from .kernels import selection_scan
from .multipoly import Monomial, Polynomial

__all__ = [
    "NotThreeRegularError",
    "require_three_regular",
    "vertex_sum",
    "vertex_sum_product",
    "corolla_by_definition",
    "corolla_by_subsets",
    "corolla_by_recurrence",
    "corolla_restricted",
    "corolla",
    "admissible_selections",
    "component_count_c",
    "SUBSETS_MAX_VERTICES",
]

# auto method switches from the 3^v scan to the recurrence above this size
SUBSETS_MAX_VERTICES = 13


class NotThreeRegularError(ValueError):
    def __init__(self, vertex: int, valence: int):
        super().__init__(f"vertex {vertex} has valence {valence}; a 3-regular graph is required")
        self.vertex = vertex
        self.valence = valence


def require_three_regular(G: HalfEdgeGraph) -> None:
    for v, hs in enumerate(G.vertices):
        if len(hs) != 3:
            raise NotThreeRegularError(v, len(hs))


def vertex_sum(G: HalfEdgeGraph, v: int) -> Polynomial:
    """Sum of the half-edge variables at ``v``."""
    return Polynomial.linear(G.vertices[v])


def vertex_sum_product(G: HalfEdgeGraph) -> Polynomial:
    out = Polynomial.one()
    for v in range(G.n_vertices):
        out = out * vertex_sum(G, v)
    return out


def _alternating_family_sum(
    G: HalfEdgeGraph, cycles: Sequence[Cycle], allowed: int, free_vertices: Iterable[int]
) -> Polynomial:
    free_vertices = list(free_vertices)
    acc: dict[int, int] = defaultdict(int)
    opp: dict[tuple[Cycle, int], int] = {}
    for fam in iter_disjoint_families(cycles, allowed):
        sign = -1 if len(fam) % 2 else 1
        base = 0
        covered = 0
        for C in fam:
            covered |= C.vertex_mask
            for v in C.vertex_set:
                key = (C, v)
                if key not in opp:
                    opp[key] = opposite_halfedge(G, C, v)
                base |= 1 << opp[key]
        choices = [[1 << h for h in G.vertices[v]] for v in free_vertices if not covered >> v & 1]
        for combo in product(*choices):
            m = base
            for bit in combo:
                m |= bit
            acc[m] += sign
    return Polynomial((Monomial(m), c) for m, c in acc.items())


def corolla_by_definition(G: HalfEdgeGraph) -> Polynomial:
    """Alternating sum over vertex-disjoint cycle families."""
    require_three_regular(G)
    return _alternating_family_sum(G, enumerate_cycles(G), -1, range(G.n_vertices))


def admissible_selections(G: HalfEdgeGraph) -> list[int]:
    """Bitmasks of one-per-vertex selections leaving an acyclic remainder."""
    require_three_regular(G)
    options = [[1 << h for h in hs] for hs in G.vertices]
    return [rec[0] for rec in selection_scan(G, options, acyclic_only=True)]


def corolla_by_subsets(G: HalfEdgeGraph) -> Polynomial:
    """Generating function of admissible selections (every coefficient 1)."""
    return Polynomial.from_masks(admissible_selections(G))


def _default_pivot(G: HalfEdgeGraph) -> int:
    p = G.partner
    return min(
        range(G.n_vertices), key=lambda v: (sum(h not in p for h in G.vertices[v]), v)
    )


PivotRule = Callable[[HalfEdgeGraph], int]


def corolla_by_recurrence(
    G: HalfEdgeGraph,
    pivot: PivotRule | None = None,
    memo: dict[bytes, Polynomial] | None = None,
) -> Polynomial:
    """Vertex recurrence with disjoint-union factorization.

    ``pivot`` picks the vertex to expand; the result does not depend on it.
    ``memo`` may be shared across calls (keys are label-aware).
    """
    require_three_regular(G)
    return _recur(G, pivot or _default_pivot, {} if memo is None else memo)


def _recur(G: HalfEdgeGraph, pivot: PivotRule, memo: dict) -> Polynomial:
    if G.n_vertices == 0:
        return Polynomial.one()
    key = canonical_key(G)
    hit = memo.get(key)
    if hit is not None:
        return hit
    comps = components(G)
    if len(comps) > 1:
        out = Polynomial.one()
        for comp in comps:
            out = out * _recur(induced_subgraph(G, comp), pivot, memo)
    else:
        out = _expand_vertex(G, pivot(G), pivot, memo)
    memo[key] = out
    return out


def _expand_vertex(G: HalfEdgeGraph, v: int, pivot: PivotRule, memo: dict) -> Polynomial:
    hs = G.vertices[v]
    p = G.partner
    a = Polynomial.var
    rest = remove_vertex(G, v)
    loop = [h for h in hs if h in p and p[h] in hs]
    if loop:
        # tadpole at v: selecting the third half-edge keeps the loop
        return Polynomial.linear(loop) * _recur(rest, pivot, memo)
    ext = [h for h in hs if h not in p]
    internal = [h for h in hs if h in p]
    if len(ext) >= 2:
        return Polynomial.linear(hs) * _recur(rest, pivot, memo)
    if len(ext) == 1:
        h, k = internal
        through = join_external(rest, p[h], p[k])
        return a(ext[0]) * _recur(through, pivot, memo) + Polynomial.linear(internal) * _recur(
            rest, pivot, memo
        )
    out = Polynomial.zero()
    for i, h in enumerate(hs):
        x, y = (p[hs[j]] for j in range(3) if j != i)
        out = out + a(h) * _recur(join_external(rest, x, y), pivot, memo)
    return out


def corolla_restricted(G: HalfEdgeGraph, E: Iterable[Sequence[int]]) -> Polynomial:
    """Alternating family sum with cycles and free vertices kept off the edges ``E``."""
    require_three_regular(G)
    E = [tuple(e) for e in E]
    remove_edge_set(G, E)  # validates E
    blocked = {v for e in E for v in G.edge_endpoints(e)}
    allowed = 0
    for v in range(G.n_vertices):
        if v not in blocked:
            allowed |= 1 << v
    free = [v for v in range(G.n_vertices) if v not in blocked]
    return _alternating_family_sum(G, enumerate_cycles(G), allowed, free)


def corolla(G: HalfEdgeGraph, method: str = "auto") -> Polynomial:
    if method == "auto":
        method = "subsets" if G.n_vertices <= SUBSETS_MAX_VERTICES else "recurrence"
    if method == "definition":
        return corolla_by_definition(G)
    if method == "subsets":
        return corolla_by_subsets(G)
    if method == "recurrence":
        return corolla_by_recurrence(G)
    raise ValueError(f"unknown method {method!r}")


def component_count_c(G: HalfEdgeGraph, T: Iterable[int]) -> int:
    """Components of ``G`` minus ``T``, plus external edges in ``T``, plus
    internal edges with both halves in ``T``."""
    T = set(T)
    R = delete_halfedges(G, T)
    ext = sum(1 for h in T if h not in G.partner)
    both = sum(1 for h, k in G.pairs if h in T and k in T)
    return len(components(R)) + ext + both
