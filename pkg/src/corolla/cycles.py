"""Simple cycles of half-edge multigraphs and vertex-disjoint cycle families."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .halfedge import HalfEdgeGraph, components, delete_halfedges

__all__ = [
    "Cycle",
    "CycleFamily",
    "enumerate_cycles",
    "disjoint_families",
    "iter_disjoint_families",
    "opposite_halfedge",
    "complement_halfedges",
    "remainder_cycle_count",
]


@dataclass(frozen=True)
class Cycle:
    vertex_set: frozenset[int]
    edge_set: frozenset[tuple[int, int]]

    @cached_property
    def halfedge_set(self) -> frozenset[int]:
        return frozenset(h for e in self.edge_set for h in e)

    @cached_property
    def vertex_mask(self) -> int:
        m = 0
        for v in self.vertex_set:
            m |= 1 << v
        return m

    def sort_key(self):
        return (len(self.vertex_set), sorted(self.vertex_set), sorted(self.edge_set))

    def __len__(self) -> int:
        return len(self.vertex_set)

    def __repr__(self) -> str:
        return f"Cycle(vertices={sorted(self.vertex_set)}, edges={sorted(self.edge_set)})"


CycleFamily = tuple[Cycle, ...]


def _simple_vertex_cycles(n: int, adj: list[set[int]]) -> Iterator[list[int]]:
    """Vertex sequences of cycles of length >= 3 in a simple graph.

    Each cycle is reported once: it starts at its smallest vertex and its
    second vertex is smaller than its last.
    """
    for s in range(n):
        path = [s]
        on_path = {s}
        stack = [iter(sorted(w for w in adj[s] if w > s))]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            path.append(nxt)
            on_path.add(nxt)
            if len(path) >= 3 and s in adj[nxt] and path[1] < path[-1]:
                yield list(path)
            stack.append(iter(sorted(w for w in adj[nxt] if w > s and w not in on_path)))


def enumerate_cycles(G: HalfEdgeGraph) -> list[Cycle]:
    """Every simple cycle of ``G`` exactly once, tadpoles and 2-cycles included."""
    n = G.n_vertices
    vo = G.vertex_of
    out: list[Cycle] = []
    multi: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for e in G.sorted_pairs():
        u, w = vo[e[0]], vo[e[1]]
        if u == w:
            out.append(Cycle(frozenset((u,)), frozenset((e,))))
        else:
            multi.setdefault((min(u, w), max(u, w)), []).append(e)
    for (u, w), es in multi.items():
        for e1, e2 in combinations(es, 2):
            out.append(Cycle(frozenset((u, w)), frozenset((e1, e2))))
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, w in multi:
        adj[u].add(w)
        adj[w].add(u)
    for seq in _simple_vertex_cycles(n, adj):
        hops = [
            multi[(min(a, b), max(a, b))] for a, b in zip(seq, seq[1:] + seq[:1])
        ]
        for choice in product(*hops):
            out.append(Cycle(frozenset(seq), frozenset(choice)))
    out.sort(key=Cycle.sort_key)
    return out


def iter_disjoint_families(cycles: Sequence[Cycle], allowed_mask: int = -1) -> Iterator[CycleFamily]:
    """All families of pairwise vertex-disjoint cycles, of every size (empty first).

    ``allowed_mask`` restricts cycles to vertices whose bit is set.
    """
    cyc = [c for c in cycles if c.vertex_mask & allowed_mask == c.vertex_mask]
    masks = [c.vertex_mask for c in cyc]

    def rec(start: int, used: int, chosen: list[Cycle]):
        yield tuple(chosen)
        for i in range(start, len(cyc)):
            if masks[i] & used:
                continue
            chosen.append(cyc[i])
            yield from rec(i + 1, used | masks[i], chosen)
            chosen.pop()

    yield from rec(0, 0, [])


def disjoint_families(cycles: Sequence[Cycle], i: int) -> list[CycleFamily]:
    """Families of exactly ``i`` pairwise vertex-disjoint cycles."""
    if i < 0:
        raise ValueError("family size must be nonnegative")
    return [f for f in iter_disjoint_families(cycles) if len(f) == i]


def _check_on_cycle(C: Cycle, v: int) -> None:
    if v not in C.vertex_set:
        raise ValueError(f"vertex {v} is not on the cycle")


def complement_halfedges(G: HalfEdgeGraph, C: Cycle, v: int) -> frozenset[int]:
    _check_on_cycle(C, v)
    return frozenset(h for h in G.vertices[v] if h not in C.halfedge_set)


def opposite_halfedge(G: HalfEdgeGraph, C: Cycle, v: int) -> int:
    """The unique half-edge at 3-valent ``v`` not used by ``C``."""
    _check_on_cycle(C, v)
    if G.valence(v) != 3:
        raise ValueError(f"vertex {v} has valence {G.valence(v)}, expected 3")
    (h,) = complement_halfedges(G, C, v)
    return h


def remainder_cycle_count(G: HalfEdgeGraph, S: Iterable[int]) -> int:
    """First Betti number of ``G`` with the half-edges ``S`` deleted."""
    R = delete_halfedges(G, S)
    return len(R.pairs) - R.n_vertices + len(components(R))
