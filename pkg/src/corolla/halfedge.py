"""Half-edge multigraphs.

A graph is a list of vertices, each an ordered tuple of half-edge ids, plus a
set of pairs of half-edges (internal edges).  Half-edges that appear in no
pair are external.  Ids are stable: surgeries never relabel or reuse an id,
so polynomial variables keep their meaning across recurrences.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Sequence

__all__ = [
    "GraphValidationError",
    "HalfEdgeGraph",
    "GraphStats",
    "build_graph",
    "empty_graph",
    "remove_vertex",
    "remove_vertices",
    "delete_halfedge",
    "delete_halfedges",
    "join_external",
    "contract_edge",
    "remove_edge_set",
    "disjoint_union",
    "induced_subgraph",
    "components",
    "stats",
    "canonical_key",
    "relabel",
    "graph_to_dict",
    "graph_from_dict",
    "load_graph",
    "dump_graph",
]


class GraphValidationError(ValueError):
    """Raised for a malformed graph; ``kind`` names the violated rule and
    ``halfedge`` the offending id (or vertex index for vertex errors)."""

    def __init__(self, kind: str, halfedge: int | None, message: str):
        super().__init__(message)
        self.kind = kind
        self.halfedge = halfedge


Pair = tuple[int, int]


def _norm_pair(h: int, k: int) -> Pair:
    return (h, k) if h < k else (k, h)


@dataclass(frozen=True)
class HalfEdgeGraph:
    """Immutable half-edge multigraph.

    ``splits`` is aligned with ``vertices``; an entry is ``None`` or a pair of
    blocks recording which half-edges of a merged vertex came from which
    endpoint of a split-mode contraction.
    """

    half_edge_count: int
    vertices: tuple[tuple[int, ...], ...]
    pairs: frozenset[Pair]
    splits: tuple[tuple[tuple[int, ...], tuple[int, ...]] | None, ...] = field(default=())

    def __post_init__(self):
        if not self.splits:
            object.__setattr__(self, "splits", (None,) * len(self.vertices))

    # derived lookups, computed lazily and cached on the instance
    @cached_property
    def vertex_of(self) -> dict[int, int]:
        return {h: i for i, hs in enumerate(self.vertices) for h in hs}

    @cached_property
    def partner(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for h, k in self.pairs:
            out[h] = k
            out[k] = h
        return out

    @cached_property
    def halfedges(self) -> tuple[int, ...]:
        return tuple(sorted(self.vertex_of))

    @cached_property
    def externals(self) -> tuple[int, ...]:
        p = self.partner
        return tuple(h for h in self.halfedges if h not in p)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def valence(self, v: int) -> int:
        return len(self.vertices[v])

    def is_external(self, h: int) -> bool:
        return h not in self.partner

    def is_tadpole(self, pair: Sequence[int]) -> bool:
        h, k = pair
        return self.vertex_of[h] == self.vertex_of[k]

    def is_three_regular(self) -> bool:
        return all(len(hs) == 3 for hs in self.vertices)

    def edge_endpoints(self, pair: Sequence[int]) -> tuple[int, int]:
        h, k = pair
        return self.vertex_of[h], self.vertex_of[k]

    def sorted_pairs(self) -> list[Pair]:
        return sorted(self.pairs)

    def __repr__(self):
        return (
            f"HalfEdgeGraph(vertices={[list(v) for v in self.vertices]}, "
            f"pairs={[list(p) for p in self.sorted_pairs()]})"
        )


class GraphStats(NamedTuple):
    v: int
    e_int: int
    e_ext: int
    c: int
    ell: int


def _validate(
    half_edge_count: int,
    vertices: Sequence[Sequence[int]],
    pairs: Iterable[Sequence[int]],
) -> None:
    seen: dict[int, int] = {}
    for vi, hs in enumerate(vertices):
        local: set[int] = set()
        for h in hs:
            if not isinstance(h, int) or isinstance(h, bool):
                raise GraphValidationError("type", None, f"half-edge id {h!r} is not an integer")
            if h < 0 or h >= half_edge_count:
                raise GraphValidationError(
                    "out-of-range", h, f"half-edge id {h} out of range 0..{half_edge_count - 1}"
                )
            if h in local:
                raise GraphValidationError("duplicate", h, f"half-edge id {h} repeated at vertex {vi}")
            if h in seen:
                raise GraphValidationError(
                    "multiple-vertices", h, f"half-edge id {h} in two vertices ({seen[h]} and {vi})"
                )
            local.add(h)
            seen[h] = vi
    paired: set[int] = set()
    for p in pairs:
        if len(p) != 2:
            raise GraphValidationError("pair-arity", None, f"pair {list(p)!r} does not have two ids")
        h, k = p
        for x in (h, k):
            if not isinstance(x, int) or isinstance(x, bool):
                raise GraphValidationError("type", None, f"half-edge id {x!r} is not an integer")
            if x < 0 or x >= half_edge_count:
                raise GraphValidationError(
                    "out-of-range", x, f"half-edge id {x} out of range 0..{half_edge_count - 1}"
                )
            if x not in seen:
                raise GraphValidationError("unattached", x, f"paired half-edge id {x} belongs to no vertex")
        if h == k:
            raise GraphValidationError("self-paired", h, f"half-edge id {h} paired with itself")
        for x in (h, k):
            if x in paired:
                raise GraphValidationError("multiple-pairs", x, f"half-edge id {x} in two pairs")
            paired.add(x)


def build_graph(
    vertex_lists: Sequence[Sequence[int]],
    pairs: Iterable[Sequence[int]] = (),
    half_edge_count: int | None = None,
) -> HalfEdgeGraph:
    """Validate raw vertex lists and pairs and return a graph.

    ``half_edge_count`` bounds the ids; it defaults to one more than the
    largest id present.  Ids are kept as given.
    """
    vertex_lists = [list(hs) for hs in vertex_lists]
    pairs = [tuple(p) for p in pairs]
    if half_edge_count is None:
        ids = [h for hs in vertex_lists for h in hs if isinstance(h, int)]
        half_edge_count = max(ids) + 1 if ids else 0
    _validate(half_edge_count, vertex_lists, pairs)
    return HalfEdgeGraph(
        half_edge_count,
        tuple(tuple(hs) for hs in vertex_lists),
        frozenset(_norm_pair(h, k) for h, k in pairs),
    )


def empty_graph() -> HalfEdgeGraph:
    return HalfEdgeGraph(0, (), frozenset())


def _check_vertex(G: HalfEdgeGraph, v: int) -> None:
    if not isinstance(v, int) or not 0 <= v < G.n_vertices:
        raise GraphValidationError("vertex-index", v, f"invalid vertex index {v!r}")


def _check_halfedge(G: HalfEdgeGraph, h: int) -> None:
    if h not in G.vertex_of:
        raise GraphValidationError("unknown-id", h, f"unknown half-edge id {h!r}")


def _strip_split(split, dead: set[int]):
    if split is None:
        return None
    return tuple(tuple(h for h in block if h not in dead) for block in split)


def remove_vertices(G: HalfEdgeGraph, vs: Iterable[int]) -> HalfEdgeGraph:
    """Remove several vertices at once; see :func:`remove_vertex`."""
    vs = set(vs)
    for v in vs:
        _check_vertex(G, v)
    dead = {h for v in vs for h in G.vertices[v]}
    keep = [i for i in range(G.n_vertices) if i not in vs]
    return HalfEdgeGraph(
        G.half_edge_count,
        tuple(G.vertices[i] for i in keep),
        frozenset(p for p in G.pairs if p[0] not in dead and p[1] not in dead),
        tuple(_strip_split(G.splits[i], dead) for i in keep),
    )


def remove_vertex(G: HalfEdgeGraph, v: int) -> HalfEdgeGraph:
    """Remove vertex ``v`` and its half-edges; partners become external."""
    return remove_vertices(G, (v,))


def delete_halfedges(G: HalfEdgeGraph, hs: Iterable[int]) -> HalfEdgeGraph:
    hs = set(hs)
    for h in hs:
        _check_halfedge(G, h)
    return HalfEdgeGraph(
        G.half_edge_count,
        tuple(tuple(x for x in vhs if x not in hs) for vhs in G.vertices),
        frozenset(p for p in G.pairs if p[0] not in hs and p[1] not in hs),
        tuple(_strip_split(s, hs) for s in G.splits),
    )


def delete_halfedge(G: HalfEdgeGraph, h: int) -> HalfEdgeGraph:
    """Delete half-edge ``h``; its partner, if any, is left dangling."""
    return delete_halfedges(G, (h,))


def join_external(G: HalfEdgeGraph, h: int, k: int) -> HalfEdgeGraph:
    """Pair two external half-edges into a new internal edge."""
    _check_halfedge(G, h)
    _check_halfedge(G, k)
    if h == k:
        raise GraphValidationError("self-paired", h, f"cannot join half-edge {h} to itself")
    for x in (h, k):
        if x in G.partner:
            raise GraphValidationError("multiple-pairs", x, f"half-edge {x} is already paired")
    return HalfEdgeGraph(G.half_edge_count, G.vertices, G.pairs | {_norm_pair(h, k)}, G.splits)


CONTRACTION_MODES = ("naive", "split")


def contract_edge(G: HalfEdgeGraph, e: Sequence[int], mode: str = "naive") -> HalfEdgeGraph:
    """Contract the internal edge ``e`` = {h, k}.

    The merged vertex takes the position of the lower endpoint and lists the
    surviving half-edges of that endpoint first.  In ``split`` mode it also
    records the two endpoint blocks.  Tadpoles cannot be contracted.
    """
    if mode not in CONTRACTION_MODES:
        raise ValueError(f"unknown contraction mode {mode!r}")
    h, k = e
    _check_halfedge(G, h)
    _check_halfedge(G, k)
    if G.partner.get(h) != k:
        raise GraphValidationError("not-internal", h, f"{{{h},{k}}} is not an internal edge")
    u, w = G.vertex_of[h], G.vertex_of[k]
    if u == w:
        raise GraphValidationError("tadpole", h, f"cannot contract tadpole edge {{{h},{k}}}")
    if u > w:
        u, w, h, k = w, u, k, h
    if mode == "split" and (G.splits[u] is not None or G.splits[w] is not None):
        raise ValueError("split contraction of an already split vertex is not supported")
    block_u = tuple(x for x in G.vertices[u] if x != h)
    block_w = tuple(x for x in G.vertices[w] if x != k)
    vertices = []
    splits = []
    for i, hs in enumerate(G.vertices):
        if i == u:
            vertices.append(block_u + block_w)
            splits.append((block_u, block_w) if mode == "split" else None)
        elif i != w:
            vertices.append(hs)
            splits.append(G.splits[i])
    return HalfEdgeGraph(G.half_edge_count, tuple(vertices), G.pairs - {_norm_pair(h, k)}, tuple(splits))


def remove_edge_set(G: HalfEdgeGraph, E: Iterable[Sequence[int]]) -> HalfEdgeGraph:
    """Remove every endpoint vertex of the pairwise vertex-disjoint edges ``E``."""
    used: set[int] = set()
    for e in E:
        h, k = e
        _check_halfedge(G, h)
        if G.partner.get(h) != k:
            raise GraphValidationError("not-internal", h, f"{{{h},{k}}} is not an internal edge")
        ends = set(G.edge_endpoints((h, k)))
        if ends & used:
            raise GraphValidationError(
                "edges-not-disjoint", h, f"edge {{{h},{k}}} shares a vertex with another edge of E"
            )
        used |= ends
    return remove_vertices(G, used)


def disjoint_union(G1: HalfEdgeGraph, G2: HalfEdgeGraph) -> HalfEdgeGraph:
    """Place ``G2`` beside ``G1``, shifting its ids by ``G1.half_edge_count``."""
    s = G1.half_edge_count
    shifted_splits = tuple(
        None if sp is None else tuple(tuple(h + s for h in b) for b in sp) for sp in G2.splits
    )
    return HalfEdgeGraph(
        s + G2.half_edge_count,
        G1.vertices + tuple(tuple(h + s for h in hs) for hs in G2.vertices),
        G1.pairs | frozenset((h + s, k + s) for h, k in G2.pairs),
        G1.splits + shifted_splits,
    )


def induced_subgraph(G: HalfEdgeGraph, vs: Sequence[int]) -> HalfEdgeGraph:
    """Keep only the vertices ``vs`` (in the given order); ids are unchanged."""
    live = {h for v in vs for h in G.vertices[v]}
    return HalfEdgeGraph(
        G.half_edge_count,
        tuple(G.vertices[v] for v in vs),
        frozenset(p for p in G.pairs if p[0] in live and p[1] in live),
        tuple(G.splits[v] for v in vs),
    )


def components(G: HalfEdgeGraph) -> list[list[int]]:
    """Connected components over internal edges, as sorted vertex-index lists."""
    parent = list(range(G.n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    vo = G.vertex_of
    for h, k in G.pairs:
        a, b = find(vo[h]), find(vo[k])
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for v in range(G.n_vertices):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def stats(G: HalfEdgeGraph) -> GraphStats:
    v = G.n_vertices
    e_int = len(G.pairs)
    e_ext = len(G.externals)
    c = len(components(G))
    return GraphStats(v, e_int, e_ext, c, e_int - v + c)


def canonical_key(G: HalfEdgeGraph) -> bytes:
    """Label-aware serialization used as a memo key.

    Not isomorphism invariant: half-edge labels are variable names.
    """
    verts = sorted(tuple(sorted(hs)) for hs in G.vertices)
    parts = [";".join(",".join(map(str, hs)) for hs in verts), "|"]
    parts.append(";".join(f"{h},{k}" for h, k in sorted(G.pairs)))
    if any(s is not None for s in G.splits):
        sp = sorted(
            tuple(sorted(tuple(sorted(b)) for b in s)) for s in G.splits if s is not None
        )
        parts.append("|" + repr(sp))
    return "".join(parts).encode()


def relabel(G: HalfEdgeGraph) -> tuple[HalfEdgeGraph, dict[int, int]]:
    """Compact ids to 0..H-1 in order of appearance; returns the graph and old->new map."""
    id_map: dict[int, int] = {}
    for hs in G.vertices:
        for h in hs:
            id_map[h] = len(id_map)
    splits = tuple(
        None if s is None else tuple(tuple(id_map[h] for h in b) for b in s) for s in G.splits
    )
    return (
        HalfEdgeGraph(
            len(id_map),
            tuple(tuple(id_map[h] for h in hs) for hs in G.vertices),
            frozenset(_norm_pair(id_map[h], id_map[k]) for h, k in G.pairs),
            splits,
        ),
        id_map,
    )


# --- JSON ------------------------------------------------------------------

def graph_to_dict(G: HalfEdgeGraph) -> dict:
    out = {
        "halfedges": G.half_edge_count,
        "vertices": [list(hs) for hs in G.vertices],
        "pairs": [list(p) for p in G.sorted_pairs()],
    }
    if any(s is not None for s in G.splits):
        out["splits"] = [None if s is None else [list(b) for b in s] for s in G.splits]
    return out


def graph_from_dict(data: Mapping, dense: bool = True) -> HalfEdgeGraph:
    """Build a graph from the JSON object form.

    With ``dense`` every id in ``0..halfedges-1`` must be present; use
    :func:`relabel` first for sparse inputs.
    """
    try:
        H = data["halfedges"]
        vertices = data["vertices"]
        pairs = data.get("pairs", [])
    except (KeyError, TypeError, AttributeError) as exc:
        raise GraphValidationError("format", None, f"malformed graph object: {exc}") from None
    if not isinstance(H, int) or H < 0:
        raise GraphValidationError("format", None, f"'halfedges' must be a nonnegative integer, got {H!r}")
    G = build_graph(vertices, pairs, H)
    if dense:
        present = set(G.vertex_of)
        for h in range(H):
            if h not in present:
                raise GraphValidationError("sparse", h, f"half-edge id {h} missing (ids must be dense)")
    splits = data.get("splits")
    if splits:
        if len(splits) != len(G.vertices):
            raise GraphValidationError("format", None, "'splits' must align with 'vertices'")
        sp = tuple(None if s is None else (tuple(s[0]), tuple(s[1])) for s in splits)
        G = HalfEdgeGraph(G.half_edge_count, G.vertices, G.pairs, sp)
    return G


def load_graph(path) -> HalfEdgeGraph:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise GraphValidationError("format", None, f"{path}: invalid JSON ({exc})") from None
    return graph_from_dict(data)


def dump_graph(G: HalfEdgeGraph) -> str:
    return json.dumps(graph_to_dict(G))
