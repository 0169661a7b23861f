"""Named fixtures, exhaustive small 3-regular graphs and seeded random graphs.

Fixture labelings are frozen; golden outputs depend on them.

Parametric families use vertex-major ids (vertex ``i`` owns ``3i, 3i+1, 3i+2``):

* ``cycle_with_legs(n)``: slot 1 of vertex ``i`` pairs with slot 0 of vertex
  ``i+1 mod n``, slot 2 is an external leg.  ``n=1`` is TADPOLE1, ``n=3`` is
  TRIANGLE3.
* ``ladder(n)``: rails ``t_i = 2i``, ``b_i = 2i+1``; slot 0 faces left, slot 1
  is the rung, slot 2 faces right.  The two ends carry external legs.
* PRISM is the ladder with three rungs closed into a ring.
"""

from __future__ import annotations

import random
from itertools import permutations, product
from typing import Iterator

from .halfedge import HalfEdgeGraph, build_graph

__all__ = [
    "FIXTURE_NAMES",
    "fixture",
    "fixtures",
    "cycle_with_legs",
    "ladder",
    "prism",
    "enumerate_small",
    "random_graph",
    "random_corpus",
    "mixed_corpus",
    "SMALL_MAX_VERTICES",
]

_FROZEN = {
    "VERTEX3": ([[0, 1, 2]], []),
    "TADPOLE1": ([[0, 1, 2]], [[0, 1]]),
    "HGRAPH": ([[0, 1, 2], [3, 4, 5]], [[2, 5]]),
    "THETA": ([[0, 1, 2], [3, 4, 5]], [[0, 3], [1, 4], [2, 5]]),
    "DUMBBELL": ([[0, 1, 2], [3, 4, 5]], [[0, 1], [3, 4], [2, 5]]),
    "TRIANGLE3": ([[0, 1, 2], [3, 4, 5], [6, 7, 8]], [[1, 3], [4, 6], [7, 0]]),
    "K4": (
        [[0, 1, 2], [3, 4, 5], [6, 7, 8], [9, 10, 11]],
        [[0, 3], [1, 6], [2, 9], [4, 7], [5, 10], [8, 11]],
    ),
}

FIXTURE_NAMES = ("VERTEX3", "TADPOLE1", "HGRAPH", "THETA", "DUMBBELL", "TRIANGLE3", "K4", "PRISM")

SMALL_MAX_VERTICES = 8


def _vertex_major(n: int) -> list[list[int]]:
    return [[3 * i, 3 * i + 1, 3 * i + 2] for i in range(n)]


def cycle_with_legs(n: int) -> HalfEdgeGraph:
    if n < 1:
        raise ValueError("cycle_with_legs needs n >= 1")
    pairs = [[3 * i + 1, 3 * ((i + 1) % n)] for i in range(n)]
    return build_graph(_vertex_major(n), pairs)


def _ladder_pairs(n: int, closed: bool) -> list[list[int]]:
    pairs = []
    for i in range(n):
        t, b = 2 * i, 2 * i + 1
        pairs.append([3 * t + 1, 3 * b + 1])
        if i + 1 < n or closed:
            j = (i + 1) % n
            pairs.append([3 * t + 2, 3 * (2 * j)])
            pairs.append([3 * b + 2, 3 * (2 * j + 1)])
    return pairs


def ladder(n: int) -> HalfEdgeGraph:
    if n < 1:
        raise ValueError("ladder needs n >= 1")
    return build_graph(_vertex_major(2 * n), _ladder_pairs(n, closed=False))


def prism() -> HalfEdgeGraph:
    return build_graph(_vertex_major(6), _ladder_pairs(3, closed=True))


def fixture(name: str) -> HalfEdgeGraph:
    """Frozen fixture by name; also accepts ``cycle_with_legs(n)`` and ``ladder(n)``."""
    key = name.strip()
    upper = key.upper()
    if upper in _FROZEN:
        vs, ps = _FROZEN[upper]
        return build_graph(vs, ps)
    if upper == "PRISM":
        return prism()
    for prefix, fn in (("cycle_with_legs", cycle_with_legs), ("ladder", ladder)):
        if key.lower().startswith(prefix + "(") and key.endswith(")"):
            return fn(int(key[len(prefix) + 1 : -1]))
    raise KeyError(f"unknown fixture {name!r}")


def fixtures(parametric: bool = True) -> list[tuple[str, HalfEdgeGraph]]:
    """The verification fixture set, in a fixed order."""
    out = [(n, fixture(n)) for n in FIXTURE_NAMES]
    if parametric:
        out += [(f"cycle_with_legs({n})", cycle_with_legs(n)) for n in (2, 4, 5)]
        out += [(f"ladder({n})", ladder(n)) for n in (1, 2, 3)]
    return out


# --- exhaustive small graphs -------------------------------------------------

def _patterns(n: int, allow_external: bool) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], tuple]]:
    """Raw (loops, legs, multiplicity matrix) with every vertex of degree 3."""
    m = [[0] * n for _ in range(n)]
    loops = [0] * n
    legs = [0] * n

    def rest(i):
        return 3 - 2 * loops[i] - legs[i] - sum(m[i][j] for j in range(n) if j != i)

    def fill(i, j):
        # assign m[i][j] for j > i, then legs[i]
        if j == n:
            r = rest(i)
            if r and not allow_external:
                return
            legs[i] = r
            # vertices come in non-increasing (loop, leg) type order
            if i and (loops[i], r) > (loops[i - 1], legs[i - 1]):
                legs[i] = 0
                return
            yield from vertex(i + 1)
            legs[i] = 0
            return
        cap = min(rest(i), rest(j))
        for x in range(cap, -1, -1):
            m[i][j] = m[j][i] = x
            yield from fill(i, j + 1)
        m[i][j] = m[j][i] = 0

    def vertex(i):
        if i == n:
            yield tuple(loops), tuple(legs), tuple(tuple(row) for row in m)
            return
        for lp in (1, 0):
            if i and lp > loops[i - 1]:
                continue
            if 2 * lp + sum(m[i][j] for j in range(i)) > 3:
                continue
            loops[i] = lp
            yield from fill(i, i + 1)
            loops[i] = 0

    yield from vertex(0)


def _canonical(loops, legs, m) -> tuple:
    """Lexicographically least encoding over degree-class-preserving relabelings."""
    n = len(loops)
    # colour refinement to shrink the permutation search
    colour = [(loops[i], legs[i]) for i in range(n)]
    for _ in range(n):
        sig = [(colour[i], tuple(sorted((m[i][j], colour[j]) for j in range(n) if j != i and m[i][j])))
               for i in range(n)]
        ranks = {s: k for k, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(colour)):
            colour = new
            break
        colour = new
    classes: dict = {}
    for i in range(n):
        classes.setdefault(colour[i], []).append(i)
    keys = sorted(classes)
    best = None
    for perms in product(*(permutations(classes[k]) for k in keys)):
        order = [v for p in perms for v in p]
        enc = (
            tuple((loops[v], legs[v]) for v in order),
            tuple(m[order[a]][order[b]] for a in range(n) for b in range(a + 1, n)),
        )
        if best is None or enc < best:
            best = enc
    return best


def _graph_from_pattern(loops, legs, m) -> HalfEdgeGraph:
    n = len(loops)
    vertices = _vertex_major(n)
    slot = [0] * n
    pairs = []

    def take(v):
        h = vertices[v][slot[v]]
        slot[v] += 1
        return h

    for i in range(n):
        if loops[i]:
            pairs.append([take(i), take(i)])
        for j in range(i + 1, n):
            for _ in range(m[i][j]):
                pairs.append([take(i), take(j)])
    return build_graph(vertices, pairs)


def enumerate_small(max_vertices: int, allow_external: bool = True) -> Iterator[HalfEdgeGraph]:
    """All 3-regular half-edge multigraphs with 1..max_vertices vertices, one per
    isomorphism class (legs unlabeled), ordered by size then canonical form."""
    if max_vertices > SMALL_MAX_VERTICES:
        raise ValueError(f"max_vertices must be <= {SMALL_MAX_VERTICES}")
    for n in range(1, max_vertices + 1):
        seen = {}
        for loops, legs, m in _patterns(n, allow_external):
            key = _canonical(loops, legs, m)
            if key not in seen:
                seen[key] = (loops, legs, m)
        for key in sorted(seen):
            yield _graph_from_pattern(*_decode(key, n))


def _decode(key, n):
    lx, upper = key
    loops = [a for a, _ in lx]
    legs = [b for _, b in lx]
    m = [[0] * n for _ in range(n)]
    it = iter(upper)
    for a in range(n):
        for b in range(a + 1, n):
            m[a][b] = m[b][a] = next(it)
    return loops, legs, m


# --- random graphs -------------------------------------------------------------

def random_graph(
    seed: int,
    n_vertices: int,
    valence_range: tuple[int, int] = (3, 3),
    external_fraction: float = 0.0,
) -> HalfEdgeGraph:
    """Seeded random half-edge graph.

    Procedure (``random.Random(seed)``): draw each vertex valence uniformly
    from ``valence_range``; number half-edges vertex-major; shuffle the pool;
    the first ``round(external_fraction * H)`` ids (bumped by one if the rest
    is odd) stay external; the rest are paired consecutively.
    """
    lo, hi = valence_range
    if n_vertices < 0 or lo < 0 or hi < lo:
        raise ValueError("bad size or valence range")
    if not 0.0 <= external_fraction <= 1.0:
        raise ValueError("external_fraction must lie in [0, 1]")
    rng = random.Random(seed)
    valences = [rng.randint(lo, hi) for _ in range(n_vertices)]
    vertices, nxt = [], 0
    for d in valences:
        vertices.append(list(range(nxt, nxt + d)))
        nxt += d
    pool = list(range(nxt))
    rng.shuffle(pool)
    n_ext = round(external_fraction * nxt)
    if (nxt - n_ext) % 2:
        n_ext = n_ext + 1 if n_ext < nxt else n_ext - 1
    rest = pool[n_ext:]
    pairs = [[rest[i], rest[i + 1]] for i in range(0, len(rest), 2)]
    return build_graph(vertices, pairs, nxt)


def random_corpus(seed: int, count: int, max_vertices: int = 10) -> list[tuple[str, HalfEdgeGraph]]:
    """Seeded 3-regular graphs with 1..max_vertices vertices and a random share of legs."""
    rng = random.Random(seed)
    out = []
    for i in range(count):
        n = rng.randint(1, max_vertices)
        frac = rng.choice((0.0, 0.0, 0.1, 0.2, 0.3))
        out.append((f"random-{seed}-{i}", random_graph(rng.getrandbits(32), n, (3, 3), frac)))
    return out


def _selection_space(G: HalfEdgeGraph) -> int:
    total = 1
    for hs in G.vertices:
        d = len(hs)
        total *= d * (d - 1) // 2
    return total


def mixed_corpus(
    seed: int,
    count: int,
    max_vertices: int = 8,
    valence_range: tuple[int, int] = (3, 5),
    max_selections: int = 50_000,
) -> list[tuple[str, HalfEdgeGraph]]:
    """Seeded mixed-valence graphs.  Draws whose kept-pair selection space
    exceeds ``max_selections`` are redrawn from the same stream."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(1, max_vertices)
        frac = rng.choice((0.0, 0.1, 0.2, 0.3))
        G = random_graph(rng.getrandbits(32), n, valence_range, frac)
        if _selection_space(G) <= max_selections:
            out.append((f"mixed-{seed}-{len(out)}", G))
    return out
