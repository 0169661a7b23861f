"""Selection scan front end.

Uses the compiled ``_kernels`` extension when it imported and the graph's
ids fit in 64 bits, otherwise the pure-Python scan.  Set
``COROLLA_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os
from collections import deque
from typing import Sequence

from . import _scan_py
from .halfedge import HalfEdgeGraph

try:
    if os.environ.get("COROLLA_PURE_PYTHON"):
        raise ImportError("pure Python requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

HAVE_EXTENSION = _compiled is not None

__all__ = ["HAVE_EXTENSION", "SelectionRecord", "scan_order", "selection_scan", "backend_name"]

SelectionRecord = tuple[int, int, int, int]


def backend_name() -> str:
    return "cython" if HAVE_EXTENSION else "python"


def scan_order(G: HalfEdgeGraph) -> list[int]:
    """Breadth-first vertex order, so edges close early and pruning bites."""
    vo = G.vertex_of
    adj: list[list[int]] = [[] for _ in range(G.n_vertices)]
    for h, k in G.sorted_pairs():
        u, w = vo[h], vo[k]
        adj[u].append(w)
        adj[w].append(u)
    seen = [False] * G.n_vertices
    order: list[int] = []
    for s in range(G.n_vertices):
        if seen[s]:
            continue
        seen[s] = True
        dq = deque([s])
        while dq:
            v = dq.popleft()
            order.append(v)
            for w in sorted(adj[v]):
                if not seen[w]:
                    seen[w] = True
                    dq.append(w)
    return order


def selection_scan(
    G: HalfEdgeGraph,
    options: Sequence[Sequence[int]],
    acyclic_only: bool = False,
    backend: str | None = None,
) -> list[SelectionRecord]:
    """Scan every choice of one option per vertex.

    ``options[v]`` holds bitmasks of half-edges selected at vertex ``v``.
    Returns ``(mask, ell, n_components, n_both)`` per surviving selection,
    where ``ell`` is the cycle rank of ``G`` with the selection deleted.
    """
    order = scan_order(G)
    pos = {v: i for i, v in enumerate(order)}
    vo = G.vertex_of
    closing: list[list[tuple[int, int, int, int]]] = [[] for _ in order]
    for h, k in G.sorted_pairs():
        u, w = pos[vo[h]], pos[vo[k]]
        closing[max(u, w)].append((1 << h, 1 << k, u, w))
    opts = [[int(m) for m in options[v]] for v in order]
    if backend is None:
        backend = "cython" if HAVE_EXTENSION and G.half_edge_count <= 64 else "python"
    if backend == "cython":
        if _compiled is None:
            raise RuntimeError("compiled kernel not available")
        return _compiled.scan(opts, closing, acyclic_only)
    return _scan_py.scan(opts, closing, acyclic_only)
