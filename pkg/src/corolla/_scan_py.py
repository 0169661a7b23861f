"""Pure-Python selection scan (fallback for the compiled kernel).

The scan walks every choice of one option per vertex.  An option is a
bitmask of half-edges placed in the selection.  Internal edges are closed
at the later of their two endpoints (in scan order); a surviving edge whose
endpoints are already connected adds one independent cycle.  A union-find
with an undo log keeps the walk incremental.

Each record is ``(mask, ell, n_components, n_both)``: the selection mask,
the cycle rank of the remainder, the number of remainder components over
the scanned vertices, and the number of internal edges with both halves
selected.
"""

from __future__ import annotations

Record = tuple[int, int, int, int]


def scan(
    options: list[list[int]],
    closing: list[list[tuple[int, int, int, int]]],
    acyclic_only: bool,
) -> list[Record]:
    """``closing[i]`` lists ``(hbit, kbit, u, w)`` for edges closed at step i."""
    n = len(options)
    parent = list(range(n))
    size = [1] * n
    out: list[Record] = []

    def find(x: int) -> int:
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(level: int, removed: int, ell: int, unions: int, both: int) -> None:
        if level == n:
            out.append((removed, ell, n - unions, both))
            return
        edges = closing[level]
        for opt in options[level]:
            m = removed | opt
            log = []
            e_ell = ell
            e_un = unions
            e_both = both
            for hb, kb, u, w in edges:
                hit = m & (hb | kb)
                if not hit:
                    a, b = find(u), find(w)
                    if a == b:
                        e_ell += 1
                    else:
                        if size[a] < size[b]:
                            a, b = b, a
                        parent[b] = a
                        size[a] += size[b]
                        log.append((a, b))
                        e_un += 1
                elif hit == hb | kb:
                    e_both += 1
            if not (acyclic_only and e_ell):
                rec(level + 1, m, e_ell, e_un, e_both)
            for a, b in reversed(log):
                parent[b] = b
                size[a] -= size[b]

    rec(0, 0, 0, 0, 0)
    return out
