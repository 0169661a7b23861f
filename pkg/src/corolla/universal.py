"""Universal corolla polynomial and its q-refinement.

Every one-per-vertex selection ``H`` contributes its monomial weighted by
``r`` to the cycle rank of the remainder (and, for the refinement, ``q`` to
the component statistic of ``H``).
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .corolla_poly import require_three_regular
from .cycles import enumerate_cycles, iter_disjoint_families, opposite_halfedge
from .halfedge import HalfEdgeGraph
from .kernels import selection_scan
from .multipoly import Monomial, Polynomial, mask_of

__all__ = [
    "PottsGuardError",
    "POTTS_MAX_COLORINGS",
    "universal_poly",
    "universal_tilde",
    "universal_records",
    "potts_poly",
    "spanning_cycle_sum",
    "constraint_substitutions",
    "apply_constraints",
    "ConstrainedReport",
    "constrained_identity_check",
]

POTTS_MAX_COLORINGS = 10**7


class PottsGuardError(ValueError):
    """Too many cycle colourings to enumerate."""


def _one_per_vertex(G: HalfEdgeGraph) -> list[list[int]]:
    return [[1 << h for h in hs] for hs in G.vertices]


def universal_records(G: HalfEdgeGraph):
    """Raw scan records ``(mask, ell, n_components, n_both)`` over all selections."""
    require_three_regular(G)
    return selection_scan(G, _one_per_vertex(G), acyclic_only=False)


def universal_poly(G: HalfEdgeGraph) -> Polynomial:
    return Polynomial((Monomial(m, ell, 0), 1) for m, ell, _, _ in universal_records(G))


def universal_tilde(G: HalfEdgeGraph) -> Polynomial:
    ext_mask = mask_of(G.externals)
    terms = []
    for m, ell, ncomp, both in universal_records(G):
        c = ncomp + bin(m & ext_mask).count("1") + both
        terms.append((Monomial(m, ell, c), 1))
    return Polynomial(terms)


def potts_poly(G: HalfEdgeGraph, r_int: int, max_colorings: int = POTTS_MAX_COLORINGS) -> Polynomial:
    """Sum over colourings of the cycles with ``r_int`` colours.

    A half-edge is live under a colouring when every cycle through it has
    colour 1; each vertex contributes the sum of its live variables.
    """
    require_three_regular(G)
    if r_int < 1:
        raise ValueError("number of colours must be positive")
    cycles = enumerate_cycles(G)
    if r_int ** len(cycles) > max_colorings:
        raise PottsGuardError(
            f"{r_int}^{len(cycles)} colourings exceed the limit of {max_colorings}"
        )
    tally: Counter = Counter()
    for colouring in product(range(1, r_int + 1), repeat=len(cycles)):
        tally[frozenset(i for i, col in enumerate(colouring) if col != 1)] += 1
    out = Polynomial.zero()
    for hot, count in sorted(tally.items(), key=lambda t: sorted(t[0])):
        dead = set()
        for i in hot:
            dead |= cycles[i].halfedge_set
        term = Polynomial.one()
        for hs in G.vertices:
            term = term * Polynomial.linear(h for h in hs if h not in dead)
        out = out + term.scale(count)
    return out


def spanning_cycle_sum(G: HalfEdgeGraph) -> Polynomial:
    """Sum over vertex-disjoint cycle families covering every vertex of
    ``(r-1)^k`` times the product of the opposite half-edge variables."""
    require_three_regular(G)
    full = (1 << G.n_vertices) - 1
    r_minus_1 = Polynomial.r() - 1
    out = Polynomial.zero()
    for fam in iter_disjoint_families(enumerate_cycles(G)):
        covered = 0
        for C in fam:
            covered |= C.vertex_mask
        if covered != full:
            continue
        mask = 0
        for C in fam:
            for v in C.vertex_set:
                mask |= 1 << opposite_halfedge(G, C, v)
        out = out + Polynomial({Monomial(mask): 1}) * (r_minus_1 ** len(fam))
    return out


def constraint_substitutions(G: HalfEdgeGraph, dependent: str = "highest") -> dict[int, Polynomial]:
    """Per vertex, one half-edge variable expressed as minus the sum of the others."""
    if dependent not in ("highest", "lowest"):
        raise ValueError("dependent must be 'highest' or 'lowest'")
    subs = {}
    for hs in G.vertices:
        if not hs:
            continue
        dep = max(hs) if dependent == "highest" else min(hs)
        subs[dep] = -Polynomial.linear(h for h in hs if h != dep)
    return subs


def apply_constraints(p: Polynomial, subs: dict[int, Polynomial]) -> Polynomial:
    for h in sorted(subs):
        p = p.substitute(h, subs[h])
    return p


def _random_rational(rng: random.Random) -> Fraction:
    num = rng.choice([n for n in range(-9, 10) if n])
    return Fraction(num, rng.randint(1, 7))


@dataclass
class ConstrainedReport:
    graph: str
    symbolic: bool
    numeric: bool
    lhs: Polynomial
    rhs: Polynomial
    witness: str | None = None
    points: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.symbolic and self.numeric


def constrained_identity_check(
    G: HalfEdgeGraph,
    dependent: str = "highest",
    points: int = 20,
    seed: int = 0,
    name: str = "",
) -> ConstrainedReport:
    """Compare the universal polynomial and the spanning-cycle sum under
    vanishing vertex sums, symbolically and at random rational points."""
    lhs_raw = universal_poly(G)
    rhs_raw = spanning_cycle_sum(G)
    subs = constraint_substitutions(G, dependent)
    lhs = apply_constraints(lhs_raw, subs)
    rhs = apply_constraints(rhs_raw, subs)
    witness = None
    symbolic = lhs == rhs
    if not symbolic:
        diff = lhs - rhs
        mono, c = diff.sorted_items()[0]
        witness = Polynomial({mono: c}).text()
    rng = random.Random(seed)
    numeric = True
    used = []
    for _ in range(points):
        a: dict[int, Fraction] = {}
        for hs in G.vertices:
            dep = max(hs) if dependent == "highest" else min(hs)
            for h in hs:
                if h != dep:
                    a[h] = _random_rational(rng)
            a[dep] = -sum((a[h] for h in hs if h != dep), Fraction(0))
        r = _random_rational(rng)
        left = lhs_raw.evaluate(a, r)
        right = rhs_raw.evaluate(a, r)
        used.append((a, r))
        if left != right:
            numeric = False
            if witness is None:
                witness = f"r={r} a={ {h: str(x) for h, x in sorted(a.items())} }: {left} != {right}"
            break
    return ConstrainedReport(name, symbolic, numeric, lhs, rhs, witness, used)
