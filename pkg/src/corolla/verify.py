"""Identity suites run over graph corpora, producing a :class:`VerifyReport`."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Callable

from . import corolla_poly as cp
from .cycles import enumerate_cycles, remainder_cycle_count
from .generators import enumerate_small, fixture, fixtures, mixed_corpus, random_corpus
from .genvalence import contraction_deletion_residual, general_corolla_by_families, general_corolla_by_subsets
from .halfedge import HalfEdgeGraph, disjoint_union, remove_edge_set, stats
from .multipoly import Polynomial, ids_of, parse_polynomial
from .universal import (
    POTTS_MAX_COLORINGS,
    constrained_identity_check,
    potts_poly,
    universal_poly,
    universal_records,
    universal_tilde,
)

__all__ = [
    "SUITES",
    "CheckResult",
    "VerifyReport",
    "load_corpus",
    "run_suites",
    "NAIVE_HGRAPH_RESIDUAL",
]

NAIVE_HGRAPH_RESIDUAL = "+1*a0*a1 +1*a3*a4"
POTTS_MAX_CYCLES = 7
# above this many vertices the counting identity reuses the scan's statistics
INDEPENDENT_COUNT_MAX_VERTICES = 8


@dataclass
class CheckResult:
    identity: str
    graph: str
    status: str  # pass | fail | skipped
    witness: str | None = None
    detail: str | None = None


@dataclass
class VerifyReport:
    suite: str
    corpus: str
    results: list[CheckResult] = field(default_factory=list)

    @property
    def totals(self) -> dict[str, int]:
        t = {"pass": 0, "fail": 0, "skipped": 0}
        for r in self.results:
            t[r.status] += 1
        return t

    @property
    def exit_status(self) -> int:
        return 1 if self.totals["fail"] else 0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "corpus": self.corpus,
            "results": [asdict(r) for r in self.results],
            "totals": self.totals,
            "exit_status": self.exit_status,
        }

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            line = f"{r.status.upper():7s} {r.identity:30s} {r.graph}"
            if r.detail:
                line += f"  [{r.detail}]"
            if r.witness:
                line += f"  witness: {r.witness}"
            lines.append(line)
        t = self.totals
        lines.append(f"suite={self.suite} corpus={self.corpus} pass={t['pass']} fail={t['fail']} skipped={t['skipped']}")
        return "\n".join(lines)


# --- helpers -------------------------------------------------------------------

def _diff_witness(got: Polynomial, want: Polynomial) -> str | None:
    d = got - want
    if d.is_zero():
        return None
    mono, c = d.sorted_items()[0]
    return Polynomial({mono: c}).text()


def _poly_check(identity: str, name: str, got: Polynomial, want: Polynomial, detail=None) -> CheckResult:
    w = _diff_witness(got, want)
    return CheckResult(identity, name, "fail" if w else "pass", w, detail)


def _skip(identity: str, name: str, why: str) -> list[CheckResult]:
    return [CheckResult(identity, name, "skipped", None, why)]


# --- per-graph checks ----------------------------------------------------------

def check_crossmethod(name: str, G: HalfEdgeGraph) -> list[CheckResult]:
    if not G.is_three_regular():
        return _skip("crossmethod", name, "not 3-regular")
    d = cp.corolla_by_definition(G)
    s = cp.corolla_by_subsets(G)
    r = cp.corolla_by_recurrence(G)
    out = [
        _poly_check("crossmethod:definition=subsets", name, d, s),
        _poly_check("crossmethod:recurrence=subsets", name, r, s),
    ]
    bad = None
    for mono, c in d.sorted_items():
        if c != 1:
            bad = f"coefficient {c} on {mono.text()}"
            break
        for hs in G.vertices:
            if sum(mono.mask >> h & 1 for h in hs) != 1:
                bad = f"monomial {mono.text() or '1'} not one variable per vertex"
                break
        if bad:
            break
    out.append(CheckResult("coefficient-law", name, "fail" if bad else "pass", bad))
    return out


def check_multiplicativity(name: str, G1: HalfEdgeGraph, G2: HalfEdgeGraph) -> list[CheckResult]:
    if not (G1.is_three_regular() and G2.is_three_regular()):
        return _skip("multiplicativity", name, "not 3-regular")
    U = disjoint_union(G1, G2)
    shift = G1.half_edge_count
    c2 = cp.corolla_by_subsets(G2)
    c2_shifted = Polynomial((m._replace(mask=m.mask << shift), c) for m, c in c2.items())
    return [_poly_check("multiplicativity", name, cp.corolla_by_recurrence(U), cp.corolla_by_subsets(G1) * c2_shifted)]


def _admissible_edge_sets(G: HalfEdgeGraph, max_size: int = 2):
    edges = G.sorted_pairs()
    yield from ([e] for e in edges)
    if max_size >= 2:
        for e, f in combinations(edges, 2):
            if not set(G.edge_endpoints(e)) & set(G.edge_endpoints(f)):
                yield [e, f]


def check_restricted(name: str, G: HalfEdgeGraph) -> list[CheckResult]:
    if not G.is_three_regular():
        return _skip("restricted", name, "not 3-regular")
    out = [_poly_check("restricted:empty", name, cp.corolla_restricted(G, []), cp.corolla_by_subsets(G))]
    for E in _admissible_edge_sets(G):
        got = cp.corolla_restricted(G, E)
        want = cp.corolla_by_subsets(remove_edge_set(G, E))
        out.append(_poly_check("restricted", name, got, want, detail=f"E={[list(e) for e in E]}"))
    return out


def check_ctcount(name: str, G: HalfEdgeGraph) -> list[CheckResult]:
    if not G.is_three_regular():
        return _skip("ctcount", name, "not 3-regular")
    st = stats(G)
    if st.c != 1:
        return _skip("ctcount", name, "disconnected")
    target = (st.v + st.e_ext) / 2
    for T in cp.admissible_selections(G):
        got = cp.component_count_c(G, ids_of(T))
        if got != target:
            return [CheckResult("ctcount", name, "fail", f"T={list(ids_of(T))}: c(T)={got} != {target:g}")]
    return [CheckResult("ctcount", name, "pass")]


def check_universal(name: str, G: HalfEdgeGraph) -> list[CheckResult]:
    if not G.is_three_regular():
        return _skip("universal", name, "not 3-regular")
    U = universal_poly(G)
    return [
        _poly_check("universal:r=0", name, U.subs_r(0), cp.corolla_by_subsets(G)),
        _poly_check("universal:r=1", name, U.subs_r(1), cp.vertex_sum_product(G)),
    ]


def check_tilde(name: str, G: HalfEdgeGraph) -> list[CheckResult]:
    if not G.is_three_regular():
        return _skip("tilde", name, "not 3-regular")
    st = stats(G)
    Ut = universal_tilde(G)
    want = universal_poly(G).subs_r(Polynomial.q() * Polynomial.r()) * Polynomial.q(st.v - st.ell + st.c)
    out = [_poly_check("tilde-relation", name, Ut, want)]
    bad = None
    if G.n_vertices <= INDEPENDENT_COUNT_MAX_VERTICES:
        for mask, _, _, _ in universal_records(G):
            H = ids_of(mask)
            lhs = (st.ell - remainder_cycle_count(G, H)) + cp.component_count_c(G, H) - st.c
            if lhs != st.v:
                bad = f"H={list(H)}: {lhs} != {st.v}"
                break
    else:
        for mono in Ut.terms:
            if (st.ell - mono.r) + mono.q - st.c != st.v:
                bad = f"H={list(mono.vars)}"
                break
    out.append(CheckResult("counting-identity", name, "fail" if bad else "pass", bad))
    return out


def check_potts(name: str, G: HalfEdgeGraph) -> list[CheckResult]:
    if not G.is_three_regular():
        return _skip("potts", name, "not 3-regular")
    n_cyc = len(enumerate_cycles(G))
    if n_cyc > POTTS_MAX_CYCLES or 3**n_cyc > POTTS_MAX_COLORINGS:
        return _skip("potts", name, f"{n_cyc} cycles")
    U = universal_poly(G)
    return [
        _poly_check(f"potts:r={n}", name, potts_poly(G, n), U.subs_r(n)) for n in (1, 2, 3)
    ]


def check_constrained(name: str, G: HalfEdgeGraph) -> list[CheckResult]:
    if not G.is_three_regular():
        return _skip("constrained", name, "not 3-regular")
    rep = constrained_identity_check(G, name=name)
    return [
        CheckResult("constrained:symbolic", name, "pass" if rep.symbolic else "fail",
                    None if rep.symbolic else rep.witness),
        CheckResult("constrained:numeric", name, "pass" if rep.numeric else "fail",
                    None if rep.numeric else rep.witness, detail=f"{len(rep.points)} points"),
    ]


def check_general(name: str, G: HalfEdgeGraph) -> list[CheckResult]:
    s = general_corolla_by_subsets(G)
    f = general_corolla_by_families(G)
    out = [_poly_check("general:families=subsets", name, f, s)]
    bad = next((f"coefficient {c} on {m.text()}" for m, c in f.sorted_items() if c != 1), None)
    out.append(CheckResult("general:coefficients", name, "fail" if bad else "pass", bad))
    if G.is_three_regular():
        out.append(_poly_check("general:reduces-to-C", name, s, cp.corolla_by_subsets(G)))
    return out


def check_contraction_split(name: str, G: HalfEdgeGraph) -> list[CheckResult]:
    edges = [e for e in G.sorted_pairs() if not G.is_tadpole(e)]
    if not edges:
        return _skip("contraction-split", name, "no contractible edge")
    out = []
    for e in edges:
        res = contraction_deletion_residual(G, e, "split")
        out.append(CheckResult(
            "contraction-split", name, "pass" if res.is_zero() else "fail",
            None if res.is_zero() else res.text(), detail=f"e={list(e)}",
        ))
    return out


def check_contraction_naive_regression() -> list[CheckResult]:
    res = contraction_deletion_residual(fixture("HGRAPH"), (2, 5), "naive")
    ok = res == parse_polynomial(NAIVE_HGRAPH_RESIDUAL)
    return [CheckResult(
        "contraction-naive-regression", "HGRAPH", "pass" if ok else "fail",
        None if ok else res.text(), detail=f"e=[2, 5] residual: {res.text()}",
    )]


GraphCheck = Callable[[str, HalfEdgeGraph], list]

SUITES: dict[str, GraphCheck | None] = {
    "crossmethod": check_crossmethod,
    "multiplicativity": None,  # pairwise, see _tasks
    "restricted": check_restricted,
    "ctcount": check_ctcount,
    "universal": check_universal,
    "tilde": check_tilde,
    "potts": check_potts,
    "constrained": check_constrained,
    "general": check_general,
    "contraction-split": check_contraction_split,
    "contraction-naive-regression": None,
}


# --- corpora -------------------------------------------------------------------

def load_corpus(spec: str, closed: bool = False) -> list[tuple[str, HalfEdgeGraph]]:
    """``fixtures`` | ``small:<n>`` | ``random:<seed>:<count>`` | ``mixed:<seed>:<count>``."""
    kind, _, rest = spec.partition(":")
    try:
        if kind == "fixtures" and not rest:
            return fixtures()
        if kind == "small":
            n = int(rest)
            return [(f"small{n}-{i}", G) for i, G in enumerate(enumerate_small(n, not closed))]
        if kind == "random":
            seed, count = (int(x) for x in rest.split(":"))
            return random_corpus(seed, count)
        if kind == "mixed":
            seed, count = (int(x) for x in rest.split(":"))
            return mixed_corpus(seed, count)
    except ValueError as exc:
        raise ValueError(f"bad corpus {spec!r}: {exc}") from None
    raise ValueError(f"bad corpus {spec!r}")


def _pair_label(a: str, b: str) -> str:
    return f"{a}+{b}"


def _tasks(suite: str, corpus: list[tuple[str, HalfEdgeGraph]]):
    if suite == "contraction-naive-regression":
        return [(suite, 0, ())]
    if suite == "multiplicativity":
        n = len(corpus)
        return [
            (suite, i, (_pair_label(corpus[i][0], corpus[(i + 1) % n][0]), corpus[i][1], corpus[(i + 1) % n][1]))
            for i in range(n)
        ]
    return [(suite, i, corpus[i]) for i in range(len(corpus))]


def _run_task(task) -> tuple[str, int, list[CheckResult]]:
    suite, idx, payload = task
    if suite == "contraction-naive-regression":
        return suite, idx, check_contraction_naive_regression()
    if suite == "multiplicativity":
        return suite, idx, check_multiplicativity(*payload)
    name, G = payload
    return suite, idx, SUITES[suite](name, G)


def worker_count() -> int:
    n = os.cpu_count() or 1
    cap = os.environ.get("COROLLA_THREADS")
    if cap:
        n = max(1, min(n, int(cap)))
    return n


def run_suites(
    suites: list[str],
    corpus: list[tuple[str, HalfEdgeGraph]],
    corpus_name: str = "",
    workers: int | None = None,
) -> VerifyReport:
    for s in suites:
        if s not in SUITES:
            raise ValueError(f"unknown suite {s!r}")
    tasks = [t for s in suites for t in _tasks(s, corpus)]
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            done = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * workers))))
    else:
        done = [_run_task(t) for t in tasks]
    order = {s: i for i, s in enumerate(suites)}
    done.sort(key=lambda t: (order[t[0]], t[1]))
    results = [r for _, _, rs in done for r in rs]
    return VerifyReport(",".join(suites), corpus_name, results)


def report_json(report: VerifyReport) -> str:
    return json.dumps(report.to_json(), indent=1)
