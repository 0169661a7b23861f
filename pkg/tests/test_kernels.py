import os
import subprocess
import sys

import pytest
from hypothesis import given, settings, strategies as st

from corolla import kernels
from corolla.corolla_poly import corolla_by_subsets
from corolla.generators import fixture, random_graph
from corolla.halfedge import build_graph, stats
from corolla.multipoly import mask_of

needs_ext = pytest.mark.skipif(not kernels.HAVE_EXTENSION, reason="compiled kernel not built")


def one_per_vertex(G):
    return [[1 << h for h in hs] for hs in G.vertices]


def all_but_two(G):
    out = []
    for hs in G.vertices:
        full = mask_of(hs)
        out.append([full & ~((1 << hs[i]) | (1 << hs[j])) for i in range(len(hs)) for j in range(i + 1, len(hs))])
    return out


def scan_both(G, options, acyclic_only):
    py = kernels.selection_scan(G, options, acyclic_only, backend="python")
    cy = kernels.selection_scan(G, options, acyclic_only, backend="cython")
    return sorted(py), sorted(cy)


@needs_ext
@pytest.mark.parametrize("name", ["VERTEX3", "TADPOLE1", "THETA", "DUMBBELL", "K4", "PRISM", "ladder(3)"])
@pytest.mark.parametrize("acyclic_only", [False, True])
def test_backends_agree_on_fixtures(name, acyclic_only):
    G = fixture(name)
    py, cy = scan_both(G, one_per_vertex(G), acyclic_only)
    assert py == cy


@needs_ext
@settings(max_examples=60, deadline=None)
@given(
    st.integers(0, 10**6),
    st.integers(1, 6),
    st.sampled_from([(3, 3), (3, 5), (2, 4)]),
    st.sampled_from([0.0, 0.25]),
    st.booleans(),
)
def test_backends_agree_random(seed, n, valence, frac, acyclic_only):
    G = random_graph(seed, n, valence, frac)
    options = all_but_two(G) if valence != (3, 3) else one_per_vertex(G)
    if any(not opts for opts in options):
        return
    py, cy = scan_both(G, options, acyclic_only)
    assert py == cy


def test_record_fields():
    G = fixture("THETA")
    recs = kernels.selection_scan(G, one_per_vertex(G), backend="python")
    assert len(recs) == 9
    s = stats(G)
    for mask, ell, ncomp, both in recs:
        assert ell == (1 if mask in (mask_of([0, 3]), mask_of([1, 4]), mask_of([2, 5])) else 0)
        assert both == ell  # a matched pair deletes its own edge
        assert ncomp >= s.c


def test_wide_ids_use_python_path():
    # ids beyond 63 do not fit the compiled kernel's 64-bit masks
    shift = 100
    theta = fixture("THETA")
    G = build_graph(
        [[h + shift for h in hs] for hs in theta.vertices],
        [(h + shift, k + shift) for h, k in theta.pairs],
    )
    got = corolla_by_subsets(G)
    want = corolla_by_subsets(theta)
    assert {m.mask for m, _ in got.items()} == {m.mask << shift for m, _ in want.items()}


def test_scan_order_is_bfs():
    G = fixture("PRISM")
    order = kernels.scan_order(G)
    assert sorted(order) == list(range(G.n_vertices))
    assert order[0] == 0


def test_env_forces_fallback():
    env = dict(os.environ, COROLLA_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import corolla.kernels as k; print(k.backend_name(), k.HAVE_EXTENSION)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.split() == ["python", "False"]


def test_cython_missing_raises(monkeypatch):
    monkeypatch.setattr(kernels, "_compiled", None)
    with pytest.raises(RuntimeError):
        kernels.selection_scan(fixture("THETA"), one_per_vertex(fixture("THETA")), backend="cython")
