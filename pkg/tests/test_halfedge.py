import json

import pytest
from hypothesis import given, settings, strategies as st

from corolla.generators import fixture, random_graph
from corolla.halfedge import (
    GraphValidationError,
    build_graph,
    canonical_key,
    contract_edge,
    delete_halfedge,
    disjoint_union,
    dump_graph,
    empty_graph,
    graph_from_dict,
    graph_to_dict,
    join_external,
    load_graph,
    relabel,
    remove_edge_set,
    remove_vertex,
    remove_vertices,
    stats,
)


def shape(G):
    return [sorted(hs) for hs in G.vertices], sorted(G.pairs)


def revalidate(G):
    # surgery output must survive a fresh trip through the validator
    return build_graph(G.vertices, G.pairs, G.half_edge_count)


class TestBuild:
    def test_vertex3(self):
        G = build_graph([[0, 1, 2]], [])
        assert G.externals == (0, 1, 2)
        assert G.is_three_regular()

    def test_tadpole_is_legal(self):
        G = build_graph([[0, 1, 2]], [[0, 1]])
        assert G.is_tadpole((0, 1))
        assert G.externals == (2,)

    def test_parallel_edges_legal(self):
        G = fixture("THETA")
        assert stats(G).e_int == 3

    @pytest.mark.parametrize(
        "vertices, pairs, kind, bad",
        [
            ([[0, 1], [1, 2]], [], "multiple-vertices", 1),
            ([[0, 0, 1]], [], "duplicate", 0),
            ([[0, 1, 2]], [[0, 1], [1, 2]], "multiple-pairs", 1),
            ([[0, 1, 2]], [[2, 2]], "self-paired", 2),
            ([[0, 1, 2]], [[0, 7]], "out-of-range", 7),
            ([[0, 1, 2]], [[0, 1, 2]], "pair-arity", None),
        ],
    )
    def test_errors_name_the_id(self, vertices, pairs, kind, bad):
        with pytest.raises(GraphValidationError) as info:
            build_graph(vertices, pairs, 3)
        assert info.value.kind == kind
        assert info.value.halfedge == bad
        if bad is not None:
            assert str(bad) in str(info.value)

    def test_unattached_pair(self):
        with pytest.raises(GraphValidationError) as info:
            build_graph([[0, 1, 2]], [[0, 4]], 5)
        assert info.value.kind == "unattached"


class TestSurgery:
    def test_remove_vertex_theta(self):
        G = remove_vertex(fixture("THETA"), 0)
        assert shape(G) == ([[3, 4, 5]], [])

    def test_remove_vertex_dumbbell(self):
        G = remove_vertex(fixture("DUMBBELL"), 0)
        assert shape(G) == ([[3, 4, 5]], [(3, 4)])
        assert G.externals == (5,)

    def test_remove_vertex_triangle(self):
        G = remove_vertex(fixture("TRIANGLE3"), 0)
        assert shape(G) == ([[3, 4, 5], [6, 7, 8]], [(4, 6)])
        assert set(G.externals) == {3, 5, 7, 8}

    def test_remove_vertex_bad_index(self):
        with pytest.raises(GraphValidationError):
            remove_vertex(fixture("THETA"), 2)

    def test_delete_halfedge(self):
        G = delete_halfedge(fixture("HGRAPH"), 2)
        assert shape(G) == ([[0, 1], [3, 4, 5]], [])
        assert 5 in G.externals
        G2 = delete_halfedge(G, 5)
        assert shape(G2) == ([[0, 1], [3, 4]], [])

    def test_delete_halfedge_tadpole(self):
        G = delete_halfedge(fixture("TADPOLE1"), 0)
        assert shape(G) == ([[1, 2]], [])

    def test_delete_unknown(self):
        with pytest.raises(GraphValidationError):
            delete_halfedge(fixture("THETA"), 9)

    def test_join_external(self):
        G = join_external(fixture("VERTEX3"), 0, 1)
        assert shape(G) == shape(fixture("TADPOLE1"))

    def test_join_reduces_components(self):
        U = disjoint_union(fixture("VERTEX3"), fixture("VERTEX3"))
        assert stats(U).c == 2
        assert stats(join_external(U, 0, 3)).c == 1

    @pytest.mark.parametrize("h, k", [(0, 0), (2, 5)])
    def test_join_rejects(self, h, k):
        G = fixture("HGRAPH")
        with pytest.raises((GraphValidationError, ValueError)):
            join_external(G, h, k)

    def test_contract_naive(self):
        G = contract_edge(fixture("HGRAPH"), (2, 5), "naive")
        assert shape(G) == ([[0, 1, 3, 4]], [])

    def test_contract_triangle(self):
        G = contract_edge(fixture("TRIANGLE3"), (1, 3), "naive")
        assert shape(G) == ([[0, 2, 4, 5], [6, 7, 8]], [(0, 7), (4, 6)])

    def test_contract_split_records_blocks(self):
        G = contract_edge(fixture("HGRAPH"), (2, 5), "split")
        assert G.splits[0] == ((0, 1), (3, 4))

    def test_contract_tadpole_rejected(self):
        with pytest.raises(GraphValidationError) as info:
            contract_edge(fixture("DUMBBELL"), (0, 1), "naive")
        assert info.value.kind == "tadpole"

    def test_contract_external_rejected(self):
        with pytest.raises(GraphValidationError):
            contract_edge(fixture("HGRAPH"), (0, 1), "naive")

    def test_remove_edge_set(self):
        assert remove_edge_set(fixture("K4"), []) == fixture("K4")
        G = remove_edge_set(fixture("TRIANGLE3"), [(1, 3)])
        assert shape(G) == ([[6, 7, 8]], [])
        assert remove_edge_set(fixture("THETA"), [(0, 3)]).n_vertices == 0

    def test_remove_edge_set_adjacent_rejected(self):
        with pytest.raises(GraphValidationError) as info:
            remove_edge_set(fixture("K4"), [(0, 3), (1, 6)])
        assert info.value.kind == "edges-not-disjoint"

    def test_remove_edge_set_new_externals(self):
        # each removed 3-valent endpoint leaves its two other partners dangling
        G = fixture("PRISM")
        rung = next(e for e in G.sorted_pairs() if set(G.edge_endpoints(e)) == {0, 1})
        H = remove_edge_set(G, [rung])
        assert len(H.externals) == 4 * 1
        K = fixture("K4")
        H = remove_edge_set(K, [(0, 3), (8, 11)])
        assert H.n_vertices == 0

    def test_disjoint_union(self):
        U = disjoint_union(fixture("VERTEX3"), fixture("VERTEX3"))
        assert U.n_vertices == 2 and len(U.externals) == 6
        assert disjoint_union(fixture("K4"), empty_graph()) == fixture("K4")
        assert stats(disjoint_union(fixture("THETA"), fixture("DUMBBELL"))).c == 2


class TestStats:
    @pytest.mark.parametrize(
        "name, expected",
        [
            ("THETA", (2, 3, 0, 1, 2)),
            ("VERTEX3", (1, 0, 3, 1, 0)),
            ("DUMBBELL", (2, 3, 0, 1, 2)),
            ("K4", (4, 6, 0, 1, 3)),
            ("TRIANGLE3", (3, 3, 3, 1, 1)),
        ],
    )
    def test_stats(self, name, expected):
        assert tuple(stats(fixture(name))) == expected


class TestKeys:
    def test_deterministic(self):
        assert canonical_key(fixture("K4")) == canonical_key(fixture("K4"))

    def test_distinguishes(self):
        assert canonical_key(fixture("VERTEX3")) != canonical_key(fixture("TADPOLE1"))

    def test_label_aware(self):
        a = build_graph([[0, 1, 2]], [[0, 1]])
        b = build_graph([[0, 1, 2]], [[1, 2]])
        assert canonical_key(a) != canonical_key(b)


class TestJson:
    def test_round_trip(self, tmp_path, all_fixtures):
        for _, G in all_fixtures:
            p = tmp_path / "g.json"
            p.write_text(dump_graph(G))
            assert load_graph(p) == G

    def test_pairs_normalized(self):
        raw = {"halfedges": 6, "vertices": [[0, 1, 2], [3, 4, 5]], "pairs": [[5, 2], [3, 0], [4, 1]]}
        out = graph_to_dict(graph_from_dict(raw))
        assert out["pairs"] == [[0, 3], [1, 4], [2, 5]]
        assert json.loads(dump_graph(graph_from_dict(out))) == out

    def test_sparse_rejected_then_relabeled(self):
        raw = {"halfedges": 8, "vertices": [[0, 1, 7]], "pairs": [[0, 7]]}
        with pytest.raises(GraphValidationError) as info:
            graph_from_dict(raw)
        assert info.value.kind == "sparse"
        G, id_map = relabel(graph_from_dict(raw, dense=False))
        assert id_map == {0: 0, 1: 1, 7: 2}
        assert shape(G) == ([[0, 1, 2]], [(0, 2)])

    @pytest.mark.parametrize("raw", [{"vertices": []}, {"halfedges": -1, "vertices": []}, []])
    def test_malformed(self, raw):
        with pytest.raises(GraphValidationError):
            graph_from_dict(raw)


graphs = st.builds(
    random_graph,
    st.integers(0, 10**6),
    st.integers(1, 7),
    st.just((3, 3)),
    st.sampled_from([0.0, 0.2, 0.4]),
)


@settings(max_examples=60, deadline=None)
@given(graphs, st.data())
def test_surgeries_stay_valid(G, data):
    revalidate(G)
    v = data.draw(st.integers(0, G.n_vertices - 1))
    H = remove_vertex(G, v)
    revalidate(H)
    assert H.n_vertices == G.n_vertices - 1
    for h in G.vertices[v]:
        k = G.partner.get(h)
        if k is not None and k not in G.vertices[v]:
            assert H.is_external(k)
    h = data.draw(st.sampled_from(G.halfedges))
    revalidate(delete_halfedge(G, h))
    inner = [e for e in G.sorted_pairs() if not G.is_tadpole(e)]
    if inner:
        e = data.draw(st.sampled_from(inner))
        for mode in ("naive", "split"):
            C = contract_edge(G, e, mode)
            revalidate(C)
            assert C.n_vertices == G.n_vertices - 1


@settings(max_examples=60, deadline=None)
@given(graphs, st.randoms(use_true_random=False))
def test_remove_edge_set_order_independent(G, rnd):
    edges = G.sorted_pairs()
    rnd.shuffle(edges)
    E, used = [], set()
    for e in edges:
        ends = set(G.edge_endpoints(e))
        if not ends & used:
            E.append(e)
            used |= ends
    H = remove_edge_set(G, E)
    order = sorted(used)
    rnd.shuffle(order)
    step = G
    # removing by vertex index shifts later indices, so go through ids
    for v in order:
        anchor = G.vertices[v][0]
        step = remove_vertex(step, step.vertex_of[anchor])
    assert shape(H) == shape(step)
    assert H == remove_vertices(G, order)


@settings(max_examples=60, deadline=None)
@given(graphs, graphs)
def test_ell_additive(G1, G2):
    s1, s2 = stats(G1), stats(G2)
    U = stats(disjoint_union(G1, G2))
    assert U.ell == s1.ell + s2.ell >= 0
    assert U.c == s1.c + s2.c
    assert s1.ell == s1.e_int - s1.v + s1.c
