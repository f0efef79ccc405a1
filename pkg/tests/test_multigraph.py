from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polyforge.canon import (
    are_isomorphic,
    bridgeless_connected_graphs,
    canonical_key,
    connected_graph_stream,
    connected_graphs,
)
from polyforge.exactpoly import bell_poly
from polyforge.generators import (
    complement,
    complete,
    complete_multipartite,
    cycle,
    disjoint_union,
    empty,
    generalized_petersen,
    join,
    path,
    star,
)
from polyforge.graphio import (
    ParseError,
    format_digraph,
    format_edgelist,
    format_graph6,
    parse_digraph,
    parse_edgelist,
    parse_graph6,
)
from polyforge.multigraph import (
    Digraph,
    EdgeKind,
    Multigraph,
    bicycle_dimension,
    block_count,
    blocks,
    classify_edge,
    components,
    contract_edge_multi,
    contract_edge_simple,
    delete_edge,
    induced_partition_graph,
    partitions_stream,
    SetPartition,
)

from conftest import random_multigraph


def to_nx(g: Multigraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.pairs())
    return h


def two_triangles() -> Multigraph:
    return Multigraph.from_pairs(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


class TestConstruction:
    def test_endpoint_range(self):
        with pytest.raises(ValueError):
            Multigraph(2, ((0, 0, 2),))

    def test_duplicate_ids(self):
        with pytest.raises(ValueError):
            Multigraph(2, ((0, 0, 1), (0, 0, 1)))

    def test_ids_stable_under_deletion(self):
        g = cycle(4)
        h = delete_edge(g, 1)
        assert h.edge_ids == [0, 2, 3]
        assert h.endpoints(2) == g.endpoints(2)


class TestMinors:
    def test_delete(self):
        assert delete_edge(complete(2), 0) == empty(2)
        assert are_isomorphic(delete_edge(cycle(3), 0), path(3))
        double = Multigraph.from_pairs(2, [(0, 1), (0, 1)])
        assert delete_edge(double, 0).pairs() == [(0, 1)]

    def test_contract_multi(self):
        double = Multigraph.from_pairs(2, [(0, 1), (0, 1)])
        h = contract_edge_multi(double, 0)
        assert h.n == 1 and h.pairs() == [(0, 0)]
        t = contract_edge_multi(cycle(3), 0)
        assert t.n == 2 and t.pairs() == [(0, 1), (0, 1)]
        assert contract_edge_multi(complete(2), 0) == empty(1)

    def test_contract_simple(self):
        assert are_isomorphic(contract_edge_simple(cycle(3), 0), complete(2))
        assert are_isomorphic(contract_edge_simple(cycle(4), 0), cycle(3))
        assert are_isomorphic(contract_edge_simple(star(3), 0), star(2))

    def test_contract_reports_vertex_map(self):
        h, where = contract_edge_multi(cycle(4), 0, return_map=True)
        u, v = cycle(4).endpoints(0)
        assert where[u] == where[v]
        assert sorted(set(where.values())) == list(range(h.n))

    @settings(max_examples=60)
    @given(st.randoms(use_true_random=False))
    def test_contract_invariants(self, rng):
        g = random_multigraph(rng)
        if not g.m:
            return
        e = rng.choice(g.edge_ids)
        h = contract_edge_multi(g, e)
        assert h.m == g.m - 1
        assert sorted(h.edge_ids) == sorted(set(g.edge_ids) - {e})
        if g.is_loop(e):
            with pytest.raises(ValueError):
                contract_edge_simple(g, e)
        else:
            assert contract_edge_simple(g, e).is_simple


class TestStructure:
    def test_classify(self):
        assert all(classify_edge(path(4), e) is EdgeKind.BRIDGE for e in path(4).edge_ids)
        assert all(classify_edge(cycle(5), e) is EdgeKind.NORMAL for e in cycle(5).edge_ids)
        assert classify_edge(Multigraph.from_pairs(1, [(0, 0)]), 0) is EdgeKind.LOOP

    def test_components(self):
        assert components(empty(4), []) == 4
        c4 = cycle(4)
        assert components(c4) == 1
        # edges 0 and 2 of the 4-cycle are opposite
        assert c4.endpoints(0) != c4.endpoints(2)
        assert not set(c4.endpoints(0)) & set(c4.endpoints(2))
        assert components(c4, [0, 2]) == 2

    def test_blocks(self):
        assert block_count(two_triangles()) == 2
        assert block_count(cycle(5)) == 1
        assert block_count(path(4)) == 3

    @settings(max_examples=60)
    @given(st.randoms(use_true_random=False))
    def test_bridge_rule_and_block_partition(self, rng):
        g = random_multigraph(rng, loops=False)
        c = components(g)
        for e in g.edge_ids:
            ce = components(delete_edge(g, e))
            assert ce in (c, c + 1)
            assert (classify_edge(g, e) is EdgeKind.BRIDGE) == (ce == c + 1)
        bl = blocks(g)
        edges = sorted(e for _, es in bl for e in es)
        assert edges == sorted(g.edge_ids)
        assert sum(len(vs) - 1 for vs, _ in bl) == g.n - c

    def test_bicycle_examples(self):
        assert bicycle_dimension(path(5)) == 0
        assert bicycle_dimension(star(4)) == 0
        assert bicycle_dimension(cycle(4)) == 1
        # the three 4-cycles of K_4 are also edge cuts, so together with 0 they span a 2-dim space
        assert bicycle_dimension(complete(4)) == 2

    def test_bicycle_by_gf2_bruteforce(self):
        rng = random.Random(3)
        for _ in range(25):
            g = random_multigraph(rng, max_n=5, max_m=7, loops=False)
            cycles = [s for s in range(1 << g.m) if _in_cycle_space(g, s)]
            cocycles = {_cut(g, side) for side in range(1 << g.n)}
            both = [s for s in cycles if s in cocycles]
            dim = len(both).bit_length() - 1
            assert bicycle_dimension(g) == dim
            assert dim <= min(len(cycles).bit_length() - 1, len(cocycles).bit_length() - 1)


def _in_cycle_space(g, mask):
    deg = [0] * g.n
    for i, e in enumerate(g.edge_ids):
        if mask >> i & 1:
            u, v = g.endpoints(e)
            deg[u] += 1
            deg[v] += 1
    return all(d % 2 == 0 for d in deg)


def _cut(g, side):
    mask = 0
    for i, e in enumerate(g.edge_ids):
        u, v = g.endpoints(e)
        if (side >> u & 1) != (side >> v & 1):
            mask |= 1 << i
    return mask


class TestGenerators:
    def test_petersen(self):
        g = generalized_petersen(5, 2)
        assert (g.n, g.m) == (10, 15)
        assert all(g.degree(v) == 3 for v in range(10))
        assert nx.is_isomorphic(to_nx(g), nx.petersen_graph())

    def test_wheel_by_join(self):
        w = join(empty(1), cycle(4))
        assert (w.n, w.m) == (5, 8)
        assert nx.is_isomorphic(to_nx(w), nx.wheel_graph(5))

    def test_complement(self):
        assert complement(complete(5)) == empty(5)

    def test_multipartite_and_union(self):
        g = complete_multipartite([2, 3])
        assert nx.is_isomorphic(to_nx(g), nx.complete_bipartite_graph(2, 3))
        assert disjoint_union(cycle(3), path(2)).n == 5


class TestGraphStream:
    @pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21), (6, 112), (7, 853)])
    def test_counts(self, n, count):
        assert len(connected_graphs(n)) == count

    @pytest.mark.slow
    def test_order8_count(self):
        assert sum(1 for _ in connected_graph_stream(8)) == 11117

    @pytest.mark.parametrize("n", range(1, 8))
    def test_matches_atlas(self, n):
        atlas = [h for h in nx.graph_atlas_g() if h.number_of_nodes() == n and nx.is_connected(h)]
        ours = connected_graphs(n)
        assert len(ours) == len(atlas)
        assert len({canonical_key(g) for g in ours}) == len(ours)

    def test_order_nine_needs_file(self):
        with pytest.raises(ValueError):
            next(iter(connected_graph_stream(9)))

    def test_file_source(self, tmp_path):
        f = tmp_path / "g.g6"
        f.write_text("\n".join(format_graph6(g) for g in connected_graphs(4)) + "\n")
        assert len(list(connected_graph_stream(4, f))) == 6

    def test_canonical_key_invariance(self):
        rng = random.Random(7)
        for g in connected_graphs(6)[::7]:
            perm = list(range(g.n))
            rng.shuffle(perm)
            h = Multigraph.from_pairs(g.n, [(perm[u], perm[v]) for u, v in g.pairs()])
            assert canonical_key(g) == canonical_key(h)

    def test_bridgeless_corpus_against_networkx(self):
        ours = {}
        for g in bridgeless_connected_graphs(10):
            if g.is_simple and g.n <= 7:
                ours[g.n] = ours.get(g.n, 0) + 1
        atlas = {}
        for h in nx.graph_atlas_g():
            if h.number_of_nodes() and nx.is_connected(h) and h.number_of_edges() <= 10 \
                    and h.number_of_nodes() > 2 and not nx.has_bridges(h):
                atlas[h.number_of_nodes()] = atlas.get(h.number_of_nodes(), 0) + 1
        assert ours == atlas


class TestPartitions:
    @pytest.mark.parametrize("n", range(7))
    def test_bell_counts(self, n):
        parts = list(partitions_stream(n))
        assert len(parts) == bell_poly(n)(1)
        assert len(set(parts)) == len(parts)

    def test_induced_partition_graph(self):
        p = SetPartition.from_rgs([0, 0, 1])
        assert induced_partition_graph(cycle(3), p).m == 1


class TestIO:
    def test_edgelist(self):
        assert parse_edgelist("2 1\n0 1") == complete(2)
        g = parse_edgelist("3 1\n0 0")
        assert g.n == 3 and g.pairs() == [(0, 0)]

    def test_graph6_k4(self):
        assert parse_graph6("C~") == complete(4)
        assert format_graph6(complete(4)) == "C~"

    @pytest.mark.parametrize("n", range(1, 7))
    def test_graph6_bytes_match_networkx(self, n):
        for g in connected_graphs(n):
            ours = format_graph6(g)
            theirs = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
            assert ours == theirs
            assert format_graph6(parse_graph6(ours)) == ours

    def test_edgelist_roundtrip(self):
        rng = random.Random(11)
        for _ in range(30):
            g = random_multigraph(rng)
            assert parse_edgelist(format_edgelist(g)).pairs() == g.pairs()

    @pytest.mark.parametrize("text", ["", "2", "2 1\n0 5", "2 2\n0 1", "x y"])
    def test_bad_edgelist(self, text):
        with pytest.raises(ParseError):
            parse_edgelist(text)

    def test_digraph_roundtrip(self):
        d = Digraph(3, frozenset({(0, 1), (1, 2)}))
        assert parse_digraph(format_digraph(d)) == d
