from __future__ import annotations

import random
from fractions import Fraction

import networkx as nx
import pytest
import sympy

from polyforge.canon import are_isomorphic, connected_graphs
from polyforge.exactpoly import BiPoly, Poly
from polyforge.flowchrom import acyclic_orientation_count, chromatic_poly, flow_poly
from polyforge.generators import complete, cycle, path, star
from polyforge.matroid import cycle_matroid, flats, tutte_subset, uniform
from polyforge.multigraph import Multigraph, bicycle_dimension, components, is_connected
from polyforge.tutte import (
    activity_counts,
    coefficient_property_check,
    convolution_check,
    count_acyclic_orientations,
    count_totally_cyclic_orientations,
    flat_convolution_check,
    merino_identity_check,
    merino_welsh_probe,
    rational_identity_check,
    read_rosenstiehl_check,
    spanning_trees,
    special_values,
    special_values_check,
    stanley_negative_check,
    t_equivalent,
    tutte_activities,
    tutte_dc,
    tutte_poly,
)

from conftest import random_multigraph

x, y = BiPoly.x(), BiPoly.y()


def tutte_nx(g: Multigraph) -> BiPoly:
    h = nx.MultiGraph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.pairs())
    expr = sympy.Poly(nx.tutte_polynomial(h), *sympy.symbols("x y"))
    return BiPoly({(i, j): int(c) for (i, j), c in expr.terms()})


def whitney_pair() -> tuple[Multigraph, Multigraph]:
    # 2-cut {0, 1}; side A is 0-2-3-1 with a triangle hung at 2, side B is 0-4-5-1 with a pendant at 4
    side_a = [(0, 2), (2, 3), (3, 1), (2, 6), (6, 7), (2, 7)]
    side_b = [(0, 4), (4, 5), (5, 1), (4, 8)]
    twist = {0: 1, 1: 0}
    twisted_b = [(twist.get(u, u), twist.get(v, v)) for u, v in side_b]
    return Multigraph.from_pairs(9, side_a + side_b), Multigraph.from_pairs(9, side_a + twisted_b)


class TestDeletionContraction:
    @pytest.mark.parametrize("n", range(1, 8))
    def test_trees(self, n):
        assert tutte_dc(path(n)) == x ** (n - 1)
        if n >= 2:
            assert tutte_dc(star(n - 1)) == x ** (n - 1)

    @pytest.mark.parametrize("n", range(3, 9))
    def test_cycles(self, n):
        assert tutte_dc(cycle(n)) == sum((x ** i for i in range(1, n)), BiPoly()) + y

    def test_block_factorization(self):
        bowtie = Multigraph.from_pairs(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
        assert tutte_dc(bowtie) == tutte_dc(cycle(3)) ** 2
        assert tutte_dc(Multigraph.from_pairs(7, cycle(3).pairs() + [(3, 4), (5, 6), (4, 5), (6, 4)])) == \
            tutte_dc(cycle(3)) ** 2 * x

    def test_against_networkx(self, corpus5):
        rng = random.Random(1)
        graphs = list(corpus5) + [random_multigraph(rng, max_n=5, max_m=7) for _ in range(25)]
        for g in graphs:
            assert tutte_dc(g) == tutte_nx(g), g

    def test_routes_exhaustive_small(self):
        # every connected simple graph with at most 8 edges, plus random multigraphs
        graphs = [g for n in range(1, 7) for g in connected_graphs(n, max_edges=8)]
        rng = random.Random(2)
        graphs += [random_multigraph(rng, max_n=6, max_m=8) for _ in range(40)]
        for g in graphs:
            t = tutte_dc(g)
            assert tutte_poly(g, "subset") == t
            assert tutte_poly(g, "potts") == t
            if is_connected(g):
                assert tutte_poly(g, "activities") == t

    def test_routes_random_larger(self):
        rng = random.Random(3)
        for _ in range(200):
            g = random_multigraph(rng, max_n=7, max_m=14)
            t = tutte_dc(g)
            assert tutte_poly(g, "subset") == t
            if is_connected(g):
                assert tutte_poly(g, "activities") == t

    def test_unknown_route(self):
        with pytest.raises(ValueError):
            tutte_poly(cycle(3), "magic")

    def test_chromatic_and_flow_lines(self, corpus5):
        one_minus = Poly([1, -1])
        for g in corpus5:
            t = tutte_dc(g)
            c = components(g)
            chi_line = sum((one_minus ** i * k for (i, j), k in t.terms.items() if j == 0), Poly())
            flow_line = sum((one_minus ** j * k for (i, j), k in t.terms.items() if i == 0), Poly())
            assert chi_line * Poly.monomial(c, (-1) ** (g.n - c)) == chromatic_poly(g)
            assert flow_line * (-1) ** (g.m - g.n + c) == flow_poly(g)


class TestActivities:
    def test_triangle(self):
        counts, poly = tutte_activities(cycle(3))
        assert counts == {(1, 0): 1, (2, 0): 1, (0, 1): 1}
        assert poly == x + x ** 2 + y

    def test_k2(self):
        assert activity_counts(complete(2)) == {(1, 0): 1}

    def test_disconnected_rejected(self):
        with pytest.raises(ValueError):
            tutte_activities(Multigraph.from_pairs(3, [(0, 1)]))

    def test_non_injective_ranking(self):
        with pytest.raises(ValueError):
            activity_counts(cycle(3), {0: 1, 1: 1, 2: 2})

    def test_spanning_tree_count(self):
        assert len(spanning_trees(complete(4))) == 16
        assert len(spanning_trees(complete(5))) == 125

    def test_ranking_invariance(self):
        rng = random.Random(4)
        tested = 0
        while tested < 50:
            g = random_multigraph(rng, max_n=6, max_m=10)
            if not is_connected(g):
                continue
            t = tutte_dc(g)
            for _ in range(5):
                order = g.edge_ids[:]
                rng.shuffle(order)
                ranking = {e: i for i, e in enumerate(order)}
                assert tutte_activities(g, ranking)[1] == t
            tested += 1


class TestSpecialValues:
    def test_k4_trees(self):
        assert special_values(complete(4))["spanning_trees"] == 16

    def test_c4_acyclic(self):
        assert special_values(cycle(4))["acyclic_orientations"] == 14
        assert count_acyclic_orientations(cycle(4)) == 14
        assert count_totally_cyclic_orientations(cycle(4)) == 2

    def test_two_pow_m(self):
        rng = random.Random(5)
        for _ in range(20):
            g = random_multigraph(rng)
            assert tutte_dc(g).evaluate(2, 2) == 2 ** g.m

    def test_against_enumeration(self, corpus5):
        for g in corpus5:
            if g.m <= 12:
                assert special_values_check(g).passed, g

    def test_acyclic_dp_matches_orientations(self):
        rng = random.Random(6)
        for _ in range(40):
            g = random_multigraph(rng, max_n=6, max_m=10)
            assert count_acyclic_orientations(g) == acyclic_orientation_count(g) == tutte_dc(g).evaluate(2, 0) \
                if is_connected(g) else count_acyclic_orientations(g) == acyclic_orientation_count(g)

    def test_needs_connected(self):
        with pytest.raises(ValueError):
            special_values(Multigraph.from_pairs(2, []))


class TestConvolution:
    def test_triangle(self):
        assert convolution_check(cycle(3)).passed
        assert tutte_dc(cycle(3)).substitute_y(0) == Poly([0, 1, 1])

    def test_tree(self):
        assert convolution_check(path(5)).passed

    def test_corpus(self, corpus6):
        for g in corpus6:
            assert convolution_check(g).passed, g

    def test_flat_form(self):
        for g in (complete(4), cycle(4), Multigraph.from_pairs(3, [(0, 1), (0, 1), (1, 2)])):
            assert flat_convolution_check(cycle_matroid(g)).passed
        assert flat_convolution_check(uniform(2, 4)).passed

    def test_multigraphs(self):
        rng = random.Random(7)
        for _ in range(30):
            assert convolution_check(random_multigraph(rng, max_n=5, max_m=7)).passed


class TestEvaluationIdentities:
    def test_rational_examples(self):
        assert rational_identity_check(complete(2), 1).passed
        assert tutte_dc(cycle(3)).evaluate(Fraction(3, 2), 3) == Fraction(27, 4)
        assert rational_identity_check(cycle(3), 2).passed
        assert tutte_dc(complete(4)).evaluate(Fraction(4, 3), 4) == Fraction(4 ** 6, 3 ** 3)
        assert rational_identity_check(complete(4), 3).passed
        assert rational_identity_check(uniform(2, 4), Fraction(-1, 3)).passed

    @pytest.mark.parametrize("v", [0, -1])
    def test_rational_excluded(self, v):
        with pytest.raises(ValueError):
            rational_identity_check(cycle(3), v)

    def test_stanley(self):
        for g in (cycle(4), complete(3), complete(4), path(3)):
            for k in (1, 2, 3):
                assert stanley_negative_check(g, k).passed
        t = tutte_dc(cycle(4))
        assert 2 * t.evaluate(3, 0) == abs(chromatic_poly(cycle(4))(-2))

    def test_read_rosenstiehl(self):
        assert tutte_dc(path(4)).evaluate(-1, -1) == -1
        assert tutte_dc(cycle(4)).evaluate(-1, -1) == -2
        for g in (path(4), cycle(4), complete(4), complete(5)):
            assert read_rosenstiehl_check(g).passed
        assert bicycle_dimension(cycle(4)) == 1

    def test_merino(self):
        assert tutte_dc(complete(4)).evaluate(1, -1) == tutte_dc(complete(2)).evaluate(2, -1) == 2
        for n in (1, 2, 3, 4):
            assert merino_identity_check(n).passed

    def test_merino_range(self):
        with pytest.raises(ValueError):
            merino_identity_check(5)

    def test_coefficient_properties(self, corpus5):
        for g in corpus5:
            assert coefficient_property_check(g).passed, g


class TestEquivalence:
    def test_self(self):
        assert t_equivalent(complete(4), complete(4))

    def test_whitney_twist(self):
        g, h = whitney_pair()
        assert t_equivalent(g, h)
        assert not are_isomorphic(g, h)

    def test_different(self):
        assert not t_equivalent(cycle(4), path(4))

    def test_merino_welsh_probe(self, corpus6):
        probed = 0
        for g in corpus6:
            try:
                rep = merino_welsh_probe(g)
            except ValueError:
                continue
            probed += 1
            assert rep.passed, g
        assert probed > 50

    def test_probe_precondition(self):
        with pytest.raises(ValueError):
            merino_welsh_probe(path(3))
