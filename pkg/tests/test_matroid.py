from __future__ import annotations

import random
from itertools import combinations
from math import comb

import pytest

from polyforge.canon import connected_graphs
from polyforge.exactpoly import BiPoly, Poly
from polyforge.flowchrom import chromatic_poly, flow_poly
from polyforge.generators import complete, cycle, empty, path
from polyforge.matroid import (
    char_poly,
    char_poly_uniform,
    check_rank_axioms,
    chromatic_product_identity_check,
    closure,
    cocycle_matroid,
    contraction,
    cycle_matroid,
    direct_sum,
    dual,
    explicit,
    flats,
    flats_bruteforce,
    kung_identity_check,
    lemma_flat_sum,
    mobius,
    restriction,
    tutte_poly_matroid,
    uniform,
)
from polyforge.multigraph import Multigraph, components, is_bridgeless

from conftest import random_multigraph

X = Poly([0, 1])


def _zoo():
    """A small zoo of matroids with at most 8 elements."""
    zoo = [uniform(k, n) for n in range(0, 6) for k in range(n + 1)]
    zoo += [cycle_matroid(g) for g in (complete(4), cycle(5), path(4))]
    zoo += [cocycle_matroid(complete(4)), dual(uniform(2, 5)), direct_sum(uniform(1, 2), uniform(2, 3))]
    zoo.append(cycle_matroid(Multigraph.from_pairs(3, [(0, 1), (0, 1), (1, 2), (2, 2)])))
    return zoo


ZOO = _zoo()


class TestConstructors:
    def test_uniform_rank(self):
        m = uniform(2, 4)
        assert m.rank({0, 1, 2}) == 2
        assert m.rank({3}) == 1

    def test_uniform_bad_parameters(self):
        with pytest.raises(ValueError):
            uniform(5, 3)

    @pytest.mark.parametrize("n", range(3, 8))
    def test_cycle_rank(self, n):
        assert cycle_matroid(cycle(n)).r == n - 1

    @pytest.mark.parametrize("m", ZOO, ids=range(len(ZOO)))
    def test_dual_involution(self, m):
        dd = dual(dual(m))
        assert dd.rank_table() == m.rank_table()

    @pytest.mark.parametrize("m", ZOO, ids=range(len(ZOO)))
    def test_rank_axioms(self, m):
        assert check_rank_axioms(m) == []
        assert check_rank_axioms(dual(m)) == []

    def test_axiom_checker_catches_violation(self):
        # rank 2 on a singleton breaks r(A) <= |A|
        bad = explicit([0, 1], [0, 2, 1, 2])
        assert check_rank_axioms(bad)

    def test_minors(self):
        m = cycle_matroid(cycle(4))
        assert restriction(m, [0, 1]).r == 2
        c = contraction(m, [0])
        assert c.r == 2
        assert contraction(m, [0, 1, 2]).is_loop(3)

    def test_minor_requires_subset(self):
        with pytest.raises(ValueError):
            restriction(uniform(1, 2), [5])

    def test_loops_and_coloops(self):
        m = cycle_matroid(Multigraph.from_pairs(3, [(0, 0), (0, 1), (1, 2), (1, 2)]))
        assert m.is_loop(0)
        assert m.is_coloop(1)
        assert not m.is_coloop(2)


class TestFlats:
    def test_u11(self):
        m = uniform(1, 1)
        assert sorted(len(f) for f, _ in flats(m)) == [0, 1]
        assert mobius(m)[frozenset({0})] == -1

    def test_u23(self):
        m = uniform(2, 3)
        fl = flats(m)
        assert sorted(len(f) for f, _ in fl) == [0, 1, 1, 1, 3]
        assert mobius(m)[frozenset({0, 1, 2})] == 2

    def test_triangle_lattice_like_u23(self):
        ranks = sorted(r for _, r in flats(cycle_matroid(cycle(3))))
        assert ranks == sorted(r for _, r in flats(uniform(2, 3)))

    @pytest.mark.parametrize("m", ZOO, ids=range(len(ZOO)))
    def test_flats_against_bruteforce(self, m):
        ours = {f for f, _ in flats(m)}
        assert ours == flats_bruteforce(m)
        for f in ours:
            assert closure(m, f) == f

    @pytest.mark.parametrize("m", ZOO, ids=range(len(ZOO)))
    def test_mobius_recursion_and_lemma(self, m):
        mu = mobius(m)
        if m.loops():
            assert set(mu.values()) == {0}
            assert all(lemma_flat_sum(m, f) == 0 for f in mu)
            return
        bottom = min(mu, key=len)
        assert not bottom and mu[bottom] == 1
        for f in mu:
            if f != bottom:
                assert sum(v for g, v in mu.items() if g <= f) == 0
        for f in mu:
            assert lemma_flat_sum(m, f) == mu[f]

    def test_ground_too_large(self):
        with pytest.raises(ValueError):
            flats(uniform(1, 21))


class TestCharPoly:
    def test_examples(self):
        assert char_poly(uniform(1, 1)) == X - 1
        assert char_poly(uniform(2, 4)) == Poly([3, -4, 1])
        assert char_poly(uniform(4, 6)) == Poly([10, -20, 15, -6, 1])

    @pytest.mark.parametrize("m", ZOO, ids=range(len(ZOO)))
    def test_three_routes(self, m):
        a = char_poly(m, "subset")
        assert char_poly(m, "flats") == a
        assert char_poly(m, "dc") == a
        if m.loops():
            assert a.is_zero()

    @pytest.mark.parametrize("n", range(1, 8))
    def test_uniform_closed_form(self, n):
        for k in range(n + 1):
            assert char_poly_uniform(k, n) == char_poly(uniform(k, n), "subset")
        assert char_poly_uniform(2, n) == Poly([n - 1, -n, 1]) if n >= 2 else True
        if n >= 3:
            assert char_poly_uniform(3, n) == Poly([-comb(n - 1, 2), comb(n, 2), -n, 1])
            chi = chromatic_poly(cycle(n))
            assert char_poly_uniform(n - 1, n) * X == chi

    def test_graph_relations(self, corpus5):
        rng = random.Random(2)
        graphs = list(corpus5) + [random_multigraph(rng, max_n=5, max_m=7, loops=False) for _ in range(30)]
        for g in graphs:
            c = components(g)
            assert char_poly(cycle_matroid(g)) * X ** c == chromatic_poly(g)
            assert char_poly(cocycle_matroid(g)) == flow_poly(g)

    def test_flow_roots_bounded(self):
        # sampled positivity of F beyond 2 log2(n) for bridgeless graphs
        from math import log2
        for n in range(3, 7):
            for g in connected_graphs(n):
                if not is_bridgeless(g):
                    continue
                f = flow_poly(g)
                start = int(2 * log2(n)) + 1
                assert all(f(x) > 0 for x in range(start, start + 6))


class TestTutte:
    def test_examples(self):
        x, y = BiPoly.x(), BiPoly.y()
        assert tutte_poly_matroid(uniform(1, 1)) == x
        for n in range(2, 7):
            expected = sum((x ** i for i in range(1, n)), BiPoly()) + y
            assert tutte_poly_matroid(cycle_matroid(cycle(n))) == expected

    @pytest.mark.parametrize("m", ZOO, ids=range(len(ZOO)))
    def test_routes_duality_and_char(self, m):
        t = tutte_poly_matroid(m, "subset")
        assert tutte_poly_matroid(m, "dc") == t
        assert tutte_poly_matroid(dual(m)) == t.swap()
        one_minus_x = Poly([1, -1])
        line = sum((one_minus_x ** i * c for (i, j), c in t.terms.items() if j == 0), Poly())
        assert char_poly(m) == line * (-1) ** m.r


class TestKung:
    def test_u11_by_hand(self):
        rep = kung_identity_check(uniform(1, 1))
        assert rep.passed
        x1, x2 = BiPoly.x(), BiPoly.y()
        assert (x1 - 1) * x2 + (x2 - 1) == x1 * x2 - 1

    @pytest.mark.parametrize("m", ZOO, ids=range(len(ZOO)))
    def test_zoo(self, m):
        assert kung_identity_check(m).passed

    def test_with_loop_both_zero(self):
        m = direct_sum(uniform(0, 1), uniform(2, 3))
        rep = kung_identity_check(m)
        assert rep.passed


class TestChromaticProduct:
    def test_k2_by_hand(self):
        xy = BiPoly({(1, 1): 1})
        lhs = xy * (xy - 1)
        # E' = {} gives chi(K_2, x) * y^2, E' = {e} gives x * chi(K_2 restricted, y) = x * y(y-1)
        rhs = BiPoly({(2, 0): 1, (1, 0): -1}) * BiPoly({(0, 2): 1}) + BiPoly({(1, 0): 1}) * BiPoly({(0, 2): 1, (0, 1): -1})
        assert lhs == rhs
        assert chromatic_product_identity_check(complete(2)).passed

    def test_examples(self):
        assert chromatic_product_identity_check(cycle(3)).passed
        assert chromatic_product_identity_check(empty(3)).passed

    def test_corpus(self, corpus5):
        for g in corpus5:
            assert chromatic_product_identity_check(g).passed, g


def test_serialization():
    m = cycle_matroid(cycle(4))
    d = m.to_json()
    assert d["n_elements"] == 4 and d["kind"] == "graphic"
    assert uniform(2, 4).to_json()["kind"] == "uniform"


def test_all_subsets_small():
    # rank of a triangle's edge sets matches |V| - c(A)
    m = cycle_matroid(cycle(3))
    for k in range(4):
        for a in combinations(range(3), k):
            assert m.rank(a) == 3 - components(cycle(3), a)
