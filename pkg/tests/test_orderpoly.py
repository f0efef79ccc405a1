from __future__ import annotations

from itertools import permutations, product
from math import comb, factorial

import pytest

from polyforge.canon import connected_graphs
from polyforge.exactpoly import Poly
from polyforge.generators import complete, cycle, path
from polyforge.multigraph import Digraph
from polyforge.orderpoly import (
    acyclic_digraphs,
    binom_x,
    chromatic_orientation_check,
    w_label_chromatic_check,
    dong_criterion,
    delta_formula,
    genfun_check,
    omega_enum,
    omega_interpolate,
    omega_strict_expansion,
    omega_strict_recursion,
    omega_weak_expansion,
    op_list,
    order_ideals,
    partition_lemma_check,
    reciprocity_check,
    surjective_counts,
    topological_relabel,
    transitive_arc_check,
    tugger_check,
    w_family,
)

# the worked example: arcs 1->3, 2->3, 2->4 (0-based below)
WORKED = Digraph(4, frozenset({(0, 2), (1, 2), (1, 3)}))
OUT_STAR = Digraph(3, frozenset({(0, 1), (0, 2)}))
CHAIN3 = Digraph(3, frozenset({(0, 1), (1, 2)}))


def tournament(p: int) -> Digraph:
    return Digraph(p, frozenset((i, j) for i in range(p) for j in range(i + 1, p)))


def binom_sum(shifts: dict[int, int], p: int) -> Poly:
    return sum((binom_x(s, p) * c for s, c in shifts.items()), Poly())


class TestOrderings:
    def test_tournament(self):
        assert len(op_list(tournament(5))) == 1

    @pytest.mark.parametrize("p", range(1, 6))
    def test_arcless(self, p):
        assert len(op_list(Digraph(p))) == factorial(p)

    def test_worked_example(self):
        labels = sorted(o.labels for o in op_list(WORKED))
        assert labels == sorted([(1, 2, 3, 4), (2, 1, 3, 4), (1, 2, 4, 3), (2, 1, 4, 3), (2, 4, 1, 3)])
        rho = {o.labels: o.rho for o in op_list(WORKED)}
        assert rho[(1, 2, 3, 4)] == 3
        assert rho[(2, 1, 4, 3)] == 1
        assert rho[(2, 1, 3, 4)] == rho[(1, 2, 4, 3)] == rho[(2, 4, 1, 3)] == 2

    def test_relabel(self):
        d = Digraph(3, frozenset({(2, 0), (0, 1)}))
        r, perm = topological_relabel(d)
        assert all(t < h for t, h in r.arcs)
        assert sorted(perm) == [0, 1, 2]
        assert omega_strict_expansion(d).poly == omega_strict_expansion(r).poly

    def test_cycle_rejected(self):
        with pytest.raises(ValueError):
            omega_strict_recursion(Digraph(2, frozenset({(0, 1), (1, 0)})))


class TestPolynomials:
    def test_out_star(self):
        expected = binom_x(0, 2) + binom_x(0, 3) * 2
        assert omega_strict_recursion(OUT_STAR).poly == expected
        assert omega_strict_recursion(OUT_STAR).coeffs == [0, 0, 1, 2]
        assert expected(5) == comb(5, 2) + 2 * comb(5, 3)

    def test_chain(self):
        assert omega_strict_recursion(CHAIN3).poly == binom_x(0, 3)

    def test_arcless_two(self):
        r = omega_strict_recursion(Digraph(2))
        assert r.poly == binom_x(0, 2) * 2 + binom_x(0, 1) == Poly([0, 0, 1])

    def test_worked_example(self):
        strict = omega_strict_expansion(WORKED)
        weak = omega_weak_expansion(WORKED)
        assert strict.poly == binom_x(0, 4) + binom_x(1, 4) * 3 + binom_x(2, 4)
        assert weak.poly == binom_x(3, 4) + binom_x(2, 4) * 3 + binom_x(1, 4)
        assert omega_strict_recursion(WORKED).poly == strict.poly

    @pytest.mark.parametrize("p", range(1, 7))
    def test_tournament(self, p):
        assert omega_strict_expansion(tournament(p)).poly == binom_x(0, p)
        assert omega_weak_expansion(tournament(p)).poly == binom_x(p - 1, p)

    def test_enumeration(self):
        arc = Digraph(2, frozenset({(0, 1)}))
        assert omega_enum(arc, 3) == 3
        assert omega_enum(arc, 3, strict=False) == 6
        assert omega_enum(Digraph(3), 2) == omega_enum(Digraph(3), 2, strict=False) == 8

    @pytest.mark.parametrize("p", range(1, 6))
    def test_three_routes(self, p):
        for d in acyclic_digraphs(p):
            e = omega_strict_expansion(d).poly
            assert omega_strict_recursion(d).poly == e
            assert [omega_enum(d, k) for k in range(1, 7)] == [e(k) for k in range(1, 7)]

    @pytest.mark.parametrize("p", range(1, 5))
    def test_weak_interpolation(self, p):
        for d in acyclic_digraphs(p):
            assert omega_interpolate(d, strict=False) == omega_weak_expansion(d).poly

    @pytest.mark.parametrize("p", range(1, 6))
    def test_surjective_expansion(self, p):
        for d in acyclic_digraphs(p):
            e = surjective_counts(d)
            total = sum((binom_x(0, i) * c for i, c in enumerate(e)), Poly())
            assert total == omega_strict_expansion(d).poly


class TestIdentities:
    def test_tournament_reflection(self):
        for p in range(1, 6):
            d = tournament(p)
            assert reciprocity_check(d).passed
            for k in range(1, 6):
                assert comb(k + p - 1, p) == (-1) ** p * binom_x(0, p)(-k)

    def test_worked_example(self):
        assert reciprocity_check(WORKED).passed
        assert genfun_check(WORKED).passed
        assert tugger_check(WORKED).passed

    def test_chain_ideals(self):
        chain = Digraph(2, frozenset({(0, 1)}))
        # ideals closed downward: {}, {u}, {u, v}
        assert sorted(order_ideals(chain)) == [0, 1, 3]
        assert tugger_check(chain).passed

    @pytest.mark.parametrize("p", range(1, 5))
    def test_exhaustive(self, p):
        for d in acyclic_digraphs(p):
            assert reciprocity_check(d).passed
            assert genfun_check(d).passed
            assert tugger_check(d).passed
            assert transitive_arc_check(d).passed

    @pytest.mark.parametrize("p", range(1, 5))
    def test_partition_lemma(self, p):
        for d in acyclic_digraphs(p):
            for k in (1, 2, 3, 4):
                assert partition_lemma_check(d, k).passed

    def test_chromatic_orientation_sums(self):
        for g in [complete(3), cycle(4), path(4)] + connected_graphs(4):
            assert chromatic_orientation_check(g).passed


class TestWCriterion:
    def test_no_backward_arcs(self):
        for d in acyclic_digraphs(4):
            assert w_family(d) == []
            assert dong_criterion(d).passed
            assert delta_formula(d) == omega_weak_expansion(d).poly

    def test_single_backward_arc(self):
        d = Digraph(3, frozenset({(2, 0)}))
        assert w_family(d) == [(0, 1, 2)]
        assert delta_formula(d) != omega_weak_expansion(d).poly
        assert dong_criterion(d).passed

    def test_forward_relabelling(self):
        d = Digraph(3, frozenset({(0, 2)}))
        assert w_family(d) == []
        assert delta_formula(d) == omega_weak_expansion(d).poly

    @pytest.mark.parametrize("p", range(1, 5))
    def test_labelled_exhaustive(self, p):
        for d in acyclic_digraphs(p, labelled=True):
            assert dong_criterion(d).passed, d

    def test_labelled_count(self):
        # labelled acyclic digraphs: 1, 3, 25, 543, 29281
        assert [sum(1 for _ in acyclic_digraphs(p, labelled=True)) for p in range(1, 5)] == [1, 3, 25, 543]

    def test_chromatic_version(self, corpus5):
        for g in corpus5:
            for perm in list(permutations(range(g.n)))[:6]:
                h = type(g).from_pairs(g.n, [(perm[u], perm[v]) for u, v in g.pairs()])
                assert w_label_chromatic_check(h).passed, h


def test_strict_maps_brute_force():
    # a direct count for one small digraph as an independent oracle
    d = OUT_STAR
    for k in range(1, 6):
        n = sum(1 for th in product(range(k), repeat=3) if th[0] < th[1] and th[0] < th[2])
        assert n == omega_strict_expansion(d).poly(k)
