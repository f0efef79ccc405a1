"""Multivariate Potts partition function Z_G(q, {w_e}).

Two evaluation modes:

* symbolic in ``q``: weights are rationals (result is a ``Poly`` in q) or all
  equal to a variable y (``weights=None``; result is a ``BiPoly`` in (q, y));
* fully numeric: ``q`` is a rational too and the result is a rational.

Series reduction needs division by ``q + w1 + w2`` so it only runs in the
numeric mode.  Parallel edges are always merged first.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .exactpoly import BiPoly, Poly
from .multigraph import (
    Multigraph,
    _DSU,
    bridges,
    classify_edge,
    EdgeKind,
    components,
    connected_pieces,
    contract_edge_multi,
    delete_edge,
    delete_edges,
)
from .report import FAIL, HYPOTHESIS_FAILED, PASS, SKIPPED, IdentityReport

__all__ = [
    "VertexWeightedGraph",
    "potts_subset",
    "potts_dc",
    "potts_eval",
    "whitney_rank",
    "tutte_from_potts",
    "chromatic_from_potts",
    "independence_poly",
    "independent_sets",
    "potts_to_independence",
    "fp_condition_check",
    "sign_probes",
    "theo2_regime",
    "random_weights",
]

MAX_SUBSET_EDGES = 22


def _check_weights(g: Multigraph, weights: Mapping[int, object]) -> None:
    missing = [e for e in g.edge_ids if e not in weights]
    if missing:
        raise ValueError(f"no weight for edges {missing}")


def potts_subset(g: Multigraph, weights: Mapping[int, object] | None = None, q=None):
    """Z_G = Σ_A q^c(A) Π_{e∈A} w_e by brute force over all edge subsets."""
    if g.m > MAX_SUBSET_EDGES:
        raise ValueError(f"subset expansion limited to {MAX_SUBSET_EDGES} edges")
    ids = g.edge_ids
    ends = [g.endpoints(e) for e in ids]
    uniform = weights is None
    if not uniform:
        _check_weights(g, weights)
    # accumulate coefficient per (c(A), |A|) in uniform mode, per c(A) otherwise
    acc: dict = {}
    for mask in range(1 << len(ids)):
        dsu = _DSU(g.n)
        prod = Fraction(1)
        size = 0
        for i, (u, v) in enumerate(ends):
            if mask >> i & 1:
                dsu.union(u, v)
                size += 1
                if not uniform:
                    prod *= weights[ids[i]]
        key = (dsu.count, size) if uniform else dsu.count
        acc[key] = acc.get(key, 0) + (1 if uniform else prod)
    if uniform:
        out = BiPoly({k: v for k, v in acc.items()})
        return out if q is None else out.substitute_x(q)
    if q is not None:
        return _n(sum(Fraction(q) ** k * v for k, v in acc.items()))
    coeffs = [0] * (g.n + 1)
    for k, v in acc.items():
        coeffs[k] += v
    return Poly(coeffs)


def _n(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


def _merge_parallel(g: Multigraph, w: dict) -> tuple[Multigraph, dict]:
    groups: dict[tuple[int, int], list[int]] = {}
    for eid, u, v in g.edges:
        groups.setdefault((u, v), []).append(eid)
    if all(len(x) == 1 for x in groups.values()):
        return g, w
    w2 = dict(w)
    drop = []
    for ids in groups.values():
        if len(ids) > 1:
            acc = 1
            for e in ids:
                acc = acc * (1 + w[e])
            w2[ids[0]] = acc - 1
            drop.extend(ids[1:])
    for e in drop:
        del w2[e]
    return delete_edges(g, drop), w2


def _shortest_cycle_edge(g: Multigraph) -> int:
    """An edge lying on a shortest cycle of a loopless, parallel-free graph."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for eid, u, v in g.edges:
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    best, best_e = None, g.edges[0][0]
    for eid, u, v in g.edges:
        dist = {u: 0}
        dq = deque([u])
        while dq and v not in dist:
            x = dq.popleft()
            for y, f in adj[x]:
                if f != eid and y not in dist:
                    dist[y] = dist[x] + 1
                    dq.append(y)
        if v in dist and (best is None or dist[v] < best):
            best, best_e = dist[v], eid
            if best == 2:
                break
    return best_e


def _series_vertex(g: Multigraph):
    deg = [0] * g.n
    inc: list[list[tuple[int, int, int]]] = [[] for _ in range(g.n)]
    for eid, u, v in g.edges:
        deg[u] += 1
        deg[v] += 1
        inc[u].append((eid, u, v))
        inc[v].append((eid, u, v))
    for y in range(g.n):
        if deg[y] == 2:
            (e1, a1, b1), (e2, a2, b2) = inc[y]
            x = a1 if b1 == y else b1
            z = a2 if b2 == y else b2
            if x != y and z != y and x != z:
                yield y, e1, x, e2, z


def _z_rec(g: Multigraph, w: dict, Q, numeric: bool):
    factor = 1
    loops = [eid for eid, u, v in g.edges if u == v]
    for e in loops:
        factor = factor * (1 + w[e])
    if loops:
        g = delete_edges(g, loops)
        w = {e: w[e] for e in g.edge_ids}
    g, w = _merge_parallel(g, w)
    if g.m == 0:
        return factor * Q ** g.n
    pieces = connected_pieces(g)
    if len(pieces) > 1:
        for h in pieces:
            factor = factor * _z_rec(h, {e: w[e] for e in h.edge_ids}, Q, numeric)
        return factor
    if numeric:
        for y, e1, x, e2, z in _series_vertex(g):
            pre = Q + w[e1] + w[e2]
            if pre == 0:
                continue
            # replace x-y-z by a single edge x-z carrying id e1
            h = delete_edge(g, e2)
            h = Multigraph(
                g.n,
                tuple((eid, x, z) if eid == e1 else (eid, a, b) for eid, a, b in h.edges),
            )
            from .multigraph import delete_vertex

            h = delete_vertex(h, y)
            w2 = {e: w[e] for e in h.edge_ids}
            w2[e1] = Fraction(w[e1] * w[e2]) / pre
            return factor * pre * _z_rec(h, w2, Q, numeric)
    br = bridges(g)
    if br:
        e = br[0]
        h = contract_edge_multi(g, e)
        return factor * (Q + w[e]) * _z_rec(h, {f: w[f] for f in h.edge_ids}, Q, numeric)
    e = _shortest_cycle_edge(g)
    gd = delete_edge(g, e)
    gc = contract_edge_multi(g, e)
    zd = _z_rec(gd, {f: w[f] for f in gd.edge_ids}, Q, numeric)
    zc = _z_rec(gc, {f: w[f] for f in gc.edge_ids}, Q, numeric)
    return factor * (zd + w[e] * zc)


def potts_dc(g: Multigraph, weights: Mapping[int, object] | None = None, q=None):
    """Z_G by deletion/contraction with loop, bridge, parallel and series reductions.

    ``weights=None`` means every w_e is the variable y and the result is a
    ``BiPoly`` in (q, y).  With rational weights and ``q=None`` the result is a
    ``Poly`` in q.  With ``q`` given the result is a rational number.
    """
    if weights is None:
        w = {e: BiPoly.y() for e in g.edge_ids}
        out = _z_rec(g, w, BiPoly.x(), False)
        out = out if isinstance(out, BiPoly) else BiPoly.const(out)
        return out if q is None else out.substitute_x(q)
    _check_weights(g, weights)
    if q is not None:
        w = {e: Fraction(weights[e]) for e in g.edge_ids}
        return _n(Fraction(_z_rec(g, w, Fraction(q), True)))
    w = {e: BiPoly.const(weights[e]) for e in g.edge_ids}
    out = _z_rec(g, w, BiPoly.x(), False)
    out = out if isinstance(out, BiPoly) else BiPoly.const(out)
    return out.substitute_y(0)


def potts_eval(g: Multigraph, weights: Mapping[int, object], q, series: bool = True):
    """Numeric Z_G(q, w); ``series=False`` switches series reduction off."""
    _check_weights(g, weights)
    w = {e: Fraction(weights[e]) for e in g.edge_ids}
    return _n(Fraction(_z_rec(g, w, Fraction(q), series)))


def whitney_rank(g: Multigraph) -> BiPoly:
    """R_G(x, y) = Σ_A x^(r(E)-r(A)) y^(|A|-r(A)) read off Z_G(xy, y)."""
    z = potts_subset(g)
    c = components(g)
    out = {}
    for (a, b), coef in z.terms.items():
        key = (a - c, a + b - g.n)
        out[key] = out.get(key, 0) + coef
    return BiPoly(out)


def tutte_from_potts(g: Multigraph) -> BiPoly:
    """T_G(x, y) from Z_G((x-1)(y-1), y-1) with the (x-1)^c (y-1)^n prefactor removed."""
    z = potts_dc(g)
    c = components(g)
    x1 = BiPoly({(1, 0): 1, (0, 0): -1})
    y1 = BiPoly({(0, 1): 1, (0, 0): -1})
    out = BiPoly()
    for (a, b), coef in z.terms.items():
        out = out + (x1 ** (a - c)) * (y1 ** (a + b - g.n)) * coef
    return out


def chromatic_from_potts(g: Multigraph) -> Poly:
    """chi(G, x) = Z_G(x, w_e = -1)."""
    return potts_dc(g, {e: -1 for e in g.edge_ids})


# ---------------------------------------------------------------------------
# independent-set polynomial


@dataclass(frozen=True)
class VertexWeightedGraph:
    graph: Multigraph
    weights: tuple

    def __post_init__(self):
        if len(self.weights) != self.graph.n:
            raise ValueError("need one weight per vertex")


def independent_sets(h: Multigraph) -> list[int]:
    """All independent sets as bitmasks (the empty set included)."""
    if h.has_loop():
        loopy = {u for _, u, v in h.edges if u == v}
    else:
        loopy = set()
    adj = h.adjacency_masks
    out = []

    def rec(i: int, chosen: int, banned: int):
        if i == h.n:
            out.append(chosen)
            return
        rec(i + 1, chosen, banned)
        if not banned >> i & 1 and i not in loopy:
            rec(i + 1, chosen | 1 << i, banned | adj[i])

    rec(0, 0, 0)
    return out


def independence_poly(h: VertexWeightedGraph):
    """I(H, w) = Σ over independent sets of the product of vertex weights."""
    if h.graph.n > 25:
        raise ValueError("independence polynomial limited to 25 vertices")
    total = 0
    for s in independent_sets(h.graph):
        prod = 1
        for v in range(h.graph.n):
            if s >> v & 1:
                prod = prod * h.weights[v]
        total = total + prod
    return _n(total) if isinstance(total, Fraction) else total


def _induced_masks(h: Multigraph, S: Sequence[int]) -> Multigraph:
    from .multigraph import induced_subgraph

    return induced_subgraph(h, S)


def _connected_spanning_weight(g: Multigraph, S: Sequence[int], weights) -> object:
    sset = set(S)
    inner = [(eid, u, v) for eid, u, v in g.edges if u in sset and v in sset]
    idx = {v: i for i, v in enumerate(S)}
    total = 0
    for k in range(len(S) - 1, len(inner) + 1):
        for sub in combinations(inner, k):
            dsu = _DSU(len(S))
            for _, u, v in sub:
                dsu.union(idx[u], idx[v])
            if dsu.count == 1:
                prod = 1
                for eid, _, _ in sub:
                    prod = prod * weights[eid]
                total = total + prod
    return total


def polymer_graph(g: Multigraph, q, weights) -> tuple[list[frozenset[int]], VertexWeightedGraph]:
    """The intersection graph of connected vertex sets of size >= 2 with weights w(S)."""
    q = Fraction(q)
    polymers = []
    for k in range(2, g.n + 1):
        for S in combinations(range(g.n), k):
            sset = set(S)
            sub = Multigraph(g.n, tuple(r for r in g.edges if r[1] in sset and r[2] in sset))
            # connected on S: components counted on S only
            if components(sub) - (g.n - k) == 1:
                polymers.append(S)
    pw = []
    for S in polymers:
        pw.append(_n(Fraction(q ** (1 - len(S))) * Fraction(_connected_spanning_weight(g, S, weights))))
    pairs = [(i, j) for i, j in combinations(range(len(polymers)), 2) if set(polymers[i]) & set(polymers[j])]
    h = Multigraph.from_pairs(len(polymers), pairs)
    return [frozenset(S) for S in polymers], VertexWeightedGraph(h, tuple(pw))


def potts_to_independence(g: Multigraph, q, weights: Mapping[int, object]) -> IdentityReport:
    """Z_G(q, w)/q^|V| against the independent-set polynomial of the polymer graph."""
    if q == 0:
        raise ValueError("q must be nonzero")
    if g.n > 6:
        raise ValueError("polymer graph construction limited to 6 vertices")
    if g.has_loop():
        raise ValueError("the polymer expansion assumes a loopless graph")
    _check_weights(g, weights)
    q = Fraction(q)
    lhs = _n(Fraction(potts_subset(g, weights, q=q)) / q ** g.n)
    _, h = polymer_graph(g, q, weights)
    rhs = independence_poly(h)
    return IdentityReport.compare("potts_to_independence", f"{g!r} q={q}", lhs, _n(Fraction(rhs)))


def fp_condition_check(h: VertexWeightedGraph, mu: Sequence) -> IdentityReport:
    """Fernández–Procacci: hypothesis on closed neighbourhoods, conclusion on all induced subgraphs."""
    g = h.graph
    if g.n > 12:
        raise ValueError("limited to 12 vertices")
    if len(mu) != g.n or any(Fraction(m) <= 0 for m in mu):
        raise ValueError("mu must be a positive weight per vertex")
    from .multigraph import induced_subgraph

    adj = g.adjacency
    for u in range(g.n):
        nb = sorted(adj[u] | {u})
        sub = VertexWeightedGraph(induced_subgraph(g, nb), tuple(mu[v] for v in nb))
        if abs(Fraction(h.weights[u])) * Fraction(independence_poly(sub)) > Fraction(mu[u]):
            return IdentityReport("fernandez_procacci", repr(g), HYPOTHESIS_FAILED, detail=f"vertex {u}")
    for k in range(g.n + 1):
        for S in combinations(range(g.n), k):
            sub = VertexWeightedGraph(induced_subgraph(g, S), tuple(h.weights[v] for v in S))
            val = independence_poly(sub)
            if val == 0:
                return IdentityReport("fernandez_procacci", repr(g), FAIL, left=0, detail=f"S={S}")
    return IdentityReport("fernandez_procacci", repr(g), PASS)


# ---------------------------------------------------------------------------
# sign probes


def _in_open_sqrt_band(w: Fraction, q: Fraction) -> bool:
    # -1 - sqrt(1-q) < w < -1 + sqrt(1-q)  <=>  (w + 1)^2 < 1 - q
    return (w + 1) ** 2 < 1 - q


def theo2_regime(g: Multigraph, q, weights: Mapping[int, object]) -> bool:
    """Whether (q, w) meets the loop/bridge/normal-edge constraints with q in (0, 1)."""
    q = Fraction(q)
    if not 0 < q < 1:
        return False
    for e in g.edge_ids:
        w = Fraction(weights[e])
        kind = classify_edge(g, e)
        if kind is EdgeKind.LOOP and not w > -1:
            return False
        if kind is EdgeKind.BRIDGE and not w < -q:
            return False
        if kind is EdgeKind.NORMAL and not _in_open_sqrt_band(w, q):
            return False
    return True


def sign_probes(g: Multigraph, samples: Iterable[tuple[object, Mapping[int, object]]]) -> IdentityReport:
    """Empirical sign checks on sampled (q, weights).

    Negative q with every weight in [-1, 0): expect (-1)^|V| Z > 0.
    q in (0, 1) inside the edge-class regime: expect (-1)^(n+c) Z > 0.
    Samples in neither regime are skipped and counted in ``detail``.
    """
    kids = []
    skipped = 0
    c = components(g)
    for q, w in samples:
        q = Fraction(q)
        if q < 0 and all(-1 <= Fraction(w[e]) < 0 for e in g.edge_ids):
            z = potts_subset(g, w, q=q)
            val = (-1) ** g.n * z
            kids.append(IdentityReport(
                "negative_q_sign", f"q={q}", PASS if val > 0 else FAIL, left=val, right=0))
        elif theo2_regime(g, q, w):
            z = potts_subset(g, w, q=q)
            val = (-1) ** (g.n + c) * z
            kids.append(IdentityReport(
                "small_q_sign", f"q={q}", PASS if val > 0 else FAIL, left=val, right=0))
        else:
            skipped += 1
    rep = IdentityReport.group("potts_sign_probes", repr(g), kids)
    if not kids:
        rep.status = SKIPPED
    rep.detail = f"{len(kids)} probed, {skipped} outside both regimes"
    return rep


def random_weights(g: Multigraph, rng: random.Random, lo=-3, hi=3, den=4) -> dict[int, Fraction]:
    return {e: Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den)) for e in g.edge_ids}
