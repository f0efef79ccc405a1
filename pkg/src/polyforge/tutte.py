"""Tutte polynomial of multigraphs and the identities that surround it.

``tutte_dc`` is the workhorse: deletion/contraction with loop stripping, block
factorisation, parallel-class and series-class reductions, and a memo keyed
on canonical forms of 2-connected blocks.  ``tutte_activities`` enumerates
spanning trees and tallies internal/external activities; the matroid subset
expansion in ``matroid`` is the third independent route.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import comb
from typing import Mapping

from .canon import canonical_key
from .exactpoly import BiPoly, Poly
from .matroid import (
    Matroid,
    _flat_masks,
    contraction,
    cycle_matroid,
    restriction,
    tutte_subset,
)
from .multigraph import (
    Multigraph,
    _DSU,
    _lowpoint_dfs,
    bicycle_dimension,
    components,
    contract_edge_multi,
    delete_edge,
    delete_edges,
    induced_partition_graph,
    induced_subgraph,
    is_bridgeless,
    is_connected,
    partitions_stream,
)
from .report import FAIL, PASS, IdentityReport

__all__ = [
    "tutte_dc",
    "tutte_poly",
    "spanning_trees",
    "activity_counts",
    "tutte_activities",
    "special_values",
    "special_values_check",
    "convolution_check",
    "rational_identity_check",
    "stanley_negative_check",
    "read_rosenstiehl_check",
    "t_equivalent",
    "merino_welsh_probe",
    "merino_identity_check",
    "coefficient_property_check",
    "count_acyclic_orientations",
    "count_totally_cyclic_orientations",
    "quotient_by_partition",
    "clear_memo",
]

X = BiPoly.x()
Y = BiPoly.y()
ONE = BiPoly.const(1)

_memo: dict[tuple, BiPoly] = {}
_memo_lock = threading.Lock()
MEMO_LIMIT = 2_000_000
CANON_MAX_N = 14


def clear_memo() -> None:
    with _memo_lock:
        _memo.clear()


def _qint(var: BiPoly, k: int) -> BiPoly:
    """1 + var + ... + var^(k-1)."""
    out = BiPoly()
    p = ONE
    for _ in range(k):
        out = out + p
        p = p * var
    return out


def _compact(g: Multigraph, vertices) -> Multigraph:
    return induced_subgraph(g, sorted(vertices))


def _key(g: Multigraph):
    if g.n <= CANON_MAX_N:
        return ("c", canonical_key(g))
    return ("e", g.n, tuple(sorted(g.pairs())))


def tutte_dc(g: Multigraph) -> BiPoly:
    """T_G(x, y) by reduced deletion/contraction with a canonical-form memo."""
    factor = ONE
    loops = [eid for eid, u, v in g.edges if u == v]
    if loops:
        factor = Y ** len(loops)
        g = delete_edges(g, loops)
    if g.m == 0:
        return factor
    _, groups = _lowpoint_dfs(g)
    out = factor
    for grp in groups:
        ids = set(grp)
        vs = {x for e in grp for x in g.endpoints(e)}
        sub = Multigraph(g.n, tuple(r for r in g.edges if r[0] in ids))
        out = out * _block(_compact(sub, vs))
    return out


def _block(h: Multigraph) -> BiPoly:
    """Tutte polynomial of a loopless 2-connected multigraph (or a bridge)."""
    if h.n == 2:
        return X + _qint(Y, h.m) - ONE
    key = _key(h)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    res = _block_uncached(h)
    if len(_memo) < MEMO_LIMIT:
        with _memo_lock:
            _memo[key] = res
    return res


def _block_uncached(h: Multigraph) -> BiPoly:
    # parallel class
    classes: dict[tuple[int, int], list[int]] = {}
    for eid, u, v in h.edges:
        classes.setdefault((u, v), []).append(eid)
    big = max(classes.values(), key=len)
    if len(big) > 1:
        rest = delete_edges(h, big)
        con = delete_edges(contract_edge_multi(h, big[0]), big[1:])
        return tutte_dc(rest) + _qint(Y, len(big)) * tutte_dc(con)
    deg = [0] * h.n
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(h.n)]
    for eid, u, v in h.edges:
        deg[u] += 1
        deg[v] += 1
        nbrs[u].append((v, eid))
        nbrs[v].append((u, eid))
    if all(d == 2 for d in deg):
        return _qint(X, h.n) - ONE + Y
    # series class through a degree-2 vertex
    start = next((v for v in range(h.n) if deg[v] == 2), None)
    if start is not None:
        chain_edges = []
        interior = {start}
        ends = []
        for nb, eid in nbrs[start]:
            prev, cur, e = start, nb, eid
            chain_edges.append(e)
            while deg[cur] == 2:
                interior.add(cur)
                (a, ea), (b, eb) = nbrs[cur]
                nxt, ne = (b, eb) if ea == e else (a, ea)
                prev, cur, e = cur, nxt, ne
                chain_edges.append(e)
            ends.append(cur)
        k = len(chain_edges)
        con = h
        for e in chain_edges:
            con = contract_edge_multi(con, e)
        keep = [v for v in range(h.n) if v not in interior]
        rest = induced_subgraph(h, keep)
        return tutte_dc(con) + _qint(X, k) * tutte_dc(rest)
    v = min(range(h.n), key=lambda x: deg[x])
    e = nbrs[v][0][1]
    return tutte_dc(delete_edge(h, e)) + tutte_dc(contract_edge_multi(h, e))


def tutte_poly(g: Multigraph, route: str = "dc") -> BiPoly:
    if route == "dc":
        return tutte_dc(g)
    if route == "subset":
        return tutte_subset(cycle_matroid(g))
    if route == "activities":
        return tutte_activities(g)[1]
    if route == "potts":
        from .potts import tutte_from_potts

        return tutte_from_potts(g)
    raise ValueError(f"unknown route {route!r}")


# ---------------------------------------------------------------------------
# spanning trees and activities


def spanning_trees(g: Multigraph) -> list[frozenset[int]]:
    """All spanning trees (as edge-id sets) of a connected multigraph.

    Recursion on an edge: bridges are forced in; other edges split into the
    trees that contain it (contract) and those that do not (delete).
    """
    if not is_connected(g):
        return []
    out: list[frozenset[int]] = []

    def rec(h: Multigraph, chosen: tuple[int, ...]):
        loops = [eid for eid, u, v in h.edges if u == v]
        if loops:
            h = delete_edges(h, loops)
        if h.n == 1:
            out.append(frozenset(chosen))
            return
        bridges_, _ = _lowpoint_dfs(h)
        if bridges_:
            e = bridges_[0]
            rec(contract_edge_multi(h, e), chosen + (e,))
            return
        e = h.edges[0][0]
        rec(contract_edge_multi(h, e), chosen + (e,))
        rec(delete_edge(h, e), chosen)

    rec(g, ())
    return out


def _default_ranking(g: Multigraph) -> dict[int, int]:
    return {eid: i for i, eid in enumerate(g.edge_ids)}


def _activities(g: Multigraph, tree: frozenset[int], rank: Mapping[int, int]) -> tuple[int, int]:
    internal = 0
    for e in tree:
        dsu = _DSU(g.n)
        for f in tree:
            if f != e:
                dsu.union(*g.endpoints(f))
        cut = [f for f, u, v in g.edges if dsu.find(u) != dsu.find(v)]
        if min(cut, key=rank.__getitem__) == e:
            internal += 1
    # tree adjacency for fundamental cycles
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(g.n)}
    for f in tree:
        u, v = g.endpoints(f)
        adj[u].append((v, f))
        adj[v].append((u, f))
    external = 0
    for f, u, v in g.edges:
        if f in tree:
            continue
        if u == v:
            external += 1
            continue
        # path u -> v in the tree
        prev = {u: None}
        stack = [u]
        while stack:
            x = stack.pop()
            if x == v:
                break
            for y, ed in adj[x]:
                if y not in prev:
                    prev[y] = (x, ed)
                    stack.append(y)
        cyc = [f]
        x = v
        while prev[x] is not None:
            x, ed = prev[x]
            cyc.append(ed)
        if min(cyc, key=rank.__getitem__) == f:
            external += 1
    return internal, external


def activity_counts(g: Multigraph, ranking: Mapping[int, int] | None = None) -> dict[tuple[int, int], int]:
    """t_{i,j}: spanning trees with internal activity i and external activity j."""
    if not is_connected(g):
        raise ValueError("activity expansion needs a connected graph")
    rank = dict(ranking) if ranking is not None else _default_ranking(g)
    if sorted(rank) != sorted(g.edge_ids) or len(set(rank.values())) != len(rank):
        raise ValueError("ranking must be injective on the edge ids")
    counts: dict[tuple[int, int], int] = {}
    for t in spanning_trees(g):
        key = _activities(g, t, rank)
        counts[key] = counts.get(key, 0) + 1
    return counts


def tutte_activities(g: Multigraph, ranking: Mapping[int, int] | None = None):
    """``(ActivityCount, BiPoly)`` from the spanning-tree activity expansion."""
    counts = activity_counts(g, ranking)
    return counts, BiPoly({(i, j): c for (i, j), c in counts.items()})


# ---------------------------------------------------------------------------
# evaluations


def count_acyclic_orientations(g: Multigraph) -> int:
    """|A(G)| by inclusion-exclusion over the set of sources.

    a(H) = Σ over non-empty independent S of (-1)^(|S|+1) a(H - S), memoised
    on vertex bitmasks; parallel edges do not change the count.
    """
    if g.has_loop():
        return 0
    if g.n > 22:
        raise ValueError("acyclic orientation count limited to 22 vertices")
    adj = g.adjacency_masks
    memo = {0: 1}

    def a(mask: int) -> int:
        if mask in memo:
            return memo[mask]
        low = mask & -mask
        v0 = low.bit_length() - 1
        total = 0
        # independent subsets S of mask; enumerate all non-empty submasks
        sub = mask
        while sub:
            ok = True
            m = sub
            while m:
                b = m & -m
                if adj[b.bit_length() - 1] & sub:
                    ok = False
                    break
                m ^= b
            if ok:
                sign = 1 if bin(sub).count("1") & 1 else -1
                total += sign * a(mask & ~sub)
            sub = (sub - 1) & mask
        memo[mask] = total
        return total

    return a((1 << g.n) - 1)


def count_totally_cyclic_orientations(g: Multigraph) -> int:
    """Orientations in which every edge lies on a directed cycle."""
    if g.m > 20:
        raise ValueError("orientation enumeration limited to 20 edges")
    ends = g.pairs()
    total = 0
    for mask in range(1 << g.m):
        arcs = [[] for _ in range(g.n)]
        oriented = []
        for i, (u, v) in enumerate(ends):
            a, b = (u, v) if mask >> i & 1 else (v, u)
            arcs[a].append(b)
            oriented.append((a, b))
        reach = []
        for s in range(g.n):
            seen = {s}
            st = [s]
            while st:
                x = st.pop()
                for y in arcs[x]:
                    if y not in seen:
                        seen.add(y)
                        st.append(y)
            reach.append(seen)
        if all(a in reach[b] for a, b in oriented):
            total += 1
    return total


_SPECIAL_POINTS = {
    "spanning_trees": (1, 1),
    "acyclic_orientations": (2, 0),
    "totally_cyclic_orientations": (0, 2),
    "forests": (2, 1),
    "connected_spanning_subgraphs": (1, 2),
    "two_pow_m": (2, 2),
}


def special_values(g: Multigraph, t: BiPoly | None = None) -> dict[str, int]:
    if not is_connected(g):
        raise ValueError("special values are interpreted for connected graphs")
    t = tutte_dc(g) if t is None else t
    return {name: t.evaluate(a, b) for name, (a, b) in _SPECIAL_POINTS.items()}


def special_values_check(g: Multigraph) -> IdentityReport:
    """Compare each special value with a direct enumeration (|E| <= 12)."""
    if g.m > 12:
        raise ValueError("enumeration cross-check limited to 12 edges")
    sv = special_values(g)
    m = cycle_matroid(g)
    forests = sum(1 for a in range(1 << g.m) if m.rank_mask(a) == bin(a).count("1"))
    conn = sum(1 for a in range(1 << g.m) if m.rank_mask(a) == g.n - 1)
    direct = {
        "spanning_trees": len(spanning_trees(g)),
        "acyclic_orientations": count_acyclic_orientations(g),
        "totally_cyclic_orientations": count_totally_cyclic_orientations(g),
        "forests": forests,
        "connected_spanning_subgraphs": conn,
        "two_pow_m": 2 ** g.m,
    }
    kids = [IdentityReport.compare(f"T_special_{k}", repr(g), sv[k], direct[k]) for k in sv]
    return IdentityReport.group("tutte_special_values", repr(g), kids)


# ---------------------------------------------------------------------------
# identity checks


def quotient_by_partition(g: Multigraph, part) -> Multigraph:
    """G/P: identify each block of the partition and drop the edges inside blocks."""
    where = part.block_of()
    edges = tuple((eid, where[u], where[v]) for eid, u, v in g.edges if where[u] != where[v])
    return Multigraph(len(part), edges)


def _in_p_star(g: Multigraph, part) -> bool:
    for b in part.blocks:
        if len(b) == 1:
            continue
        sub = induced_subgraph(g, sorted(b))
        if not is_connected(sub) or not is_bridgeless(sub):
            return False
    return True


def convolution_check(g: Multigraph, instance: str = "") -> IdentityReport:
    """Vertex-partition convolution, plus the flat form on the cycle matroid."""
    if g.n > 8:
        raise ValueError("partition convolution limited to 8 vertices")
    inst = instance or repr(g)
    lhs = tutte_dc(g)
    rhs = BiPoly()
    for part in partitions_stream(g.n):
        if not _in_p_star(g, part):
            continue
        a = tutte_dc(quotient_by_partition(g, part)).substitute_y(0)
        b = tutte_dc(induced_partition_graph(g, part)).substitute_x(0)
        rhs = rhs + a.to_bipoly(0) * b.to_bipoly(1)
    kids = [IdentityReport.compare("tutte_partition_convolution", inst, lhs, rhs)]
    if g.m <= 15:
        kids.append(flat_convolution_check(cycle_matroid(g), lhs, inst))
    return IdentityReport.group("tutte_convolution", inst, kids)


def flat_convolution_check(m: Matroid, lhs: BiPoly | None = None, instance: str = "") -> IdentityReport:
    """T_M = Σ over flats F with M|F coloop-free of T_{M/F}(x, 0)·T_{M|F}(0, y)."""
    lhs = tutte_subset(m) if lhs is None else lhs
    rhs = BiPoly()
    for f in _flat_masks(m):
        A = m.elems(f)
        mf = restriction(m, A)
        if any(mf.is_coloop(e) for e in A):
            continue
        a = tutte_subset(contraction(m, A)).substitute_y(0)
        b = tutte_subset(mf).substitute_x(0)
        rhs = rhs + a.to_bipoly(0) * b.to_bipoly(1)
    return IdentityReport.compare("tutte_flat_convolution", instance or repr(m), lhs, rhs)


def rational_identity_check(obj, v, t: BiPoly | None = None) -> IdentityReport:
    """T_M((v+1)/v, v+1) = (v+1)^|E| / v^r(M) for a graph or matroid."""
    v = Fraction(v)
    if v == 0 or v == -1:
        raise ValueError("v must avoid 0 and -1")
    if isinstance(obj, Multigraph):
        size, r = obj.m, obj.n - components(obj)
        t = tutte_dc(obj) if t is None else t
    else:
        size, r = obj.size, obj.r
        t = tutte_subset(obj) if t is None else t
    lhs = t.evaluate((v + 1) / v, v + 1)
    rhs = (v + 1) ** size / v ** r
    return IdentityReport.compare("tutte_rational_identity", f"{obj!r} v={v}", Fraction(lhs), Fraction(rhs))


def stanley_negative_check(g: Multigraph, k: int, t: BiPoly | None = None, chi: Poly | None = None) -> IdentityReport:
    """k·T_G(k+1, 0) = (-1)^|V| chi(G, -k) for connected G, plus an orientation oracle for |V| <= 5."""
    from .flowchrom import chi_tilde_enum, chromatic_poly

    if not is_connected(g):
        raise ValueError("Stanley's identity is stated for connected graphs")
    if k < 1:
        raise ValueError("k must be a positive integer")
    t = tutte_dc(g) if t is None else t
    chi = chromatic_poly(g) if chi is None else chi
    lhs = k * t.evaluate(k + 1, 0)
    rhs = (-1) ** g.n * chi(-k)
    kids = [IdentityReport.compare("stanley_negative", f"{g!r} k={k}", lhs, rhs)]
    if g.n <= 5 and g.m <= 14:
        kids.append(IdentityReport.compare("stanley_pair_enumeration", f"{g!r} k={k}", chi_tilde_enum(g, k), rhs))
    return IdentityReport.group("stanley_negative", f"{g!r} k={k}", kids)


def read_rosenstiehl_check(g: Multigraph, t: BiPoly | None = None) -> IdentityReport:
    t = tutte_dc(g) if t is None else t
    lhs = t.evaluate(-1, -1)
    rhs = (-1) ** g.m * (-2) ** bicycle_dimension(g)
    return IdentityReport.compare("read_rosenstiehl", repr(g), lhs, rhs)


def t_equivalent(g: Multigraph, h: Multigraph) -> bool:
    return tutte_dc(g) == tutte_dc(h)


def merino_welsh_probe(g: Multigraph) -> IdentityReport:
    """Record whether max{T(2,0), T(0,2)} >= T(1,1) and T(2,0)·T(0,2) >= T(1,1)^2."""
    if g.has_loop():
        raise ValueError("probe needs a loopless graph")
    if g.n < 3 or not is_connected(g) or len(_lowpoint_dfs(g)[1]) != 1:
        raise ValueError("probe needs a 2-connected graph on at least 3 vertices")
    t = tutte_dc(g)
    a, b, c = t.evaluate(2, 0), t.evaluate(0, 2), t.evaluate(1, 1)
    kids = [
        IdentityReport("merino_welsh_max", repr(g), PASS if max(a, b) >= c else FAIL, left=max(a, b), right=c),
        IdentityReport("merino_welsh_product", repr(g), PASS if a * b >= c * c else FAIL, left=a * b, right=c * c),
    ]
    return IdentityReport.group("merino_welsh", repr(g), kids)


def merino_identity_check(n: int) -> IdentityReport:
    """T_{K_{n+2}}(1, -1) = T_{K_n}(2, -1)."""
    from .generators import complete

    if not 1 <= n <= 4:
        raise ValueError("n must be between 1 and 4")
    lhs = tutte_dc(complete(n + 2)).evaluate(1, -1)
    rhs = tutte_dc(complete(n)).evaluate(2, -1)
    return IdentityReport.compare("merino_complete_graphs", f"n={n}", lhs, rhs)


def coefficient_property_check(g: Multigraph, counts: Mapping[tuple[int, int], int] | None = None) -> IdentityReport:
    """Items (i)-(v) on the activity counts t_{i,j} of a connected graph.

    (ii)-(iv) are asserted only when the graph has neither loops nor bridges,
    (i) needs at least two edges and (v) is asserted for k = 0..|E|-1.
    """
    if not is_connected(g):
        raise ValueError("coefficient properties are stated for connected graphs")
    t = dict(counts) if counts is not None else activity_counts(g)
    get = lambda i, j: t.get((i, j), 0)  # noqa: E731
    r = g.n - 1
    nul = g.m - r
    inst = repr(g)
    kids = []
    if g.m >= 2:
        kids.append(IdentityReport.compare("tutte_coeff_i", inst, get(1, 0), get(0, 1)))
    if not g.has_loop() and is_bridgeless(g):
        outside = {k: v for k, v in t.items() if (k[0] > r or k[1] > nul) and v}
        kids.append(IdentityReport.compare("tutte_coeff_ii", inst, outside, {}))
        kids.append(IdentityReport.compare("tutte_coeff_iii", inst, (get(r, 0), get(0, nul)), (1, 1)))
        iv = [get(r, j) for j in range(1, nul + 1)] + [get(i, nul) for i in range(1, r + 1)]
        kids.append(IdentityReport.compare("tutte_coeff_iv", inst, sum(iv), 0))
    for k in range(g.m):
        s = sum(
            (-1) ** j * comb(k - i, j) * get(i, j)
            for i in range(k + 1)
            for j in range(k - i + 1)
        )
        kids.append(IdentityReport.compare(f"tutte_coeff_v_k{k}", inst, s, 0))
    return IdentityReport.group("tutte_coefficient_properties", inst, kids)
