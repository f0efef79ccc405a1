"""Chromatic and flow polynomials.

``chromatic_poly`` runs deletion/contraction on bitmask adjacency with the
usual shortcuts (isolated and simplicial vertices, complete graphs, component
splitting).  ``flow_poly`` runs deletion/contraction on multigraphs after
loop, block, degree-2 and parallel-class reductions.  Both are cross-checked
by subset expansions and by direct enumeration of colourings/flows.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import combinations, product
from typing import Mapping, Sequence

import numpy as np

from .canon import canonical_key
from .exactpoly import BiPoly, Poly, falling, root_multiplicity_at
from .matroid import char_poly_flats, char_poly_subset, cocycle_matroid, cycle_matroid, dual
from .multigraph import (
    Multigraph,
    _lowpoint_dfs,
    block_count,
    blocks,
    components,
    contract_edge_multi,
    delete_edge,
    delete_edges,
    induced_subgraph,
    is_bridgeless,
    is_connected,
    simplify,
)
from .report import IdentityReport

__all__ = [
    "ChromaticPoly",
    "FlowPoly",
    "chromatic_poly",
    "chromatic_info",
    "chromatic_subset",
    "chromatic_from_masks",
    "flow_poly",
    "flow_info",
    "subset_flow_expansion",
    "flow_count_enum",
    "flow_coefficients",
    "count_edge_cuts",
    "jackson_cut_factorization_check",
    "acyclic_orientation_count",
    "chi_tilde_enum",
    "tutte_bivariate_chromatic_check",
    "wakelin_multiplicity_check",
    "duality_checks",
    "clear_memo",
]

XM1 = Poly([-1, 1])


@dataclass(frozen=True)
class ChromaticPoly:
    poly: Poly
    p: int


@dataclass(frozen=True)
class FlowPoly:
    poly: Poly
    m: int
    n: int
    c: int
    blocks: int


# ---------------------------------------------------------------------------
# chromatic polynomial

_chi_memo: dict[tuple, tuple] = {}
_chi_lock = threading.Lock()
CHI_MEMO_LIMIT = 500_000


def clear_memo() -> None:
    with _chi_lock:
        _chi_memo.clear()
        _flow_memo.clear()


def _pmul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _padd(a: list, b: list, sign: int = 1) -> list:
    if len(a) < len(b):
        a = a + [0] * (len(b) - len(a))
    out = list(a)
    for i, y in enumerate(b):
        out[i] += sign * y
    return out


def _falling_list(n: int) -> list:
    return list(falling(n).coeffs) if n else [1]


def _remove_vertex(masks: tuple, v: int) -> tuple:
    out = []
    low = (1 << v) - 1
    for i, m in enumerate(masks):
        if i == v:
            continue
        out.append((m & low) | ((m >> (v + 1)) << v))
    return tuple(out)


def _chi_masks(masks: tuple) -> list:
    """Coefficient list of chi for a simple graph given by neighbour bitmasks."""
    n = len(masks)
    if n == 0:
        return [1]
    hit = _chi_memo.get(masks)
    if hit is not None:
        return list(hit)
    res = _chi_masks_uncached(masks)
    if len(_chi_memo) < CHI_MEMO_LIMIT:
        with _chi_lock:
            _chi_memo[masks] = tuple(res)
    return res


def _chi_masks_uncached(masks: tuple) -> list:
    n = len(masks)
    degs = [bin(m).count("1") for m in masks]
    m2 = sum(degs)
    if m2 == 0:
        return [0] * n + [1]
    if m2 == n * (n - 1):
        return _falling_list(n)
    # simplicial vertex: neighbourhood is a clique
    for v in range(n):
        nb = masks[v]
        ok = True
        mm = nb
        while mm:
            low = mm & -mm
            u = low.bit_length() - 1
            if (masks[u] | low) & nb != nb:
                ok = False
                break
            mm ^= low
        if ok:
            return _pmul([-degs[v], 1], _chi_masks(_remove_vertex(masks, v)))
    # split components
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        mm = frontier
        while mm:
            low = mm & -mm
            nxt |= masks[low.bit_length() - 1]
            mm ^= low
        frontier = nxt & ~seen
        seen |= nxt
    full = (1 << n) - 1
    if seen != full:
        a = _sub_masks(masks, seen)
        b = _sub_masks(masks, full & ~seen)
        return _pmul(_chi_masks(a), _chi_masks(b))
    # deletion/contraction on the edge whose contraction collapses most
    best = None
    for u in range(n):
        mm = masks[u] >> (u + 1)
        while mm:
            low = mm & -mm
            v = u + low.bit_length()
            common = bin(masks[u] & masks[v]).count("1")
            score = (common, -(degs[u] + degs[v]))
            if best is None or score > best[0]:
                best = (score, u, v)
            mm ^= low
    _, u, v = best
    dl = list(masks)
    dl[u] &= ~(1 << v)
    dl[v] &= ~(1 << u)
    ct = list(dl)
    merged = ct[u] | ct[v]
    ct[u] = merged
    mm = ct[v]
    while mm:
        low = mm & -mm
        w = low.bit_length() - 1
        ct[w] |= 1 << u
        mm ^= low
    contracted = _remove_vertex(tuple(x & ~(1 << u) if i == u else x for i, x in enumerate(ct)), v)
    return _padd(_chi_masks(tuple(dl)), _chi_masks(contracted), -1)


def _sub_masks(masks: tuple, keep: int) -> tuple:
    idx = [i for i in range(len(masks)) if keep >> i & 1]
    pos = {v: i for i, v in enumerate(idx)}
    out = []
    for v in idx:
        m = masks[v] & keep
        r = 0
        while m:
            low = m & -m
            r |= 1 << pos[low.bit_length() - 1]
            m ^= low
        out.append(r)
    return tuple(out)


def chromatic_from_masks(masks: Sequence[int]) -> Poly:
    return Poly(_chi_masks(tuple(masks)))


def chromatic_poly(g: Multigraph) -> Poly:
    """chi(G, x); loops give 0 and parallel edges are collapsed first."""
    if g.has_loop():
        return Poly()
    return Poly(_chi_masks(simplify(g).adjacency_masks))


def chromatic_info(g: Multigraph) -> ChromaticPoly:
    return ChromaticPoly(chromatic_poly(g), g.n)


def chromatic_subset(g: Multigraph) -> Poly:
    """Σ_A (-1)^|A| x^c(A) over all edge subsets."""
    if g.m > 20:
        raise ValueError("subset expansion limited to 20 edges")
    m = cycle_matroid(g)
    coeffs = [0] * (g.n + 1)
    for a in range(1 << g.m):
        coeffs[g.n - m.rank_mask(a)] += -1 if bin(a).count("1") & 1 else 1
    return Poly(coeffs)


# ---------------------------------------------------------------------------
# flow polynomial

_flow_memo: dict[tuple, Poly] = {}
FLOW_MEMO_LIMIT = 2_000_000


def _flow_key(g: Multigraph):
    if g.n <= 14:
        return canonical_key(g)
    return (g.n, tuple(sorted(g.pairs())))


def flow_poly(g: Multigraph, deadline: float | None = None) -> Poly:
    """F(G, x) by reduced deletion/contraction.

    ``deadline`` is an absolute ``time.monotonic()`` value; the computation
    raises ``TimeoutError`` once it is passed.
    """
    factor = Poly([1])
    loops = [eid for eid, u, v in g.edges if u == v]
    if loops:
        factor = XM1 ** len(loops)
        g = delete_edges(g, loops)
    if g.m == 0:
        return factor
    bridges_, groups = _lowpoint_dfs(g)
    if bridges_:
        return Poly()
    out = factor
    for grp in groups:
        ids = set(grp)
        vs = sorted({x for e in grp for x in g.endpoints(e)})
        sub = Multigraph(g.n, tuple(r for r in g.edges if r[0] in ids))
        out = out * _flow_block(induced_subgraph(sub, vs), deadline)
        if out.is_zero():
            return out
    return out


def _flow_block(h: Multigraph, deadline) -> Poly:
    """F of a loopless 2-connected multigraph."""
    if deadline is not None:
        import time

        if time.monotonic() > deadline:
            raise TimeoutError("flow polynomial computation exceeded its time budget")
    if h.n == 2:
        k = h.m
        # banana graph L_k
        return (XM1 ** k + XM1 * (-1) ** k) // Poly([0, 1])
    deg = [0] * h.n
    nbrs: list[list[tuple[int, int]]] = [[] for _ in range(h.n)]
    for eid, u, v in h.edges:
        deg[u] += 1
        deg[v] += 1
        nbrs[u].append((v, eid))
        nbrs[v].append((u, eid))
    # degree-2 suppression: F(G) = F((G - w) . uv)
    for w in range(h.n):
        if deg[w] == 2:
            (u, e1), (v, e2) = nbrs[w]
            if u != v:
                smaller = contract_edge_multi(h, e1)
                return flow_poly(smaller, deadline)
    key = _flow_key(h)
    hit = _flow_memo.get(key)
    if hit is not None:
        return hit
    classes: dict[tuple[int, int], list[int]] = {}
    for eid, u, v in h.edges:
        classes.setdefault((u, v), []).append(eid)
    big = max(classes.values(), key=len)
    if len(big) > 1:
        # F_k = (x-1)^(k-1) F(G/class) - F_(k-1), F_0 = F(G \ class)
        k = len(big)
        rest = flow_poly(delete_edges(h, big), deadline)
        con = flow_poly(delete_edges(contract_edge_multi(h, big[0]), big[1:]), deadline)
        acc = rest
        for j in range(1, k + 1):
            acc = XM1 ** (j - 1) * con - acc
        res = acc
    else:
        v = min(range(h.n), key=lambda x: deg[x])
        e = nbrs[v][0][1]
        res = flow_poly(contract_edge_multi(h, e), deadline) - flow_poly(delete_edge(h, e), deadline)
    if len(_flow_memo) < FLOW_MEMO_LIMIT:
        _flow_memo[key] = res
    return res


def flow_info(g: Multigraph) -> FlowPoly:
    return FlowPoly(flow_poly(g), g.m, g.n, components(g), block_count(g))


def subset_flow_expansion(g: Multigraph) -> Poly:
    """Σ_A (-1)^(|E|-|A|) x^(|A|-|V|+c(A))."""
    if g.m > 20:
        raise ValueError("subset expansion limited to 20 edges")
    m = cycle_matroid(g)
    coeffs = [0] * (g.m + 1)
    for a in range(1 << g.m):
        size = bin(a).count("1")
        coeffs[size - m.rank_mask(a)] += -1 if (g.m - size) & 1 else 1
    return Poly(coeffs)


def flow_coefficients(f: Poly) -> list:
    """b_i with F = Σ (-1)^(d-i) b_i x^i, d = deg F."""
    d = f.degree
    return [(-1) ** (d - i) * f[i] for i in range(d + 1)]


def count_edge_cuts(g: Multigraph, size: int) -> int:
    """Number of ``size``-edge subsets whose removal disconnects a connected graph."""
    base = components(g)
    ids = g.edge_ids
    return sum(
        1
        for sub in combinations(ids, size)
        if components(g, [e for e in ids if e not in sub]) > base
    )


def flow_count_enum(g: Multigraph, q: int, orientation: Mapping[int, tuple[int, int]] | None = None) -> int:
    """Count nowhere-zero Z_q-flows by backtracking over arc values.

    Arcs default to low -> high vertex.  Vertices are closed in a fixed order;
    when a vertex has one unassigned arc left its value is forced by
    conservation, and a forced zero prunes the branch.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    if g.m > 14:
        raise ValueError("flow enumeration limited to 14 edges")
    arcs = []
    loops = 0
    for eid, u, v in g.edges:
        if u == v:
            loops += 1
            continue
        t, h = orientation[eid] if orientation is not None else (u, v)
        if {t, h} != {u, v}:
            raise ValueError(f"orientation of edge {eid} does not match its ends")
        arcs.append((t, h))
    n = g.n
    inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, (t, h) in enumerate(arcs):
        inc[t].append((i, -1))  # outgoing: leaves t
        inc[h].append((i, 1))
    value = [0] * len(arcs)
    assigned = [False] * len(arcs)

    # order: for each vertex in turn, free arcs first then one forced arc
    order = list(range(n))

    def close(idx: int) -> int:
        if idx == n:
            return 1
        v = order[idx]
        free = [(i, s) for i, s in inc[v] if not assigned[i]]
        net = sum(s * value[i] for i, s in inc[v] if assigned[i]) % q
        if not free:
            return close(idx + 1) if net == 0 else 0
        *choose, (last, ls) = free
        total = 0
        for vals in product(range(1, q), repeat=len(choose)):
            acc = net
            for (i, s), val in zip(choose, vals):
                value[i] = val
                assigned[i] = True
                acc += s * val
            # need acc + ls * value[last] == 0 (mod q)
            forced = (-acc * ls) % q
            if forced != 0:
                value[last] = forced
                assigned[last] = True
                total += close(idx + 1)
                assigned[last] = False
            for i, _ in choose:
                assigned[i] = False
        return total

    return close(0) * (q - 1) ** loops


# ---------------------------------------------------------------------------
# identity checks


def _add_edge(g: Multigraph, u: int, v: int) -> Multigraph:
    nid = max(g.edge_ids, default=-1) + 1
    return Multigraph(g.n, g.edges + ((nid, u, v),))


def jackson_cut_factorization_check(g: Multigraph, kind: str, **data) -> IdentityReport:
    """Cut factorisations of F.

    ``kind="vertex_edge"`` with ``v``, ``e`` and ``h1`` (edge ids of H1):
    F(G)(x-1) = F(H1 + v u1)·F(H2 + v u2).

    ``kind="2cut"`` / ``"3cut"`` with ``side`` (vertex set of H1): the edges
    between the sides must form the cut, and
    F(G)·(x-1) [resp. (x-1)(x-2)] = F(G1)·F(G2) where G_i contracts H_(3-i).
    """
    if not is_connected(g) or not is_bridgeless(g):
        raise ValueError("factorisations need a connected bridgeless graph")
    F = flow_poly(g)
    if kind == "vertex_edge":
        v, e, h1 = data["v"], data["e"], set(data["h1"])
        u1, u2 = g.endpoints(e)
        if e in h1:
            raise ValueError("e must not belong to H1")
        h2 = {f for f in g.edge_ids if f != e and f not in h1}
        vs1 = {x for f in h1 for x in g.endpoints(f)}
        vs2 = {x for f in h2 for x in g.endpoints(f)}
        if vs1 & vs2 != {v} or vs1 | vs2 != set(range(g.n)):
            raise ValueError("H1 and H2 must meet exactly in v and cover V")
        if u1 not in vs1:
            u1, u2 = u2, u1
        if u1 not in vs1 or u2 not in vs2:
            raise ValueError("the ends of e must lie on different sides")
        g1 = _restrict_edges(_add_edge(g, v, u1), h1 | {max(g.edge_ids) + 1}, vs1)
        g2 = _restrict_edges(_add_edge(g, v, u2), h2 | {max(g.edge_ids) + 1}, vs2)
        lhs = F * XM1
        rhs = flow_poly(g1) * flow_poly(g2)
        return IdentityReport.compare("jackson_vertex_edge", repr(g), lhs, rhs)
    if kind in ("2cut", "3cut"):
        k = 2 if kind == "2cut" else 3
        side = set(data["side"])
        other = set(range(g.n)) - side
        cut = [eid for eid, a, b in g.edges if (a in side) != (b in side)]
        if len(cut) != k:
            raise ValueError(f"the sides are joined by {len(cut)} edges, expected {k}")
        e1 = [eid for eid, a, b in g.edges if a in side and b in side]
        e2 = [eid for eid, a, b in g.edges if a in other and b in other]
        g1 = _contract_all(g, e2)
        g2 = _contract_all(g, e1)
        denom = XM1 if k == 2 else XM1 * Poly([-2, 1])
        lhs = F * denom
        rhs = flow_poly(g1) * flow_poly(g2)
        return IdentityReport.compare(f"jackson_{kind}", repr(g), lhs, rhs)
    raise ValueError(f"unknown decomposition kind {kind!r}")


def _restrict_edges(g: Multigraph, ids: set, vs: set) -> Multigraph:
    sub = Multigraph(g.n, tuple(r for r in g.edges if r[0] in ids))
    return induced_subgraph(sub, sorted(vs))


def _contract_all(g: Multigraph, ids: Sequence[int]) -> Multigraph:
    h = g
    for e in ids:
        h = contract_edge_multi(h, e)
    return h


def acyclic_orientation_count(g: Multigraph) -> int:
    """|A(G)| by enumerating all 2^m orientations."""
    if g.m > 14:
        raise ValueError("orientation enumeration limited to 14 edges")
    if g.has_loop():
        return 0
    return len(_acyclic_orientations(g))


def _acyclic_orientations(g: Multigraph) -> list[list[tuple[int, int]]]:
    out = []
    ends = g.pairs()
    for mask in range(1 << g.m):
        arcs = [(u, v) if mask >> i & 1 else (v, u) for i, (u, v) in enumerate(ends)]
        succ = [[] for _ in range(g.n)]
        indeg = [0] * g.n
        for a, b in arcs:
            succ[a].append(b)
            indeg[b] += 1
        ready = [v for v in range(g.n) if indeg[v] == 0]
        seen = 0
        while ready:
            a = ready.pop()
            seen += 1
            for b in succ[a]:
                indeg[b] -= 1
                if indeg[b] == 0:
                    ready.append(b)
        if seen == g.n:
            out.append(arcs)
    return out


def chi_tilde_enum(g: Multigraph, k: int) -> int:
    """Pairs (theta, O): O an acyclic orientation, theta: V -> [k] weakly increasing along arcs."""
    if g.n > 5 or g.m > 14:
        raise ValueError("pair enumeration limited to 5 vertices and 14 edges")
    if k < 1:
        return 0
    if g.has_loop():
        return 0
    thetas = np.array(list(product(range(k), repeat=g.n)), dtype=np.int64).reshape(-1, g.n)
    total = 0
    for arcs in _acyclic_orientations(g):
        ok = np.ones(len(thetas), dtype=bool)
        for a, b in arcs:
            ok &= thetas[:, a] <= thetas[:, b]
        total += int(ok.sum())
    return total


def tutte_bivariate_chromatic_check(g: Multigraph) -> IdentityReport:
    """chi(G, x+y) = Σ_S chi(G[S], x)·chi(G - S, y)."""
    if g.n > 10:
        raise ValueError("limited to 10 vertices")
    chi = chromatic_poly(g)
    lhs = chi(BiPoly({(1, 0): 1, (0, 1): 1}))
    if not isinstance(lhs, BiPoly):
        lhs = BiPoly.const(lhs)
    memo: dict[int, Poly] = {}

    def chi_of(mask: int) -> Poly:
        if mask not in memo:
            memo[mask] = chromatic_poly(induced_subgraph(g, [v for v in range(g.n) if mask >> v & 1]))
        return memo[mask]

    full = (1 << g.n) - 1
    rhs = BiPoly()
    for s in range(1 << g.n):
        rhs = rhs + chi_of(s).to_bipoly(0) * chi_of(full & ~s).to_bipoly(1)
    return IdentityReport.compare("chromatic_bivariate_sum", repr(g), lhs, rhs)


def wakelin_multiplicity_check(g: Multigraph, f: Poly | None = None) -> IdentityReport:
    """For connected bridgeless G, the multiplicity of the root 1 of F equals b(G)."""
    if not is_connected(g) or not is_bridgeless(g):
        raise ValueError("needs a connected bridgeless graph")
    f = flow_poly(g) if f is None else f
    return IdentityReport.compare("flow_root_one_multiplicity", repr(g), root_multiplicity_at(f, 1), block_count(g))


def duality_checks(g: Multigraph) -> IdentityReport:
    """F(G) = C(M*(G)) and chi(G) = x^c · C(M(G)) written through the double dual."""
    f = flow_poly(g)
    mstar = cocycle_matroid(g)
    kids = [IdentityReport.compare("flow_is_cocycle_char", repr(g), f, char_poly_subset(mstar))]
    c = components(g)
    chi = chromatic_poly(g)
    kids.append(IdentityReport.compare(
        "chromatic_is_dual_flow", repr(g), chi, char_poly_flats(dual(mstar)) * Poly.monomial(c)))
    return IdentityReport.group("flow_chromatic_duality", repr(g), kids)
