"""Multigraphs, digraphs and set partitions.

A ``Multigraph`` is an immutable value: ``n`` vertices ``0..n-1`` and a tuple of
``(edge_id, u, v)`` records.  Loops and parallel edges are allowed.  Edge ids
survive deletion and contraction so per-edge data (weights, rankings) keyed by
id stays valid across a whole deletion/contraction tree.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

__all__ = [
    "Multigraph",
    "EdgeKind",
    "Digraph",
    "SetPartition",
    "delete_edge",
    "delete_edges",
    "delete_vertex",
    "contract_edge_multi",
    "contract_edge_simple",
    "classify_edge",
    "components",
    "component_labels",
    "is_connected",
    "connected_pieces",
    "bridges",
    "is_bridgeless",
    "blocks",
    "block_count",
    "bicycle_dimension",
    "simplify",
    "induced_subgraph",
    "partitions_stream",
    "induced_partition_graph",
]


class EdgeKind(enum.Enum):
    LOOP = "loop"
    BRIDGE = "bridge"
    NORMAL = "normal"


@dataclass(frozen=True)
class Multigraph:
    n: int
    edges: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        norm = []
        seen = set()
        for rec in self.edges:
            eid, u, v = rec
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {eid} has endpoint outside [0, {self.n})")
            if eid in seen:
                raise ValueError(f"duplicate edge id {eid}")
            seen.add(eid)
            norm.append((eid, min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(norm))

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Multigraph":
        return cls(n, tuple((i, u, v) for i, (u, v) in enumerate(pairs)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def _by_id(self) -> dict[int, tuple[int, int]]:
        return {eid: (u, v) for eid, u, v in self.edges}

    @property
    def edge_ids(self) -> list[int]:
        return [e[0] for e in self.edges]

    def endpoints(self, e: int) -> tuple[int, int]:
        try:
            return self._by_id[e]
        except KeyError:
            raise KeyError(f"unknown edge id {e}") from None

    def has_edge(self, e: int) -> bool:
        return e in self._by_id

    def pairs(self) -> list[tuple[int, int]]:
        return [(u, v) for _, u, v in self.edges]

    def is_loop(self, e: int) -> bool:
        u, v = self.endpoints(e)
        return u == v

    @cached_property
    def is_simple(self) -> bool:
        ps = self.pairs()
        return all(u != v for u, v in ps) and len(set(ps)) == len(ps)

    def has_loop(self) -> bool:
        return any(u == v for _, u, v in self.edges)

    @cached_property
    def adjacency(self) -> list[set[int]]:
        """Neighbour sets (ignoring multiplicity; a loop makes a vertex its own neighbour)."""
        adj = [set() for _ in range(self.n)]
        for _, u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    @cached_property
    def adjacency_masks(self) -> tuple[int, ...]:
        """Bitmask neighbourhoods of the underlying simple graph (loops dropped)."""
        masks = [0] * self.n
        for _, u, v in self.edges:
            if u != v:
                masks[u] |= 1 << v
                masks[v] |= 1 << u
        return tuple(masks)

    def degree(self, v: int) -> int:
        return sum((u == v) + (w == v) for _, u, w in self.edges)

    def incident(self, v: int) -> list[int]:
        return [eid for eid, a, b in self.edges if a == v or b == v]

    def multiplicity(self, u: int, v: int) -> int:
        a, b = min(u, v), max(u, v)
        return sum(1 for _, x, y in self.edges if x == a and y == b)

    def parallel_class(self, e: int) -> list[int]:
        u, v = self.endpoints(e)
        return [eid for eid, a, b in self.edges if a == u and b == v]

    def renumbered(self) -> "Multigraph":
        """Same graph with edge ids ``0..m-1`` in current order."""
        return Multigraph(self.n, tuple((i, u, v) for i, (_, u, v) in enumerate(self.edges)))

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, edges={self.pairs()})"


def delete_edge(g: Multigraph, e: int) -> Multigraph:
    g.endpoints(e)
    return Multigraph(g.n, tuple(r for r in g.edges if r[0] != e))


def delete_edges(g: Multigraph, es: Iterable[int]) -> Multigraph:
    drop = set(es)
    for e in drop:
        g.endpoints(e)
    return Multigraph(g.n, tuple(r for r in g.edges if r[0] not in drop))


def delete_vertex(g: Multigraph, v: int) -> Multigraph:
    """Remove ``v`` and its incident edges; later vertices shift down by one."""
    if not 0 <= v < g.n:
        raise ValueError("vertex out of range")
    out = []
    for eid, a, b in g.edges:
        if a == v or b == v:
            continue
        out.append((eid, a - (a > v), b - (b > v)))
    return Multigraph(g.n - 1, tuple(out))


def _identify(g: Multigraph, u: int, v: int) -> tuple[dict[int, int], int]:
    keep, gone = min(u, v), max(u, v)
    mapping = {}
    for x in range(g.n):
        if x == gone:
            mapping[x] = keep - (keep > gone)
        else:
            mapping[x] = x - (x > gone)
    return mapping, g.n - 1


def contract_edge_multi(g: Multigraph, e: int, return_map: bool = False):
    """Identify the ends of ``e`` and drop ``e``; other parallels become loops.

    Contracting a loop is the same as deleting it.  With ``return_map`` the
    old-vertex to new-vertex map is returned alongside the graph.
    """
    u, v = g.endpoints(e)
    if u == v:
        h = delete_edge(g, e)
        mp = {x: x for x in range(g.n)}
        return (h, mp) if return_map else h
    mp, n2 = _identify(g, u, v)
    h = Multigraph(n2, tuple((eid, mp[a], mp[b]) for eid, a, b in g.edges if eid != e))
    return (h, mp) if return_map else h


def contract_edge_simple(g: Multigraph, e: int, return_map: bool = False):
    """Contract ``e``, then drop loops and keep one edge (lowest id) per parallel class."""
    u, v = g.endpoints(e)
    if u == v:
        raise ValueError("simple contraction of a loop")
    h, mp = contract_edge_multi(g, e, return_map=True)
    h = simplify(h)
    return (h, mp) if return_map else h


def simplify(g: Multigraph) -> Multigraph:
    """Drop loops and collapse parallel classes to their lowest-id edge."""
    best: dict[tuple[int, int], int] = {}
    for eid, a, b in g.edges:
        if a == b:
            continue
        if (a, b) not in best or eid < best[(a, b)]:
            best[(a, b)] = eid
    keep = set(best.values())
    return Multigraph(g.n, tuple(r for r in g.edges if r[0] in keep))


class _DSU:
    __slots__ = ("parent", "count")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.count = n

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        self.count -= 1
        return True


def components(g: Multigraph, edge_subset: Iterable[int] | None = None) -> int:
    """c(A): components of the spanning subgraph (V, A), isolated vertices included."""
    dsu = _DSU(g.n)
    if edge_subset is None:
        for _, u, v in g.edges:
            dsu.union(u, v)
    else:
        for e in edge_subset:
            u, v = g.endpoints(e)
            dsu.union(u, v)
    return dsu.count


def component_labels(g: Multigraph) -> list[int]:
    dsu = _DSU(g.n)
    for _, u, v in g.edges:
        dsu.union(u, v)
    roots: dict[int, int] = {}
    return [roots.setdefault(dsu.find(x), len(roots)) for x in range(g.n)]


def is_connected(g: Multigraph) -> bool:
    return g.n <= 1 or components(g) == 1


def connected_pieces(g: Multigraph) -> list[Multigraph]:
    """Split into connected components, each relabelled onto ``0..k-1`` (ids kept)."""
    lab = component_labels(g)
    k = max(lab, default=-1) + 1
    members: list[list[int]] = [[] for _ in range(k)]
    for x, c in enumerate(lab):
        members[c].append(x)
    local = {}
    for c, vs in enumerate(members):
        for i, x in enumerate(vs):
            local[x] = i
    buckets: list[list] = [[] for _ in range(k)]
    for eid, a, b in g.edges:
        buckets[lab[a]].append((eid, local[a], local[b]))
    return [Multigraph(len(members[c]), tuple(buckets[c])) for c in range(k)]


def _lowpoint_dfs(g: Multigraph):
    """Iterative Tarjan DFS; yields bridges and biconnected edge groups."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for eid, u, v in g.edges:
        if u == v:
            continue
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    disc = [-1] * g.n
    low = [0] * g.n
    timer = 0
    bridges_out: list[int] = []
    groups: list[list[int]] = []
    estack: list[int] = []
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, pe, it = stack[-1]
            advanced = False
            for w, eid in it:
                if eid == pe:
                    continue
                if disc[w] == -1:
                    estack.append(eid)
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, eid, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    estack.append(eid)
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] > disc[parent]:
                    bridges_out.append(pe)
                if low[v] >= disc[parent]:
                    grp = []
                    while True:
                        x = estack.pop()
                        grp.append(x)
                        if x == pe:
                            break
                    groups.append(grp)
    return bridges_out, groups


def bridges(g: Multigraph) -> list[int]:
    return sorted(_lowpoint_dfs(g)[0])


def is_bridgeless(g: Multigraph) -> bool:
    return not _lowpoint_dfs(g)[0]


def classify_edge(g: Multigraph, e: int) -> EdgeKind:
    u, v = g.endpoints(e)
    if u == v:
        return EdgeKind.LOOP
    if components(g, [x for x in g.edge_ids if x != e]) > components(g):
        return EdgeKind.BRIDGE
    return EdgeKind.NORMAL


def blocks(g: Multigraph) -> list[tuple[frozenset[int], tuple[int, ...]]]:
    """Blocks as ``(vertex set, edge ids)`` pairs.

    Isolated vertices give no block, a bridge is a block on its own and every
    loop is reported as a one-vertex block.  Together the blocks partition E.
    """
    _, groups = _lowpoint_dfs(g)
    out = []
    for grp in groups:
        vs = set()
        for e in grp:
            vs.update(g.endpoints(e))
        out.append((frozenset(vs), tuple(sorted(grp))))
    for eid, u, v in g.edges:
        if u == v:
            out.append((frozenset((u,)), (eid,)))
    out.sort(key=lambda b: b[1])
    return out


def block_count(g: Multigraph) -> int:
    return len(blocks(g))


def _gf2_rank(rows: Iterable[int]) -> int:
    basis: list[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            basis.append(r)
    return len(basis)


def bicycle_dimension(g: Multigraph) -> int:
    """dim of (cycle space) ∩ (cut space) over GF(2), edge index = position in ``g.edges``."""
    pos = {eid: i for i, (eid, _, _) in enumerate(g.edges)}
    cut_rows = [0] * g.n
    for eid, u, v in g.edges:
        if u != v:
            cut_rows[u] ^= 1 << pos[eid]
            cut_rows[v] ^= 1 << pos[eid]
    # fundamental cycles w.r.t. a spanning forest
    dsu = _DSU(g.n)
    tree_adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    chords = []
    for eid, u, v in g.edges:
        if dsu.union(u, v):
            tree_adj[u].append((v, eid))
            tree_adj[v].append((u, eid))
        else:
            chords.append((eid, u, v))
    parent = [-1] * g.n
    pedge = [-1] * g.n
    depth = [0] * g.n
    seen = [False] * g.n
    for r in range(g.n):
        if seen[r]:
            continue
        seen[r] = True
        stack = [r]
        while stack:
            x = stack.pop()
            for y, eid in tree_adj[x]:
                if not seen[y]:
                    seen[y] = True
                    parent[y], pedge[y], depth[y] = x, eid, depth[x] + 1
                    stack.append(y)
    cycle_rows = []
    for eid, u, v in chords:
        vec = 1 << pos[eid]
        a, b = u, v
        while a != b:
            if depth[a] < depth[b]:
                a, b = b, a
            vec ^= 1 << pos[pedge[a]]
            a = parent[a]
        cycle_rows.append(vec)
    dim_c = len(cycle_rows)
    dim_b = _gf2_rank(cut_rows)
    return dim_c + dim_b - _gf2_rank(cycle_rows + cut_rows)


def induced_subgraph(g: Multigraph, vertices: Sequence[int]) -> Multigraph:
    """Subgraph induced on ``vertices`` (relabelled in the given order; ids kept)."""
    idx = {v: i for i, v in enumerate(vertices)}
    return Multigraph(
        len(idx),
        tuple((eid, idx[a], idx[b]) for eid, a, b in g.edges if a in idx and b in idx),
    )


@dataclass(frozen=True)
class SetPartition:
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise ValueError("empty block")
            if seen & b:
                raise ValueError("blocks overlap")
            seen |= b
        if seen != set(range(len(seen))):
            raise ValueError("blocks must cover 0..n-1")

    @classmethod
    def from_rgs(cls, rgs: Sequence[int]) -> "SetPartition":
        k = max(rgs, default=-1) + 1
        bl: list[set[int]] = [set() for _ in range(k)]
        for v, b in enumerate(rgs):
            bl[b].add(v)
        return cls(tuple(frozenset(b) for b in bl))

    def __len__(self) -> int:
        return len(self.blocks)

    def block_of(self) -> dict[int, int]:
        return {v: i for i, b in enumerate(self.blocks) for v in b}


def partitions_stream(n: int) -> Iterator[SetPartition]:
    """All set partitions of ``0..n-1`` via restricted growth strings."""
    if n == 0:
        yield SetPartition(())
        return
    rgs = [0] * n

    def rec(i: int, mx: int):
        if i == n:
            yield SetPartition.from_rgs(rgs)
            return
        for b in range(mx + 2):
            rgs[i] = b
            yield from rec(i + 1, max(mx, b))

    rgs[0] = 0
    yield from rec(1, 0)


def induced_partition_graph(g: Multigraph, part: SetPartition) -> Multigraph:
    """G(P): keep only the edges whose two ends lie in the same block."""
    where = part.block_of()
    return Multigraph(g.n, tuple(r for r in g.edges if where[r[1]] == where[r[2]]))


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        arcs = frozenset(self.arcs)
        for t, h in arcs:
            if not (0 <= t < self.n and 0 <= h < self.n):
                raise ValueError("arc endpoint out of range")
            if t == h:
                raise ValueError("loops are not allowed in a digraph")
        object.__setattr__(self, "arcs", arcs)

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        m = [0] * self.n
        for t, h in self.arcs:
            m[t] |= 1 << h
        return tuple(m)

    def topological_order(self) -> list[int] | None:
        """A topological order, or ``None`` if the digraph has a directed cycle."""
        indeg = [0] * self.n
        for _, h in self.arcs:
            indeg[h] += 1
        ready = sorted(v for v in range(self.n) if indeg[v] == 0)
        order = []
        succ: list[list[int]] = [[] for _ in range(self.n)]
        for t, h in self.arcs:
            succ[t].append(h)
        while ready:
            v = ready.pop(0)
            order.append(v)
            for h in sorted(succ[v]):
                indeg[h] -= 1
                if indeg[h] == 0:
                    ready.append(h)
            ready.sort()
        return order if len(order) == self.n else None

    def is_acyclic(self) -> bool:
        return self.topological_order() is not None

    def reach(self) -> list[int]:
        """``R[v]``: bitmask of vertices reachable from v by a directed path (v excluded)."""
        order = self.topological_order()
        if order is None:
            raise ValueError("reachability table needs an acyclic digraph")
        out = list(self.out_masks)
        res = [0] * self.n
        for v in reversed(order):
            r = out[v]
            mask = out[v]
            while mask:
                low = mask & -mask
                r |= res[low.bit_length() - 1]
                mask ^= low
            res[v] = r
        return res

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Rename vertex ``v`` to ``perm[v]``."""
        return Digraph(self.n, frozenset((perm[t], perm[h]) for t, h in self.arcs))

    def underlying(self) -> Multigraph:
        return Multigraph.from_pairs(self.n, sorted(self.arcs))


def all_edge_subsets(g: Multigraph) -> Iterator[tuple[int, ...]]:
    ids = g.edge_ids
    for k in range(len(ids) + 1):
        yield from combinations(ids, k)
