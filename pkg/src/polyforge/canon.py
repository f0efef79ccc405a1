"""Canonical labelling and isomorph-free generation of small graphs.

Canonical forms use individualisation/refinement: refine an ordered vertex
partition to an equitable one, branch on the first non-singleton cell, and keep
the lexicographically largest relabelled multiplicity matrix over all leaves.
Branches are pruned with twin vertices and with automorphisms discovered at
equal leaves, which keeps highly symmetric graphs (K_n, N_n, K_{a,b}) cheap.
"""

from __future__ import annotations

import os
from typing import Iterator, Sequence

from .multigraph import Multigraph, is_bridgeless

__all__ = [
    "canonical_form",
    "canonical_key",
    "canonical_graph",
    "are_isomorphic",
    "connected_graph_stream",
    "connected_graphs",
    "graphs_from_masks",
    "KNOWN_CONNECTED_COUNTS",
]

KNOWN_CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


def _matrix(g: Multigraph) -> list[list[int]]:
    mat = [[0] * g.n for _ in range(g.n)]
    for _, u, v in g.edges:
        if u == v:
            mat[u][u] += 1
        else:
            mat[u][v] += 1
            mat[v][u] += 1
    return mat


def _refine(mat, cells: list[list[int]]) -> list[list[int]]:
    n = len(mat)
    while True:
        where = [0] * n
        for ci, c in enumerate(cells):
            for v in c:
                where[v] = ci
        k = len(cells)
        new_cells: list[list[int]] = []
        for c in cells:
            if len(c) == 1:
                new_cells.append(c)
                continue
            sigs = {}
            for v in c:
                row = mat[v]
                sig = [0] * k
                for w in range(n):
                    if row[w]:
                        sig[where[w]] += row[w]
                sigs.setdefault(tuple(sig), []).append(v)
            if len(sigs) == 1:
                new_cells.append(c)
            else:
                for s in sorted(sigs):
                    new_cells.append(sigs[s])
        if len(new_cells) == k:
            return new_cells
        cells = new_cells


def _cert(mat, order: Sequence[int]) -> tuple:
    n = len(order)
    return tuple(mat[order[i]][order[j]] for i in range(n) for j in range(i, n))


def _twins(mat, v: int, w: int) -> bool:
    rv, rw = mat[v], mat[w]
    if rv[v] != rw[w] or rv[w] != rw[v]:
        return False
    for x in range(len(mat)):
        if x != v and x != w and rv[x] != rw[x]:
            return False
    return True


def _orbit_of(v: int, autos: list[tuple[int, ...]]) -> set[int]:
    orb = {v}
    frontier = [v]
    while frontier:
        x = frontier.pop()
        for a in autos:
            y = a[x]
            if y not in orb:
                orb.add(y)
                frontier.append(y)
    return orb


def canonical_form(g: Multigraph, colors: Sequence | None = None) -> tuple[tuple, list[int]]:
    """Return ``(certificate, order)``; ``order[i]`` is the vertex placed at position i.

    Two graphs are isomorphic (respecting ``colors`` if given) iff their
    certificates are equal.
    """
    mat = _matrix(g)
    n = g.n
    if n == 0:
        return (0, ()), []
    # initial cells: colour, loop count, degree
    def inv(v):
        return (colors[v] if colors is not None else 0, mat[v][v], sum(mat[v]))

    groups: dict = {}
    for v in range(n):
        groups.setdefault(inv(v), []).append(v)
    cells = [groups[k] for k in sorted(groups)]
    head = tuple(sorted(groups)) if colors is not None else ()
    cells = _refine(mat, cells)

    best: list = [None, None]
    autos: list[tuple[int, ...]] = []

    def search(cells, prefix):
        target = next((c for c in cells if len(c) > 1), None)
        if target is None:
            order = [c[0] for c in cells]
            cert = _cert(mat, order)
            if best[0] is None or cert > best[0]:
                best[0], best[1] = cert, order
            elif cert == best[0]:
                # order -> best[1] is an automorphism
                perm = [0] * n
                for a, b in zip(order, best[1]):
                    perm[a] = b
                autos.append(tuple(perm))
            return
        tried: list[int] = []
        skip: set[int] = set()
        ti = cells.index(target)
        for v in target:
            if v in skip:
                continue
            if any(_twins(mat, v, t) for t in tried):
                continue
            tried.append(v)
            rest = [w for w in target if w != v]
            new = cells[:ti] + [[v], rest] + cells[ti + 1:]
            search(_refine(mat, new), prefix + (v,))
            good = [a for a in autos if all(a[p] == p for p in prefix)]
            if good:
                for t in tried:
                    skip |= _orbit_of(t, good)

    search(cells, ())
    return (head, n, best[0]), best[1]


def canonical_key(g: Multigraph, colors: Sequence | None = None) -> tuple:
    return canonical_form(g, colors)[0]


def canonical_graph(g: Multigraph) -> Multigraph:
    """Relabel ``g`` into canonical vertex order (edge ids renumbered 0..m-1)."""
    _, order = canonical_form(g)
    pos = {v: i for i, v in enumerate(order)}
    pairs = sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for _, u, v in g.edges)
    return Multigraph.from_pairs(g.n, pairs)


def are_isomorphic(g: Multigraph, h: Multigraph) -> bool:
    if g.n != h.n or g.m != h.m:
        return False
    return canonical_key(g) == canonical_key(h)


def graphs_from_masks(n: int, masks: Sequence[int]) -> Multigraph:
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if masks[u] >> v & 1]
    return Multigraph.from_pairs(n, pairs)


def _canon_masks(n: int, masks: Sequence[int]) -> tuple[tuple, tuple[int, ...]]:
    g = graphs_from_masks(n, masks)
    cert, order = canonical_form(g)
    pos = [0] * n
    for i, v in enumerate(order):
        pos[v] = i
    out = [0] * n
    for u in range(n):
        m = masks[u]
        while m:
            low = m & -m
            w = low.bit_length() - 1
            out[pos[u]] |= 1 << pos[w]
            m ^= low
    return cert, tuple(out)


_LEVEL_CACHE: dict[tuple[int, int | None], list[tuple[int, ...]]] = {}


def _connected_level(n: int, max_edges: int | None) -> list[tuple[int, ...]]:
    key = (n, max_edges)
    if key in _LEVEL_CACHE:
        return _LEVEL_CACHE[key]
    if n == 1:
        res = [(0,)]
    else:
        prev = _connected_level(n - 1, max_edges)
        seen: dict[tuple, tuple[int, ...]] = {}
        for masks in prev:
            base_m = sum(bin(x).count("1") for x in masks) // 2
            for s in range(1, 1 << (n - 1)):
                if max_edges is not None and base_m + bin(s).count("1") > max_edges:
                    continue
                new = list(masks) + [s]
                for u in range(n - 1):
                    if s >> u & 1:
                        new[u] |= 1 << (n - 1)
                cert, cm = _canon_masks(n, new)
                if cert not in seen:
                    seen[cert] = cm
        res = [seen[c] for c in sorted(seen)]
    _LEVEL_CACHE[key] = res
    return res


def connected_graphs(n: int, max_edges: int | None = None) -> list[Multigraph]:
    """One representative per isomorphism class of connected simple graphs of order n.

    Works by adding a vertex to every class of order ``n - 1`` in all possible
    ways (every connected graph has a vertex whose removal keeps it
    connected) and keeping one graph per canonical certificate.  With
    ``max_edges`` the search is pruned to graphs with at most that many edges.
    """
    if n < 1:
        raise ValueError("order must be positive")
    return [graphs_from_masks(n, m) for m in _connected_level(n, max_edges)]


def connected_graph_stream(n: int, graph6_file: str | os.PathLike | None = None) -> Iterator[Multigraph]:
    """Stream non-isomorphic connected simple graphs of order ``n``.

    Orders up to 8 are generated here.  Larger orders must be read from a
    graph6 file (one graph per line), e.g. produced by ``geng -c``.
    """
    if graph6_file is not None:
        from .graphio import read_graph6_file

        for g in read_graph6_file(graph6_file):
            if g.n != n:
                raise ValueError(f"graph of order {g.n} in a stream for order {n}")
            yield g
        return
    if n > 8:
        raise ValueError("orders above 8 need an external graph6 file")
    yield from connected_graphs(n)


def bridgeless_connected_graphs(max_edges: int) -> Iterator[Multigraph]:
    """Connected bridgeless simple graphs with between 3 and ``max_edges`` edges."""
    for n in range(3, max_edges + 1):
        for g in connected_graphs(n, max_edges=max_edges):
            if is_bridgeless(g):
                yield g
