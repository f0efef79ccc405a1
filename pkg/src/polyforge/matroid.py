"""Matroids given by rank oracles.

Elements are integer ids (edge ids for graphic matroids).  Internally subsets
are bitmasks over the positions of ``ground``; ``rank_mask`` is the raw oracle
and ``rank`` accepts any iterable of element ids.  Minors and duals wrap the
parent oracle, so everything stays exact and no table is ever needed beyond
a per-matroid cache.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Callable, Iterable, Sequence

from .exactpoly import BiPoly, Poly
from .multigraph import Multigraph, _DSU
from .report import IdentityReport

__all__ = [
    "Matroid",
    "uniform",
    "cycle_matroid",
    "cocycle_matroid",
    "dual",
    "restriction",
    "contraction",
    "deletion",
    "direct_sum",
    "explicit",
    "check_rank_axioms",
    "closure",
    "flats",
    "flats_bruteforce",
    "mobius",
    "char_poly",
    "char_poly_subset",
    "char_poly_flats",
    "char_poly_dc",
    "char_poly_uniform",
    "tutte_poly_matroid",
    "tutte_subset",
    "tutte_dc_matroid",
    "kung_identity_check",
    "chromatic_product_identity_check",
    "lemma_flat_sum",
]

MAX_SUBSET = 20


class Matroid:
    """Ground set plus rank oracle on bitmasks over ``ground`` positions."""

    def __init__(self, ground: Sequence[int], rank_mask: Callable[[int], int], kind: str = "explicit", params=None):
        self.ground: tuple[int, ...] = tuple(ground)
        if len(set(self.ground)) != len(self.ground):
            raise ValueError("ground set elements must be distinct")
        self._index = {e: i for i, e in enumerate(self.ground)}
        self._raw = rank_mask
        self._cache: dict[int, int] = {}
        self.kind = kind
        self.params = params

    @property
    def size(self) -> int:
        return len(self.ground)

    @property
    def full(self) -> int:
        return (1 << len(self.ground)) - 1

    def rank_mask(self, mask: int) -> int:
        r = self._cache.get(mask)
        if r is None:
            r = self._raw(mask)
            self._cache[mask] = r
        return r

    def mask(self, elems: Iterable[int]) -> int:
        m = 0
        for e in elems:
            try:
                m |= 1 << self._index[e]
            except KeyError:
                raise ValueError(f"{e} is not in the ground set") from None
        return m

    def elems(self, mask: int) -> frozenset[int]:
        return frozenset(self.ground[i] for i in range(len(self.ground)) if mask >> i & 1)

    def rank(self, elems: Iterable[int] = None) -> int:
        if elems is None:
            return self.rank_mask(self.full)
        return self.rank_mask(self.mask(elems))

    @property
    def r(self) -> int:
        return self.rank_mask(self.full)

    def is_loop(self, e: int) -> bool:
        return self.rank_mask(self.mask([e])) == 0

    def is_coloop(self, e: int) -> bool:
        return self.rank_mask(self.full & ~self.mask([e])) < self.r

    def loops(self) -> list[int]:
        return [e for e in self.ground if self.is_loop(e)]

    def rank_table(self) -> list[int]:
        if self.size > MAX_SUBSET:
            raise ValueError("rank table too large")
        return [self.rank_mask(m) for m in range(1 << self.size)]

    def to_json(self) -> dict:
        d = {"n_elements": self.size, "kind": self.kind, "params": self.params}
        if self.kind == "explicit":
            d["params"] = {"ground": list(self.ground), "ranks": self.rank_table()}
        return d

    def __repr__(self) -> str:
        return f"Matroid(kind={self.kind!r}, size={self.size}, rank={self.r})"


def explicit(ground: Sequence[int], ranks: Sequence[int]) -> Matroid:
    """Matroid from a full rank table indexed by bitmask over ``ground``."""
    ranks = list(ranks)
    if len(ranks) != 1 << len(ground):
        raise ValueError("rank table must have 2^|E| entries")
    return Matroid(ground, ranks.__getitem__, "explicit")


def uniform(k: int, n: int) -> Matroid:
    if not 0 <= k <= n:
        raise ValueError("uniform matroid needs 0 <= k <= n")
    return Matroid(range(n), lambda m: min(bin(m).count("1"), k), "uniform", {"k": k, "n": n})


def cycle_matroid(g: Multigraph) -> Matroid:
    ends = [(u, v) for _, u, v in g.edges]
    n = g.n

    def rk(mask: int) -> int:
        dsu = _DSU(n)
        i = 0
        while mask:
            if mask & 1:
                u, v = ends[i]
                dsu.union(u, v)
            mask >>= 1
            i += 1
        return n - dsu.count

    return Matroid(g.edge_ids, rk, "graphic", {"n": g.n, "edges": [list(e) for e in g.edges]})


def cocycle_matroid(g: Multigraph) -> Matroid:
    m = dual(cycle_matroid(g))
    m.kind = "cographic"
    m.params = {"n": g.n, "edges": [list(e) for e in g.edges]}
    return m


def dual(m: Matroid) -> Matroid:
    full = m.full
    rE = m.r

    def rk(mask: int) -> int:
        return bin(mask).count("1") - rE + m.rank_mask(full & ~mask)

    return Matroid(m.ground, rk, "dual", {"of": m.to_json() if m.size <= 10 else m.kind})


def _sub_positions(m: Matroid, keep: Sequence[int]) -> list[int]:
    return [m._index[e] for e in keep]


def _lift(positions: Sequence[int]) -> Callable[[int], int]:
    def lift(mask: int) -> int:
        out = 0
        i = 0
        while mask:
            if mask & 1:
                out |= 1 << positions[i]
            mask >>= 1
            i += 1
        return out

    return lift


def restriction(m: Matroid, A: Iterable[int]) -> Matroid:
    """M|A: same rank, ground set A."""
    keep = [e for e in m.ground if e in set(A)]
    if len(keep) != len(set(A)):
        raise ValueError("restriction set is not a subset of the ground set")
    lift = _lift(_sub_positions(m, keep))
    return Matroid(keep, lambda mask: m.rank_mask(lift(mask)), "restriction")


def deletion(m: Matroid, A: Iterable[int]) -> Matroid:
    A = set(A)
    return restriction(m, [e for e in m.ground if e not in A])


def contraction(m: Matroid, A: Iterable[int]) -> Matroid:
    """M/A: ground E \\ A, rank r(B ∪ A) - r(A)."""
    A = set(A)
    amask = m.mask(A)
    ra = m.rank_mask(amask)
    keep = [e for e in m.ground if e not in A]
    lift = _lift(_sub_positions(m, keep))
    return Matroid(keep, lambda mask: m.rank_mask(lift(mask) | amask) - ra, "contraction")


def direct_sum(m1: Matroid, m2: Matroid) -> Matroid:
    """Elements of ``m2`` are shifted past the largest id of ``m1``."""
    off = max(m1.ground, default=-1) + 1
    n1 = m1.size
    low = (1 << n1) - 1
    ground = list(m1.ground) + [e + off for e in m2.ground]
    return Matroid(ground, lambda mask: m1.rank_mask(mask & low) + m2.rank_mask(mask >> n1), "direct_sum")


def check_rank_axioms(m: Matroid) -> list[str]:
    """Exhaustive check of the rank axioms; returns a list of violations."""
    if m.size > 12:
        raise ValueError("exhaustive axiom check limited to 12 elements")
    bad = []
    tab = m.rank_table()
    N = 1 << m.size
    for a in range(N):
        ra = tab[a]
        if not 0 <= ra <= bin(a).count("1"):
            bad.append(f"bound fails at {a:b}")
        for i in range(m.size):
            if not a >> i & 1 and tab[a | 1 << i] < ra:
                bad.append(f"monotonicity fails at {a:b}+{i}")
        for b in range(a, N):
            if tab[a | b] + tab[a & b] > ra + tab[b]:
                bad.append(f"submodularity fails at {a:b},{b:b}")
                break
    return bad


# ---------------------------------------------------------------------------
# closure, flats and the Moebius function


def closure_mask(m: Matroid, mask: int) -> int:
    r = m.rank_mask(mask)
    out = mask
    for i in range(m.size):
        bit = 1 << i
        if not mask & bit and m.rank_mask(mask | bit) == r:
            out |= bit
    return out


def closure(m: Matroid, A: Iterable[int]) -> frozenset[int]:
    return m.elems(closure_mask(m, m.mask(A)))


def _flat_masks(m: Matroid) -> list[int]:
    if m.size > MAX_SUBSET:
        raise ValueError(f"flat enumeration limited to {MAX_SUBSET} elements")
    bottom = closure_mask(m, 0)
    seen = {bottom}
    frontier = [bottom]
    while frontier:
        nxt = []
        for f in frontier:
            for i in range(m.size):
                if not f >> i & 1:
                    g = closure_mask(m, f | 1 << i)
                    if g not in seen:
                        seen.add(g)
                        nxt.append(g)
        frontier = nxt
    return sorted(seen, key=lambda f: (m.rank_mask(f), bin(f).count("1"), f))


def flats(m: Matroid) -> list[tuple[frozenset[int], int]]:
    """All flats as ``(elements, rank)``, sorted by rank.

    Flats are generated by walking up the lattice: each flat's covers are the
    closures of the flat plus one outside element.
    """
    return [(m.elems(f), m.rank_mask(f)) for f in _flat_masks(m)]


def flats_bruteforce(m: Matroid) -> set[frozenset[int]]:
    """Closure of every subset; the slow reference for ``flats``."""
    if m.size > 14:
        raise ValueError("brute-force flats limited to 14 elements")
    return {m.elems(closure_mask(m, a)) for a in range(1 << m.size)}


def _mobius_masks(m: Matroid, fl: list[int]) -> dict[int, int]:
    """mu(bottom, F) for every flat mask; all zero when the matroid has loops."""
    if fl and fl[0] != 0:
        return {f: 0 for f in fl}
    mu: dict[int, int] = {}
    for f in fl:
        if f == 0:
            mu[f] = 1
            continue
        mu[f] = -sum(v for g, v in mu.items() if g & f == g and g != f)
    return mu


def mobius(m: Matroid) -> dict[frozenset[int], int]:
    """mu(∅, F) keyed by flat.  With a loop, ∅ is not a flat and every value is 0."""
    fl = _flat_masks(m)
    return {m.elems(f): v for f, v in _mobius_masks(m, fl).items()}


def lemma_flat_sum(m: Matroid, F: Iterable[int]) -> int:
    """Sum of (-1)^|A| over spanning subsets A of the flat F."""
    fm = m.mask(F)
    rf = m.rank_mask(fm)
    total = 0
    sub = fm
    while True:
        if m.rank_mask(sub) == rf:
            total += -1 if bin(sub).count("1") & 1 else 1
        if sub == 0:
            break
        sub = (sub - 1) & fm
    return total


# ---------------------------------------------------------------------------
# characteristic polynomial


def char_poly_subset(m: Matroid) -> Poly:
    if m.size > MAX_SUBSET:
        raise ValueError(f"subset expansion limited to {MAX_SUBSET} elements")
    r = m.r
    coeffs = [0] * (r + 1)
    for a in range(1 << m.size):
        sign = -1 if bin(a).count("1") & 1 else 1
        coeffs[r - m.rank_mask(a)] += sign
    return Poly(coeffs)


def char_poly_flats(m: Matroid) -> Poly:
    fl = _flat_masks(m)
    mu = _mobius_masks(m, fl)
    r = m.r
    coeffs = [0] * (r + 1)
    for f in fl:
        coeffs[r - m.rank_mask(f)] += mu[f]
    return Poly(coeffs)


def char_poly_dc(m: Matroid) -> Poly:
    """Deletion/contraction: loop gives 0, coloop (x-1)·C(M/e), else C(M\\e) - C(M/e)."""
    full = m.full
    rank = m.rank_mask
    xm1 = Poly([-1, 1])

    @lru_cache(maxsize=None)
    def rec(live: int, con: int) -> Poly:
        # minor with ground `live`, contracted set `con`
        if live == 0:
            return Poly([1])
        i = (live & -live).bit_length() - 1
        bit = 1 << i
        rc = rank(con)
        if rank(con | bit) == rc:
            return Poly()
        rest = live & ~bit
        if rank(rest | con) < rank(live | con):
            return xm1 * rec(rest, con | bit)
        return rec(rest, con) - rec(rest, con | bit)

    out = rec(full, 0)
    rec.cache_clear()
    return out


def char_poly(m: Matroid, route: str = "flats") -> Poly:
    if route == "subset":
        return char_poly_subset(m)
    if route == "dc":
        return char_poly_dc(m)
    if route == "flats":
        return char_poly_flats(m)
    raise ValueError(f"unknown route {route!r}")


def char_poly_uniform(k: int, n: int) -> Poly:
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    coeffs = [0] * (k + 1)
    for i in range(k):
        coeffs[k - i] = (-1) ** i * comb(n, i)
    coeffs[0] += sum((-1) ** i * comb(n, i) for i in range(k, n + 1))
    return Poly(coeffs)


# ---------------------------------------------------------------------------
# Tutte polynomial


def tutte_subset(m: Matroid) -> BiPoly:
    if m.size > MAX_SUBSET:
        raise ValueError(f"subset expansion limited to {MAX_SUBSET} elements")
    r = m.r
    counts: dict[tuple[int, int], int] = {}
    for a in range(1 << m.size):
        ra = m.rank_mask(a)
        key = (r - ra, bin(a).count("1") - ra)
        counts[key] = counts.get(key, 0) + 1
    x1 = BiPoly({(1, 0): 1, (0, 0): -1})
    y1 = BiPoly({(0, 1): 1, (0, 0): -1})
    out = BiPoly()
    for (i, j), c in counts.items():
        out = out + (x1 ** i) * (y1 ** j) * c
    return out


def tutte_dc_matroid(m: Matroid) -> BiPoly:
    rank = m.rank_mask
    X, Y = BiPoly.x(), BiPoly.y()

    @lru_cache(maxsize=None)
    def rec(live: int, con: int) -> BiPoly:
        if live == 0:
            return BiPoly.const(1)
        i = (live & -live).bit_length() - 1
        bit = 1 << i
        rest = live & ~bit
        if rank(con | bit) == rank(con):
            return Y * rec(rest, con)
        if rank(rest | con) < rank(live | con):
            return X * rec(rest, con | bit)
        return rec(rest, con) + rec(rest, con | bit)

    out = rec(m.full, 0)
    rec.cache_clear()
    return out


def tutte_poly_matroid(m: Matroid, route: str = "subset") -> BiPoly:
    if route == "subset":
        return tutte_subset(m)
    if route == "dc":
        return tutte_dc_matroid(m)
    raise ValueError(f"unknown route {route!r}")


# ---------------------------------------------------------------------------
# identities


def _interval_char_polys(m: Matroid):
    """For each flat F: (C(M/F, x), C(M|F, x)) from Moebius values on lattice intervals."""
    fl = _flat_masks(m)
    rank = {f: m.rank_mask(f) for f in fl}
    below = {f: [g for g in fl if g & f == g] for f in fl}
    mu_cache: dict[tuple[int, int], int] = {}

    def mu(a: int, b: int) -> int:
        key = (a, b)
        if key not in mu_cache:
            if a == b:
                mu_cache[key] = 1
            else:
                mu_cache[key] = -sum(mu(a, g) for g in below[b] if g & a == a and g != b)
        return mu_cache[key]

    loopy = bool(fl) and fl[0] != 0
    r = m.r
    out = {}
    for f in fl:
        up = [0] * (r - rank[f] + 1)
        for g in fl:
            if g & f == f:
                up[r - rank[g]] += mu(f, g)
        down = [0] * (rank[f] + 1)
        if not loopy:
            for g in below[f]:
                down[rank[f] - rank[g]] += mu(0, g)
        out[f] = (Poly(up), Poly(down))
    return fl, rank, out


def _xy_subst(p: Poly) -> BiPoly:
    return BiPoly({(k, k): c for k, c in enumerate(p.coeffs)})


def _in_x(p: Poly) -> BiPoly:
    return p.to_bipoly(0)


def _in_y(p: Poly) -> BiPoly:
    return p.to_bipoly(1)


def kung_identity_check(m: Matroid, instance: str = "") -> IdentityReport:
    """C(M, x1·x2) against the flat sum of C(M/F, x1)·x2^(r(M)-r(F))·C(M|F, x2)."""
    if m.size > 15:
        raise ValueError("Kung check limited to 15 elements")
    lhs = _xy_subst(char_poly_subset(m))
    fl, rank, polys = _interval_char_polys(m)
    r = m.r
    rhs = BiPoly()
    for f in fl:
        up, down = polys[f]
        rhs = rhs + _in_x(up) * _in_y(down) * BiPoly({(0, r - rank[f]): 1})
    return IdentityReport.compare("kung_multiplication", instance or repr(m), lhs, rhs)


def chromatic_product_identity_check(g: Multigraph, instance: str = "") -> IdentityReport:
    """chi(G, x·y) = Σ_{E'} chi(G/E', x)·chi((V, E'), y).

    G/E' contracts every edge of E' (keeping loops); (V, E') is the spanning
    subgraph.  A non-flat E' leaves a loop in G/E', so only the flats of the
    cycle matroid contribute.  Both factors are computed on the graphs
    themselves; ``kung_identity_check`` covers the matroid form.
    """
    from .flowchrom import chromatic_poly
    from .multigraph import contract_edge_multi

    if not g.is_simple:
        raise ValueError("chromatic product identity needs a simple graph")
    m = cycle_matroid(g)
    if m.size > 15:
        raise ValueError("chromatic product identity limited to 15 edges")
    ids = g.edge_ids
    lhs = _xy_subst(chromatic_poly(g))
    rhs = BiPoly()
    for f in _flat_masks(m):
        chosen = [ids[i] for i in range(m.size) if f >> i & 1]
        h = g
        for e in chosen:
            h = contract_edge_multi(h, e)
        span = Multigraph(g.n, tuple(r for r in g.edges if r[0] in set(chosen)))
        rhs = rhs + _in_x(chromatic_poly(h)) * _in_y(chromatic_poly(span))
    return IdentityReport.compare("chromatic_product", instance or repr(g), lhs, rhs)