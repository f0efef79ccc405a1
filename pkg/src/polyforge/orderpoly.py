"""Strict and weak order polynomials of acyclic digraphs.

Vertices are 0-based internally; the label order used by the ascent
statistics is the integer order of the vertex ids (label = id + 1 in files).
``omega_strict`` is the strict polynomial (θ(u) < θ(v) on arcs) and
``omega_weak`` the weak one (θ(u) ≤ θ(v)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb
from typing import Iterator, Sequence

import numpy as np

from .exactpoly import BiPoly, Poly, binomial_poly, series_coeffs
from .multigraph import Digraph, Multigraph
from .report import FAIL, PASS, IdentityReport

__all__ = [
    "Ordering",
    "OrderPolyResult",
    "binom_x",
    "topological_relabel",
    "op_list",
    "omega_strict_recursion",
    "omega_strict_expansion",
    "omega_weak_expansion",
    "omega_enum",
    "omega_interpolate",
    "surjective_counts",
    "reciprocity_check",
    "genfun_check",
    "tugger_check",
    "order_ideals",
    "w_family",
    "dong_criterion",
    "w_label_chromatic_check",
    "chromatic_orientation_check",
    "partition_lemma_check",
    "transitive_arc_check",
    "acyclic_digraphs",
]


@lru_cache(maxsize=None)
def binom_x(shift: int, p: int) -> Poly:
    """C(x + shift, p) as a polynomial in x."""
    return binomial_poly(shift, p)


@dataclass(frozen=True)
class Ordering:
    perm: tuple[int, ...]
    rho: int
    delta: int

    @property
    def labels(self) -> tuple[int, ...]:
        return tuple(v + 1 for v in self.perm)


@dataclass
class OrderPolyResult:
    poly: Poly
    p: int
    # basis data: ("binomial_k", [t_0..t_p]) meaning Σ t_i C(k, i), or
    # ("binomial_shift", {shift: count}) meaning Σ count·C(k + shift, p)
    basis: str = ""
    coeffs: object = field(default=None)

    def __call__(self, k):
        return self.poly(k)


def _ascents(perm: Sequence[int], arcs: frozenset | None = None) -> int:
    r = 0
    for a, b in zip(perm, perm[1:]):
        if a < b or (arcs is not None and (a, b) in arcs):
            r += 1
    return r


def _check_acyclic(d: Digraph) -> None:
    if not d.is_acyclic():
        raise ValueError("digraph has a directed cycle")


def topological_relabel(d: Digraph) -> tuple[Digraph, list[int]]:
    """Relabel so that every arc goes from a smaller to a larger id.

    Returns the relabelled digraph and ``perm`` with new id ``perm[v]``.
    Already-consistent labellings are returned unchanged.
    """
    order = d.topological_order()
    if order is None:
        raise ValueError("digraph has a directed cycle")
    if all(t < h for t, h in d.arcs):
        return d, list(range(d.n))
    perm = [0] * d.n
    for new, v in enumerate(order):
        perm[v] = new
    return d.relabel(perm), perm


def _linear_extensions(d: Digraph) -> Iterator[tuple[int, ...]]:
    preds = [0] * d.n
    for t, h in d.arcs:
        preds[h] |= 1 << t
    n = d.n
    out: list[int] = []

    def rec(placed: int):
        if len(out) == n:
            yield tuple(out)
            return
        for v in range(n):
            if not placed >> v & 1 and preds[v] & ~placed == 0:
                out.append(v)
                yield from rec(placed | 1 << v)
                out.pop()

    yield from rec(0)


def op_list(d: Digraph, relabel: bool = True) -> list[Ordering]:
    """Orderings in which every arc points forward.

    With ``relabel`` (the default) a digraph whose labels are not a
    topological order is relabelled first; the orderings refer to the new ids.
    """
    _check_acyclic(d)
    if relabel:
        d, _ = topological_relabel(d)
    return [Ordering(pi, _ascents(pi), _ascents(pi, d.arcs)) for pi in _linear_extensions(d)]


# ---------------------------------------------------------------------------
# Stanley's recursion


def _tournament_counts(n: int, arcs: frozenset) -> dict[int, int]:
    """Acyclic tournaments reached by the three-way recursion, by order."""
    memo: dict[tuple[int, frozenset], dict[int, int]] = {}

    def acyclic(k: int, a: frozenset) -> bool:
        return Digraph(k, a).is_acyclic()

    def rec(k: int, a: frozenset) -> dict[int, int]:
        key = (k, a)
        if key in memo:
            return memo[key]
        pair = None
        for u in range(k):
            for v in range(u + 1, k):
                if (u, v) not in a and (v, u) not in a:
                    pair = (u, v)
                    break
            if pair:
                break
        if pair is None:
            res = {k: 1}
        else:
            u, v = pair
            res: dict[int, int] = {}
            for extra in ((u, v), (v, u)):
                b = a | {extra}
                if acyclic(k, b):
                    for i, c in rec(k, b).items():
                        res[i] = res.get(i, 0) + c
            # identify v into u, then shift ids above v down
            def f(x):
                x = u if x == v else x
                return x - 1 if x > v else x

            merged = frozenset((f(t), f(h)) for t, h in a)
            if all(t != h for t, h in merged) and not any((h, t) in merged for t, h in merged):
                if acyclic(k - 1, merged):
                    for i, c in rec(k - 1, merged).items():
                        res[i] = res.get(i, 0) + c
        memo[key] = res
        return res

    return rec(n, arcs)


def omega_strict_recursion(d: Digraph) -> OrderPolyResult:
    """Ω̄(D, k) = Σ t_i C(k, i), t_i = acyclic tournaments of order i reached."""
    _check_acyclic(d)
    counts = _tournament_counts(d.n, d.arcs)
    t = [counts.get(i, 0) for i in range(d.n + 1)]
    poly = Poly()
    for i, c in enumerate(t):
        if c:
            poly = poly + binom_x(0, i) * c
    return OrderPolyResult(poly, d.n, "binomial_k", t)


def _expansion(d: Digraph, strict: bool) -> OrderPolyResult:
    p = d.n
    shifts: dict[int, int] = {}
    for o in op_list(d):
        s = p - 1 - o.rho if strict else o.rho
        shifts[s] = shifts.get(s, 0) + 1
    poly = Poly()
    for s, c in shifts.items():
        poly = poly + binom_x(s, p) * c
    return OrderPolyResult(poly, p, "binomial_shift", dict(sorted(shifts.items())))


def omega_strict_expansion(d: Digraph) -> OrderPolyResult:
    """Σ_{π ∈ OP(D)} C(k + p - 1 - ρ(π), p)."""
    return _expansion(d, True)


def omega_weak_expansion(d: Digraph) -> OrderPolyResult:
    """Σ_{π ∈ OP(D)} C(k + ρ(π), p)."""
    return _expansion(d, False)


# ---------------------------------------------------------------------------
# enumeration


@lru_cache(maxsize=64)
def _grid(p: int, k: int) -> np.ndarray:
    return np.array(list(product(range(1, k + 1), repeat=p)), dtype=np.int64).reshape(-1, p)


def _ok_mask(d: Digraph, grid: np.ndarray, strict: bool) -> np.ndarray:
    ok = np.ones(len(grid), dtype=bool)
    for t, h in d.arcs:
        ok &= (grid[:, t] < grid[:, h]) if strict else (grid[:, t] <= grid[:, h])
    return ok


def omega_enum(d: Digraph, k: int, strict: bool = True) -> int:
    """Brute-force count of (strictly) order-preserving maps V -> {1..k}."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if d.n == 0:
        return 1
    if k ** d.n > 10**7:
        raise ValueError("k^p exceeds the enumeration bound 10^7")
    if k == 0:
        return 0
    return int(_ok_mask(d, _grid(d.n, k), strict).sum())


def _newton(values: Sequence[int]) -> Poly:
    """The polynomial of degree < len(values) through (j, values[j])."""
    diffs = list(values)
    poly = Poly()
    for i in range(len(values)):
        poly = poly + binom_x(0, i) * diffs[0]
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    return poly


def omega_interpolate(d: Digraph, strict: bool = True) -> Poly:
    """Ω̄ or Ω from enumerated values at k = 0..p."""
    p = d.n
    if p == 0:
        return Poly([1])
    if (p + 1) ** p > 10**7:
        raise ValueError("interpolation grid exceeds the enumeration bound")
    grid = _grid(p, p)
    ok = _ok_mask(d, grid, strict)
    mx = grid.max(axis=1)
    values = [0] + [int((ok & (mx <= k)).sum()) for k in range(1, p + 1)]
    return _newton(values)


def surjective_counts(d: Digraph) -> list[int]:
    """e_i: strictly order-preserving maps onto {1..i}."""
    p = d.n
    if p == 0:
        return [1]
    grid = _grid(p, p)
    ok = _ok_mask(d, grid, True)
    out = [0] * (p + 1)
    for row in grid[ok]:
        vals = set(row.tolist())
        if vals == set(range(1, len(vals) + 1)):
            out[len(vals)] += 1
    return out


# ---------------------------------------------------------------------------
# identities


def reciprocity_check(d: Digraph) -> IdentityReport:
    """Ω(D, k) = (-1)^p Ω̄(D, -k)."""
    strict = omega_strict_expansion(d).poly
    weak = omega_weak_expansion(d).poly
    refl = strict.compose(Poly([0, -1])) * (-1) ** d.n
    return IdentityReport.compare("order_reciprocity", format_arcs(d), weak, refl)


def genfun_check(d: Digraph, k_max: int = 10) -> IdentityReport:
    """Series of Σ x^(ρ+1)/(1-x)^(p+1) (strict) and Σ x^(p-ρ)/(1-x)^(p+1) (weak)."""
    p = d.n
    ops = op_list(d)
    strict_num = Poly()
    weak_num = Poly()
    for o in ops:
        strict_num = strict_num + Poly.monomial(o.rho + 1)
        weak_num = weak_num + Poly.monomial(p - o.rho)
    s = series_coeffs(strict_num, p, k_max)
    w = series_coeffs(weak_num, p, k_max)
    es = omega_strict_expansion(d).poly
    ew = omega_weak_expansion(d).poly
    kids = [
        IdentityReport.compare("order_genfun_strict", format_arcs(d), s[1:], [es(k) for k in range(1, k_max + 1)]),
        IdentityReport.compare("order_genfun_weak", format_arcs(d), w[1:], [ew(k) for k in range(1, k_max + 1)]),
    ]
    return IdentityReport.group("order_generating_functions", format_arcs(d), kids)


def order_ideals(d: Digraph) -> list[int]:
    """Vertex bitmasks closed under predecessors."""
    preds = [0] * d.n
    for t, h in d.arcs:
        preds[h] |= 1 << t
    return [s for s in range(1 << d.n) if all(preds[v] & ~s == 0 for v in range(d.n) if s >> v & 1)]


def _sub_digraph(d: Digraph, mask: int) -> Digraph:
    idx = [v for v in range(d.n) if mask >> v & 1]
    pos = {v: i for i, v in enumerate(idx)}
    return Digraph(len(idx), frozenset((pos[t], pos[h]) for t, h in d.arcs if t in pos and h in pos))


def tugger_check(d: Digraph) -> IdentityReport:
    """Ω̄(D, x+y) = Σ over order ideals D' of Ω̄(D', x)·Ω̄(D - V(D'), y)."""
    _check_acyclic(d)
    full = (1 << d.n) - 1
    lhs = omega_strict_expansion(d).poly(BiPoly({(1, 0): 1, (0, 1): 1}))
    if not isinstance(lhs, BiPoly):
        lhs = BiPoly.const(lhs)
    rhs = BiPoly()
    for s in order_ideals(d):
        a = omega_strict_expansion(_sub_digraph(d, s)).poly
        b = omega_strict_expansion(_sub_digraph(d, full & ~s)).poly
        rhs = rhs + a.to_bipoly(0) * b.to_bipoly(1)
    return IdentityReport.compare("order_multiplication", format_arcs(d), lhs, rhs)


def w_family(d: Digraph) -> list[tuple[int, int, int]]:
    """Triples a < b < c with c -> a an arc, b not reachable from c, a not reachable from b."""
    reach = d.reach()
    out = []
    for a, b, c in combinations(range(d.n), 3):
        if (c, a) in d.arcs and not reach[c] >> b & 1 and not reach[b] >> a & 1:
            out.append((a, b, c))
    return out


def delta_formula(d: Digraph) -> Poly:
    """Σ_{π ∈ OP(D)} C(x + δ(π), p) in the digraph's own labelling."""
    poly = Poly()
    for o in op_list(d, relabel=False):
        poly = poly + binom_x(o.delta, d.n)
    return poly


def dong_criterion(d: Digraph, truth: Poly | None = None) -> IdentityReport:
    """W(D) is empty exactly when the δ-formula reproduces Ω(D, x).

    ``truth`` defaults to Ω(D, x) interpolated from enumeration.
    """
    _check_acyclic(d)
    if d.n > 8:
        raise ValueError("limited to 8 vertices")
    if truth is None:
        truth = omega_interpolate(d, strict=False) if d.n <= 6 else omega_weak_expansion(d).poly
    wd = w_family(d)
    holds = delta_formula(d) == truth
    ok = holds == (not wd)
    detail = f"W(D)={[tuple(x + 1 for x in t) for t in wd]} formula_holds={holds}"
    return IdentityReport("dong_criterion", format_arcs(d), PASS if ok else FAIL, detail=detail)


def w_label_chromatic_check(g: Multigraph, chi: Poly | None = None) -> IdentityReport:
    """W_L(G) empty exactly when (-1)^p χ(G,-x) = Σ over all orderings of C(x + δ_G(π), p)."""
    from .flowchrom import chromatic_poly

    if not g.is_simple:
        raise ValueError("needs a simple graph")
    p = g.n
    if p > 8:
        raise ValueError("limited to 8 vertices")
    chi = chromatic_poly(g) if chi is None else chi
    truth = chi.compose(Poly([0, -1])) * (-1) ** p
    adj = set()
    for u, v in g.pairs():
        adj.add((u, v))
        adj.add((v, u))
    shifts: dict[int, int] = {}
    for pi in permutations(range(p)):
        dl = sum(1 for a, b in zip(pi, pi[1:]) if a < b or (a, b) in adj)
        shifts[dl] = shifts.get(dl, 0) + 1
    formula = Poly()
    for s, c in shifts.items():
        formula = formula + binom_x(s, p) * c
    wl = [
        (a, b, c)
        for a, b, c in combinations(range(p), 3)
        if (a, c) in adj and (a, b) not in adj and (b, c) not in adj
    ]
    holds = formula == truth
    ok = holds == (not wl)
    return IdentityReport("w_label_chromatic", repr(g), PASS if ok else FAIL, detail=f"W_L={wl} formula_holds={holds}")


def chromatic_orientation_check(g: Multigraph) -> IdentityReport:
    """χ(G,x) = Σ over acyclic orientations D of Ω̄(D,x), and the weak version gives (-1)^p χ(G,-x)."""
    from .flowchrom import _acyclic_orientations, chromatic_poly

    if g.has_loop():
        raise ValueError("needs a loopless graph")
    if g.m > 14:
        raise ValueError("limited to 14 edges")
    simple = Multigraph.from_pairs(g.n, sorted(set(g.pairs())))
    strict = Poly()
    weak = Poly()
    for arcs in _acyclic_orientations(simple):
        d = Digraph(g.n, frozenset(arcs))
        strict = strict + omega_strict_expansion(d).poly
        weak = weak + omega_weak_expansion(d).poly
    chi = chromatic_poly(g)
    kids = [
        IdentityReport.compare("chromatic_strict_order_sum", repr(g), chi, strict),
        IdentityReport.compare("chromatic_weak_order_sum", repr(g), chi.compose(Poly([0, -1])) * (-1) ** g.n, weak),
    ]
    return IdentityReport.group("chromatic_order_sums", repr(g), kids)


def partition_lemma_check(d: Digraph, k: int) -> IdentityReport:
    """Each strict map is compatible with exactly one π ∈ OP(D), and the class sizes are C(k+p-1-ρ, p).

    A map θ is compatible with π when θ is weakly increasing along π and
    strictly increasing at every ascent of π (ties only across descents).
    """
    d, _ = topological_relabel(d)
    p = d.n
    ops = op_list(d)
    sizes = [0] * len(ops)
    bad = 0
    grid = _grid(p, k) if p else np.zeros((1, 0), dtype=np.int64)
    ok = _ok_mask(d, grid, True)
    for row in grid[ok]:
        hits = 0
        for idx, o in enumerate(ops):
            pi = o.perm
            good = True
            for a, b in zip(pi, pi[1:]):
                if row[a] > row[b] or (a < b and row[a] == row[b]):
                    good = False
                    break
            if good:
                hits += 1
                sizes[idx] += 1
        if hits != 1:
            bad += 1
    expect = [comb(k + p - 1 - o.rho, p) for o in ops]
    kids = [
        IdentityReport.compare("strict_maps_partitioned", format_arcs(d), bad, 0),
        IdentityReport.compare("strict_class_sizes", format_arcs(d), sizes, expect),
    ]
    return IdentityReport.group("order_partition_lemmas", format_arcs(d), kids)


def transitive_arc_check(d: Digraph) -> IdentityReport:
    """Adding a transitive arc u -> w (u -> v -> w) leaves Ω̄ unchanged."""
    base = omega_strict_expansion(d).poly
    reach = d.reach()
    kids = []
    for u in range(d.n):
        for w in range(d.n):
            if reach[u] >> w & 1 and (u, w) not in d.arcs:
                d2 = Digraph(d.n, d.arcs | {(u, w)})
                kids.append(IdentityReport.compare("transitive_arc", f"{format_arcs(d)} + {u + 1}->{w + 1}", base,
                                                   omega_strict_expansion(d2).poly))
    return IdentityReport.group("transitive_arcs", format_arcs(d), kids)


def acyclic_digraphs(p: int, labelled: bool = False) -> Iterator[Digraph]:
    """Acyclic digraphs on p vertices.

    ``labelled=False`` gives all subsets of the arcs i -> j with i < j (every
    acyclic digraph up to relabelling, with a topological labelling);
    ``labelled=True`` gives every acyclic digraph on the labelled vertex set.
    """
    if not labelled:
        pairs = list(combinations(range(p), 2))
        for mask in range(1 << len(pairs)):
            yield Digraph(p, frozenset(pr for i, pr in enumerate(pairs) if mask >> i & 1))
        return
    pairs = list(combinations(range(p), 2))
    for choice in product((0, 1, 2), repeat=len(pairs)):
        arcs = []
        for (a, b), c in zip(pairs, choice):
            if c == 1:
                arcs.append((a, b))
            elif c == 2:
                arcs.append((b, a))
        d = Digraph(p, frozenset(arcs))
        if d.is_acyclic():
            yield d


def format_arcs(d: Digraph) -> str:
    return f"D(p={d.n}; " + ",".join(f"{t + 1}->{h + 1}" for t, h in sorted(d.arcs)) + ")"
