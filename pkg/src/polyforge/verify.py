"""Identity suites run over a corpus of graphs or digraphs.

Each suite returns a flat list of IdentityReport objects in a deterministic
order, so runs with different worker counts give identical payloads.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence

from .basespoly import identity_suite, map_sum_check, tau_partition_oracle, tau_poly
from .canon import connected_graphs
from .exactpoly import Poly
from .flowchrom import (
    chromatic_poly,
    duality_checks,
    flow_count_enum,
    flow_poly,
    subset_flow_expansion,
    tutte_bivariate_chromatic_check,
    wakelin_multiplicity_check,
)
from .graphio import format_graph6, parse_graph6, read_graph6_file
from .matroid import chromatic_product_identity_check, cycle_matroid, dual, kung_identity_check, tutte_subset
from .multigraph import Digraph, Multigraph, components, is_bridgeless, is_connected
from .orderpoly import (
    acyclic_digraphs,
    format_arcs,
    genfun_check,
    omega_enum,
    omega_strict_expansion,
    omega_strict_recursion,
    reciprocity_check,
    tugger_check,
)
from .potts import potts_dc, potts_subset, random_weights
from .report import IdentityReport
from .tutte import (
    convolution_check,
    rational_identity_check,
    read_rosenstiehl_check,
    stanley_negative_check,
    tutte_dc,
)

SUITES = ("potts", "tutte", "flow", "order", "bases")


def builtin_corpus(max_order: int = 6) -> list[Multigraph]:
    """All connected simple graphs on 1..max_order vertices."""
    return [g for n in range(1, max_order + 1) for g in connected_graphs(n)]


def resolve_corpus(spec: str | None) -> list[Multigraph]:
    """``None``/"builtin" -> connected graphs of order <= 6; "order:N" -> order <= N;
    anything else is read as a graph6 file."""
    if spec is None or spec == "builtin":
        return builtin_corpus(6)
    if spec.startswith("order:"):
        return builtin_corpus(int(spec.split(":", 1)[1]))
    return list(read_graph6_file(spec))


# ---------------------------------------------------------------------------
# per-graph suites


def potts_suite(g: Multigraph, seed: int = 0) -> list[IdentityReport]:
    name = repr(g)
    out = [IdentityReport.compare("potts_dc_vs_subset", name, potts_dc(g), potts_subset(g))]
    if g.m <= 10:
        rng = random.Random(seed)
        w = random_weights(g, rng)
        out.append(IdentityReport.compare("potts_weighted_dc_vs_subset", name, potts_dc(g, w), potts_subset(g, w)))
    return out


def tutte_suite(g: Multigraph) -> list[IdentityReport]:
    name = repr(g)
    t = tutte_dc(g)
    out = [convolution_check(g)]
    out += [rational_identity_check(g, v, t) for v in (1, 2, 3)]
    if is_connected(g):
        chi = chromatic_poly(g)
        out += [stanley_negative_check(g, k, t, chi) for k in (1, 2, 3)]
    out.append(read_rosenstiehl_check(g, t))
    if g.m <= 15:
        m = cycle_matroid(g)
        out.append(IdentityReport.compare("tutte_dual_swap", name, tutte_subset(dual(m)), t.swap()))
        out.append(kung_identity_check(m, name))
    return out


def flow_suite(g: Multigraph) -> list[IdentityReport]:
    name = repr(g)
    t = tutte_dc(g)
    c = components(g)
    f = flow_poly(g)
    out = []
    # F = (-1)^(m-n+c) T(0, 1-x)
    tf = Poly([(-1) ** (g.m - g.n + c) * v for v in _tutte_line(t, flow=True).coeffs])
    out.append(IdentityReport.compare("flow_from_tutte", name, f, tf))
    if g.m <= 20:
        out.append(IdentityReport.compare("flow_subset", name, f, subset_flow_expansion(g)))
    chi = chromatic_poly(g)
    tc = _tutte_line(t, flow=False) * Poly.monomial(c, (-1) ** (g.n - c))
    out.append(IdentityReport.compare("chromatic_from_tutte", name, chi, tc))
    out.append(IdentityReport.compare("chromatic_from_potts", name, chi, potts_dc(g).substitute_y(-1)))
    if g.n <= 10:
        out.append(tutte_bivariate_chromatic_check(g))
    if g.is_simple and g.m <= 15:
        out.append(chromatic_product_identity_check(g))
    out.append(duality_checks(g))
    if g.m and is_connected(g) and is_bridgeless(g):
        out.append(wakelin_multiplicity_check(g, f))
        if g.m <= 12:
            out.append(IdentityReport.compare(
                "flow_enumeration", name, [flow_count_enum(g, q) for q in (2, 3, 4, 5)], [f(q) for q in (2, 3, 4, 5)]))
    return out


def _tutte_line(t, flow: bool) -> Poly:
    """T(0, 1-x) when ``flow`` else T(1-x, 0), as polynomials in x."""
    one_minus_x = Poly([1, -1])
    out = Poly()
    for (i, j), c in t.terms.items():
        if flow and i == 0:
            out = out + one_minus_x ** j * c
        elif not flow and j == 0:
            out = out + one_minus_x ** i * c
    return out


def bases_suite(g: Multigraph) -> list[IdentityReport]:
    out = identity_suite(g)
    if g.n <= 6:
        out.append(IdentityReport.compare("tau_partition_oracle", repr(g), tau_poly(g).poly, tau_partition_oracle(g)))
    if g.n <= 5:
        out += [map_sum_check(g, k) for k in (1, 2, 3)]
    return out


def order_suite(d: Digraph) -> list[IdentityReport]:
    name = format_arcs(d)
    e = omega_strict_expansion(d).poly
    out = [
        IdentityReport.compare("order_recursion_vs_expansion", name, omega_strict_recursion(d).poly, e),
        IdentityReport.compare("order_enum_vs_expansion", name,
                               [omega_enum(d, k) for k in range(1, 7)], [e(k) for k in range(1, 7)]),
        reciprocity_check(d),
        genfun_check(d),
        tugger_check(d),
    ]
    return out


_GRAPH_SUITES: dict[str, Callable[[Multigraph], list[IdentityReport]]] = {
    "potts": potts_suite,
    "tutte": tutte_suite,
    "flow": flow_suite,
    "bases": bases_suite,
}


def _run_graph_chunk(args: tuple[str, list[str]]) -> list[dict]:
    suite, lines = args
    fn = _GRAPH_SUITES[suite]
    return [r.to_json() for s in lines for r in fn(parse_graph6(s))]


def _from_json(d: dict) -> IdentityReport:
    return IdentityReport(
        d["name"], d["instance"], d["status"], d.get("left"), d.get("right"), d.get("detail", ""),
        [_from_json(c) for c in d.get("children", [])],
    )


def run_verify(suite: str, corpus: Sequence[Multigraph] | None = None, digraph_order: int = 4,
               jobs: int = 1) -> list[IdentityReport]:
    """Run one suite (or "all") and return the reports in a fixed order."""
    if suite == "all":
        out = []
        for s in SUITES:
            out += run_verify(s, corpus, digraph_order, jobs)
        return out
    if suite == "order":
        return [r for p in range(1, digraph_order + 1) for d in acyclic_digraphs(p) for r in order_suite(d)]
    if suite not in _GRAPH_SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from all, {', '.join(SUITES)}")
    graphs = list(corpus) if corpus is not None else builtin_corpus(6)
    # normalise through graph6 so instance names match across worker counts
    graphs = [parse_graph6(format_graph6(g)) if g.is_simple else g for g in graphs]
    if suite == "bases":
        graphs = [g for g in graphs if g.is_simple]
    if jobs > 1 and all(g.is_simple for g in graphs):
        lines = [format_graph6(g) for g in graphs]
        size = max(1, len(lines) // (jobs * 4))
        chunks = [(suite, lines[i:i + size]) for i in range(0, len(lines), size)]
        with ProcessPoolExecutor(jobs) as pool:
            return [_from_json(d) for part in pool.map(_run_graph_chunk, chunks) for d in part]
    fn = _GRAPH_SUITES[suite]
    return [r for g in graphs for r in fn(g)]


def summarize(reports: Iterable[IdentityReport]) -> dict:
    reports = list(reports)
    failures = [f for r in reports for f in r.failures()]
    return {"checks": len(reports), "failed": len(failures), "passed": not failures}
