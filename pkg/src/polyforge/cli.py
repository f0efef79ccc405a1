"""Command-line front end.

    polyforge [--format json|text] [--jobs N] [--timeout S] <subcommand> ...

Exit status is 0 when every requested check passes, 1 when a check fails and
2 on bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from typing import Any, Sequence

from . import __version__
from .basespoly import census, sigma_coeffs, tau_coeffs, w_coeffs
from .exactpoly import Basis, BiPoly, Poly, isolate_real_roots
from .flowchrom import chromatic_poly, flow_poly
from .graphio import ParseError, parse_digraph, parse_edgelist, parse_graph6, parse_weights
from .matroid import char_poly, cycle_matroid, uniform
from .multigraph import Multigraph
from .orderpoly import omega_strict_expansion, omega_weak_expansion
from .potts import potts_dc
from .report import IdentityReport
from .tutte import special_values, tutte_poly
from .verify import SUITES, resolve_corpus, run_verify, summarize


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# input


def _read_text(path: str | None, inline: str | None) -> str:
    if inline is not None:
        return inline.replace(";", "\n")
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, encoding="ascii") as fh:
        return fh.read()


def parse_input(text: str, fmt: str = "auto"):
    """Parse an edge list, a graph6 string or a digraph file."""
    if fmt == "auto":
        toks = text.split()
        fmt = "graph6" if len(toks) == 1 and not toks[0].lstrip("-").isdigit() else "edgelist"
    if fmt == "edgelist":
        return parse_edgelist(text)
    if fmt == "graph6":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if len(lines) != 1:
            raise ParseError("expected exactly one graph6 line", 1)
        return parse_graph6(lines[0].strip())
    if fmt == "digraph":
        return parse_digraph(text)
    raise InputError(f"unknown input format {fmt!r}")


def _graph(args) -> tuple[Multigraph, str]:
    text = _read_text(args.input, args.inline)
    return parse_input(text, args.input_format), text


# ---------------------------------------------------------------------------
# output


def _poly_payload(p: Poly, basis: Basis | None = None, coeffs: Sequence | None = None) -> dict:
    d = p.to_json()
    d["text"] = p.pretty()
    if basis is not None and coeffs is not None:
        d["basis_vector"] = {"basis": basis.value, "coeffs": [_num(c) for c in coeffs]}
    return d


def _num(v):
    v = Fraction(v)
    return v.numerator if v.denominator == 1 else [v.numerator, v.denominator]


def _roots_payload(p: Poly) -> list[list[str]]:
    if p.is_zero() or p.degree < 1:
        return []
    return [[str(a), str(b)] for a, b in isolate_real_roots(p)]


def _emit(payload: dict, fmt: str, out) -> None:
    if fmt == "json":
        json.dump(payload, out, indent=2, sort_keys=False)
        out.write("\n")
        return
    res = payload.get("results", {})
    for key, val in res.items():
        if isinstance(val, dict) and "text" in val:
            out.write(f"{key}: {val['text']}\n")
            if "basis_vector" in val:
                bv = val["basis_vector"]
                out.write(f"  {bv['basis']} coefficients: {bv['coeffs']}\n")
            if val.get("roots") is not None:
                for a, b in val["roots"]:
                    out.write(f"  real root in [{a}, {b}]\n")
        else:
            out.write(f"{key}: {json.dumps(val)}\n")
    rep = payload.get("reports")
    if rep is not None:
        for r in rep:
            out.write(f"{r['status'].upper():5} {r['name']} {r['instance']}\n")
        s = payload.get("summary", {})
        out.write(f"{s.get('checks', 0)} checks, {s.get('failed', 0)} failed\n")


def _report(sub: str, text: str, results: dict, reports: list[IdentityReport] | None, t0: float) -> dict:
    d: dict[str, Any] = {
        "subcommand": sub,
        "input_digest": hashlib.sha256(text.encode()).hexdigest()[:16] if text else None,
        "results": results,
    }
    if reports is not None:
        d["reports"] = [r.to_json() for r in reports]
        d["summary"] = summarize(reports)
    d["timing_seconds"] = round(time.monotonic() - t0, 3)
    return d


# ---------------------------------------------------------------------------
# subcommands


def cmd_potts(args, t0):
    g, text = _graph(args)
    weights = None
    if args.weights:
        with open(args.weights, encoding="ascii") as fh:
            weights = parse_weights(fh.read())
        unknown = set(weights) - set(g.edge_ids)
        if unknown:
            raise InputError(f"weights given for unknown edges {sorted(unknown)}")
        missing = set(g.edge_ids) - set(weights)
        if missing:
            raise InputError(f"no weight for edges {sorted(missing)}")
    q = Fraction(args.q) if args.q is not None else None
    z = potts_dc(g, weights, q)
    if isinstance(z, BiPoly):
        res = {"Z": {**z.to_json(), "text": z.pretty("q", "w")}}
    elif isinstance(z, Poly):
        res = {"Z": _poly_payload(z)}
        res["Z"]["text"] = z.pretty("q")
    else:
        res = {"Z": str(Fraction(z))}
    return _report("potts", text, res, None, t0), True


def cmd_tutte(args, t0):
    g, text = _graph(args)
    t = tutte_poly(g, args.route)
    res: dict[str, Any] = {"T": {**t.to_json(), "text": t.pretty()}}
    from .multigraph import is_connected

    if is_connected(g):
        res["special_values"] = {k: _num(v) for k, v in special_values(g, t).items()}
    return _report("tutte", text, res, None, t0), True


def cmd_chromatic(args, t0):
    g, text = _graph(args)
    p = chromatic_poly(g)
    d = _poly_payload(p)
    if args.roots:
        d["roots"] = _roots_payload(p)
    return _report("chromatic", text, {"chromatic": d}, None, t0), True


def cmd_flow(args, t0):
    g, text = _graph(args)
    deadline = time.monotonic() + args.timeout if args.timeout else None
    try:
        p = flow_poly(g, deadline)
    except TimeoutError:
        return _report("flow", text, {"flow": {"completed": False, "timeout_seconds": args.timeout}}, None, t0), False
    d = _poly_payload(p)
    if args.roots:
        d["roots"] = _roots_payload(p)
    return _report("flow", text, {"flow": d}, None, t0), True


def cmd_char(args, t0):
    if args.uniform:
        k, n = args.uniform
        m = uniform(k, n)
        text = f"U({k},{n})"
    else:
        g, text = _graph(args)
        m = cycle_matroid(g)
    p = char_poly(m, args.route)
    return _report("char", text, {"characteristic": _poly_payload(p)}, None, t0), True


def cmd_order(args, t0):
    text = _read_text(args.input, args.inline)
    d = parse_input(text, "digraph")
    res = {}
    if args.strict or not args.weak:
        r = omega_strict_expansion(d)
        res["strict"] = {**_poly_payload(r.poly), "binomial_shifts": {str(k): v for k, v in r.coeffs.items()}}
    if args.weak:
        r = omega_weak_expansion(d)
        res["weak"] = {**_poly_payload(r.poly), "binomial_shifts": {str(k): v for k, v in r.coeffs.items()}}
    return _report("order", text, res, None, t0), True


def cmd_polys(args, t0):
    g, text = _graph(args)
    chi = chromatic_poly(g)
    a = sigma_coeffs(g, chi)
    w = w_coeffs(g, chi)
    c = tau_coeffs(g, chi)
    res = {
        "chromatic": _poly_payload(chi),
        "sigma": _poly_payload(Poly(a), Basis.FALLING, a),
        "w": _poly_payload(Poly(w), Basis.SHIFTED_BINOMIAL, w),
        "tau": _poly_payload(Poly(c), Basis.RISING, c),
    }
    return _report("polys", text, res, None, t0), True


def cmd_roots(args, t0):
    g, text = _graph(args)
    chi = chromatic_poly(g)
    if args.of == "chromatic":
        p = chi
    elif args.of == "flow":
        p = flow_poly(g)
    elif args.of == "sigma":
        p = Poly(sigma_coeffs(g, chi))
    elif args.of == "w":
        p = Poly(w_coeffs(g, chi))
    else:
        p = Poly(tau_coeffs(g, chi))
    d = _poly_payload(p)
    d["roots"] = _roots_payload(p)
    return _report("roots", text, {args.of: d}, None, t0), True


def cmd_census(args, t0):
    row = census(args.order, args.graph6, jobs=args.jobs)
    return _report("census", "", row.to_json(args.witnesses), None, t0), True


def cmd_verify(args, t0):
    corpus = resolve_corpus(args.corpus)
    reports = run_verify(args.suite, corpus, args.digraph_order, jobs=args.jobs)
    ok = all(r.passed for r in reports)
    return _report("verify", args.corpus or "builtin", {"suite": args.suite}, reports, t0), ok


# ---------------------------------------------------------------------------


def _add_graph_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="?", help="input file, or '-' for stdin")
    p.add_argument("--inline", help="inline input, lines separated by ';'")
    p.add_argument("--input-format", choices=["auto", "edgelist", "graph6"], default="auto")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="polyforge", description="Exact graph and matroid polynomials.")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--format", choices=["json", "text"], default="text")
    ap.add_argument("--jobs", type=int, default=1, help="worker processes for census/verify")
    ap.add_argument("--timeout", type=float, default=None, help="time budget in seconds (flow)")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("potts", help="Potts partition function Z(q, w)")
    _add_graph_input(p)
    p.add_argument("--weights", help="edge weight file: lines 'eid num/den'")
    p.add_argument("--q", help="evaluate at this q")
    p.set_defaults(func=cmd_potts)

    p = sub.add_parser("tutte", help="Tutte polynomial")
    _add_graph_input(p)
    p.add_argument("--route", choices=["dc", "subset", "activities", "potts"], default="dc")
    p.set_defaults(func=cmd_tutte)

    p = sub.add_parser("chromatic", help="chromatic polynomial")
    _add_graph_input(p)
    p.add_argument("--roots", action="store_true", help="isolating intervals for real roots")
    p.set_defaults(func=cmd_chromatic)

    p = sub.add_parser("flow", help="flow polynomial")
    _add_graph_input(p)
    p.add_argument("--roots", action="store_true", help="isolating intervals for real roots")
    p.set_defaults(func=cmd_flow)

    p = sub.add_parser("char", help="characteristic polynomial of a cycle or uniform matroid")
    _add_graph_input(p)
    p.add_argument("--uniform", nargs=2, type=int, metavar=("K", "N"))
    p.add_argument("--route", choices=["subset", "flats", "dc"], default="flats")
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("order", help="order polynomials of an acyclic digraph ('p a' then arcs, 1-based)")
    p.add_argument("input", nargs="?")
    p.add_argument("--inline")
    p.add_argument("--strict", action="store_true", help="strict order polynomial (default)")
    p.add_argument("--weak", action="store_true", help="weak order polynomial")
    p.set_defaults(func=cmd_order)

    p = sub.add_parser("polys", help="chi, sigma, w and tau with basis vectors")
    _add_graph_input(p)
    p.set_defaults(func=cmd_polys)

    p = sub.add_parser("roots", help="real root isolation for one of the polynomials")
    _add_graph_input(p)
    p.add_argument("--of", choices=["chromatic", "flow", "sigma", "w", "tau"], default="chromatic")
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("census", help="count sigma/w/tau-unreal connected graphs of one order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--graph6", help="graph6 file for the order (needed for order 9; "
                                     "POLYFORGE_G9_FILE is used otherwise)")
    p.add_argument("--witnesses", action="store_true")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="run identity suites")
    p.add_argument("suite", choices=["all", *SUITES])
    p.add_argument("--corpus", help="'builtin', 'order:N' or a graph6 file")
    p.add_argument("--digraph-order", type=int, default=4)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    t0 = time.monotonic()
    try:
        payload, ok = args.func(args, t0)
    except ParseError as e:
        print(f"polyforge: parse error: {e}", file=sys.stderr)
        return 2
    except (InputError, ValueError, FileNotFoundError, KeyError) as e:
        print(f"polyforge: {e}", file=sys.stderr)
        return 2
    _emit(payload, args.format, sys.stdout)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
