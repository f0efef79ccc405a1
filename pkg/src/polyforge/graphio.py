"""Text formats: edge lists, graph6, digraph files and edge-weight files."""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Iterable, Iterator

from .multigraph import Digraph, Multigraph

__all__ = [
    "ParseError",
    "parse_edgelist",
    "format_edgelist",
    "parse_graph6",
    "format_graph6",
    "read_graph6_file",
    "parse_digraph",
    "format_digraph",
    "parse_weights",
]


class ParseError(ValueError):
    def __init__(self, msg: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line is not None else msg)


def _content_lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), start=1):
        s = raw.split("#", 1)[0].strip()
        if s:
            yield no, s.split()


def _ints(toks: list[str], want: int, no: int) -> list[int]:
    if len(toks) != want:
        raise ParseError(f"expected {want} integers, got {len(toks)}", no)
    try:
        return [int(t) for t in toks]
    except ValueError:
        raise ParseError("non-integer token", no) from None


def parse_edgelist(text: str) -> Multigraph:
    """First line ``n m``, then ``m`` lines ``u v`` with 0-based vertices."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input")
    no, toks = lines[0]
    n, m = _ints(toks, 2, no)
    if n < 0 or m < 0:
        raise ParseError("negative header value", no)
    if len(lines) - 1 != m:
        raise ParseError(f"header announces {m} edges but {len(lines) - 1} edge lines follow", no)
    pairs = []
    for no, toks in lines[1:]:
        u, v = _ints(toks, 2, no)
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(f"endpoint outside [0, {n})", no)
        pairs.append((u, v))
    return Multigraph.from_pairs(n, pairs)


def format_edgelist(g: Multigraph) -> str:
    return "\n".join([f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.pairs()]) + "\n"


def _encode_n(n: int) -> str:
    if n < 0:
        raise ValueError("negative order")
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))
    return "~~" + "".join(chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0))


def format_graph6(g: Multigraph) -> str:
    if not g.is_simple:
        raise ValueError("graph6 encodes simple graphs only")
    adj = set(g.pairs())
    bits = [1 if (i, j) in adj else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def parse_graph6(s: str) -> Multigraph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[10:]
    if not s:
        raise ParseError("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= d <= 63 for d in data):
        raise ParseError("graph6 byte outside the printable range 63..126")
    if data[0] < 63:
        n, rest = data[0], data[1:]
    elif len(data) >= 4 and data[1] < 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        rest = data[4:]
    elif len(data) >= 8:
        n = 0
        for d in data[2:8]:
            n = n << 6 | d
        rest = data[8:]
    else:
        raise ParseError("truncated graph6 size field")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(rest) != need:
        raise ParseError(f"graph6 body has {len(rest)} bytes, expected {need} for n={n}")
    bits = []
    for d in rest:
        bits.extend((d >> s) & 1 for s in range(5, -1, -1))
    pairs = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                pairs.append((i, j))
            k += 1
    if any(bits[k:]):
        raise ParseError("nonzero padding bits in graph6 body")
    return Multigraph.from_pairs(n, sorted(pairs))


def read_graph6_file(path: str | os.PathLike) -> Iterator[Multigraph]:
    with open(path, "r", encoding="ascii") as fh:
        for no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                yield parse_graph6(line)
            except ParseError as exc:
                raise ParseError(str(exc), no) from None


def parse_digraph(text: str) -> Digraph:
    """First line ``p a`` then ``a`` lines ``tail head`` (1-based labels)."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input")
    no, toks = lines[0]
    p, a = _ints(toks, 2, no)
    if len(lines) - 1 != a:
        raise ParseError(f"header announces {a} arcs but {len(lines) - 1} arc lines follow", no)
    arcs = set()
    for no, toks in lines[1:]:
        t, h = _ints(toks, 2, no)
        if not (1 <= t <= p and 1 <= h <= p):
            raise ParseError(f"arc endpoint outside 1..{p}", no)
        if t == h:
            raise ParseError("digraph loops are not allowed", no)
        if (t - 1, h - 1) in arcs:
            raise ParseError("repeated arc", no)
        arcs.add((t - 1, h - 1))
    return Digraph(p, frozenset(arcs))


def format_digraph(d: Digraph) -> str:
    arcs = sorted(d.arcs)
    return "\n".join([f"{d.n} {len(arcs)}"] + [f"{t + 1} {h + 1}" for t, h in arcs]) + "\n"


def parse_weights(text: str) -> dict[int, Fraction]:
    """Lines ``edge-id value`` where value is an integer or ``num/den``."""
    out: dict[int, Fraction] = {}
    for no, toks in _content_lines(text):
        if len(toks) != 2:
            raise ParseError("expected 'edge-id num/den'", no)
        try:
            eid = int(toks[0])
            val = Fraction(toks[1])
        except (ValueError, ZeroDivisionError):
            raise ParseError("malformed weight entry", no) from None
        if eid in out:
            raise ParseError(f"edge {eid} weighted twice", no)
        out[eid] = val
    return out


def iter_graph6_lines(lines: Iterable[str]) -> Iterator[Multigraph]:
    for line in lines:
        if line.strip():
            yield parse_graph6(line)
