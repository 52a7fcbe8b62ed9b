"""Line-oriented instance format.

::

    c optional comment lines
    p hvc <n> <m> <k>
    e <v1> ... <vk>        (m lines, vertices 1-based)

Cover files hold 1-based vertex ids separated by whitespace; ``c`` lines are
comments.
"""
from __future__ import annotations

from pathlib import Path
from typing import Iterable, Tuple, Union

from hypervc.errors import ParseError
from hypervc.hypergraph import Hypergraph

Source = Union[bytes, str]


def _text(data: Source) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not valid UTF-8: {exc}") from None
    return data


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_instance(data: Source) -> Hypergraph:
    header = None
    edges = []
    seen = set()
    for lineno, raw in enumerate(_text(data).splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0].startswith("c"):
            continue
        tag = tokens[0]
        if tag == "p":
            if header is not None:
                raise ParseError("second header line", lineno)
            if len(tokens) != 5 or tokens[1] != "hvc":
                raise ParseError("header must read 'p hvc <n> <m> <k>'", lineno)
            n, m, k = _ints(tokens[2:], lineno)
            if not 1 <= k <= n or m < 0:
                raise ParseError(f"invalid header values n={n} m={m} k={k}", lineno)
            header = (n, m, k)
        elif tag == "e":
            if header is None:
                raise ParseError("edge line before the 'p hvc' header", lineno)
            n, m, k = header
            vs = _ints(tokens[1:], lineno)
            if len(vs) != k:
                raise ParseError(f"edge has {len(vs)} vertices, expected k={k}", lineno)
            if len(set(vs)) != k:
                raise ParseError("edge repeats a vertex", lineno)
            for v in vs:
                if not 1 <= v <= n:
                    raise ParseError(f"vertex {v} outside [1, {n}]", lineno)
            e = tuple(sorted(v - 1 for v in vs))
            if e in seen:
                raise ParseError(f"duplicate edge {' '.join(map(str, vs))}", lineno)
            seen.add(e)
            edges.append(e)
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if header is None:
        raise ParseError("missing 'p hvc' header")
    n, m, k = header
    if len(edges) != m:
        raise ParseError(f"header announces {m} edges, found {len(edges)}")
    return Hypergraph._trusted(n, k, edges)


def write_instance(H: Hypergraph, comments: Iterable[str] = ()) -> bytes:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p hvc {H.n} {H.m} {H.k}")
    lines.extend("e " + " ".join(str(v + 1) for v in e) for e in H.edges)
    return ("\n".join(lines) + "\n").encode("ascii")


def read_instance(path) -> Hypergraph:
    return parse_instance(Path(path).read_bytes())


def write_instance_file(H: Hypergraph, path, comments: Iterable[str] = ()) -> None:
    Path(path).write_bytes(write_instance(H, comments))


def parse_cover(data: Source, n: int) -> Tuple[int, ...]:
    """0-based vertex ids from a cover file; range-checked against ``n``."""
    out = set()
    for lineno, raw in enumerate(_text(data).splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0].startswith("c"):
            continue
        for v in _ints(tokens, lineno):
            if not 1 <= v <= n:
                raise ParseError(f"vertex {v} outside [1, {n}]", lineno)
            out.add(v - 1)
    return tuple(sorted(out))


def write_cover(vertices: Iterable[int]) -> bytes:
    return (" ".join(str(v + 1) for v in sorted(vertices)) + "\n").encode("ascii")
