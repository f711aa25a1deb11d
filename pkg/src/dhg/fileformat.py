"""The ``dhg 1`` text format.

::

    dhg 1
    n 4
    # comment
    0 1 -> 2
    1 2 -> 3

Tail vertices are written ascending; edges are emitted sorted, so writing is
bit-exact for equal graphs.
"""

from __future__ import annotations

import re

from .errors import BadHeader, BadVertex, DuplicateEdgeLine, SyntaxProblem
from .graph import DirectedHypergraph, Edge

_EDGE_RE = re.compile(r"^(\d+)\s+(\d+)\s*->\s*(\d+)$")
_N_RE = re.compile(r"^n\s+(\d+)$")


def parse_graph_file(data: bytes | str) -> DirectedHypergraph:
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise SyntaxProblem(f"not valid UTF-8: {exc}") from None
    else:
        text = data
    header_seen = False
    n = None
    edges: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if not header_seen:
            if line.split() != ["dhg", "1"]:
                raise BadHeader(f"expected 'dhg 1', got {line!r}", lineno)
            header_seen = True
            continue
        if n is None:
            m = _N_RE.match(line)
            if not m:
                raise BadHeader(f"expected 'n <N>', got {line!r}", lineno)
            n = int(m.group(1))
            continue
        m = _EDGE_RE.match(line)
        if not m:
            raise SyntaxProblem(f"expected '<i> <j> -> <k>', got {line!r}", lineno)
        i, j, k = (int(x) for x in m.groups())
        if not i < j:
            raise BadVertex(f"tail must satisfy i < j, got {i} {j}", lineno)
        if max(i, j, k) >= n:
            raise BadVertex(f"vertex out of range for n = {n}", lineno)
        if k in (i, j):
            raise BadVertex(f"head {k} is in the tail", lineno)
        e = Edge(i, j, k)
        if e in edges:
            raise DuplicateEdgeLine(f"duplicate edge {e}", lineno)
        edges.add(e)
    if not header_seen:
        raise BadHeader("missing 'dhg 1' header", 1)
    if n is None:
        raise BadHeader("missing 'n <N>' line")
    return DirectedHypergraph._trusted(n, edges)


def write_graph_file(g: DirectedHypergraph) -> bytes:
    lines = ["dhg 1", f"n {g.n}"]
    lines.extend(f"{e.a} {e.b} -> {e.head}" for e in g.sorted_edges())
    return ("\n".join(lines) + "\n").encode("utf-8")


def read_graph(path) -> DirectedHypergraph:
    with open(path, "rb") as fh:
        return parse_graph_file(fh.read())


def write_graph(path, g: DirectedHypergraph):
    with open(path, "wb") as fh:
        fh.write(write_graph_file(g))
