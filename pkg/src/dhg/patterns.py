"""Named forbidden graphs and the degeneracy test."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations, permutations

from .errors import BadParam, TooLarge, UnknownName
from .graph import DirectedHypergraph, Edge, all_edges, canonical_code

DEGENERATE_MAX_N = 12


def automorphisms(g: DirectedHypergraph) -> list[tuple[int, ...]]:
    """All edge-preserving vertex bijections, by brute force."""
    edges = g.edges
    out = []
    for perm in permutations(range(g.n)):
        if all(Edge.make((perm[e.a], perm[e.b]), perm[e.head]) in edges for e in edges):
            out.append(perm)
    return out


@dataclass(frozen=True)
class Pattern:
    name: str
    graph: DirectedHypergraph = field(compare=False)
    automorphism_count: int

    @classmethod
    def from_graph(cls, name: str, g: DirectedHypergraph) -> "Pattern":
        return cls(name, g, len(automorphisms(g)))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def key(self) -> tuple:
        return (self.graph.n, tuple(self.graph.sorted_edges()))

    def __repr__(self):
        return f"Pattern({self.name!r}, {self.graph!r}, aut={self.automorphism_count})"


def _tt_edges(k: int):
    return [(a, b, c) for a, b, c in combinations(range(k), 3)]


_FIXED = {
    "R3": (4, [(0, 1, 2), (1, 2, 3)]),
    "R4": (5, [(0, 1, 2), (2, 3, 4)]),
    "E": (4, [(0, 1, 2), (2, 3, 1)]),
    "TT4-": (4, [(0, 1, 3), (1, 2, 3), (0, 2, 3)]),
    "TT4": (4, [(0, 1, 3), (1, 2, 3), (0, 2, 3), (0, 1, 2)]),
    "DOUBLE": (3, [(0, 1, 2), (0, 2, 1)]),
}

_ALIASES = {
    "TT4_MINUS": "TT4-",
    "TT4MINUS": "TT4-",
    "DOUBLE_TRIPLE": "DOUBLE",
}

_TT_RE = re.compile(r"^TT(?::(\d+)|\((\d+)\))$")


def pattern(name: str, k: int | None = None) -> Pattern:
    """Look up a catalog pattern.

    Accepts the CLI identifiers ``R3 R4 E TT4- TT4 TT:k DOUBLE`` and the
    long forms ``TT4_minus``, ``TT(k)``, ``DOUBLE_TRIPLE``. ``TT`` with an
    explicit ``k`` argument is also accepted.
    """
    key = name.strip().upper()
    key = _ALIASES.get(key, key)
    if key in _FIXED:
        n, edges = _FIXED[key]
        return Pattern.from_graph(key, DirectedHypergraph(n, edges))
    m = _TT_RE.match(key)
    if m or key == "TT":
        if m:
            k = int(m.group(1) or m.group(2))
        if k is None or k < 3:
            raise BadParam(f"TT(k) needs k >= 3, got {k}")
        return Pattern.from_graph(f"TT:{k}", DirectedHypergraph(k, _tt_edges(k)))
    raise UnknownName(f"unknown pattern {name!r}")


def catalog() -> list[Pattern]:
    """Every fixed pattern plus ``TT:3``; used for cross-checks."""
    return [pattern(p) for p in ("R3", "R4", "E", "TT4-", "TT4", "TT:3", "DOUBLE")]


# -- degeneracy ----------------------------------------------------------------


@dataclass(frozen=True)
class DegeneratePartition:
    t1: frozenset
    t2: frozenset
    k: frozenset

    def validates(self, g: DirectedHypergraph) -> bool:
        if self.t1 & self.t2 or self.t1 & self.k or self.t2 & self.k:
            return False
        if self.t1 | self.t2 | self.k != set(range(g.n)):
            return False
        for e in g.edges:
            if e.head not in self.k:
                return False
            if not ((e.a in self.t1 and e.b in self.t2) or (e.a in self.t2 and e.b in self.t1)):
                return False
        return True


def is_degenerate(g: DirectedHypergraph) -> DegeneratePartition | None:
    """A (T1, T2, K) partition witnessing degeneracy, or None.

    Exhaustive assignment of vertices to T1/T2/K; an edge is checked as soon
    as any two of its vertices are placed.
    """
    n = g.n
    if n > DEGENERATE_MAX_N:
        raise TooLarge(f"degeneracy test supported for n <= {DEGENERATE_MAX_N}, got {n}")
    T1, T2, K = 0, 1, 2
    by_vertex: list[list[Edge]] = [[] for _ in range(n)]
    for e in g.edges:
        for v in e:
            by_vertex[v].append(e)
    side = [-1] * n

    def consistent(v):
        for e in by_vertex[v]:
            a, b, h = side[e.a], side[e.b], side[e.head]
            if h not in (-1, K) or a == K or b == K:
                return False
            if a != -1 and a == b:
                return False
        return True

    def assign(v):
        if v == n:
            return True
        for s in (T1, T2, K):
            side[v] = s
            if consistent(v) and assign(v + 1):
                return True
        side[v] = -1
        return False

    if not assign(0):
        return None
    parts = [frozenset(v for v in range(n) if side[v] == s) for s in (T1, T2, K)]
    return DegeneratePartition(*parts)


# -- the two-edge family --------------------------------------------------------


def _compact(g: DirectedHypergraph) -> DirectedHypergraph:
    used = sorted({v for e in g.edges for v in e})
    return g.induced(used)


def two_edge_family() -> list[Pattern]:
    """All graphs with exactly two edges and no isolated vertices, up to isomorphism.

    Members isomorphic to a catalog pattern carry its name; the rest are
    named ``2E-<i>`` in canonical-code order.
    """
    classes: dict[bytes, DirectedHypergraph] = {}
    for e1, e2 in combinations(all_edges(6), 2):
        h = _compact(DirectedHypergraph(6, [e1, e2]))
        classes.setdefault(canonical_code(h), h)
    known = {canonical_code(pattern(p).graph): p for p in ("R3", "R4", "E", "DOUBLE")}
    out = []
    anon = 0
    for code in sorted(classes):
        if code in known:
            out.append(pattern(known[code]))
        else:
            anon += 1
            out.append(Pattern.from_graph(f"2E-{anon}", classes[code]))
    return out
