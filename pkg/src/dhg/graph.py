"""2->1 directed hypergraphs: edges ``ab -> c`` with an unordered tail pair and a head."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

from .errors import DegenerateTriple, DuplicateEdge, OutOfRange, TooLarge

CANONICAL_MAX_N = 10


class Edge(NamedTuple):
    """An edge ``a b -> head`` with ``a < b``."""

    a: int
    b: int
    head: int

    @classmethod
    def make(cls, tail: Iterable[int], head: int) -> "Edge":
        x, y = tail
        if x == y or head == x or head == y:
            raise DegenerateTriple(f"edge {x} {y} -> {head} does not have three distinct vertices")
        if x > y:
            x, y = y, x
        return cls(x, y, head)

    @property
    def tail(self) -> tuple[int, int]:
        return (self.a, self.b)

    @property
    def triple(self) -> tuple[int, int, int]:
        return tuple(sorted(self))

    def __str__(self):
        return f"{self.a} {self.b} -> {self.head}"


class _Index:
    """Incidence lookups used by the embedding search; kept in sync once built."""

    __slots__ = ("heads", "cotail", "into", "out")

    def __init__(self, n: int, edges: Iterable[Edge]):
        self.heads: dict[tuple[int, int], set[int]] = {}
        self.cotail: dict[tuple[int, int], set[int]] = {}
        self.into: list[set[Edge]] = [set() for _ in range(n)]
        self.out: list[set[Edge]] = [set() for _ in range(n)]
        for e in edges:
            self.add(e)

    def add(self, e: Edge):
        a, b, h = e
        self.heads.setdefault((a, b), set()).add(h)
        self.cotail.setdefault((a, h), set()).add(b)
        self.cotail.setdefault((b, h), set()).add(a)
        self.into[h].add(e)
        self.out[a].add(e)
        self.out[b].add(e)

    def discard(self, e: Edge):
        a, b, h = e
        self.heads[(a, b)].discard(h)
        self.cotail[(a, h)].discard(b)
        self.cotail[(b, h)].discard(a)
        self.into[h].discard(e)
        self.out[a].discard(e)
        self.out[b].discard(e)


class DirectedHypergraph:
    """Vertices ``0..n-1`` and a set of :class:`Edge`.

    Mutation is explicit (``add_edge`` / ``remove_edge``); use :meth:`copy`
    before handing a graph to code that must not see later changes.
    """

    __slots__ = ("n", "_edges", "_index")

    def __init__(self, n: int, edges: Iterable = ()):
        if n < 0:
            raise OutOfRange(f"vertex count must be non-negative, got {n}")
        self.n = n
        self._edges: set[Edge] = set()
        self._index: _Index | None = None
        for e in edges:
            if isinstance(e, Edge):
                self.add_edge(e.tail, e.head)
            else:
                self.add_edge((e[0], e[1]), e[2])

    @classmethod
    def _trusted(cls, n: int, edges: set[Edge]) -> "DirectedHypergraph":
        g = cls.__new__(cls)
        g.n = n
        g._edges = edges
        g._index = None
        return g

    # -- basic container protocol -------------------------------------------------

    @property
    def edges(self) -> frozenset[Edge]:
        return frozenset(self._edges)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self._edges)

    def __len__(self):
        return len(self._edges)

    def __iter__(self):
        return iter(self.sorted_edges())

    def __contains__(self, e) -> bool:
        return e in self._edges

    def __eq__(self, other):
        if not isinstance(other, DirectedHypergraph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    __hash__ = None

    def __repr__(self):
        body = ", ".join(f"{e.a}{e.b}->{e.head}" if self.n <= 10 else str(e) for e in self.sorted_edges())
        return f"DirectedHypergraph(n={self.n}, {{{body}}})"

    def copy(self) -> "DirectedHypergraph":
        return DirectedHypergraph._trusted(self.n, set(self._edges))

    # -- mutation --------------------------------------------------------------

    def _edge(self, tail, head) -> Edge:
        e = Edge.make(tail, head)
        if max(e) >= self.n or min(e) < 0:
            raise OutOfRange(f"edge {e} uses a vertex outside [0, {self.n})")
        return e

    def add_edge(self, tail, head) -> Edge:
        e = self._edge(tail, head)
        if e in self._edges:
            raise DuplicateEdge(f"edge {e} already present")
        self._edges.add(e)
        if self._index is not None:
            self._index.add(e)
        return e

    def remove_edge(self, tail, head) -> Edge:
        e = self._edge(tail, head)
        if e not in self._edges:
            raise KeyError(f"edge {e} not present")
        self._edges.remove(e)
        if self._index is not None:
            self._index.discard(e)
        return e

    def has_edge(self, tail, head) -> bool:
        x, y = tail
        if x > y:
            x, y = y, x
        return (x, y, head) in self._edges

    # internal fast paths for search code: no validation
    def _push(self, e: Edge):
        self._edges.add(e)
        if self._index is not None:
            self._index.add(e)

    def _pop(self, e: Edge):
        self._edges.remove(e)
        if self._index is not None:
            self._index.discard(e)

    def index(self) -> _Index:
        if self._index is None:
            self._index = _Index(self.n, self._edges)
        return self._index

    # -- derived quantities -------------------------------------------------------

    def in_degree(self, v: int) -> int:
        """Number of edges with head ``v``; this is the tail degree ``|T_v|``."""
        return len(self.index().into[v])

    def out_degree(self, v: int) -> int:
        """Number of edges with ``v`` in the tail; equals ``|D_v|``."""
        return len(self.index().out[v])

    def degree_profile(self) -> list[tuple[int, int]]:
        idx = self.index()
        return [(len(idx.into[v]), len(idx.out[v])) for v in range(self.n)]

    def relabel(self, perm: Sequence[int]) -> "DirectedHypergraph":
        """Image of the graph under ``v -> perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("perm must be a permutation of range(n)")
        edges = {Edge.make((perm[e.a], perm[e.b]), perm[e.head]) for e in self._edges}
        return DirectedHypergraph._trusted(self.n, edges)

    def induced(self, vertices: Sequence[int]) -> "DirectedHypergraph":
        """Induced subgraph, relabelled so ``vertices[i]`` becomes ``i``."""
        pos = {v: i for i, v in enumerate(vertices)}
        edges = {Edge.make((pos[e.a], pos[e.b]), pos[e.head])
                 for e in self._edges if e.a in pos and e.b in pos and e.head in pos}
        return DirectedHypergraph._trusted(len(vertices), edges)

    def triple_counts(self) -> dict[tuple[int, int, int], int]:
        counts: dict[tuple[int, int, int], int] = {}
        for e in self._edges:
            t = e.triple
            counts[t] = counts.get(t, 0) + 1
        return counts


def new_graph(n: int) -> DirectedHypergraph:
    return DirectedHypergraph(n)


def pointed_edges(triple: Sequence[int]) -> list[Edge]:
    """The three edges a triple can carry, ordered by head ascending."""
    x, y, z = sorted(triple)
    return [Edge(y, z, x), Edge(x, z, y), Edge(x, y, z)]


def all_edges(n: int) -> list[Edge]:
    return [e for t in combinations(range(n), 3) for e in pointed_edges(t)]


def is_oriented(g: DirectedHypergraph) -> bool:
    seen = set()
    for e in g.edges:
        t = e.triple
        if t in seen:
            return False
        seen.add(t)
    return True


# -- link graphs --------------------------------------------------------------


@dataclass(frozen=True)
class LinkBundle:
    """Tail, directed and total link graphs of ``center``.

    ``tail_link`` holds sorted pairs ``(y, z)`` with ``yz -> center``;
    ``directed_link`` holds ordered pairs ``(y, z)`` with ``center y -> z``.
    """

    center: int
    tail_link: frozenset
    directed_link: frozenset

    @property
    def total_link(self) -> frozenset:
        """``(y, z, directed)`` triples; undirected entries have ``y < z``."""
        return frozenset({(y, z, False) for y, z in self.tail_link}
                         | {(y, z, True) for y, z in self.directed_link})

    @property
    def tail_degree(self) -> int:
        return len(self.tail_link)

    def degree_in_tail_link(self, y: int) -> int:
        return sum(1 for p in self.tail_link if y in p)


def link_graphs(g: DirectedHypergraph, x: int) -> LinkBundle:
    if not 0 <= x < g.n:
        raise OutOfRange(f"vertex {x} outside [0, {g.n})")
    idx = g.index()
    tail = frozenset((e.a, e.b) for e in idx.into[x])
    directed = frozenset(((e.b if e.a == x else e.a), e.head) for e in idx.out[x])
    return LinkBundle(x, tail, directed)


# -- canonical form -------------------------------------------------------------


def _refine(n, edges, colors):
    """Colour refinement; returns ranks that only depend on the isomorphism type."""
    ncls = len(set(colors))
    while True:
        sig = [[] for _ in range(n)]
        for a, b, h in edges:
            ca, cb, ch = colors[a], colors[b], colors[h]
            sig[h].append((0, min(ca, cb), max(ca, cb)))
            sig[a].append((1, cb, ch))
            sig[b].append((1, ca, ch))
        keys = [(colors[v], tuple(sorted(sig[v]))) for v in range(n)]
        ranks = {k: i for i, k in enumerate(sorted(set(keys)))}
        colors = [ranks[k] for k in keys]
        if len(ranks) == ncls:
            return colors
        ncls = len(ranks)


def _relabelled(edges, pos):
    out = []
    for a, b, h in edges:
        pa, pb = pos[a], pos[b]
        out.append((pa, pb, pos[h]) if pa < pb else (pb, pa, pos[h]))
    out.sort()
    return tuple(out)


def _orbit_root(parent, v):
    while parent[v] != v:
        parent[v] = parent[parent[v]]
        v = parent[v]
    return v


def canonical_labeling(g: DirectedHypergraph) -> tuple[tuple, list[int]]:
    """Return ``(code_edges, pos)`` where ``pos[v]`` is v's canonical label.

    Individualisation/refinement over (in-degree, out-degree) seeded colours,
    minimising the relabelled sorted edge list; subtrees are pruned with
    automorphisms discovered at the leaves.
    """
    n = g.n
    if n > CANONICAL_MAX_N:
        raise TooLarge(f"canonical form supported for n <= {CANONICAL_MAX_N}, got {n}")
    edges = list(g.edges)
    if n == 0:
        return (), []
    indeg = [0] * n
    outdeg = [0] * n
    for a, b, h in edges:
        indeg[h] += 1
        outdeg[a] += 1
        outdeg[b] += 1
    start = [indeg[v] * 1000 + outdeg[v] for v in range(n)]
    colors = _refine(n, edges, start)

    best: list = [None, None]  # code, pos
    autos: list[list[int]] = []

    def search(colors, prefix):
        if len(set(colors)) == n:
            code = _relabelled(edges, colors)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, colors
            elif code == best[0]:
                inv = [0] * n
                for v, p in enumerate(best[1]):
                    inv[p] = v
                autos.append([inv[colors[v]] for v in range(n)])
            return
        cell_color = min(c for c in set(colors) if colors.count(c) > 1)
        cell = [v for v in range(n) if colors[v] == cell_color]
        done = []
        for v in cell:
            if done:
                parent = list(range(n))
                for gamma in autos:
                    if all(gamma[p] == p for p in prefix):
                        for u in range(n):
                            ru, rg = _orbit_root(parent, u), _orbit_root(parent, gamma[u])
                            if ru != rg:
                                parent[ru] = rg
                rv = _orbit_root(parent, v)
                if any(_orbit_root(parent, w) == rv for w in done):
                    continue
            ind = [2 * c + (0 if u == v or c != cell_color else 1) for u, c in enumerate(colors)]
            search(_refine(n, edges, ind), prefix + [v])
            done.append(v)

    search(colors, [])
    return best[0], best[1]


def canonical_code(g: DirectedHypergraph) -> bytes:
    code, _ = canonical_labeling(g)
    return bytes([g.n]) + bytes(x for e in code for x in e)


def canonical_form(g: DirectedHypergraph) -> DirectedHypergraph:
    _, pos = canonical_labeling(g)
    return g.relabel(pos) if g.n else g.copy()


def are_isomorphic(g1: DirectedHypergraph, g2: DirectedHypergraph) -> bool:
    for g in (g1, g2):
        if g.n > CANONICAL_MAX_N:
            raise TooLarge(f"isomorphism test supported for n <= {CANONICAL_MAX_N}")
    if g1.n != g2.n or len(g1) != len(g2):
        return False
    if sorted(g1.degree_profile()) != sorted(g2.degree_profile()):
        return False
    return canonical_code(g1) == canonical_code(g2)
