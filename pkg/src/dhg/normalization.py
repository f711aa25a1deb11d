"""Link partitions, the mutual tail-degree check, and D/R/T normalisation of E-free graphs."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .embedding import contains
from .errors import InvariantViolation, NotEFree, NotReady, OutOfRange
from .graph import DirectedHypergraph, Edge, link_graphs
from .patterns import pattern

_E = pattern("E")


# -- link partition --------------------------------------------------------------


@dataclass(frozen=True)
class LinkPartition:
    center: int
    u: frozenset
    c: frozenset
    m: frozenset


def _check_vertex(g, x):
    if not 0 <= x < g.n:
        raise OutOfRange(f"vertex {x} outside [0, {g.n})")


def link_partition(g: DirectedHypergraph, x: int) -> LinkPartition:
    """Split ``V - {x}`` into M (endpoints of pairs carrying >= 2 link edges),
    U (tails of directed link edges outside M) and C (the rest)."""
    _check_vertex(g, x)
    link = link_graphs(g, x)
    load: dict[tuple[int, int], int] = {}
    for y, z in list(link.tail_link) + list(link.directed_link):
        key = (y, z) if y < z else (z, y)
        load[key] = load.get(key, 0) + 1
    m = frozenset(v for key, k in load.items() if k >= 2 for v in key)
    u = frozenset(y for y, _ in link.directed_link if y not in m)
    c = frozenset(range(g.n)) - {x} - m - u
    return LinkPartition(x, u, c, m)


def r3_forbidden_incidence(g: DirectedHypergraph, x: int):
    """Two link edges at ``x`` that together form an R3, or None.

    Shapes: undirected ``yz`` with directed ``z->t``, or directed ``y->z``
    with directed ``z->t`` (``t != y`` in both). The witness is a pair of
    ``(kind, y, z)`` tuples with kind ``"tail"`` or ``"directed"``.
    """
    _check_vertex(g, x)
    link = link_graphs(g, x)
    out_of: dict[int, list[int]] = {}
    for z, t in sorted(link.directed_link):
        out_of.setdefault(z, []).append(t)
    for y, z in sorted(link.directed_link):
        for t in out_of.get(z, ()):
            if t != y:
                return (("directed", y, z), ("directed", z, t))
    for p, q in sorted(link.tail_link):
        for y, z in ((p, q), (q, p)):
            for t in out_of.get(z, ()):
                if t != y:
                    return (("tail", min(y, z), max(y, z)), ("directed", z, t))
    return None


# -- mutual tail degrees ------------------------------------------------------------


@dataclass(frozen=True)
class LemmaWitness:
    """Vertices with ``d_x(y) >= 2`` and ``d_y(x) >= 1``, impossible in E-free graphs."""

    x: int
    y: int
    d_x_y: int
    d_y_x: int


def tail_link_degrees(g: DirectedHypergraph) -> list[list[int]]:
    """``d[x][y]`` = degree of y in the tail link graph of x."""
    d = [[0] * g.n for _ in range(g.n)]
    for a, b, h in g.edges:
        d[h][a] += 1
        d[h][b] += 1
    return d


def lemma1_check(g: DirectedHypergraph) -> LemmaWitness | None:
    d = tail_link_degrees(g)
    for x in range(g.n):
        for y in range(g.n):
            if d[x][y] >= 2 and d[y][x] >= 1:
                return LemmaWitness(x, y, d[x][y], d[y][x])
    return None


# -- D / R / T ----------------------------------------------------------------------


@dataclass(frozen=True)
class StepRecord:
    vertex: int
    added: tuple[Edge, ...]
    removed: tuple[Edge, ...]

    def as_dict(self) -> dict:
        return {"vertex": self.vertex,
                "added": [list(e) for e in self.added],
                "removed": [list(e) for e in self.removed]}


@dataclass
class NormalizationState:
    d: frozenset
    r: frozenset
    t: frozenset
    graph: DirectedHypergraph
    log: list[StepRecord] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {"d": sorted(self.d), "r": sorted(self.r), "t": sorted(self.t),
                "edges": len(self.graph), "steps": [s.as_dict() for s in self.log]}


def _tail_link_vertices(g: DirectedHypergraph, x: int) -> set[int]:
    return {v for a, b, _ in g.index().into[x] for v in (a, b)}


def _classify(g: DirectedHypergraph):
    d, r, t = set(), set(), set()
    idx = g.index()
    for x in range(g.n):
        k = len(idx.into[x])
        span = len(_tail_link_vertices(g, x))
        if span >= 3 and k == span * (span - 1) // 2:
            d.add(x)
        elif k >= 3:
            r.add(x)
        else:
            t.add(x)
    return frozenset(d), frozenset(r), frozenset(t)


def drt_partition(g: DirectedHypergraph) -> NormalizationState:
    """D: tail link is complete on >= 3 vertices; R: otherwise >= 3 tail-link edges; T: the rest."""
    d, r, t = _classify(g)
    return NormalizationState(d, r, t, g.copy(), [])


def normalize_step(state: NormalizationState, x: int) -> NormalizationState:
    """Complete the tail link of ``x`` and drop every ``x s -> a`` with ``a`` in it."""
    g = state.graph.copy()
    d0, r0, t0 = _classify(g)
    if x not in r0:
        raise NotReady(f"vertex {x} is not in R")
    before = len(g)
    span = sorted(_tail_link_vertices(g, x))
    added = []
    for a, b in combinations(span, 2):
        if not g.has_edge((a, b), x):
            added.append(g.add_edge((a, b), x))
    inside = set(span)
    removed = sorted(e for e in g.index().out[x] if e.head in inside)
    for e in removed:
        g.remove_edge(e.tail, e.head)

    if len(g) < before:
        raise InvariantViolation(f"step at {x} lost edges: {before} -> {len(g)}")
    if contains(g, _E):
        raise InvariantViolation(f"step at {x} created a copy of E")
    d1, r1, t1 = _classify(g)
    if x not in d1:
        raise InvariantViolation(f"vertex {x} did not move to D")
    if not d0 <= d1:
        raise InvariantViolation(f"vertices {sorted(d0 - d1)} left D")
    if t0 & (d1 | r1):
        raise InvariantViolation(f"vertices {sorted(t0 & (d1 | r1))} moved up from T")
    return NormalizationState(d1, r1, t1, g, state.log + [StepRecord(x, tuple(added), tuple(removed))])


def normalize(g: DirectedHypergraph) -> NormalizationState:
    """Repeat :func:`normalize_step` on the lowest-index R vertex until R is empty."""
    if contains(g, _E):
        raise NotEFree("normalisation is only defined for E-free graphs")
    state = drt_partition(g)
    while state.r:
        if len(state.log) >= g.n:
            raise InvariantViolation("normalisation did not finish within n steps")
        state = normalize_step(state, min(state.r))
    for tri, k in state.graph.triple_counts().items():
        if k >= 2 and not set(tri) & state.t:
            raise InvariantViolation(f"triple {tri} with {k} edges misses T")
    return state
