"""Injective homomorphism search (pattern -> host).

Backtracking runs edge by edge over the pattern: each step picks a host edge
compatible with the part of the map fixed so far, using the host incidence
index, so only pattern vertices that are actually reachable are tried.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence, Union

from .graph import DirectedHypergraph, Edge
from .patterns import Pattern

PatternLike = Union[Pattern, DirectedHypergraph]


class _Plan:
    __slots__ = ("pn", "order", "isolated", "indeg", "outdeg")

    def __init__(self, pn, order, isolated, indeg, outdeg):
        self.pn = pn
        self.order = order
        self.isolated = isolated
        self.indeg = indeg
        self.outdeg = outdeg


def _connected_order(edges: Sequence[tuple], start: int) -> list[tuple]:
    order = [edges[start]]
    placed = set(edges[start])
    rest = [e for i, e in enumerate(edges) if i != start]
    while rest:
        # most already-placed vertices first; a placed head is the tightest constraint
        best = max(range(len(rest)),
                   key=lambda i: (len(placed & set(rest[i])), rest[i][2] in placed, -i))
        e = rest.pop(best)
        order.append(e)
        placed.update(e)
    return order


@lru_cache(maxsize=None)
def _plans(key: tuple) -> tuple[_Plan, ...]:
    pn, edges = key
    indeg = [0] * pn
    outdeg = [0] * pn
    for a, b, h in edges:
        indeg[h] += 1
        outdeg[a] += 1
        outdeg[b] += 1
    touched = {v for e in edges for v in e}
    isolated = pn - len(touched)
    if not edges:
        return (_Plan(pn, [], isolated, indeg, outdeg),)
    return tuple(_Plan(pn, _connected_order(edges, s), isolated, indeg, outdeg)
                 for s in range(len(edges)))


def _key(f: PatternLike) -> tuple:
    g = f.graph if isinstance(f, Pattern) else f
    return (g.n, tuple(tuple(e) for e in g.sorted_edges()))


def _falling(m: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= m - i
    return out if m >= k else 0


class _Search:
    """One backtracking run; ``count`` selects counting vs. first-hit."""

    __slots__ = ("host", "idx", "plan", "phi", "used", "count", "witness")

    def __init__(self, host: DirectedHypergraph, plan: _Plan, count: bool):
        self.host = host
        self.idx = host.index()
        self.plan = plan
        self.phi = [-1] * plan.pn
        self.used = [False] * host.n
        self.count = count
        self.witness: list[int] | None = None

    def _fits(self, p, v):
        idx = self.idx
        return (not self.used[v] and len(idx.into[v]) >= self.plan.indeg[p]
                and len(idx.out[v]) >= self.plan.outdeg[p])

    def _try(self, i, binds):
        """Bind (pattern vertex, host vertex) pairs, recurse, undo."""
        phi, used = self.phi, self.used
        fresh = []
        ok = True
        for p, v in binds:
            cur = phi[p]
            if cur == -1:
                if not self._fits(p, v) or v in [w for _, w in fresh]:
                    ok = False
                    break
                fresh.append((p, v))
            elif cur != v:
                ok = False
                break
        if not ok:
            return 0
        for p, v in fresh:
            phi[p] = v
            used[v] = True
        r = self.run(i + 1)
        for p, v in fresh:
            phi[p] = -1
            used[v] = False
        return r

    def run(self, i: int) -> int:
        plan = self.plan
        if i == len(plan.order):
            k = plan.isolated
            if not self.count:
                if self.used.count(False) < k:
                    return 0
                self.witness = list(self.phi)
                return 1
            return _falling(self.used.count(False), k) if k else 1
        pa, pb, ph = plan.order[i]
        phi, idx = self.phi, self.idx
        fa, fb, fh = phi[pa], phi[pb], phi[ph]
        total = 0
        if fa != -1 and fb != -1:
            key = (fa, fb) if fa < fb else (fb, fa)
            if fh != -1:
                return self.run(i + 1) if fh in idx.heads.get(key, ()) else 0
            for z in tuple(idx.heads.get(key, ())):
                total += self._try(i, ((ph, z),))
                if total and not self.count:
                    return total
            return total
        if fa != -1 or fb != -1:
            known, other = (fa, pb) if fa != -1 else (fb, pa)
            if fh != -1:
                for y in tuple(idx.cotail.get((known, fh), ())):
                    total += self._try(i, ((other, y),))
                    if total and not self.count:
                        return total
                return total
            for e in tuple(idx.out[known]):
                y = e.b if e.a == known else e.a
                total += self._try(i, ((other, y), (ph, e.head)))
                if total and not self.count:
                    return total
            return total
        if fh != -1:
            cands: Iterable[Edge] = tuple(idx.into[fh])
        else:
            cands = tuple(self.host.edges)
        for e in cands:
            total += self._try(i, ((pa, e.a), (pb, e.b), (ph, e.head)))
            if total and not self.count:
                return total
            total += self._try(i, ((pa, e.b), (pb, e.a), (ph, e.head)))
            if total and not self.count:
                return total
        return total


def count_embeddings(host: DirectedHypergraph, f: PatternLike) -> int:
    """Number of injective edge-preserving maps from ``f`` into ``host``."""
    plan = _plans(_key(f))[0]
    if plan.pn > host.n:
        return 0
    return _Search(host, plan, True).run(0)


def count_copies(host: DirectedHypergraph, f: Pattern) -> int:
    emb = count_embeddings(host, f)
    q, r = divmod(emb, f.automorphism_count)
    assert r == 0, "embedding count not divisible by automorphism count"
    return q


def contains(host: DirectedHypergraph, f: PatternLike) -> bool:
    plan = _plans(_key(f))[0]
    if plan.pn > host.n:
        return False
    return _Search(host, plan, False).run(0) > 0


def find_embedding(host: DirectedHypergraph, f: PatternLike) -> list[int] | None:
    """One embedding as a list ``phi[pattern_vertex] = host_vertex``, or None."""
    plan = _plans(_key(f))[0]
    if plan.pn > host.n:
        return None
    s = _Search(host, plan, False)
    if not s.run(0):
        return None
    phi = s.witness
    free = [v for v in range(host.n) if v not in phi]
    return [v if v != -1 else free.pop(0) for v in phi]


def is_free(host: DirectedHypergraph, family: Iterable[PatternLike]) -> bool:
    return not any(contains(host, f) for f in family)


def compile_pattern(f: PatternLike) -> tuple[_Plan, ...]:
    """Search plans for ``f``, one per choice of anchor edge (cached)."""
    return _plans(_key(f))


def extension_free(host: DirectedHypergraph, f: PatternLike, new_edges: Iterable[Edge]) -> bool:
    """Freeness of ``host`` plus ``new_edges``, given that ``host`` without them is f-free.

    ``new_edges`` may or may not already be present in ``host``. Only
    embeddings sending some pattern edge onto some new edge are searched.
    """
    new_edges = list(new_edges)
    missing = [e for e in new_edges if e not in host]
    if missing:
        host = host.copy()
        for e in missing:
            host.add_edge(e.tail, e.head)
    plans = compile_pattern(f)
    if not plans[0].order:
        return not contains(host, f)
    return _anchored_free(host, plans, new_edges)


def _anchored_free(host: DirectedHypergraph, plans: tuple[_Plan, ...], new_edges: Iterable[Edge]) -> bool:
    if plans[0].pn > host.n:
        return True
    for ne in new_edges:
        for plan in plans:
            pa, pb, ph = plan.order[0]
            s = _Search(host, plan, False)
            if s._try(0, ((pa, ne.a), (pb, ne.b), (ph, ne.head))):
                return False
            if s._try(0, ((pa, ne.b), (pb, ne.a), (ph, ne.head))):
                return False
    return True
