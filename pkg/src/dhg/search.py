"""Exact extremal numbers and censuses by branch and bound over vertex triples.

Triples are visited in colex order. Each triple receives a subset of its
three pointed edges (at most one in oriented mode), larger subsets first.
A branch is cut when even filling every remaining triple to capacity could
not beat the incumbent (or reach the census target). Freeness is kept
incrementally: after each assignment only embeddings through the new edges
are searched.
"""

from __future__ import annotations

import multiprocessing as mp
import os
import sys
import time
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Sequence

from .constructions import FormulaId, formula, ttk_lower_construction
from .embedding import _anchored_free, compile_pattern, is_free
from .errors import BadSeed, BudgetExceeded, InvariantViolation
from .graph import DirectedHypergraph, Edge, canonical_labeling, is_oriented, pointed_edges
from .patterns import Pattern, pattern

JOBS_ENV = "DHG_JOBS"


class SearchMode(str, Enum):
    ORIENTED = "oriented"
    STANDARD = "standard"

    @property
    def capacity(self) -> int:
        return 1 if self is SearchMode.ORIENTED else 3


# largest n each search accepts without force=True
BUDGETS = {
    ("max", SearchMode.ORIENTED): 6,
    ("max", SearchMode.STANDARD): 5,
    ("census", SearchMode.ORIENTED): 5,
    ("census", SearchMode.STANDARD): 4,
    ("conjecture", SearchMode.STANDARD): 5,
}


@dataclass
class SearchStats:
    nodes: int = 0
    bound_prunes: int = 0
    free_prunes: int = 0
    leaves: int = 0
    tasks: int = 0
    seconds: float = 0.0

    def merge(self, other: "SearchStats"):
        self.nodes += other.nodes
        self.bound_prunes += other.bound_prunes
        self.free_prunes += other.free_prunes
        self.leaves += other.leaves

    def as_dict(self) -> dict:
        return {"nodes": self.nodes, "bound_prunes": self.bound_prunes, "free_prunes": self.free_prunes,
                "leaves": self.leaves, "tasks": self.tasks, "seconds": round(self.seconds, 3)}


@dataclass
class SearchResult:
    value: int
    witness: DirectedHypergraph
    stats: SearchStats = field(default_factory=SearchStats)


@dataclass
class Census:
    n: int
    mode: SearchMode
    target: int
    classes: list[tuple[bytes, DirectedHypergraph]]
    stats: SearchStats = field(default_factory=SearchStats)

    def __len__(self):
        return len(self.classes)

    @property
    def representatives(self) -> list[DirectedHypergraph]:
        return [g for _, g in self.classes]


def triple_order(n: int) -> list[tuple[int, int, int]]:
    return sorted(combinations(range(n), 3), key=lambda t: (t[2], t[1], t[0]))


def triple_options(triple, mode: SearchMode) -> list[tuple[Edge, ...]]:
    edges = pointed_edges(triple)
    out = []
    for size in range(mode.capacity, -1, -1):
        out.extend(combinations(edges, size))
    return out


def _root_options(options):
    """One option per cardinality: the symmetric group on the first triple's
    vertices acts transitively on its pointed edges, hence on subsets of a
    given size."""
    seen = set()
    reps = []
    for opt in options:
        if len(opt) not in seen:
            seen.add(len(opt))
            reps.append(opt)
    return reps


def check_budget(kind: str, n: int, mode: SearchMode, force: bool):
    limit = BUDGETS[(kind, mode)]
    if n > limit and not force:
        raise BudgetExceeded(f"{kind} search in {mode.value} mode is budgeted for n <= {limit} "
                             f"(got n={n}); pass force=True / --force to run anyway")
    if n > limit:
        print(f"warning: {kind} search with n={n} exceeds the budget n <= {limit}", file=sys.stderr)


def default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


# -- the DFS ------------------------------------------------------------------------


class _Engine:
    """Sequential DFS state; one per process."""

    def __init__(self, n, family_keys, mode, target, shared=None, progress=False):
        self.n = n
        self.mode = mode
        self.cap = mode.capacity
        self.triples = triple_order(n)
        self.options = [triple_options(t, mode) for t in self.triples]
        if n >= 5 and self.options:
            self.options[0] = _root_options(self.options[0])
        self.family = [DirectedHypergraph(pn, edges) for pn, edges in family_keys]
        self.plans = [compile_pattern(f) for f in self.family]
        self.target = target  # None for maximisation
        self.shared = shared
        self.incumbent = -1
        self.witness: set[Edge] | None = None
        self.classes: dict[bytes, DirectedHypergraph] = {}
        self.stats = SearchStats()
        self.progress = progress
        self._last_report = time.monotonic()
        self.g = DirectedHypergraph(n)
        self.g.index()

    def _free_after(self, new_edges) -> bool:
        for plans in self.plans:
            if plans[0].order:
                if not _anchored_free(self.g, plans, new_edges):
                    return False
            elif plans[0].pn <= self.n:
                return False
        return True

    def apply_prefix(self, prefix: Sequence[int]) -> int | None:
        """Assign the first len(prefix) triples; returns edge count or None if not free."""
        current = 0
        for i, k in enumerate(prefix):
            opt = self.options[i][k]
            for e in opt:
                self.g._push(e)
            current += len(opt)
            if opt and not self._free_after(opt):
                return None
        return current

    def _sync(self):
        if self.shared is not None:
            shared = self.shared.value
            if shared > self.incumbent:
                self.incumbent = shared

    def _publish(self, value):
        if self.shared is not None:
            with self.shared.get_lock():
                if value > self.shared.value:
                    self.shared.value = value

    def _report(self, depth):
        now = time.monotonic()
        if now - self._last_report > 5.0:
            self._last_report = now
            best = self.incumbent if self.target is None else f"target {self.target}"
            print(f"[search pid={os.getpid()}] nodes={self.stats.nodes} incumbent={best} depth={depth}",
                  file=sys.stderr, flush=True)

    def _leaf(self, current):
        self.stats.leaves += 1
        g = self.g.copy()
        if not is_free(g, self.family):
            raise InvariantViolation(f"incremental freeness accepted a graph containing a pattern: {g}")
        if self.target is None:
            self.incumbent = current
            self.witness = set(g.edges)
            self._publish(current)
        else:
            _, pos = canonical_labeling(g)
            canon = g.relabel(pos) if g.n else g
            code = bytes([g.n]) + bytes(x for e in canon.sorted_edges() for x in e)
            self.classes.setdefault(code, canon)

    def dfs(self, i, current):
        stats = self.stats
        stats.nodes += 1
        if (stats.nodes & 0x3FF) == 0:
            self._sync()
            if self.progress:
                self._report(i)
        remaining = len(self.triples) - i
        target = self.target
        if target is None:
            if current + self.cap * remaining <= self.incumbent:
                stats.bound_prunes += 1
                return
            if remaining == 0:
                self._leaf(current)
                return
        else:
            if current + self.cap * remaining < target:
                stats.bound_prunes += 1
                return
            if current == target:
                self._leaf(current)
                return
        g = self.g
        for opt in self.options[i]:
            size = len(opt)
            if target is not None and current + size > target:
                continue
            if size:
                for e in opt:
                    g._push(e)
                if self._free_after(opt):
                    self.dfs(i + 1, current + size)
                else:
                    stats.free_prunes += 1
                for e in opt:
                    g._pop(e)
            else:
                self.dfs(i + 1, current)
            if target is None and current + self.cap * remaining <= self.incumbent:
                break


# -- task splitting ---------------------------------------------------------------


def _prefixes(args, want: int) -> list[tuple[int, ...]]:
    """Free assignments of the first d triples, d the smallest depth giving >= want tasks."""
    n, keys, mode, target = args[:4]
    probe = _Engine(n, keys, mode, target)
    level: list[tuple[int, ...]] = [()]
    depth = 0
    while len(level) < want and depth < len(probe.triples) - 1:
        nxt = []
        for p in level:
            for k in range(len(probe.options[depth])):
                q = p + (k,)
                if _Engine(n, keys, mode, target).apply_prefix(q) is not None:
                    nxt.append(q)
        level = nxt
        depth += 1
    return level


_WORKER: dict = {}


def _worker_init(args, shared):
    _WORKER["args"] = args
    _WORKER["shared"] = shared


def _run_task(prefix, args=None, shared=None):
    if args is None:
        args, shared = _WORKER["args"], _WORKER["shared"]
    n, keys, mode, target, seed_value, progress = args
    eng = _Engine(n, keys, mode, target, shared, progress)
    eng.incumbent = seed_value if target is None else -1
    eng._sync()
    current = eng.apply_prefix(prefix)
    if current is not None:
        eng.dfs(len(prefix), current)
    witness = sorted(eng.witness) if eng.witness is not None else None
    classes = {code: sorted(g.edges) for code, g in eng.classes.items()}
    return eng.incumbent, witness, classes, eng.stats


def _family_keys(family: Sequence[Pattern | DirectedHypergraph]):
    keys = []
    for f in family:
        g = f.graph if isinstance(f, Pattern) else f
        keys.append((g.n, tuple(g.sorted_edges())))
    return keys


def _execute(n, family, mode, target, seed_value, jobs, progress):
    keys = _family_keys(family)
    args = (n, keys, mode, target, seed_value, progress)
    jobs = jobs or default_jobs()
    if jobs <= 1:
        results = [_run_task((), args, None)]
        ntasks = 1
    else:
        tasks = _prefixes(args, 4 * jobs)
        ntasks = len(tasks)
        shared = mp.get_context("fork").Value("q", seed_value if target is None else -1)
        with mp.get_context("fork").Pool(jobs, initializer=_worker_init, initargs=(args, shared)) as pool:
            results = pool.map(_run_task, tasks, chunksize=1)
    return results, ntasks


def max_edges(n: int, family: Sequence[Pattern | DirectedHypergraph], mode: SearchMode | str,
              seed: DirectedHypergraph | None = None, *, jobs: int | None = None,
              force: bool = False, progress: bool = False) -> SearchResult:
    """Exact ex(n, family) (standard) or ex_o(n, family) (oriented), with a witness."""
    mode = SearchMode(mode)
    check_budget("max", n, mode, force)
    t0 = time.monotonic()
    seed_value = -1
    if seed is not None:
        if seed.n != n:
            raise BadSeed(f"seed has {seed.n} vertices, expected {n}")
        if not is_free(seed, family):
            raise BadSeed("seed contains a forbidden pattern")
        if mode is SearchMode.ORIENTED and not is_oriented(seed):
            raise BadSeed("seed is not oriented")
        seed_value = len(seed)
    results, ntasks = _execute(n, family, mode, None, seed_value, jobs, progress)
    stats = SearchStats(tasks=ntasks)
    best, witness = seed_value, (seed.copy() if seed is not None else None)
    for value, wit, _, st in results:
        stats.merge(st)
        if wit is not None and value > best:
            best, witness = value, DirectedHypergraph(n, wit)
    stats.seconds = time.monotonic() - t0
    if witness is None:  # no seed and nothing better than -1 is impossible; keep total
        raise InvariantViolation("search finished without a witness")
    if len(witness) != best or not is_free(witness, family):
        raise InvariantViolation("witness does not certify the reported value")
    return SearchResult(best, witness, stats)


def census(n: int, family: Sequence[Pattern | DirectedHypergraph], mode: SearchMode | str, target: int,
           *, jobs: int | None = None, force: bool = False, progress: bool = False) -> Census:
    """Every family-free graph with exactly ``target`` edges, one per isomorphism class."""
    mode = SearchMode(mode)
    check_budget("census", n, mode, force)
    if target < 0 or target > mode.capacity * len(triple_order(n)):
        return Census(n, mode, target, [])
    t0 = time.monotonic()
    results, ntasks = _execute(n, family, mode, target, -1, jobs, progress)
    stats = SearchStats(tasks=ntasks)
    merged: dict[bytes, DirectedHypergraph] = {}
    for _, _, classes, st in results:
        stats.merge(st)
        for code, edges in classes.items():
            merged.setdefault(code, DirectedHypergraph(n, edges))
    stats.seconds = time.monotonic() - t0
    return Census(n, mode, target, sorted(merged.items()), stats)


@dataclass
class ConjectureDecision:
    n: int
    search_value: int
    conjecture_value: int
    verdict: str
    witness: DirectedHypergraph
    stats: SearchStats


def decide_conjecture_tt4(n: int, *, jobs: int | None = None, force: bool = False,
                          progress: bool = False) -> ConjectureDecision:
    """Compare ex(n, TT4) found by search with n*floor((n-1)/2)*ceil((n-1)/2)."""
    check_budget("conjecture", n, SearchMode.STANDARD, force)
    seed = ttk_lower_construction(n, 4) if n >= 1 else DirectedHypergraph(0)
    res = max_edges(n, [pattern("TT4")], SearchMode.STANDARD, seed=seed, jobs=jobs, force=True,
                    progress=progress)
    conj = formula(FormulaId.TT4_MINUS, n)
    if res.value == conj:
        verdict = "equal"
    elif res.value < conj:
        verdict = "refuted-below"
    else:
        verdict = "refuted-above"
    return ConjectureDecision(n, res.value, conj, verdict, res.witness, res.stats)
