"""Extremal constructions, closed-form extremal numbers, and the R4 maximiser table.

Vertex labels follow the usual 1..n convention shifted down by one (label 1
is vertex 0). Edge builders return ``(m, 3)`` integer arrays with rows
``(tail_lo, tail_hi, head)`` so that large instances can be counted without
materialising a graph object.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from math import comb

import numpy as np

from .errors import BadParam
from .graph import DirectedHypergraph, Edge

# -- edge arrays ------------------------------------------------------------------


def _pairs(vertices: np.ndarray) -> np.ndarray:
    i, j = np.triu_indices(len(vertices), 1)
    return np.stack([vertices[i], vertices[j]], axis=1)


def _cross(pairs: np.ndarray, heads: np.ndarray) -> np.ndarray:
    if len(pairs) == 0 or len(heads) == 0:
        return np.empty((0, 3), dtype=np.int64)
    p = np.repeat(pairs, len(heads), axis=0)
    h = np.tile(heads, len(pairs))
    return np.column_stack([p, h]).astype(np.int64)


def _check_n(n):
    if n < 0:
        raise BadParam(f"n must be non-negative, got {n}")


def r4_edges(n: int, t: int | None = None) -> np.ndarray:
    _check_n(n)
    if t is None:
        t = -(-2 * n // 3)
    if not 0 <= t <= n:
        raise BadParam(f"need 0 <= t <= n, got t={t}, n={n}")
    return _cross(_pairs(np.arange(t)), np.arange(t, n))


def r3_edges(n: int, a: int | None = None) -> np.ndarray:
    _check_n(n)
    if a is None:
        a = -(-n // 2)
    if not 0 <= a <= n:
        raise BadParam(f"need 0 <= a <= n, got a={a}, n={n}")
    A, B = np.arange(a), np.arange(a, n)
    return np.concatenate([_cross(_pairs(A), B), _cross(_pairs(B), A)])


def tt_edges(n: int) -> np.ndarray:
    _check_n(n)
    i, j = np.triu_indices(n, 1)
    reps = n - 1 - j
    total = int(reps.sum())
    starts = np.repeat(np.cumsum(reps) - reps, reps)
    heads = np.repeat(j + 1, reps) + (np.arange(total) - starts)
    return np.column_stack([np.repeat(i, reps), np.repeat(j, reps), heads]).astype(np.int64)


def h1_edges(n: int) -> np.ndarray:
    if n < 3:
        raise BadParam(f"H1 needs n >= 3, got {n}")
    extra = np.array([[0, 2, 1], [1, 2, 0]], dtype=np.int64)
    return np.concatenate([tt_edges(n), extra])


def h2_edges(n: int) -> np.ndarray:
    if n < 4:
        raise BadParam(f"H2 needs n >= 4, got {n}")
    e = h1_edges(n)
    drop = ((e[:, 0] == 1) & (e[:, 1] == 2) & ((e[:, 2] == 3) | (e[:, 2] == 0)))
    extra = np.array([[0, 3, 1], [0, 3, 2]], dtype=np.int64)
    return np.concatenate([e[~drop], extra])


def ttk_edges(n: int, k: int) -> np.ndarray:
    """Each vertex's tail link is a balanced complete (k-2)-partite graph.

    Vertex x splits the other n-1 vertices into k-2 classes by position,
    rotated by x, so the result is deterministic.
    """
    if k < 3 or n < 1:
        raise BadParam(f"need k >= 3 and n >= 1, got k={k}, n={n}")
    parts = k - 2
    blocks = []
    m = n - 1
    if m < 2:
        return np.empty((0, 3), dtype=np.int64)
    i, j = np.triu_indices(m, 1)
    pos = np.arange(m)
    everyone = np.arange(n)
    for x in range(n):
        others = np.delete(everyone, x)
        cls = ((pos + x) % m) % parts
        keep = cls[i] != cls[j]
        rows = np.column_stack([others[i[keep]], others[j[keep]], np.full(keep.sum(), x)])
        blocks.append(rows)
    return np.concatenate(blocks).astype(np.int64)


def _graph(n: int, rows: np.ndarray) -> DirectedHypergraph:
    edges = {Edge(a, b, h) for a, b, h in rows.tolist()}
    if len(edges) != len(rows):
        raise AssertionError("construction produced a repeated edge")
    return DirectedHypergraph._trusted(n, edges)


def r4_construction(n: int, t: int | None = None) -> DirectedHypergraph:
    """All edges with both tails in ``[0, t)`` and head in ``[t, n)``; R4-free."""
    return _graph(n, r4_edges(n, t))


def r3_construction(n: int, a: int | None = None) -> DirectedHypergraph:
    """Tails inside ``A = [0, a)`` point into ``B``, tails inside ``B`` into ``A``; R3-free."""
    return _graph(n, r3_edges(n, a))


def transitive_tournament(n: int) -> DirectedHypergraph:
    return _graph(n, tt_edges(n))


def escher_h1(n: int) -> DirectedHypergraph:
    return _graph(n, h1_edges(n))


def escher_h2(n: int) -> DirectedHypergraph:
    return _graph(n, h2_edges(n))


def ttk_lower_construction(n: int, k: int) -> DirectedHypergraph:
    return _graph(n, ttk_edges(n, k))


CONSTRUCTIONS = {
    "r4": r4_construction,
    "r3": r3_construction,
    "tt": transitive_tournament,
    "h1": escher_h1,
    "h2": escher_h2,
    "ttk": ttk_lower_construction,
}

# -- closed forms -------------------------------------------------------------------


class FormulaId(str, Enum):
    R4_EXTREMAL = "R4_EXTREMAL"
    R3_EXTREMAL = "R3_EXTREMAL"
    E_STANDARD = "E_STANDARD"
    E_ORIENTED = "E_ORIENTED"
    TT4_MINUS = "TT4_MINUS"
    TTK_LOWER = "TTK_LOWER"


def formula(fid: FormulaId | str, n: int, k: int | None = None) -> int:
    """Exact integer value of a closed form.

    The expressions are evaluated literally for every n >= 0; for E_STANDARD
    this gives 2 when n < 3 even though no graph on fewer than 3 vertices has
    an edge.
    """
    fid = FormulaId(fid)
    _check_n(n)
    if fid is FormulaId.R4_EXTREMAL:
        return (n // 3) * comb(-(-2 * n // 3), 2)
    if fid is FormulaId.R3_EXTREMAL:
        prod = (n // 2) * (-(-n // 2)) * (n - 2)
        assert prod % 2 == 0
        return prod // 2
    if fid is FormulaId.E_STANDARD:
        return comb(n, 3) + 2
    if fid is FormulaId.E_ORIENTED:
        return comb(n, 3)
    if fid is FormulaId.TT4_MINUS:
        return n * ((n - 1) // 2) * (-(-(n - 1) // 2)) if n >= 1 else 0
    if k is None or k < 3:
        raise BadParam("TTK_LOWER needs k >= 3")
    if n < 1 or (n - 1) % (k - 2):
        raise BadParam(f"TTK_LOWER needs (n-1) divisible by (k-2), got n={n}, k={k}")
    s = (n - 1) // (k - 2)
    return n * s * s * comb(k - 2, 2)


# -- R4 maximiser -------------------------------------------------------------------


@dataclass(frozen=True)
class MaximizerReport:
    n: int
    c: int
    values: tuple[int, ...]  # values[b] = f(b)
    argmax_set: frozenset

    @property
    def maximum(self) -> int:
        return self.values[min(self.argmax_set)]

    @property
    def known_constant(self) -> bool:
        return self.c in (2, 5)


def maximizer_value(n: int, b: int, c: int) -> int:
    m = n - b
    return (m // 3) * comb(-(-2 * m // 3), 2) + c * n * b


def theorem2_maximizer(n: int, c: int) -> MaximizerReport:
    """Evaluate ``floor((n-b)/3) * C(ceil(2(n-b)/3), 2) + c*n*b`` for b = 0..n."""
    if n < 1:
        raise BadParam(f"n must be >= 1, got {n}")
    values = tuple(maximizer_value(n, b, c) for b in range(n + 1))
    top = max(values)
    return MaximizerReport(n, c, values, frozenset(b for b, v in enumerate(values) if v == top))
