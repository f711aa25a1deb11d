"""Exact extremal combinatorics for 2->1 directed hypergraphs."""

__version__ = "0.1.0"

from .constructions import (
    CONSTRUCTIONS,
    FormulaId,
    MaximizerReport,
    escher_h1,
    escher_h2,
    formula,
    r3_construction,
    r4_construction,
    theorem2_maximizer,
    transitive_tournament,
    ttk_lower_construction,
)
from .embedding import contains, count_copies, count_embeddings, extension_free, find_embedding, is_free
from .errors import DhgError
from .fileformat import parse_graph_file, read_graph, write_graph, write_graph_file
from .graph import (
    DirectedHypergraph,
    Edge,
    LinkBundle,
    all_edges,
    are_isomorphic,
    canonical_code,
    canonical_form,
    is_oriented,
    link_graphs,
    new_graph,
    pointed_edges,
)
from .normalization import (
    drt_partition,
    lemma1_check,
    link_partition,
    normalize,
    normalize_step,
    r3_forbidden_incidence,
)
from .patterns import Pattern, catalog, is_degenerate, pattern, two_edge_family
from .search import Census, SearchMode, SearchResult, census, decide_conjecture_tt4, max_edges
