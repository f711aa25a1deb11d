"""Command-line interface. JSON reports go to stdout, progress and errors to stderr.

Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources

from . import __version__
from .constructions import CONSTRUCTIONS, FormulaId, formula, theorem2_maximizer
from .embedding import count_embeddings, find_embedding
from .errors import BadParam, DhgError
from .fileformat import read_graph, write_graph, write_graph_file
from .graph import DirectedHypergraph, link_graphs
from .normalization import link_partition, normalize, r3_forbidden_incidence
from .patterns import Pattern, is_degenerate, pattern, two_edge_family
from .search import census, decide_conjecture_tt4, default_jobs, max_edges


class UsageError(Exception):
    pass


def _edges(g: DirectedHypergraph) -> list[list[int]]:
    return [list(e) for e in g.sorted_edges()]


def _graph_json(g: DirectedHypergraph) -> dict:
    return {"n": g.n, "edges": _edges(g)}


def _patterns(args) -> list[Pattern]:
    out = [pattern(p) for p in (args.pattern or [])]
    for path in getattr(args, "pattern_file", None) or []:
        out.append(Pattern.from_graph(path, read_graph(path)))
    if not out:
        raise UsageError("at least one --pattern or --pattern-file is required")
    return out


def _pattern_json(p: Pattern) -> dict:
    return {"name": p.name, "n": p.n, "edges": _edges(p.graph), "automorphisms": p.automorphism_count}


# -- subcommands ----------------------------------------------------------------


def cmd_gen(args):
    build = CONSTRUCTIONS[args.name]
    params = {}
    if args.name == "r4" and args.t is not None:
        params["t"] = args.t
    if args.name == "r3" and args.a is not None:
        params["a"] = args.a
    if args.name == "ttk":
        if args.k is None:
            raise UsageError("gen ttk requires --k")
        params["k"] = args.k
    g = build(args.n, **params)
    result = {"construction": args.name, "n": g.n, "params": params, "edges": len(g), "output": args.output}
    if args.output:
        write_graph(args.output, g)
    else:
        result["graph"] = write_graph_file(g).decode()
    return {"name": args.name, "n": args.n, **params}, result, {}


def cmd_check(args):
    g = read_graph(args.graph)
    per = []
    for p in _patterns(args):
        phi = find_embedding(g, p)
        per.append({"pattern": p.name, "contains": phi is not None, "embedding": phi})
    result = {"contains": any(x["contains"] for x in per), "patterns": per}
    return {"graph": args.graph, "patterns": [x["pattern"] for x in per]}, result, {}


def cmd_count(args):
    g = read_graph(args.graph)
    rows = []
    for p in _patterns(args):
        emb = count_embeddings(g, p)
        rows.append({"pattern": p.name, "embeddings": emb, "automorphisms": p.automorphism_count,
                     "copies": emb // p.automorphism_count})
    return {"graph": args.graph}, {"patterns": rows}, {}


def cmd_links(args):
    g = read_graph(args.graph)
    vertices = [args.vertex] if args.vertex is not None else list(range(g.n))
    rows = []
    for x in vertices:
        lb = link_graphs(g, x)
        part = link_partition(g, x)
        wit = r3_forbidden_incidence(g, x)
        rows.append({
            "vertex": x,
            "tail_link": sorted(list(p) for p in lb.tail_link),
            "directed_link": sorted(list(p) for p in lb.directed_link),
            "tail_degree": lb.tail_degree,
            "partition": {"u": sorted(part.u), "c": sorted(part.c), "m": sorted(part.m)},
            "r3_incidence": [list(w) for w in wit] if wit else None,
        })
    return {"graph": args.graph, "vertex": args.vertex}, {"links": rows}, {}


def cmd_degenerate(args):
    if args.graph:
        g, label = read_graph(args.graph), args.graph
    elif args.pattern:
        g, label = pattern(args.pattern[0]).graph, args.pattern[0]
    else:
        raise UsageError("degenerate needs a graph file or --pattern")
    part = is_degenerate(g)
    result = {"degenerate": part is not None,
              "partition": None if part is None else
              {"t1": sorted(part.t1), "t2": sorted(part.t2), "k": sorted(part.k)}}
    return {"graph": label}, result, {}


def cmd_extremal(args):
    family = _patterns(args)
    seed = read_graph(args.seed) if args.seed else None
    res = max_edges(args.n, family, args.mode, seed=seed, jobs=args.jobs, force=args.force,
                    progress=args.progress)
    inputs = {"n": args.n, "patterns": [p.name for p in family], "mode": args.mode, "seed": args.seed}
    return inputs, {"value": res.value, "witness": _graph_json(res.witness)}, res.stats.as_dict()


def cmd_census(args):
    family = _patterns(args)
    c = census(args.n, family, args.mode, args.target, jobs=args.jobs, force=args.force,
               progress=args.progress)
    classes = [{"code": code.hex(), **_graph_json(g)} for code, g in c.classes]
    inputs = {"n": args.n, "patterns": [p.name for p in family], "mode": args.mode, "target": args.target}
    return inputs, {"count": len(c), "classes": classes}, c.stats.as_dict()


def cmd_normalize(args):
    g = read_graph(args.graph)
    st = normalize(g)
    result = {"edges_before": len(g), "edges_after": len(st.graph),
              "d": sorted(st.d), "r": sorted(st.r), "t": sorted(st.t),
              "step_count": len(st.log), "graph": _graph_json(st.graph)}
    if args.log:
        result["steps"] = [s.as_dict() for s in st.log]
    if args.output:
        write_graph(args.output, st.graph)
    return {"graph": args.graph, "output": args.output}, result, {}


def cmd_maximizer(args):
    last = args.to if args.to is not None else args.n
    if last < args.n:
        raise UsageError("--to must be >= --n")
    rows = []
    for n in range(args.n, last + 1):
        rep = theorem2_maximizer(n, args.c)
        row = {"n": n, "argmax": sorted(rep.argmax_set), "maximum": rep.maximum,
               "only_zero": rep.argmax_set == {0}}
        if args.values:
            row["values"] = list(rep.values)
        rows.append(row)
    result = {"c": args.c, "known_constant": args.c in (2, 5), "rows": rows}
    return {"n": args.n, "to": last, "c": args.c}, result, {}


def cmd_formulas(args):
    if args.k < 3:
        raise BadParam(f"--k must be >= 3, got {args.k}")
    rows = []
    for n in range(args.n_min, args.n_max + 1):
        row = {"n": n}
        for fid in FormulaId:
            if fid is FormulaId.TTK_LOWER:
                k = args.k
                row[fid.value] = formula(fid, n, k) if n >= 1 and (n - 1) % (k - 2) == 0 else None
            else:
                row[fid.value] = formula(fid, n)
        rows.append(row)
    return {"n_min": args.n_min, "n_max": args.n_max, "k": args.k}, {"rows": rows}, {}


def cmd_conjecture(args):
    d = decide_conjecture_tt4(args.n, jobs=args.jobs, force=args.force, progress=args.progress)
    result = {"n": d.n, "search_value": d.search_value, "conjecture_value": d.conjecture_value,
              "verdict": d.verdict, "witness": _graph_json(d.witness)}
    return {"n": args.n}, result, d.stats.as_dict()


def cmd_two_edge(args):
    rows = []
    for p in two_edge_family():
        part = is_degenerate(p.graph)
        rows.append({**_pattern_json(p), "degenerate": part is not None})
    result = {"count": len(rows), "nondegenerate": sum(not r["degenerate"] for r in rows), "members": rows}
    return {}, result, {}


# -- parser -----------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _search_opts(p, mode=True):
    if mode:
        p.add_argument("--mode", choices=["oriented", "standard"], required=True)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default $DHG_JOBS or 1)")
    p.add_argument("--force", action="store_true", help="allow n beyond the configured budget")
    p.add_argument("--progress", action="store_true", help="periodic status lines on stderr")


def _pattern_opts(p):
    p.add_argument("--pattern", action="append", help="R3, R4, E, TT4-, TT4, TT:k, DOUBLE")
    p.add_argument("--pattern-file", action="append", help="graph file used as a pattern")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dhg", description="2->1 directed hypergraph extremal toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="generate a construction")
    p.add_argument("name", choices=sorted(CONSTRUCTIONS))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--a", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("check", help="test a graph for pattern copies")
    p.add_argument("graph")
    _pattern_opts(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("count", help="count embeddings and copies")
    p.add_argument("graph")
    _pattern_opts(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("links", help="link graphs and link partitions")
    p.add_argument("graph")
    p.add_argument("--vertex", type=int)
    p.set_defaults(func=cmd_links)

    p = sub.add_parser("degenerate", help="degeneracy test")
    p.add_argument("graph", nargs="?")
    p.add_argument("--pattern", action="append")
    p.set_defaults(func=cmd_degenerate)

    p = sub.add_parser("extremal", help="exact extremal number by search")
    p.add_argument("--n", type=int, required=True)
    _pattern_opts(p)
    p.add_argument("--seed", help="graph file used as the starting incumbent")
    _search_opts(p)
    p.set_defaults(func=cmd_extremal)

    p = sub.add_parser("census", help="isomorphism classes attaining an edge count")
    p.add_argument("--n", type=int, required=True)
    _pattern_opts(p)
    p.add_argument("--target", type=int, required=True)
    _search_opts(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("normalize", help="D/R/T normalisation of an E-free graph")
    p.add_argument("graph")
    p.add_argument("--log", action="store_true", help="include per-step added/removed edges")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("maximizer", help="value table of the R4 bound function")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--to", type=int)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--values", action="store_true")
    p.set_defaults(func=cmd_maximizer)

    p = sub.add_parser("formulas", help="closed-form table")
    p.add_argument("--n-min", type=int, default=0)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--k", type=int, default=4)
    p.set_defaults(func=cmd_formulas)

    p = sub.add_parser("conjecture-tt4", help="compare ex(n, TT4) with the TT4- formula")
    p.add_argument("--n", type=int, required=True)
    _search_opts(p, mode=False)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("two-edge", help="all two-edge graphs and their degeneracy")
    p.set_defaults(func=cmd_two_edge)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "jobs", None) is None and hasattr(args, "jobs"):
            args.jobs = default_jobs()
        inputs, result, stats = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return 2
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except (DhgError, OSError) as exc:
        print(f"error: {exc}", file=err)
        return 1
    report = {"command": args.command, "inputs": inputs, "result": result, "stats": stats,
              "version": __version__}
    json.dump(report, out, indent=2, sort_keys=True)
    out.write("\n")
    return 0


def report_schema(command: str) -> dict:
    """The published JSON schema for a subcommand's report."""
    text = resources.files("dhg").joinpath("schemas", f"{command}.json").read_text("utf-8")
    return json.loads(text)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
