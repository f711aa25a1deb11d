import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dhg.constructions import escher_h2, transitive_tournament
from dhg.errors import BadHeader, BadVertex, DuplicateEdgeLine, ParseError, SyntaxProblem
from dhg.fileformat import parse_graph_file, read_graph, write_graph, write_graph_file
from dhg.graph import DirectedHypergraph, Edge, all_edges, new_graph


def test_parse_examples():
    g = parse_graph_file(b"dhg 1\nn 3\n0 1 -> 2\n")
    assert g.n == 3 and g.edges == {Edge(0, 1, 2)}
    with pytest.raises(BadVertex):
        parse_graph_file(b"dhg 1\nn 3\n0 1 -> 1\n")
    with pytest.raises(DuplicateEdgeLine) as exc:
        parse_graph_file(b"dhg 1\nn 4\n0 1 -> 2\n0 1 -> 2\n")
    assert exc.value.line == 4
    assert "line 4" in str(exc.value)


@pytest.mark.parametrize("text,err", [
    (b"", BadHeader),
    (b"dhg 2\nn 3\n", BadHeader),
    (b"dhg 1\nm 3\n", BadHeader),
    (b"dhg 1\n", BadHeader),
    (b"dhg 1\nn 3\n1 0 -> 2\n", BadVertex),
    (b"dhg 1\nn 3\n0 1 -> 3\n", BadVertex),
    (b"dhg 1\nn 3\n0 1 2\n", SyntaxProblem),
    (b"dhg 1\nn 3\n0 -1 -> 2\n", SyntaxProblem),
    (b"\xff\xfe", SyntaxProblem),
])
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse_graph_file(text)
    assert issubclass(err, ParseError)


def test_comments_and_spacing():
    g = parse_graph_file(b"# hi\ndhg 1\n\nn 4\n# edge\n  2 3->1 \n")
    assert g.edges == {Edge(2, 3, 1)}


def test_write_examples():
    assert write_graph_file(new_graph(2)) == b"dhg 1\nn 2\n"
    assert write_graph_file(transitive_tournament(3)) == b"dhg 1\nn 3\n0 1 -> 2\n"


def test_write_parse_is_canonical():
    messy = b"dhg 1\nn 4\n# x\n1 2 -> 0\n0 1 -> 3\n"
    assert write_graph_file(parse_graph_file(messy)) == b"dhg 1\nn 4\n0 1 -> 3\n1 2 -> 0\n"


def test_file_roundtrip(tmp_path):
    g = escher_h2(6)
    path = tmp_path / "h2.dhg"
    write_graph(path, g)
    assert read_graph(path) == g


graphs = st.integers(0, 7).flatmap(
    lambda n: st.builds(DirectedHypergraph, st.just(n), st.sets(st.sampled_from(all_edges(n)))
                        if n >= 3 else st.just(set())))


@settings(max_examples=200, deadline=None)
@given(graphs)
def test_roundtrip_property(g):
    data = write_graph_file(g)
    assert parse_graph_file(data) == g
    assert write_graph_file(parse_graph_file(data)) == data
