import json

import pytest
from hypothesis import given

from partcolor import (
    build_complete,
    build_o_n,
    color_via_partition,
    extract_critical_structure,
    find_partition_t1,
    find_partition_t2,
    isomorphic,
    omega_d,
)
from partcolor.graph import build_cycle, build_path, build_petersen
from partcolor.io import (
    GraphFormatError,
    SchemaError,
    certificate_document,
    document_certificate,
    format_graph,
    graph_digest,
    parse_graph,
    parse_graph_text,
    read_certificate,
    reverify,
    write_certificate,
    write_graph,
)

from conftest import graphs


def test_dimacs_triangle():
    g = parse_graph_text("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n", "dimacs")
    assert isomorphic(g, build_complete(3))


def test_edge_list_path():
    g = parse_graph_text("0 1\n1 2", "edge-list")
    assert g == build_path(3)


def test_dimacs_comments_and_duplicates():
    g = parse_graph_text("c a comment\np edge 3 4\ne 1 2\ne 2 1\ne 2 3\n\n", "dimacs")
    assert g.edges() == [(0, 1), (1, 2)]


def test_dimacs_loop_rejected():
    with pytest.raises(GraphFormatError) as err:
        parse_graph_text("p edge 2 1\ne 1 1\n", "dimacs")
    assert err.value.line == 2


@pytest.mark.parametrize("text,line", [
    ("p edge 2 1\ne 1 x\n", 2),
    ("e 1 2\n", 1),
    ("p edge 2 1\ne 1 3\n", 2),
    ("p edge 2 1\nq 1 2\n", 2),
    ("p edge 2 1\ne 1\n", 2),
])
def test_dimacs_malformed_lines(text, line):
    with pytest.raises(GraphFormatError) as err:
        parse_graph_text(text, "dimacs")
    assert err.value.line == line and f"line {line}" in str(err.value)


def test_dimacs_missing_header():
    with pytest.raises(GraphFormatError):
        parse_graph_text("c nothing\n", "dimacs")


def test_edge_list_errors():
    with pytest.raises(GraphFormatError):
        parse_graph_text("0 0\n", "edge-list")
    with pytest.raises(GraphFormatError):
        parse_graph_text("0 1 2\n", "edge-list")
    with pytest.raises(GraphFormatError):
        parse_graph_text("n 2\n0 5\n", "edge-list")


def test_edge_list_header_keeps_isolated_vertices():
    g = parse_graph_text("# comment\nn 5\n0 1  # trailing\n", "edge-list")
    assert g.n == 5 and g.num_edges() == 1


def test_unknown_format():
    with pytest.raises(GraphFormatError):
        parse_graph_text("", "graph6")


@given(graphs(max_n=10))
def test_round_trip_both_formats(g):
    assert parse_graph_text(format_graph(g, "dimacs"), "dimacs") == g
    assert parse_graph_text(format_graph(g, "edge-list"), "edge-list") == g


def test_files_by_suffix(tmp_path):
    g = build_petersen()
    write_graph(g, tmp_path / "p.col")
    write_graph(g, tmp_path / "p.txt")
    assert (tmp_path / "p.col").read_text().startswith("p edge 10 15")
    assert parse_graph(tmp_path / "p.col") == g == parse_graph(tmp_path / "p.txt")


def test_digest_depends_on_edges():
    assert graph_digest(build_cycle(5)) != graph_digest(build_path(5))
    assert graph_digest(build_cycle(5)) == graph_digest(parse_graph_text(format_graph(build_cycle(5)), "dimacs"))


# --- certificate documents --------------------------------------------------

def _docs():
    c5, k5, o5 = build_cycle(5), build_complete(5), build_o_n(5)
    yield c5, certificate_document(c5, find_partition_t1(c5, (2, 2), 4), "partition")
    yield k5, certificate_document(k5, find_partition_t1(k5, (2, 2), 4, keep_trace=True), "partition")
    yield c5, certificate_document(c5, find_partition_t2(c5, (1, 2), 2), "degen")
    yield o5, certificate_document(o5, color_via_partition(o5, (2, 2), 4), "color", omega_d=omega_d(o5, 4))
    col = color_via_partition(c5, (2, 2), 4)
    yield c5, certificate_document(c5, col, "color", {"max_colors": 4}, max_colors=4)
    yield o5, certificate_document(o5, extract_critical_structure(o5, 2), "structure")


@pytest.mark.parametrize("g,doc", list(_docs()))
def test_document_round_trip(tmp_path, g, doc):
    assert doc["checker"]["passed"]
    path = tmp_path / "cert.json"
    write_certificate(doc, path)
    back = read_certificate(path)
    assert back == json.loads(json.dumps(doc))
    ok, clauses = reverify(g, back)
    assert ok == doc["checker"]["passed"]
    assert [c.name for c in clauses] == [c["name"] for c in doc["checker"]["clauses"]]


def test_special_document_round_trip_is_structural():
    k5 = build_complete(5)
    cert = find_partition_t1(k5, (2, 2), 4, keep_trace=True)
    doc = json.loads(json.dumps(certificate_document(k5, cert, "partition")))
    assert document_certificate(doc) == cert


def test_tampered_file_fails(tmp_path):
    k5 = build_complete(5)
    doc = certificate_document(k5, find_partition_t1(k5, (2, 2), 4), "partition")
    path = tmp_path / "cert.json"
    write_certificate(doc, path)
    data = json.loads(path.read_text())
    gone = data["sets"]["F"][0].pop()
    data["sets"]["Q"].remove(gone)
    path.write_text(json.dumps(data))
    ok, clauses = reverify(k5, read_certificate(path))
    assert not ok
    assert {"q_size", "clique_sizes"} <= {c.name for c in clauses if not c.passed}


def test_wrong_graph_rejected():
    k5 = build_complete(5)
    doc = certificate_document(k5, find_partition_t1(k5, (2, 2), 4), "partition")
    with pytest.raises(SchemaError):
        reverify(build_cycle(5), doc)


def test_missing_field(tmp_path):
    c5 = build_cycle(5)
    doc = certificate_document(c5, find_partition_t1(c5, (2, 2), 4), "partition")
    del doc["input_digest"]
    with pytest.raises(SchemaError):
        write_certificate(doc, tmp_path / "x.json")
    (tmp_path / "y.json").write_text(json.dumps(doc))
    with pytest.raises(SchemaError):
        read_certificate(tmp_path / "y.json")


def test_schema_version_mismatch(tmp_path):
    c5 = build_cycle(5)
    doc = certificate_document(c5, find_partition_t1(c5, (2, 2), 4), "partition")
    doc["schema_version"] = 99
    (tmp_path / "z.json").write_text(json.dumps(doc))
    with pytest.raises(SchemaError, match="schema version"):
        read_certificate(tmp_path / "z.json")


def test_not_json(tmp_path):
    (tmp_path / "bad.json").write_text("{not json")
    with pytest.raises(SchemaError):
        read_certificate(tmp_path / "bad.json")


def test_checker_verdict_only_after_check():
    c5 = build_cycle(5)
    doc = certificate_document(c5, find_partition_t1(c5, (2, 2), 4), "partition", check=False)
    assert "checker" not in doc
