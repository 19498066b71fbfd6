import itertools
import json
import subprocess
import sys
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trifree.cli import EXIT_CAP, EXIT_FALSE, EXIT_INPUT, EXIT_PASS, main, run_command
from trifree.corpus import built_fixtures, census_text, cycle_rotation, fixture_names, fixture_text, load_fixture, manifest
from trifree.embedding import Graph
from trifree.formats import (
    DocumentSyntaxError,
    EmbeddingDocument,
    Graph6Syntax,
    RotationMismatch,
    RunReport,
    ValidationError,
    decode_graph6,
    digest,
    encode_graph6,
    import_graph6,
    parse_embedding,
    parse_fraction,
    require_k_lists,
    serialize,
)

C4_JSON = {"version": "1", "n": 4, "rotations": [[1, 3], [2, 0], [3, 1], [0, 2]]}


def doc_text(**changes):
    data = dict(C4_JSON)
    data.update(changes)
    return json.dumps(data)


# -- embedding documents --------------------------------------------------------


@pytest.mark.parametrize("name", fixture_names())
def test_round_trip_fixtures(name):
    doc = load_fixture(name).doc
    again = parse_embedding(serialize(doc))
    assert again == doc
    assert serialize(again) == serialize(doc)


def test_bundled_files_match_builders():
    built = built_fixtures()
    assert sorted(built) == fixture_names()
    for name, f in built.items():
        assert parse_embedding(fixture_text(name)) == f.doc
        assert manifest()[name] == f.manifest_entry()


@st.composite
def documents(draw):
    n = draw(st.integers(1, 7))
    pairs = list(itertools.combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    nbrs = [[] for _ in range(n)]
    for a, b in edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    rot = tuple(tuple(draw(st.permutations(r))) for r in nbrs)
    hv = tuple(sorted(draw(st.sets(st.integers(0, n - 1)))))
    he = tuple(sorted(e for e in edges if e[0] in hv and e[1] in hv and draw(st.booleans())))
    lists = None
    pre = ()
    if draw(st.booleans()):
        lists = tuple(tuple(sorted(draw(st.sets(st.integers(1, 9), min_size=1, max_size=5)))) for _ in range(n))
        pre = tuple((v, draw(st.sampled_from(lists[v]))) for v in hv)
    return EmbeddingDocument(n=n, rotations=rot, h_vertices=hv, h_edges=he, lists=lists, precoloring=pre)


@settings(max_examples=150, deadline=None)
@given(documents())
def test_round_trip_property(doc):
    assert parse_embedding(serialize(doc)) == doc


def test_unknown_version():
    with pytest.raises(ValidationError, match="version"):
        parse_embedding(doc_text(version="7"))


def test_unknown_field():
    with pytest.raises(ValidationError) as err:
        parse_embedding(doc_text(colour="red"))
    assert err.value.path == "colour"


def test_h_edge_endpoint_outside_h():
    with pytest.raises(ValidationError) as err:
        parse_embedding(doc_text(H_vertices=[0], H_edges=[[0, 1]]))
    assert err.value.path == "H_edges[0]" and "endpoint 1" in str(err.value)


def test_h_edge_not_in_graph():
    with pytest.raises(ValidationError, match="not an edge"):
        parse_embedding(doc_text(H_vertices=[0, 2], H_edges=[[0, 2]]))


def test_bad_rotation():
    with pytest.raises(ValidationError) as err:
        parse_embedding(doc_text(rotations=[[1], [2, 0], [3, 1], [0, 2]]))
    assert err.value.path == "rotations"


def test_list_problems():
    with pytest.raises(ValidationError, match="repeated"):
        parse_embedding(doc_text(lists=[[1, 1], [1, 2], [1, 2], [1, 2]]))
    with pytest.raises(ValidationError, match="empty"):
        parse_embedding(doc_text(lists=[[], [1, 2], [1, 2], [1, 2]]))
    with pytest.raises(ValidationError, match="not in the list"):
        parse_embedding(doc_text(lists=[[1, 2]] * 4, H_vertices=[0], precoloring={"0": 3}))


def test_require_k_lists_names_vertex():
    doc = parse_embedding(doc_text(lists=[[1, 2, 3, 4], [1, 2, 3, 4], [1, 2, 3], [1, 2, 3, 4]]))
    with pytest.raises(ValidationError) as err:
        require_k_lists(doc, 4)
    assert err.value.path == "lists[2]" and "vertex 2" in str(err.value)
    require_k_lists(doc, 3)


def test_syntax_error_has_position():
    with pytest.raises(DocumentSyntaxError, match=r"line 3 column"):
        parse_embedding('{\n  "n": 4,\n  "rotations": [[1, 3],,]\n}')


def test_parse_fraction():
    assert parse_fraction("4/195") == Fraction(4, 195) and parse_fraction("3") == 3
    with pytest.raises(ValueError):
        parse_fraction("0.5")


# -- graph6 ---------------------------------------------------------------------


def _nx_to_ours(g):
    return Graph.from_edges(g.number_of_nodes(), [tuple(sorted(e)) for e in g.edges()])


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 70), st.floats(0, 1), st.integers(0, 10**6))
def test_graph6_against_networkx(n, p, seed):
    g = nx.gnp_random_graph(n, p, seed=seed)
    theirs = nx.to_graph6_bytes(g, header=False).decode().strip()
    ours = encode_graph6(_nx_to_ours(g))
    assert ours == theirs
    back = decode_graph6(theirs)
    assert sorted(back.edges()) == sorted(tuple(sorted(e)) for e in g.edges())


def test_graph6_header_and_errors():
    assert decode_graph6(">>graph6<<Cr").n == 4
    with pytest.raises(Graph6Syntax):
        decode_graph6("C")
    with pytest.raises(Graph6Syntax):
        decode_graph6("C r")


def test_graph6_batch_preserves_order():
    graphs = [nx.cycle_graph(k) for k in range(4, 14)]
    text = "".join(nx.to_graph6_bytes(g, header=False).decode() for g in graphs)
    docs = import_graph6(text)
    assert [d.n for d in docs] == list(range(4, 14))
    assert all(d.embedding().graph.num_edges == d.n for d in docs)


def test_rotation_mismatch():
    text = encode_graph6(Graph.from_edges(5, [(i, (i + 1) % 5) for i in range(5)]))
    with pytest.raises(RotationMismatch):
        import_graph6(text, [cycle_rotation(4)])
    with pytest.raises(RotationMismatch):
        import_graph6(text, [[[1, 4], [0, 2], [1, 3], [2, 4], [3, 1]]])


def test_graph6_with_rotations_equals_native():
    text = encode_graph6(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)]))
    (doc,) = import_graph6(text, C4_JSON["rotations"])
    assert doc == parse_embedding(json.dumps(C4_JSON))


def test_census_size():
    docs = import_graph6(census_text())
    assert len(docs) == 143
    assert all(nx.is_connected(nx.Graph([(a, b) for a, r in enumerate(d.rotations) for b in r]) if d.n > 1 else nx.path_graph(1)) for d in docs)


# -- reports and the command line -----------------------------------------------


def test_report_serialisation():
    r = RunReport("x", digest("a"), {"q": Fraction(1, 3), "s": {2, 1}}, 0)
    out = json.loads(r.dumps())
    assert out["result"] == {"q": "1/3", "s": [1, 2]} and out["inputs_digest"].startswith("sha256:")
    assert digest("a", "b") != digest("ab")


@pytest.mark.parametrize(
    "argv,status",
    [
        (["count", "c4_2lists", "--threshold", "2"], EXIT_PASS),
        (["count", "c4_2lists", "--threshold", "3"], EXIT_FALSE),
        (["count", "c5_2lists", "--threshold", "1"], EXIT_FALSE),
        (["count", "torus_grid"], EXIT_CAP),
        (["faces", "cube"], EXIT_PASS),
        (["genus", "torus_grid"], EXIT_PASS),
        (["check-reducible", "c4_4lists", "--q", "0", "1", "2", "3"], EXIT_PASS),
        (["check-reducible", "c4_4lists", "--q", "0", "--abstract"], EXIT_PASS),
        (["find-configs", "figure_poppy"], EXIT_PASS),
        (["discharge", "cube"], EXIT_FALSE),
        (["discharge", "cube_H7", "--scan-size", "8"], EXIT_PASS),
        (["discharge", "cube", "--gamma", "0.5"], EXIT_INPUT),
        (["verify-bound", "c4_H1"], EXIT_PASS),
        (["verify-bound", "k4"], EXIT_INPUT),
        (["verify-bound", "c4_H1", "--epsilon", "2", "--alpha", "0"], EXIT_FALSE),
        (["criticality", "p3_critical", "--epsilon", "0"], EXIT_PASS),
        (["criticality", "h_plus_isolated"], EXIT_FALSE),
        (["criticality", "cube"], EXIT_CAP),
        (["scan", "c4_H1"], EXIT_FALSE),
        (["scan", "cube_H7", "--max-size", "2"], EXIT_PASS),
        (["faces", "/nonexistent/file.json"], EXIT_INPUT),
        (["no-such-command", "cube"], EXIT_INPUT),
    ],
)
def test_exit_codes(argv, status):
    report, code = run_command(argv)
    assert code == status
    if report is not None:
        assert report.exit_status == status


def test_main_writes_json(capsys):
    assert main(["count", "c4_4lists"]) == EXIT_PASS
    out = json.loads(capsys.readouterr().out)
    assert out["command"] == "count" and out["result"]["count"] == 84


def test_fixture_path_stem_resolves():
    a, _ = run_command(["genus", "corpus/cube.json"])
    b, _ = run_command(["genus", "cube"])
    assert a.dumps() == b.dumps()


def test_reports_are_deterministic():
    for argv in (["discharge", "figure_rule"], ["find-configs", "figure_poppy"], ["scan", "prism5_H1", "--concrete"]):
        first = run_command(argv)[0].dumps()
        assert all(run_command(argv)[0].dumps() == first for _ in range(2))


def test_parallel_flag_does_not_change_result():
    a, _ = run_command(["count", "cube"])
    b, _ = run_command(["count", "cube", "--jobs", "2"])
    assert a.to_json()["result"] == b.to_json()["result"]


def test_digest_tracks_flags_and_input():
    a = run_command(["discharge", "cube"])[0].inputs_digest
    b = run_command(["discharge", "cube", "--strict-rule1"])[0].inputs_digest
    c = run_command(["discharge", "cube_H1"])[0].inputs_digest
    assert len({a, b, c}) == 3


def test_graph6_input(tmp_path):
    g6 = tmp_path / "c.g6"
    g6.write_text(encode_graph6(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])) + "\n" + encode_graph6(Graph.from_edges(2, [(0, 1)])) + "\n")
    report, code = run_command(["genus", str(g6), "--graph6"])
    assert code == EXIT_PASS and len(report.result) == 2
    rot = tmp_path / "rot.json"
    rot.write_text(json.dumps([C4_JSON["rotations"], [[1], [0]]]))
    with_rot, code = run_command(["genus", str(g6), "--graph6", "--rotations", str(rot)])
    assert code == EXIT_PASS and with_rot.inputs_digest != report.inputs_digest
    rot.write_text(json.dumps([C4_JSON["rotations"]]))
    assert run_command(["genus", str(g6), "--graph6", "--rotations", str(rot)])[1] == EXIT_INPUT


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "trifree", "faces", "c4_4lists"], capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["command"] == "faces"
