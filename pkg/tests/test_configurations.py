import itertools

import pytest

from oracles import naive_count
from trifree.coloring import SizeCapExceeded, make_lists, uniform_lists
from trifree.configurations import (
    Configuration,
    NotAPoppy,
    Poppy,
    Stamen,
    check_reducible_abstract,
    check_reducible_concrete,
    connected_subsets,
    find_poppies,
    find_small_4faces,
    find_stamens,
    internally_disjoint,
    poppy_configuration,
    reducible_found,
    scan_reducible_up_to_size,
    stamen_symmetric_difference,
    verify_poppy_constructive,
)
from trifree.corpus import fixture_names, load_fixture
from trifree.embedding import Graph, SubgraphMask, as_graph

EMPTY = SubgraphMask()


def fx(name):
    f = load_fixture(name)
    return f, f.doc.embedding(), f.doc.h()


# -- detection ------------------------------------------------------------------


def test_small_4faces():
    _, cube, _ = fx("cube")
    assert len(find_small_4faces(cube, EMPTY)) == 6
    _, grid, _ = fx("torus_grid")
    assert len(find_small_4faces(grid, EMPTY)) == 16
    faces = find_small_4faces(cube, SubgraphMask(frozenset({0})))
    assert len(faces) == 3 and all(0 not in f for f in faces)


def test_figure_stamen_detected():
    _, g, h = fx("figure_stamen")
    assert g.degree(0) == 6
    assert [s.path for s in find_stamens(g, h, 0)] == [(0, 1, 2, 3)]
    assert find_poppies(g, h) == []


def test_no_stamen_through_major_neighbours():
    # center 0 adjacent to five degree-5 vertices
    star = [(0, i) for i in range(1, 6)]
    extra = [(i, j) for i in range(1, 6) for j in range(6, 10)]
    g = Graph.from_edges(10, star + extra)
    assert all(g.degree(i) == 5 for i in range(1, 6))
    assert find_stamens(g, EMPTY, 0) == []


def test_single_edge_stamen():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (1, 3)])
    assert [s.path for s in find_stamens(g, EMPTY, 0)] == [(0, 1)]


def test_degree_two_vertex_is_a_poppy():
    _, g, _ = fx("c4_4lists")
    poppies = {p.center: p for p in find_poppies(g, EMPTY)}
    assert set(poppies) == {0, 1, 2, 3}
    assert poppies[0].stamens == ()


def test_degree_three_center_with_one_stamen():
    _, g, h = fx("figure_stamen_deg3")
    p = next(p for p in find_poppies(g, h) if p.center == 0)
    assert [s.path for s in p.stamens] == [(0, 1, 2, 3)]


def test_figure_poppy_detected():
    _, g, h = fx("figure_poppy")
    (p,) = [p for p in find_poppies(g, h) if p.center == 0]
    assert g.degree(0) == 6 and len(p.stamens) == 4
    assert sorted(s.path for s in p.stamens) == [(0, 1, 2, 5), (0, 3, 4, 5), (0, 5), (0, 6, 7)]
    assert p.vertices == frozenset(range(8))


def _stamen_oracle(g, h, v, max_vertices):
    """All simple paths from v, filtered by the three defining clauses."""
    out = []
    for length in range(1, max_vertices):
        for rest in itertools.permutations([u for u in range(g.n) if u != v], length):
            path = (v,) + rest
            if not all(g.has_edge(a, b) for a, b in zip(path, path[1:])):
                continue
            tip = path[-1]
            if g.degree(tip) != 3 or tip in h.vertices:
                continue
            if any(g.degree(w) != 4 or w in h.vertices for w in path[1:-1]):
                continue
            out.append(path)
    return sorted(out)


@pytest.mark.parametrize("name", [n for n in fixture_names() if load_fixture(n).doc.n <= 10])
def test_stamens_against_path_filter(name):
    _, g, h = fx(name)
    graph = as_graph(g)
    for v in range(graph.n):
        assert [s.path for s in find_stamens(graph, h, v)] == _stamen_oracle(graph, h, v, 4)


def test_poppy_packings_are_disjoint():
    for name in fixture_names():
        _, g, h = fx(name)
        for p in find_poppies(g, h):
            assert len(p.stamens) >= g.degree(p.center) - 2
            assert not (p.vertices & h.vertices)
            for a, b in itertools.combinations(p.stamens, 2):
                assert internally_disjoint(a, b)


def test_stamen_symmetric_difference_on_corpus():
    """Two stamens sharing their first edge: the leftover path is a stamen."""
    seen = 0
    for name in fixture_names():
        _, g, h = fx(name)
        for v in range(g.n):
            stamens = find_stamens(g, h, v)
            for a, b in itertools.combinations(stamens, 2):
                if a.path[1] == b.path[1] and len(a.edges & b.edges) == 1:
                    seen += 1
                    short = stamen_symmetric_difference(g, h, a, b)
                    assert short is not None
                    assert len(short) <= len(a) + len(b) - 2
    assert seen > 0


# -- reducibility ---------------------------------------------------------------


def test_concrete_examples():
    c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert check_reducible_concrete(c4, EMPTY, range(4), uniform_lists(4, (1, 2, 3, 4))).reducible
    edge = Graph.from_edges(2, [(0, 1)])
    v = check_reducible_concrete(edge, EMPTY, {0}, make_lists([[1], [2]]))
    assert not v.reducible and v.witness["remainder_coloring"] == {"1": 2} and v.witness["extensions"] == 1
    path = Graph.from_edges(3, [(0, 1), (1, 2)])
    assert check_reducible_concrete(path, EMPTY, {1}, uniform_lists(3, (1, 2, 3, 4))).reducible


def test_concrete_rejects_bad_q():
    c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    with pytest.raises(ValueError):
        check_reducible_concrete(c4, EMPTY, [], uniform_lists(4, (1, 2, 3, 4)))
    with pytest.raises(ValueError):
        check_reducible_concrete(c4, SubgraphMask(frozenset({0})), {0}, uniform_lists(4, (1, 2, 3, 4)))


def test_abstract_examples():
    one = Graph.from_edges(1, [])
    assert check_reducible_abstract(Configuration.abstract(one, [2])).reducible
    v = check_reducible_abstract(Configuration.abstract(one, [3]))
    assert not v.reducible and v.witness["colorings"] == 1
    c4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert check_reducible_abstract(Configuration.abstract(c4, [2, 2, 2, 2])).reducible
    guard = check_reducible_abstract(Configuration.abstract(one, [5]))
    assert not guard.reducible and guard.method == "guard"


def test_abstract_methods_agree_small():
    p3 = Graph.from_edges(3, [(0, 1), (1, 2)])
    for ext in itertools.product(range(4), repeat=3):
        c = Configuration.abstract(p3, ext)
        assert check_reducible_abstract(c).reducible == check_reducible_abstract(c, method="exhaustive").reducible


def test_abstract_cap():
    g = Graph.from_edges(11, [(i, i + 1) for i in range(10)])
    with pytest.raises(SizeCapExceeded):
        check_reducible_abstract(Configuration.abstract(g, [2] * 11))


def test_witness_present_iff_not_reducible():
    from trifree.configurations import ReducibilityVerdict

    with pytest.raises(ValueError):
        ReducibilityVerdict(True, {"x": 1})
    with pytest.raises(ValueError):
        ReducibilityVerdict(False, None)


def test_configuration_deficits():
    _, g, _ = fx("figure_poppy")
    c = Configuration.from_subgraph(g, range(8))
    assert c.residual_sizes() == (2, 2, 2, 2, 2, 4, 2, 2)


def test_abstract_implies_concrete_on_corpus():
    """The worst case over lists covers every concrete list assignment."""
    checked = 0
    for name in fixture_names():
        f, g, h = fx(name)
        if f.doc.lists is None or g.n > 10 or any(len(l) < 4 for l in f.doc.lists):
            continue
        lists = f.doc.list_assignment()
        for q in connected_subsets(as_graph(g), [v for v in range(g.n) if v not in h.vertices], 3):
            if check_reducible_abstract(Configuration.from_subgraph(g, q)).reducible:
                checked += 1
                assert check_reducible_concrete(g, h, q, lists).reducible
    assert checked > 10


def test_concrete_verdict_against_naive():
    _, g, h = fx("c4_pendant")
    graph = as_graph(g)
    lists = load_fixture("c4_pendant").doc.list_assignment()
    for q in connected_subsets(graph, [v for v in range(5) if v not in h.vertices], 3):
        rest = [v for v in range(5) if v not in q]
        sub, index = graph.induced(rest)
        expected = True
        for col in itertools.product(*[sorted(lists[v]) for v in rest]):
            phi = dict(zip(rest, col))
            if any(phi[a] == phi[b] for a, b in graph.edges() if a in phi and b in phi):
                continue
            if naive_count(5, graph.edges(), lists, phi) < 2:
                expected = False
                break
        assert check_reducible_concrete(graph, h, q, lists).reducible == expected


# -- poppies --------------------------------------------------------------------


def test_constructive_small_poppies():
    lone = Graph.from_edges(3, [(0, 1), (0, 2)])
    p = Poppy(0, ())
    assert verify_poppy_constructive(p, Configuration.from_subgraph(lone, [0]))
    _, g, h = fx("figure_stamen_deg3")
    p = next(p for p in find_poppies(g, h) if p.center == 0)
    assert verify_poppy_constructive(p, poppy_configuration(g, p))


def test_figure_poppy_both_procedures():
    _, g, h = fx("figure_poppy")
    p = next(p for p in find_poppies(g, h) if p.center == 0)
    c = poppy_configuration(g, p)
    assert verify_poppy_constructive(p, c)
    assert check_reducible_abstract(c).reducible


def test_not_a_poppy():
    _, g, h = fx("figure_stamen")
    c = Configuration.from_subgraph(g, [0, 1, 2, 3])
    with pytest.raises(NotAPoppy):
        verify_poppy_constructive(Poppy(0, (Stamen((0, 1, 2, 3)),)), c)


# -- scan -----------------------------------------------------------------------


def test_scan_degree_two_vertex():
    _, g, _ = fx("c4_4lists")
    scan = scan_reducible_up_to_size(g, EMPTY, 1)
    assert reducible_found(scan) == [(0,), (1,), (2,), (3,)]


def test_scan_five_regular_single_vertices():
    # K_{5,5} is 5-regular and triangle-free
    g = Graph.from_edges(10, [(i, 5 + j) for i in range(5) for j in range(5)])
    scan = scan_reducible_up_to_size(g, EMPTY, 1)
    assert len(scan) == 10 and all(not v.reducible and v.method == "guard" for _, v in scan)


def test_scan_c4_with_h():
    _, g, h = fx("c4_H1")
    scan = dict(scan_reducible_up_to_size(g, h, 3))
    assert set(scan) == {(1,), (2,), (3,), (1, 2), (2, 3), (1, 2, 3)}
    # every vertex outside H has degree two, so each subset keeps two spare colours somewhere
    assert all(v.reducible for v in scan.values())


def test_scan_parallel_matches():
    _, g, h = fx("prism5_H1")
    serial = scan_reducible_up_to_size(g, h, 3)
    parallel = scan_reducible_up_to_size(g, h, 3, jobs=2)
    assert [(q, v.reducible) for q, v in serial] == [(q, v.reducible) for q, v in parallel]


def test_hypothesis_fixtures_have_no_small_reducible():
    for name in ("cube_H7", "torus_grid_H"):
        _, g, h = fx(name)
        assert reducible_found(scan_reducible_up_to_size(g, h, 8)) == []
