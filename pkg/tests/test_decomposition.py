import pytest

from efc.decomposition import (CutFamily, DecompositionTree, centroid, compose_tree, delta_sum,
                               detect_and_fix_bad_cuts, find_separation, is_good_cut, parse_tree,
                               star_decompose, swap_parallel, three_cuts, uncross_cuts)
from efc.errors import InvalidTree, InvalidTriangle, NotParallel, SingleNode, TooSmallParts
from efc.graph import Graph, complete_bipartite, complete_graph, cycle_graph
from efc.matroid import cographic, cycles_and_circuits, graphic
from efc.parts import Part
from efc.verify import check_3sum_bases, check_3sum_flats

from conftest import corpus, second_k5


def crossing_graph():
    edges = [("p12", "p1", "p2"), ("q12", "q1", "q2"), ("r12", "r1", "r2"), ("s12", "s1", "s2"),
             ("p1q1", "p1", "q1"), ("p2q2", "p2", "q2"), ("r2s1", "r2", "s1"), ("p1r1", "p1", "r1"),
             ("p2r2", "p2", "r2"), ("q2s2", "q2", "s2")]
    return Graph(edges)


def test_two_k5_sum_sizes():
    m, kind = delta_sum(graphic(complete_graph(5)), graphic(second_k5()))
    assert (m.n, m.rank, kind) == (14, 6, 3)


def test_two_sum_of_triangles_is_square():
    a = graphic(cycle_graph(3))
    b = graphic(Graph([("e1", "x", "y"), ("g2", "y", "z"), ("g3", "z", "x")]))
    m, kind = delta_sum(a, b)
    assert kind == 2
    assert [sorted(c) for c in cycles_and_circuits(m)] == [sorted(m.elements)]
    assert m.rank == 3


def test_sum_rejects_bad_overlaps():
    k4 = graphic(complete_graph(4))
    with pytest.raises(TooSmallParts):
        delta_sum(k4, graphic(complete_graph(4).rename_edges({"34": "x34", "14": "x14", "24": "x24"})))
    k5 = complete_graph(5)
    other = k5.rename_edges({e: e if e in ("12", "13", "34") else "b" + e for e in k5.edge_names})
    with pytest.raises(InvalidTriangle):
        delta_sum(graphic(k5), graphic(other))


def test_find_separation():
    m, _ = delta_sum(graphic(complete_graph(5)), graphic(second_k5()))
    a, b = find_separation(m, 3)
    assert {len(a), len(b)} == {7}
    assert find_separation(graphic(complete_graph(4)), 1) is None


def test_tree_parse_compose_and_star(two_k5_tree):
    t = parse_tree(open(corpus("two_k5.dectree")).read(), base=corpus(""))
    assert compose_tree(t).same_cycle_space(compose_tree(two_k5_tree))
    assert centroid(two_k5_tree) == "A"
    sd = star_decompose(two_k5_tree)
    sd.check()
    assert sd.k == 1 and sd.center_id == "A" and sd.leaves[0].id == "B"


def test_single_node_and_bad_edges():
    p = Part.from_graph("A", "graphic", complete_graph(5))
    with pytest.raises(SingleNode):
        star_decompose(DecompositionTree([("A", p)], []))
    q = Part.from_graph("B", "graphic", second_k5())
    with pytest.raises(InvalidTree):
        DecompositionTree([("A", p), ("B", q)], [("A", "B", ("12", "13", "b45"))])


def test_swap_parallel_requires_parallel(two_k5_tree):
    with pytest.raises(NotParallel):
        swap_parallel(two_k5_tree, "A", "12", "45")


def test_3sum_structure_on_two_k5():
    a, b = graphic(complete_graph(5)), graphic(second_k5())
    assert check_3sum_bases(a, b).ok
    assert check_3sum_bases(b, a).ok
    assert check_3sum_flats(a, b).ok


def test_uncrossing_crossing_instance():
    g = crossing_graph()
    fam = CutFamily(g, [("p1q1", "p2q2", "r2s1"), ("p1r1", "p2r2", "q2s2")])
    assert fam.crossing_pairs() == 1 and fam.crosses(0, 1)
    history = []
    out = uncross_cuts(g, fam, history)
    assert out.crossing_pairs() == 0
    counts = [1] + [h[-1] for h in history]
    assert all(x > y for x, y in zip(counts, counts[1:]))
    m = cographic(g)
    for _, _, e, f, _ in history:
        assert m.cols[m.index[e]] == m.cols[m.index[f]]


def test_k33_cuts_are_good():
    g = complete_bipartite(3, 3)
    cuts = three_cuts(g)
    assert len(cuts) == 6
    assert all(is_good_cut(g, c) for c in cuts)


def test_bad_cut_split_composes_back():
    edges = []
    for s in "ab":
        for i in range(1, 5):
            for j in range(i + 1, 5):
                edges.append(("%s%d%d" % (s, i, j), "%s%d" % (s, i), "%s%d" % (s, j)))
    edges += [("m1", "a1", "b1"), ("m2", "a2", "b2"), ("m3", "a3", "b3")]
    g = Graph(edges)
    _, fam, splits = detect_and_fix_bad_cuts(g, CutFamily(g, [("m1", "m2", "m3")]))
    assert len(splits) == 1
    assert splits[0].compose().same_cycle_space(cographic(g))


def three_k5_path():
    """K5 - K5 - K5 glued along two disjoint triangles of the middle copy."""
    k5 = complete_graph(5)
    c = k5.rename_edges({e: {"14": "b14", "15": "b15", "45": "b45"}.get(e, "c" + e) for e in k5.edge_names})
    parts = [Part.from_graph("A", "graphic", k5), Part.from_graph("B", "graphic", second_k5()),
             Part.from_graph("C", "graphic", c)]
    return DecompositionTree([(p.id, p) for p in parts],
                             [("A", "B", ("12", "13", "23")), ("B", "C", ("b14", "b15", "b45"))])


def test_fold_order_invariance():
    t = three_k5_path()
    a = compose_tree(t, order=[0, 1])
    b = compose_tree(t, order=[1, 0])
    assert a.elements == b.elements
    assert a.same_cycle_space(b)
    assert (a.n, a.rank) == (18, 8)


def test_three_part_star_uses_middle_centre():
    sd = star_decompose(three_k5_path())
    sd.check()
    assert sd.center_id == "B" and sd.k == 2
