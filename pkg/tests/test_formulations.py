import numpy as np
import pytest

from efc.decomposition import DecompositionTree, compose_tree
from efc.errors import NotTU, NoRepresentation
from efc.formulations import (check_tu, circuit_dominant_ef, cographic_independence_ef, cycle_signing,
                              explicit_flat_ef, generic_pair_formulation, graphic_independence_ef,
                              pair_formulation_cographic, pair_formulation_graphic, regular_pipeline,
                              tu_representation)
from efc.graph import complete_bipartite, complete_graph, cycle_graph
from efc.matroid import circuit_masks, cographic, from_binary_matrix, graphic, r10
from efc.parts import Part
from efc.verify import (check_circuit_dominant, check_mutations, check_pair_sandwich,
                        check_projection_equality, check_size_bounds)


def fano():
    cols = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)]
    rows = [[c[i] for c in cols] for i in range(3)]
    return from_binary_matrix(rows, ["f%d" % j for j in range(1, 8)])


def test_graphic_k4():
    g = complete_graph(4)
    assert check_projection_equality(graphic_independence_ef(g), graphic(g), 50, 1).ok


def test_graphic_disconnected():
    g = cycle_graph(3).rename_vertices({})
    h = cycle_graph(4, prefix="f").rename_vertices({str(i): "v%d" % i for i in range(1, 5)})
    from efc.graph import Graph
    both = Graph(list(g.edges) + list(h.edges))
    assert check_projection_equality(graphic_independence_ef(both), graphic(both), 30, 2).ok


def test_cographic_k33():
    g = complete_bipartite(3, 3)
    assert check_projection_equality(cographic_independence_ef(g), cographic(g), 50, 3).ok


def test_explicit_flats_on_fano():
    # not regular, but the flat description holds for every matroid
    m = fano()
    assert check_projection_equality(explicit_flat_ef(m), m, 50, 4).ok


def test_pair_sandwich_graphic_and_generic():
    g = complete_graph(4)
    tri = [("12", "13", "23")]
    assert check_pair_sandwich(pair_formulation_graphic(g, tri), graphic(g), 30, 5).ok
    assert check_pair_sandwich(generic_pair_formulation(graphic(g), tri), graphic(g), 30, 5).ok


def test_pair_sandwich_cographic():
    g = complete_bipartite(3, 3)
    assert check_pair_sandwich(pair_formulation_cographic(g, ["a1"]), cographic(g), 30, 6).ok


def _pair_tree(kind, g, other_g, shared):
    a = Part.from_graph("A", kind, g)
    b = Part.from_graph("B", kind, other_g)
    return DecompositionTree([("A", a), ("B", b)], [("A", "B", tuple(shared))])


def test_pipeline_two_sum():
    g = complete_graph(4)
    h = g.rename_edges({e: e if e == "12" else "h" + e for e in g.edge_names})
    t = _pair_tree("graphic", g, h, ["12"])
    ef = regular_pipeline(t)
    assert ef.tags["case"] == "two_sum"
    assert check_projection_equality(ef, compose_tree(t), 40, 7).ok


def test_pipeline_one_sum():
    g = complete_graph(4)
    h = g.rename_edges({e: "h" + e for e in g.edge_names}).rename_vertices({v: "w" + v for v in g.vertices})
    t = _pair_tree("graphic", g, h, [])
    ef = regular_pipeline(t)
    assert ef.tags["case"] == "one_sum"
    assert check_projection_equality(ef, compose_tree(t), 40, 8).ok


def test_pipeline_cographic_centre():
    g = complete_bipartite(3, 3)
    star = ("11", "12", "13")
    h = g.rename_edges({e: e if e in star else "h" + e for e in g.edge_names})
    t = _pair_tree("cographic", g, h, star)
    ef = regular_pipeline(t)
    assert ef.tags["star"]["center"] == "A"
    assert check_projection_equality(ef, compose_tree(t), 40, 9).ok
    assert check_size_bounds(ef).ok


def test_circuit_dominant_k4():
    p = Part.from_graph("K4", "graphic", complete_graph(4))
    ef = circuit_dominant_ef(p)
    assert ef.tags["pieces"] == 6
    assert check_circuit_dominant(ef, p.matroid, 30, 10).ok


def test_tu_representations():
    for p in (Part.from_graph("a", "graphic", complete_graph(5)),
              Part.from_graph("b", "cographic", complete_graph(5)), Part.r10("r")):
        a, _ = tu_representation(p)
        assert check_tu(a, None)
    with pytest.raises(NotTU):
        check_tu(np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]]))
    with pytest.raises(NoRepresentation):
        tu_representation(Part("f", "binary", fano()))


def test_cycle_signing_on_circuits():
    p = Part.r10("r")
    a, _ = tu_representation(p)
    for c in circuit_masks(p.matroid)[:10]:
        idx = [j for j in range(10) if (int(c) >> j) & 1]
        psi = cycle_signing(a, idx)
        assert psi is not None
        assert not (a @ np.array(psi)).any()
        assert sorted(j for j, v in enumerate(psi) if v) == idx


def test_mutation_caught_on_k4():
    g = complete_graph(4)
    rep = check_mutations(graphic_independence_ef(g), graphic(g), ["ctotal", "cpl.12"], 30, 11)
    assert rep.ok


@pytest.mark.slow
def test_pipeline_two_triangle_star():
    from test_decomposition import three_k5_path
    t = three_k5_path()
    ef = regular_pipeline(t)
    assert ef.tags["star"]["center"] == "B" and len(ef.tags["star"]["count_pairs"]) == 2
    assert check_projection_equality(ef, compose_tree(t), 20, 12).ok
    assert check_size_bounds(ef).ok
