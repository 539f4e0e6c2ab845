import itertools
from fractions import Fraction

import pytest

from efc.decomposition import find_separation
from efc.graph import complete_bipartite, complete_graph, cycle_graph, petersen
from efc.matroid import (circuit_masks, cographic, dual, find_isomorphism, graphic, independent_masks, r10)
from efc.verify import XorShift64, greedy_max_independent, min_weight_circuit
from efc.errors import NegativeWeight, NoCircuit
from efc.matroid import BinaryMatroid


def _brute_max(m, w):
    best = Fraction(0)
    for mask in independent_masks(m):
        mask = int(mask)
        best = max(best, sum(Fraction(w[m.elements[j]]) for j in range(m.n) if (mask >> j) & 1))
    return best


MATROIDS = [graphic(complete_graph(4)), graphic(complete_graph(5)), cographic(complete_graph(5)),
            graphic(complete_bipartite(3, 3)), r10(), graphic(cycle_graph(5))]


@pytest.mark.parametrize("m", MATROIDS, ids=["K4", "K5", "cK5", "K33", "R10", "C5"])
def test_greedy_equals_exhaustive(m):
    rng = XorShift64(11)
    for _ in range(25):
        w = rng.weights(m.elements, -5, 5)
        assert greedy_max_independent(m, w) == _brute_max(m, w)


def test_greedy_trivial_cases():
    m = graphic(complete_graph(4))
    assert greedy_max_independent(m, {e: -1 for e in m.elements}) == 0
    assert greedy_max_independent(m, {e: 1 for e in m.elements}) == 3


def test_min_weight_circuit_examples():
    assert min_weight_circuit(graphic(complete_graph(4)), {e: 1 for e in complete_graph(4).edge_names}) == 3
    ck5 = cographic(complete_graph(5))
    assert min_weight_circuit(ck5, {e: 1 for e in ck5.elements}) == 4
    assert min_weight_circuit(ck5, {e: 0 for e in ck5.elements}) == 0
    with pytest.raises(NegativeWeight):
        min_weight_circuit(ck5, {e: -1 for e in ck5.elements})
    free = BinaryMatroid(["a", "b"], [1, 2])
    with pytest.raises(NoCircuit):
        min_weight_circuit(free, {"a": 1, "b": 1})


def test_r10_structure():
    m = r10()
    assert (m.n, m.rank) == (10, 5)
    assert find_separation(m, 1) is None
    assert find_separation(m, 2) is None
    assert find_isomorphism(m, dual(m)) is not None
    # every circuit has 4 or 6 elements
    sizes = {bin(int(c)).count("1") for c in circuit_masks(m)}
    assert sizes == {4, 6}


def test_petersen_counts():
    m = graphic(petersen())
    assert (m.n, m.rank) == (15, 9)
