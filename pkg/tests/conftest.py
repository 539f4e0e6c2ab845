import os

import pytest

from efc.graph import Graph, complete_graph, read_graph
from efc.matroid import graphic
from efc.parts import Part

CORPUS = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "corpus")


def corpus(name):
    return os.path.join(CORPUS, name)


def second_k5():
    """K5 whose edges outside the triangle 12 13 23 carry a ``b`` prefix."""
    k5 = complete_graph(5)
    keep = ("12", "13", "23")
    return k5.rename_edges({e: e if e in keep else "b" + e for e in k5.edge_names})


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def two_k5_tree():
    from efc.decomposition import DecompositionTree
    gb = second_k5()
    return DecompositionTree([("A", Part.from_graph("A", "graphic", complete_graph(5))),
                              ("B", Part.from_graph("B", "graphic", gb))],
                             [("A", "B", ("12", "13", "23"))])


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE = {}


def record(number, name, ok, detail):
    line = "acceptance %2d %-28s %s  %s" % (number, name, "PASS" if ok else "FAIL", detail)
    ACCEPTANCE[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
