from pathlib import Path

import networkx as nx
import numpy as np
import pytest

from ramanujan_rg.generators import generate, random_regular
from ramanujan_rg.graph import Graph

FIXTURES = Path(__file__).parent / "fixtures"

CATALOG_SPECS = [
    "cycle:5", "cycle:6", "cycle:7", "complete:5", "complete:6", "bipartite:3",
    "petersen", "hypercube:3", "circulant:8,(1,2)",
]


def catalog():
    """Named graphs plus 10 seeded random cubic graphs on 10 vertices."""
    graphs = [generate(s) for s in CATALOG_SPECS]
    graphs += [random_regular(10, 3, seed) for seed in range(1, 11)]
    return graphs


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    nodes = sorted(h.nodes())
    return Graph(nx.to_numpy_array(h, nodelist=nodes) > 0)


def _nx_line_indexed(h: nx.Graph) -> nx.Graph:
    """networkx line graph with vertices renumbered by sorted (u < v) edge."""
    lg = nx.line_graph(h)
    order = sorted(tuple(sorted(e)) for e in h.edges())
    index = {e: i for i, e in enumerate(order)}
    return nx.relabel_nodes(lg, {e: index[tuple(sorted(e))] for e in lg.nodes()})


def nx_R(g: Graph) -> Graph:
    """R(G) built with networkx only, labelled the way the package labels it."""
    h = to_nx(g)
    h = nx.complement(_nx_line_indexed(h))
    h = nx.complement(_nx_line_indexed(h))
    return from_nx(h)


def lapack_spectrum(adj) -> np.ndarray:
    return np.sort(np.linalg.eigvalsh(np.asarray(adj, dtype=float)))[::-1]


@pytest.fixture(scope="session")
def catalog_graphs():
    return catalog()


@pytest.fixture(scope="session")
def cubic10_lines():
    return [line.strip() for line in (FIXTURES / "cubic10.g6").read_text().splitlines() if line.strip()]


# acceptance summary -------------------------------------------------------------

ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
