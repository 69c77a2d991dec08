from __future__ import annotations

from pathlib import Path

import pytest

from rowtree import Graph, create_session, load_dataset

DATA_DIR = Path(__file__).resolve().parent.parent / "data"

FIG2_SUBGRAPH = ["A", "B", "C", "D", "E", "G"]


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def fig2_graph() -> Graph:
    return load_dataset(DATA_DIR / "fig2")


@pytest.fixture(scope="session")
def got_graph() -> Graph:
    return load_dataset(DATA_DIR / "got-mini")


@pytest.fixture(scope="session")
def coauthor_graph() -> Graph:
    return load_dataset(DATA_DIR / "coauthor-mini")


@pytest.fixture
def fig2_session(fig2_graph):
    """The canonical six-node walkthrough subgraph, rooted at A."""
    s = create_session(fig2_graph, "fig2")
    for nid in FIG2_SUBGRAPH:
        s.add_node(nid)
    s.add_root("A")
    return s


def row_shapes(rows):
    """Compact (node-or-member-tuple, depth) view used all over the tests."""
    return [((r.node if r.kind == "individual" else tuple(r.members)), r.depth) for r in rows]


def covered_multiset(rows):
    out = []
    for r in rows:
        out.extend(r.covered_nodes())
    return sorted(out)
