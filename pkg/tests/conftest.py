import random

import networkx as nx
import pytest
from hypothesis import settings

from discokit.casestudy import bundled_corpus

settings.register_profile("default", deadline=None)
settings.load_profile("default")


def to_networkx(mol):
    """Independent graph view used as an isomorphism oracle."""
    g = nx.Graph()
    for i, a in enumerate(mol.atoms):
        g.add_node(i, label=(a.symbol, a.aromatic, a.formal_charge, mol.hcounts[i], a.isotope))
    for b in mol.bonds:
        g.add_edge(b.begin, b.end, order=b.order.value)
    return g


def isomorphic(m1, m2):
    return nx.is_isomorphic(
        to_networkx(m1),
        to_networkx(m2),
        node_match=lambda x, y: x["label"] == y["label"],
        edge_match=lambda x, y: x["order"] == y["order"],
    )


def shuffled(mol, rng):
    order = list(range(len(mol.atoms)))
    rng.shuffle(order)
    return mol.renumbered(order)


def read_smi(path):
    return [ln.strip() for ln in open(path, encoding="utf-8") if ln.strip() and not ln.startswith("#")]


@pytest.fixture(scope="session")
def corpus_100():
    return read_smi(bundled_corpus(100))


@pytest.fixture(scope="session")
def corpus_1000():
    return read_smi(bundled_corpus(1000))


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("tests.test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
