# Copyright (c) 2024-2026 The tdrefine developers.
# tdrefine is open-source software under the MIT license (see LICENSE).

import os
import shutil

import numpy as np
import pytest

import tdrefine
import tdrefine.config_manager as cm
import tdrefine.graph_manager as gm
import tdrefine.decomp_manager as dm
import tdrefine.oracle_manager as om
import tdrefine.utils as u


# Refinement corpus: grids up to 10x10, cycles and fans up to 200
# vertices, and 200 seeded partial k-trees with up to 300 vertices:
REFINEMENT_CORPUS = (
    [('grid', n) for n in range(2, 11)]
    + [('cycle', n) for n in (10, 25, 50, 100, 150, 200)]
    + [('fan', n) for n in (10, 50, 100, 200)]
    + [('random', seed) for seed in range(200)]
)


def corpus_graph(family, value):
    if family != 'random':
        return gm.generate(family, n=value)
    rng = np.random.default_rng(value)
    n = int(rng.integers(20, 301))
    k = int(rng.integers(1, 4))
    p = float(rng.choice([0.6, 0.75, 0.9]))
    return gm.generate('random_ktree_partial', seed=value, n=n, k=k, p=p)


def pytest_generate_tests(metafunc):
    if 'corpus_case' in metafunc.fixturenames:
        metafunc.parametrize(
            'corpus_case', REFINEMENT_CORPUS,
            ids=[f'{family}{value}' for family, value in REFINEMENT_CORPUS])


@pytest.fixture(scope="session")
def make_corpus_graph():
    return corpus_graph


@pytest.fixture
def corpus_instance(corpus_case):
    """A corpus graph and its min-fill decomposition."""
    g = corpus_graph(*corpus_case)
    return g, om.min_fill_heuristic(g)


@pytest.fixture
def mock_home(monkeypatch):
    # Re-define tdrefine HOME:
    mock_home = os.path.expanduser('~') + '/.mock_tdrefine/'
    # Monkey patch utils:
    monkeypatch.setattr(tdrefine.utils, 'HOME', mock_home)
    monkeypatch.delenv(u.SEED_VAR, raising=False)


@pytest.fixture
def mock_init(mock_home):
    shutil.rmtree(u.HOME, ignore_errors=True)
    cm.init()


@pytest.fixture(scope="session")
def graphs():
    """Small fixture graphs keyed by name."""
    return {
        'empty': gm.make_graph(0),
        'vertex': gm.make_graph(1),
        'p4': gm.generate('path', n=4),
        'p10': gm.generate('path', n=10),
        'c6': gm.generate('cycle', n=6),
        'c10': gm.generate('cycle', n=10),
        'c20': gm.generate('cycle', n=20),
        'k5': gm.generate('complete', n=5),
        'fan8': gm.generate('fan', n=8),
        'grid3': gm.generate('grid', n=3),
        'grid5': gm.generate('grid', n=5),
        'disjoint': gm.make_graph(6, [(0, 1), (1, 2), (3, 4), (4, 5)]),
    }


@pytest.fixture(scope="session")
def cycle_td():
    """Worked example: every bag of a path decomposition of C_n - v_1
    also holds v_1."""
    return dm.cycle_decomposition(10)


@pytest.fixture(scope="session")
def grid_td():
    return dm.grid_decomposition(5)


@pytest.fixture(scope="session")
def gr_text():
    return """c A path on three vertices
p tw 3 2
1 2
2 3
"""


@pytest.fixture(scope="session")
def td_text():
    return """c Two bags
s td 2 2 3
b 1 1 2
b 2 2 3
1 2
"""
