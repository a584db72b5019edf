import pathlib

import numpy as np
import pytest

import pinctl as pc

DATA = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def dg14():
    """Frozen 14-node test network with degree sequence
    {1,7,3,4,5,4,2,4,4,5,4,5,2,8} (node label -> degree)."""
    return pc.load_graph((DATA / "dg14.json").read_text())


@pytest.fixture()
def path2():
    return pc.from_edges(2, [(0, 1)])


@pytest.fixture()
def path3():
    return pc.from_edges(3, [(0, 1), (1, 2)])


@pytest.fixture()
def star5():
    return pc.from_edges(5, [(0, i) for i in range(1, 5)])


def sample_pinning_corpus(seed, count):
    """Seeded (graph, pins, gain) triples shared by several property suites."""
    rng = np.random.default_rng(seed)
    for t in range(count):
        n = int(rng.integers(4, 13))
        p = [0.3, 0.5][t % 2]
        g = pc.random_connected_graph(n, p, rng)
        for gain in (1.0, 10.0, 100.0):
            for m in (1, 2, 3):
                pins = tuple(sorted(
                    rng.choice(n, size=min(m, n - 1), replace=False).tolist()
                ))
                yield g, pins, gain
