import itertools

import numpy as np
import pytest

from flagtorsion.complexes import Graph, SimplicialComplex

# six-vertex projective plane (not flag); the smallest complex with torsion
RP2_SIX = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 1, 5),
    (1, 2, 4), (2, 3, 5), (1, 3, 4), (2, 4, 5), (1, 3, 5),
]

ACCEPTANCE_LINES = []


@pytest.fixture
def rp2_six():
    return SimplicialComplex.from_facets(6, RP2_SIX)


def random_graph(rng, n, p):
    return Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def random_complex(rng, n, facets=6, max_size=4):
    """Downward closure of a few random faces; not flag in general."""
    chosen = []
    for _ in range(facets):
        size = int(rng.integers(1, min(max_size, n) + 1))
        chosen.append(tuple(sorted(rng.choice(n, size=size, replace=False).tolist())))
    return SimplicialComplex.from_facets(n, chosen)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
