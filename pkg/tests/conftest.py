import itertools
import random

import pytest

from ramseyq.structures import Graph, gnp, model_to_graph, random_model


def brute_max_clique(g: Graph) -> int:
    """Largest clique of eligible vertices by trying every subset, largest first."""
    elig = [v for v in range(g.size) if g.eligible >> v & 1]
    for size in range(len(elig), 0, -1):
        for sub in itertools.combinations(elig, size):
            if all(g.has_edge(a, b) for a, b in itertools.combinations(sub, 2)):
                return size
    return 0


def random_graph(rng: random.Random, n: int) -> Graph:
    p = rng.choice((0.1, 0.3, 0.5, 0.7, 0.9))
    if rng.random() < 0.5:
        return gnp(n, p, rng)
    return model_to_graph(random_model(n, p, rng))


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[number])
