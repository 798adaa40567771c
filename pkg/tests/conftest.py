import os

import numpy as np
import pytest
from hypothesis import settings

from fuzzypath.ggfn import Ggfn
from fuzzypath.network import Edge, Network

settings.register_profile("thorough", max_examples=2000, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def random_dag(rng: np.random.Generator, n: int, p: float = 0.4, integer: bool = False) -> Network:
    """Random DAG on ``n`` nodes (edges i -> j for i < j with prob ``p``)."""
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                if integer:
                    c = float(rng.integers(1, 6))
                    g = Ggfn(c, float(rng.integers(0, 3)), float(rng.choice([0.5, 1.0])))
                else:
                    c = float(100.0 - rng.uniform(0.0, 100.0))  # (0, 100]
                    g = Ggfn(c, float(20.0 - rng.uniform(0.0, 20.0)), float(1.0 - rng.uniform(0.0, 1.0)))
                edges.append(Edge(i, j, g))
    return Network(tuple(f"v{i}" for i in range(n)), tuple(edges))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
