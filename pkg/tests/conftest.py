import os
import random

import pytest
from hypothesis import HealthCheck, settings

from dsrg.formats import load_fixture
from dsrg.graphs import Digraph

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=400, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def fixtures():
    names = [f"N{i}" for i in range(1, 8)] + [f"T{i}" for i in range(1, 8)] + ["J8", "J9"]
    return {name: load_fixture(name) for name in names}


def random_digraph(n: int, p: float, rng: random.Random) -> Digraph:
    return Digraph.from_edges(n, [(i, j) for i in range(n) for j in range(n) if i != j and rng.random() < p])


def random_perm(n: int, rng: random.Random) -> list[int]:
    p = list(range(n))
    rng.shuffle(p)
    return p
