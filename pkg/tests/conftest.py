import random
import sys
import warnings
from pathlib import Path

import hypothesis
import hypothesis.strategies as st
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from kweb import INF, Graph  # noqa: E402
from kweb.lattice import ConditionKWarning  # noqa: E402

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.register_profile("thorough", max_examples=500, deadline=None)
hypothesis.settings.load_profile("default")

ACCEPTANCE_RESULTS: list[tuple[str, bool, str]] = []


@pytest.fixture(autouse=True)
def _quiet_condition_k():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConditionKWarning)
        yield


@pytest.fixture
def record_criterion():
    def record(name, ok, detail=""):
        ACCEPTANCE_RESULTS.append((name, bool(ok), detail))
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")


# strategies ------------------------------------------------------------------

def graphs(max_n=5, values=(0, 1, 2, 3), min_n=0):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.lists(st.lists(st.sampled_from(values), min_size=n, max_size=n),
                           min_size=n, max_size=n)
    ).map(Graph.from_matrix)


def amplified_graphs(max_n=5):
    return graphs(max_n, values=(0, INF))


def random_graph(rng: random.Random, n: int, p: float, values=(1, 2, 3)) -> Graph:
    return Graph.from_matrix([[rng.choice(values) if rng.random() < p else 0 for _ in range(n)]
                              for _ in range(n)])


def all_matrices(n, values):
    import itertools
    for flat in itertools.product(values, repeat=n * n):
        yield [list(flat[i * n:(i + 1) * n]) for i in range(n)]
