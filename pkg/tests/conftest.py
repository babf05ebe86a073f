import json
import math
from functools import lru_cache
from pathlib import Path

import numpy as np
import pytest

from ising_floquet import ModelParams, build_floquet, coherent_state

DATA = Path(__file__).parent / "data"

# |0>^N and |+y>^N = (|0> + i|1>)^N / 2^(N/2)
INITIAL_STATES = {"zero": (0.0, 0.0), "plus": (math.pi / 2, -math.pi / 2)}


@lru_cache(maxsize=None)
def floquet(n_qubits, coupling=0.5, tau=math.pi / 4):
    return build_floquet(ModelParams(n_qubits, coupling, tau))


def initial_state(n_qubits, name):
    return coherent_state(n_qubits, *INITIAL_STATES[name])


@lru_cache(maxsize=None)
def _tables():
    return json.loads((DATA / "concurrence_tables.json").read_text())


@pytest.fixture(scope="session")
def concurrence_tables():
    return _tables()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
