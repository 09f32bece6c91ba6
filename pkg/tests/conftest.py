import os
import random

import pytest

from services.gate_core import Gate, from_permutation
from services.truth_table import save_truth_table

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
GATES_DIR = os.path.join(REPO_ROOT, "gates")

# canonical generator file -> the class it generates on its own
CANONICAL_FILES = {
    "swap.rgt": "TRIVIAL",
    "notnot.rgt": "NOTNOT",
    "not.rgt": "NOT",
    "t6.rgt": "T6",
    "t6_notnot.rgt": "T6+NOTNOT",
    "t6_not.rgt": "T6+NOT",
    "t4.rgt": "T4",
    "f4.rgt": "F4",
    "t4_notnot.rgt": "T4+NOTNOT",
    "t4_not.rgt": "T4+NOT",
    "cnotnot.rgt": "CNOTNOT",
    "cnotnot_not.rgt": "CNOTNOT+NOT",
    "cnot.rgt": "CNOT",
    "fredkin.rgt": "FREDKIN",
    "c4.rgt": "MOD4",
    "c3.rgt": "MOD3",
    "fredkin_notnot.rgt": "MOD2",
    "fredkin_not.rgt": "FREDKIN+NOT",
    "toffoli.rgt": "ALL",
}


def gate_path(name: str) -> str:
    return os.path.join(GATES_DIR, name)


@pytest.fixture
def rng():
    return random.Random(2016)


@pytest.fixture
def write_gate(tmp_path):
    """Save a gate as .rgt under tmp_path and return the path."""

    def write(G: Gate, name: str = "gate.rgt") -> str:
        path = str(tmp_path / name)
        save_truth_table(G, path)
        return path

    return write


@pytest.fixture
def random_permutation(rng):
    def make(n: int) -> Gate:
        outputs = list(range(1 << n))
        rng.shuffle(outputs)
        return from_permutation(outputs, n)

    return make
