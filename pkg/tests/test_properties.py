import random

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from services.errors import BadParameter
from services.gate_core import is_even_permutation
from services.circuit import CircuitBuilder, realized_transformation
from services.lattice import AFFINE_CLASSES, ALL, F4, FREDKIN, FREDKIN_NOT, T4, T6, classify_gate, contains, mod_class
from services.properties import SUITES, run_property_suite
from services.sampling import random_gate, random_member


# --- Suites ---

def test_every_suite_passes_at_two_bits():
    results = run_property_suite(2, seed=7)
    assert len(results) == len(SUITES)
    assert [r.name for r in results if not r.passed] == []


def test_every_suite_passes_at_three_bits():
    results = run_property_suite(3)
    assert all(r.passed for r in results), "\n".join(r.summary() for r in results)
    assert all(r.checked > 0 for r in results)


@pytest.mark.slow
def test_matrix_suites_at_four_bits():
    results = run_property_suite(4, only=["linear-mod-k", "affine-mod-4", "characteristic-vector"])
    assert all(r.passed for r in results), "\n".join(r.summary() for r in results)
    linear, affine, characteristic = results
    # non-permutation invertible matrices at 2, 3 and 4 bits, three moduli each
    assert linear.checked == (4 + 162 + 20136) * 3
    assert affine.checked == 20160 * 16
    assert characteristic.checked == 48 + 1


def test_inclusion_exclusion_covers_every_short_tuple():
    result, = run_property_suite(1, only=["inclusion-exclusion"])
    assert result.passed
    assert result.checked == 64 + 64 ** 2 + 64 ** 3 + 16 ** 4 + 2000


def test_selected_suites_run_alone():
    results = run_property_suite(3, only=["gcd-agreement", "dual-closed"])
    assert [r.name for r in results] == ["gcd-agreement", "dual-closed"]
    assert "PASS" in results[0].summary()


def test_unknown_suite_is_rejected():
    with pytest.raises(BadParameter):
        run_property_suite(2, only=["no-such-suite"])


# --- Sampling ---

SAMPLED = [ALL, FREDKIN, FREDKIN_NOT, mod_class(2), mod_class(3)] + list(AFFINE_CLASSES)


@pytest.mark.parametrize("c", SAMPLED, ids=str)
def test_random_members_lie_in_their_class(c, rng):
    for n in range(1, 6):
        assert contains(c, random_member(c, n, rng))


@pytest.mark.parametrize("c, n", [(T4, 4), (F4, 4), (T6, 6)], ids=str)
def test_random_isometries_are_not_only_wire_permutations(c, n, rng):
    assert c in {classify_gate(random_member(c, n, rng)) for _ in range(40)}


def test_random_gate_is_seeded():
    assert random_gate(4, random.Random(3)) == random_gate(4, random.Random(3))


def test_random_member_needs_a_width():
    with pytest.raises(BadParameter):
        random_member(ALL, 0)


# --- Narrow gates ---

narrow_gates = st.sampled_from([("NOT", 1), ("CNOT", 2), ("SWAP", 2), ("TOFFOLI", 3), ("FREDKIN", 3)])


@given(st.integers(4, 5), st.lists(st.tuples(narrow_gates, st.randoms(use_true_random=False)), max_size=10))
@settings(max_examples=60, deadline=None)
def test_narrow_gates_only_reach_even_permutations(width, picks):
    builder = CircuitBuilder(width)
    for (name, arity), r in picks:
        builder.add(name, *r.sample(range(1, width + 1), arity))
    assert is_even_permutation(realized_transformation(builder.build()))
