import pytest
from hypothesis import example, given, settings
import hypothesis.strategies as st

from services.errors import ArityMismatch, ArityTooLarge, DuplicateRow, MissingRow, NotBijective
from services.gate_core import (
    INFINITE,
    Gate,
    affine_form,
    apply,
    bits_to_word,
    ck_gate,
    cnot_gate,
    compose,
    controlled_not_gate,
    delta_gcd,
    dual,
    embed,
    fk_gate,
    fredkin_gate,
    from_permutation,
    gate_from_table,
    identity_gate,
    inverse,
    is_even_permutation,
    not_gate,
    notnot_gate,
    preserves_inner_product,
    respecting_number,
    rewire,
    signature,
    swap_gate,
    tensor,
    tk_gate,
    toffoli_gate,
    transposition_gate,
    weight,
    weight_deltas,
    word_to_bits,
    xor_weight_by_inclusion_exclusion,
)

permutations3 = st.permutations(list(range(8))).map(lambda p: from_permutation(p, 3))


# --- Construction ---

def test_rows_build_not():
    assert gate_from_table([("0", "1"), ("1", "0")]) == not_gate()


def test_identity_rows():
    rows = [(word_to_bits(x, 2), word_to_bits(x, 2)) for x in range(4)]
    assert gate_from_table(rows) == identity_gate(2)


def test_repeated_output_is_not_bijective():
    with pytest.raises(NotBijective):
        gate_from_table([("00", "00"), ("01", "00"), ("10", "11"), ("11", "10")])


def test_duplicate_and_missing_rows():
    with pytest.raises(DuplicateRow):
        gate_from_table([("0", "1"), ("0", "0")])
    with pytest.raises(MissingRow):
        gate_from_table([("00", "01"), ("01", "00"), ("10", "10")])


def test_ragged_rows_and_arity_cap():
    with pytest.raises(ArityMismatch):
        gate_from_table([("0", "1"), ("10", "01")])
    with pytest.raises(ArityTooLarge):
        gate_from_table([("0" * 25, "0" * 25)])


def test_bits_to_word_rejects_other_characters():
    with pytest.raises(ArityMismatch):
        bits_to_word("10a")


# --- Operations ---

def test_apply_named_gates():
    assert apply(toffoli_gate(), "110") == "111"
    assert apply(fredkin_gate(), "101") == "110"
    assert apply(identity_gate(4), "0101") == "0101"
    assert apply(cnot_gate(), 0b10) == 0b11


def test_compose_inverse_tensor():
    assert compose(not_gate(), not_gate()) == identity_gate(1)
    assert inverse(fredkin_gate()) == fredkin_gate()
    assert tensor(not_gate(), not_gate()) == notnot_gate()
    with pytest.raises(ArityMismatch):
        compose(not_gate(), cnot_gate())


def test_dual_of_toffoli_flips_on_double_zero():
    assert dual(toffoli_gate()) == Gate(3, (1, 0, 2, 3, 4, 5, 6, 7))
    assert dual(identity_gate(3)) == identity_gate(3)
    assert dual(tk_gate(4)) == tk_gate(4)


def test_rewire_moves_the_control():
    assert rewire(cnot_gate(), [2, 1], [2, 1]) == Gate(2, (0, 3, 2, 1))


def test_embed_places_gate_on_chosen_wires():
    assert embed(not_gate(), [2], 2) == Gate(2, (1, 0, 3, 2))
    assert embed(cnot_gate(), [1, 3], 3) == Gate(3, tuple(x ^ 1 if x & 0b100 else x for x in range(8)))


def test_controlled_not_with_two_set_controls_is_toffoli():
    assert controlled_not_gate("11") == toffoli_gate()


def test_parity_of_permutations():
    assert is_even_permutation(identity_gate(3))
    assert not is_even_permutation(swap_gate())
    assert not is_even_permutation(transposition_gate(3, 0b011, 0b101))


@given(permutations3)
def test_inverse_and_dual_are_involutions(G):
    assert compose(G, inverse(G)) == identity_gate(3)
    assert dual(dual(G)) == G


# --- Invariants ---

def test_weight_deltas():
    assert weight_deltas(toffoli_gate()).deltas == (-1, 0, 1)
    assert weight_deltas(fredkin_gate()).deltas == (0,)
    assert weight_deltas(ck_gate(3)).deltas == (-3, 0, 3)


def test_respecting_numbers():
    assert respecting_number(not_gate()).value == 2
    assert respecting_number(ck_gate(3)).value == 3
    assert respecting_number(fredkin_gate()) == INFINITE
    assert str(INFINITE) == "inf"


def test_delta_gcd_differs_on_parity_flipping_gates():
    assert delta_gcd(not_gate()).value == 1
    assert delta_gcd(ck_gate(3)).value == 3


def test_affine_forms():
    cnot = affine_form(cnot_gate())
    assert cnot.columns == (0b11, 0b01) and cnot.offset == 0
    assert affine_form(toffoli_gate()) is None
    notnot = affine_form(notnot_gate())
    assert notnot.columns == (0b10, 0b01) and notnot.offset == 0b11


def test_isometry_flags():
    t4, t6, f4 = signature(tk_gate(4)), signature(tk_gate(6)), signature(fk_gate(4))
    assert t4.orthogonal and not t4.linear_part_mod4
    assert t6.orthogonal and t6.linear_part_mod4
    assert f4.affine is not None and f4.affine.offset == 0b1111 and f4.mod4_preserving


def test_inner_product_preservation():
    assert preserves_inner_product(tk_gate(4), 2)
    assert preserves_inner_product(identity_gate(3), 3)
    assert not preserves_inner_product(cnot_gate(), 2)


@given(permutations3)
def test_weighted_deltas_balance(G):
    assert weight_deltas(G).weighted_sum() == 0


@given(st.lists(st.integers(0, 255), min_size=1, max_size=5))
@settings(max_examples=300)
@example([0b1011, 0b0110, 0b1110])
def test_xor_weight_by_inclusion_exclusion(vectors):
    xor = 0
    for v in vectors:
        xor ^= v
    assert xor_weight_by_inclusion_exclusion(vectors) == weight(xor)
