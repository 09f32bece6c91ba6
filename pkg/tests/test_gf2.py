from hypothesis import given
import hypothesis.strategies as st

from services.gf2 import (
    gf2_is_invertible,
    gf2_rank,
    is_permutation_matrix,
    iter_invertible_matrices,
    span_table,
    transpose,
)


def test_rank_of_dependent_vectors():
    assert gf2_rank([0b110, 0b011, 0b101], 3) == 2
    assert gf2_rank([0b100, 0b010, 0b001], 3) == 3
    assert gf2_rank([], 3) == 0


def test_invertibility_needs_square_full_rank():
    assert gf2_is_invertible((0b11, 0b01), 2)
    assert not gf2_is_invertible((0b11, 0b11), 2)
    assert not gf2_is_invertible((0b1,), 2)


def test_invertible_matrix_counts():
    # |GL(n, 2)| = 1, 6, 168, 20160
    assert [sum(1 for _ in iter_invertible_matrices(n)) for n in range(1, 5)] == [1, 6, 168, 20160]


def test_span_table_matches_column_sums():
    columns = (0b110, 0b011, 0b001)
    table = span_table(columns, 3)
    assert table[0b100] == 0b110
    assert table[0b110] == 0b110 ^ 0b011
    assert table[0b111] == 0b110 ^ 0b011 ^ 0b001


def test_permutation_matrices():
    assert is_permutation_matrix((0b010, 0b100, 0b001))
    assert not is_permutation_matrix((0b011, 0b100, 0b001))
    assert not is_permutation_matrix((0b100, 0b100, 0b001))


@given(st.lists(st.integers(0, 15), min_size=4, max_size=4))
def test_transpose_is_an_involution(columns):
    assert transpose(transpose(columns, 4), 4) == tuple(columns)
