"""Small GF(2) linear algebra helpers using int bitsets.

A matrix is a tuple of n column words; column i is the image of the
basis word e_i (wire i), with wire 1 in the most significant bit.
"""

from typing import Iterator, List, Sequence, Tuple


def gf2_rank(vectors: Sequence[int], n_bits: int) -> int:
    """Compute rank over GF(2) via Gaussian elimination."""
    work = list(vectors)
    rank = 0
    row_idx = 0
    for bit in range(n_bits):
        pivot = None
        for r in range(row_idx, len(work)):
            if (work[r] >> bit) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        for r in range(len(work)):
            if r != row_idx and ((work[r] >> bit) & 1):
                work[r] ^= work[row_idx]
        rank += 1
        row_idx += 1
        if row_idx == len(work):
            break
    return rank


def gf2_is_invertible(columns: Sequence[int], n: int) -> bool:
    return len(columns) == n and gf2_rank(columns, n) == n


def transpose(columns: Sequence[int], n: int) -> Tuple[int, ...]:
    """Rows of the matrix, in the same word convention as the columns."""
    rows = []
    for r in range(n):
        shift = n - 1 - r
        row = 0
        for i, col in enumerate(columns):
            if (col >> shift) & 1:
                row |= 1 << (n - 1 - i)
        rows.append(row)
    return tuple(rows)


def span_table(columns: Sequence[int], n: int) -> List[int]:
    """Ax for every x in index order, built one XOR per entry."""
    table = [0] * (1 << n)
    for x in range(1, 1 << n):
        low = x & -x
        i = n - low.bit_length()
        table[x] = table[x ^ low] ^ columns[i]
    return table


def is_permutation_matrix(columns: Sequence[int]) -> bool:
    return all(col and not col & (col - 1) for col in columns) and len(set(columns)) == len(columns)


def iter_invertible_matrices(n: int) -> Iterator[Tuple[int, ...]]:
    """Every invertible n×n GF(2) matrix, as column tuples in lexicographic order."""
    size = 1 << n

    def extend(cols: List[int], span: frozenset) -> Iterator[Tuple[int, ...]]:
        if len(cols) == n:
            yield tuple(cols)
            return
        for v in range(1, size):
            if v in span:
                continue
            cols.append(v)
            yield from extend(cols, span | {s ^ v for s in span})
            cols.pop()

    yield from extend([], frozenset({0}))


__all__ = [
    "gf2_rank",
    "gf2_is_invertible",
    "transpose",
    "span_table",
    "is_permutation_matrix",
    "iter_invertible_matrices",
]
