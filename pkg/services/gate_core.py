"""
Reversible Gate Core.

Truth-table representation of n-bit reversible gates and the invariants
the classifier reads off them: Hamming-weight deltas, the respecting
number, the affine form over GF(2), orthogonality and the mod-4 flags.

Words are plain ints. A bit string is read left to right: the leftmost
character is wire 1 and the most significant bit of the integer, so
wire i of an n-bit word is bit (n - i) and e_i = 1 << (n - i).
"""

import logging
import os
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache, reduce
from itertools import combinations
from math import gcd
from typing import Callable, Iterable, Optional, Sequence, Tuple, Union

from services.errors import (
    ArityMismatch,
    ArityTooLarge,
    BadParameter,
    DuplicateRow,
    MissingRow,
    NotBijective,
)
from services.gf2 import is_permutation_matrix, span_table

logger = logging.getLogger(__name__)

# --- Configuration ---
MAX_ARITY = int(os.getenv('REVGEN_MAX_ARITY', '24'))

WordLike = Union[int, str]


# --- Words ---

def weight(x: int) -> int:
    return bin(x).count("1")


def word_to_bits(x: int, n: int) -> str:
    return format(x, f"0{n}b") if n else ""


def bits_to_word(bits: str) -> int:
    if not bits or any(ch not in "01" for ch in bits):
        raise ArityMismatch(f"not a bit string: {bits!r}")
    return int(bits, 2)


def basis_word(i: int, n: int) -> int:
    """e_i, the word with only wire i set."""
    return 1 << (n - i)


def bit_of(x: int, i: int, n: int) -> int:
    return (x >> (n - i)) & 1


def complement_word(x: int, n: int) -> int:
    return x ^ ((1 << n) - 1)


def inner_product(x: int, y: int) -> int:
    """Integer inner product x·y, the number of shared 1 bits."""
    return weight(x & y)


def permute_wires(x: int, n: int, sigma: Sequence[int]) -> int:
    """Word whose wire j carries wire sigma[j-1] of x."""
    out = 0
    for source in sigma:
        out = (out << 1) | bit_of(x, source, n)
    return out


def xor_weight_by_inclusion_exclusion(vectors: Sequence[int]) -> int:
    """|v1 ⊕ ... ⊕ vt| as the signed sum of weights of every AND of a nonempty subset."""
    total = 0
    for size in range(1, len(vectors) + 1):
        sign = (-2) ** (size - 1)
        for subset in combinations(vectors, size):
            total += sign * weight(reduce(lambda a, b: a & b, subset))
    return total


# --- Data Structures ---

@dataclass(frozen=True)
class Gate:
    """An n-bit reversible gate; table[x] holds G(x)."""
    arity: int
    table: Tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != 1 << self.arity:
            raise ArityMismatch(f"{len(self.table)} table entries for arity {self.arity}")

    def __call__(self, x: int) -> int:
        return self.table[x]

    @property
    def size(self) -> int:
        return len(self.table)

    def is_identity(self) -> bool:
        return all(y == x for x, y in enumerate(self.table))

    def rows(self) -> Iterable[Tuple[str, str]]:
        for x, y in enumerate(self.table):
            yield word_to_bits(x, self.arity), word_to_bits(y, self.arity)

    def __repr__(self) -> str:
        return f"Gate({self.arity}, {list(self.table)})"


@dataclass(frozen=True)
class WeightProfile:
    """W(G) with multiplicities, as sorted (delta, count) pairs."""
    multiplicities: Tuple[Tuple[int, int], ...]

    @property
    def deltas(self) -> Tuple[int, ...]:
        return tuple(d for d, _ in self.multiplicities)

    def count(self, delta: int) -> int:
        return dict(self.multiplicities).get(delta, 0)

    def weighted_sum(self) -> int:
        return sum(d * m for d, m in self.multiplicities)

    def all_congruent(self, k: int, residue: int = 0) -> bool:
        return all((d - residue) % k == 0 for d in self.deltas)


@dataclass(frozen=True)
class RespectingNumber:
    """k(G); value 0 stands for INFINITE (conservative gates)."""
    value: int

    @property
    def is_infinite(self) -> bool:
        return self.value == 0

    def respects(self, modulus: int) -> bool:
        return self.value % modulus == 0

    def __str__(self) -> str:
        return "inf" if self.is_infinite else str(self.value)


INFINITE = RespectingNumber(0)


@dataclass(frozen=True)
class AffineForm:
    """G(x) = Ax ⊕ b; columns[i-1] is A e_i."""
    arity: int
    columns: Tuple[int, ...]
    offset: int

    def __post_init__(self):
        if len(self.columns) != self.arity:
            raise ArityMismatch(f"{len(self.columns)} columns for arity {self.arity}")

    def linear_table(self) -> list:
        return span_table(self.columns, self.arity)

    def table(self) -> Tuple[int, ...]:
        return tuple(y ^ self.offset for y in self.linear_table())

    def apply(self, x: int) -> int:
        out = self.offset
        for i, col in enumerate(self.columns):
            if (x >> (self.arity - 1 - i)) & 1:
                out ^= col
        return out

    def to_gate(self) -> Gate:
        return Gate(self.arity, self.table())

    def linear_part(self) -> "AffineForm":
        return AffineForm(self.arity, self.columns, 0)

    @property
    def column_weights(self) -> Tuple[int, ...]:
        return tuple(weight(c) for c in self.columns)

    @property
    def is_linear(self) -> bool:
        return self.offset == 0

    @property
    def is_degenerate(self) -> bool:
        return is_permutation_matrix(self.columns)

    @property
    def is_orthogonal(self) -> bool:
        # AᵀA = I: odd columns, pairwise even overlaps
        if any(w % 2 == 0 for w in self.column_weights):
            return False
        return all(inner_product(a, b) % 2 == 0 for a, b in combinations(self.columns, 2))


@dataclass(frozen=True)
class InvariantSignature:
    arity: int
    profile: WeightProfile
    conservative: bool
    respecting: RespectingNumber
    parity_preserving: bool
    parity_flipping: bool
    affine: Optional[AffineForm]
    linear: bool
    degenerate: bool
    orthogonal: bool
    odd_columns: bool
    linear_part_mod4: bool
    mod4_preserving: bool

    @property
    def offset_even(self) -> bool:
        return self.affine is not None and weight(self.affine.offset) % 2 == 0


# --- Gate Construction ---

def _check_arity(n: int):
    if n < 1:
        raise ArityMismatch(f"arity must be at least 1, got {n}")
    if n > MAX_ARITY:
        raise ArityTooLarge(f"arity {n} exceeds the configured cap of {MAX_ARITY}")


def from_permutation(outputs: Sequence[int], arity: Optional[int] = None) -> Gate:
    """Validated gate from the list of outputs in input order."""
    size = len(outputs)
    n = size.bit_length() - 1
    if size != 1 << n:
        raise ArityMismatch(f"table length {size} is not a power of two")
    if arity is not None and arity != n:
        raise ArityMismatch(f"table length {size} does not match arity {arity}")
    _check_arity(n)
    if any(not 0 <= y < size for y in outputs):
        raise NotBijective("output outside the word range")
    if len(set(outputs)) != size:
        counts = Counter(outputs)
        repeated = next(y for y, c in counts.items() if c > 1)
        raise NotBijective(f"output {word_to_bits(repeated, n)} appears {counts[repeated]} times")
    return Gate(n, tuple(outputs))


def gate_from_table(rows: Iterable[Tuple[str, str]]) -> Gate:
    """Validated gate from (input bits, output bits) rows in any order."""
    rows = list(rows)
    if not rows:
        raise MissingRow("empty truth table")
    n = len(rows[0][0])
    for inp, out in rows:
        if len(inp) != n or len(out) != n:
            raise ArityMismatch(f"row {inp} -> {out} does not have arity {n}")
    _check_arity(n)
    outputs = [None] * (1 << n)
    for inp, out in rows:
        x = bits_to_word(inp)
        if outputs[x] is not None:
            raise DuplicateRow(f"input {inp} appears more than once")
        outputs[x] = bits_to_word(out)
    missing = [x for x, y in enumerate(outputs) if y is None]
    if missing:
        raise MissingRow(f"input {word_to_bits(missing[0], n)} has no row ({len(missing)} missing)")
    return from_permutation(outputs, n)


def _gate_from_function(n: int, f: Callable[[int], int]) -> Gate:
    return Gate(n, tuple(f(x) for x in range(1 << n)))


# --- Operations ---

def apply(G: Gate, x: WordLike) -> WordLike:
    """G(x) for an int word or a bit string (answered in kind)."""
    if isinstance(x, str):
        if len(x) != G.arity:
            raise ArityMismatch(f"{len(x)}-bit input for a {G.arity}-bit gate")
        return word_to_bits(G.table[bits_to_word(x)], G.arity)
    if not 0 <= x < G.size:
        raise ArityMismatch(f"word {x} out of range for a {G.arity}-bit gate")
    return G.table[x]


def compose(G: Gate, H: Gate) -> Gate:
    """x ↦ G(H(x))."""
    if G.arity != H.arity:
        raise ArityMismatch(f"cannot compose arities {G.arity} and {H.arity}")
    return Gate(G.arity, tuple(G.table[y] for y in H.table))


def inverse(G: Gate) -> Gate:
    out = [0] * G.size
    for x, y in enumerate(G.table):
        out[y] = x
    return Gate(G.arity, tuple(out))


def tensor(G: Gate, H: Gate) -> Gate:
    """G on the leading wires, H on the trailing ones."""
    m = H.arity
    low = (1 << m) - 1
    return _gate_from_function(G.arity + m, lambda x: (G.table[x >> m] << m) | H.table[x & low])


def _check_wire_permutation(sigma: Sequence[int], n: int):
    if sorted(sigma) != list(range(1, n + 1)):
        raise ArityMismatch(f"{list(sigma)} is not a permutation of wires 1..{n}")


def rewire(G: Gate, sigma_in: Sequence[int], sigma_out: Sequence[int]) -> Gate:
    n = G.arity
    _check_wire_permutation(sigma_in, n)
    _check_wire_permutation(sigma_out, n)
    return _gate_from_function(
        n, lambda x: permute_wires(G.table[permute_wires(x, n, sigma_in)], n, sigma_out)
    )


def dual(G: Gate) -> Gate:
    mask = G.size - 1
    return Gate(G.arity, tuple(G.table[x ^ mask] ^ mask for x in range(G.size)))


def embed(G: Gate, wires: Sequence[int], n: int) -> Gate:
    """G acting on the given wires of an n-bit register, identity elsewhere."""
    if len(wires) != G.arity or len(set(wires)) != len(wires):
        raise ArityMismatch(f"wires {list(wires)} do not fit a {G.arity}-bit gate")
    shifts = [n - w for w in wires]
    a = G.arity

    def f(x: int) -> int:
        sub = 0
        for sh in shifts:
            sub = (sub << 1) | ((x >> sh) & 1)
        diff = sub ^ G.table[sub]
        for j, sh in enumerate(shifts):
            if (diff >> (a - 1 - j)) & 1:
                x ^= 1 << sh
        return x

    return _gate_from_function(n, f)


def is_even_permutation(G: Gate) -> bool:
    seen = bytearray(G.size)
    cycles = 0
    for start in range(G.size):
        if seen[start]:
            continue
        cycles += 1
        x = start
        while not seen[x]:
            seen[x] = 1
            x = G.table[x]
    return (G.size - cycles) % 2 == 0


# --- Invariants ---

def weight_deltas(G: Gate) -> WeightProfile:
    counts = Counter(weight(y) - weight(x) for x, y in enumerate(G.table))
    return WeightProfile(tuple(sorted(counts.items())))


def _profile(G_or_profile: Union[Gate, WeightProfile]) -> WeightProfile:
    if isinstance(G_or_profile, WeightProfile):
        return G_or_profile
    return weight_deltas(G_or_profile)


def respecting_number(G: Union[Gate, WeightProfile]) -> RespectingNumber:
    deltas = _profile(G).deltas
    d0 = deltas[0]
    return RespectingNumber(reduce(gcd, (abs(d - d0) for d in deltas), 0))


def delta_gcd(G: Union[Gate, WeightProfile]) -> RespectingNumber:
    """gcd of W(G) itself rather than of its differences."""
    return RespectingNumber(reduce(gcd, (abs(d) for d in _profile(G).deltas), 0))


def affine_form(G: Gate) -> Optional[AffineForm]:
    n = G.arity
    b = G.table[0]
    columns = tuple(G.table[basis_word(i, n)] ^ b for i in range(1, n + 1))
    lin = span_table(columns, n)
    if any(lin[x] ^ b != y for x, y in enumerate(G.table)):
        return None
    return AffineForm(n, columns, b)


def _assemble(arity: int, profile: WeightProfile, form: Optional[AffineForm]) -> InvariantSignature:
    respecting = respecting_number(profile)
    parity_preserving = profile.all_congruent(2, 0)
    parity_flipping = profile.all_congruent(2, 1)
    linear = degenerate = orthogonal = odd_columns = linear_part_mod4 = False
    if form is not None:
        weights = form.column_weights
        linear = form.is_linear
        degenerate = form.is_degenerate
        odd_columns = all(w % 2 == 1 for w in weights)
        orthogonal = odd_columns and form.is_orthogonal
        linear_part_mod4 = orthogonal and all(w % 4 == 1 for w in weights)
    return InvariantSignature(
        arity=arity,
        profile=profile,
        conservative=profile.deltas == (0,),
        respecting=respecting,
        parity_preserving=parity_preserving,
        parity_flipping=parity_flipping,
        affine=form,
        linear=linear,
        degenerate=degenerate,
        orthogonal=orthogonal,
        odd_columns=odd_columns,
        linear_part_mod4=linear_part_mod4,
        mod4_preserving=profile.all_congruent(4, 0),
    )


def signature(G: Gate) -> InvariantSignature:
    return _assemble(G.arity, weight_deltas(G), affine_form(G))


def signature_from_affine(form: AffineForm) -> InvariantSignature:
    """Signature of x ↦ Ax ⊕ b without building a Gate first."""
    n = form.arity
    b = form.offset
    counts = Counter(weight(y ^ b) - weight(x) for x, y in enumerate(form.linear_table()))
    return _assemble(n, WeightProfile(tuple(sorted(counts.items()))), form)


def preserves_inner_product(G: Gate, k: int) -> bool:
    """G(x)·G(y) ≡ x·y (mod k) for every pair; exhaustive."""
    if k < 2:
        raise BadParameter(f"modulus must be at least 2, got {k}")
    table = G.table
    for x in range(G.size):
        gx = table[x]
        for y in range(x, G.size):
            if (weight(gx & table[y]) - weight(x & y)) % k:
                return False
    return True


# --- Named Gates ---

@lru_cache(maxsize=None)
def identity_gate(n: int) -> Gate:
    return Gate(n, tuple(range(1 << n)))


@lru_cache(maxsize=None)
def not_gate() -> Gate:
    return Gate(1, (1, 0))


@lru_cache(maxsize=None)
def notnot_gate() -> Gate:
    return Gate(2, (3, 2, 1, 0))


@lru_cache(maxsize=None)
def cnot_gate() -> Gate:
    return _gate_from_function(2, lambda v: v ^ (v >> 1))


@lru_cache(maxsize=None)
def cnotnot_gate() -> Gate:
    return _gate_from_function(3, lambda v: v ^ 0b011 if v & 0b100 else v)


@lru_cache(maxsize=None)
def toffoli_gate() -> Gate:
    return _gate_from_function(3, lambda v: v ^ 1 if v & 0b110 == 0b110 else v)


@lru_cache(maxsize=None)
def swap_gate() -> Gate:
    return Gate(2, (0, 2, 1, 3))


@lru_cache(maxsize=None)
def fredkin_gate() -> Gate:
    return controlled_swap_gate("1")


@lru_cache(maxsize=None)
def ccswap_gate() -> Gate:
    return controlled_swap_gate("11")


@lru_cache(maxsize=None)
def ck_gate(k: int) -> Gate:
    """C_k: 0^k ↔ 1^k, everything else fixed."""
    if k < 1:
        raise BadParameter(f"C_k needs k >= 1, got {k}")
    mask = (1 << k) - 1
    return _gate_from_function(k, lambda v: mask ^ v if v in (0, mask) else v)


@lru_cache(maxsize=None)
def tk_gate(k: int) -> Gate:
    """T_k: complement every bit when the weight is odd."""
    if k < 2 or k % 2:
        raise BadParameter(f"T_k needs an even k >= 2, got {k}")
    mask = (1 << k) - 1
    return _gate_from_function(k, lambda v: v ^ mask if weight(v) % 2 else v)


@lru_cache(maxsize=None)
def fk_gate(k: int) -> Gate:
    """F_k: complement every bit when the weight is even."""
    if k < 2 or k % 2:
        raise BadParameter(f"F_k needs an even k >= 2, got {k}")
    mask = (1 << k) - 1
    return _gate_from_function(k, lambda v: v if weight(v) % 2 else v ^ mask)


@lru_cache(maxsize=None)
def controlled_not_gate(pattern: str) -> Gate:
    """w-CNOT: flips the last wire iff the leading wires equal the pattern."""
    w = bits_to_word(pattern)
    return _gate_from_function(len(pattern) + 1, lambda v: v ^ 1 if v >> 1 == w else v)


@lru_cache(maxsize=None)
def controlled_swap_gate(pattern: str) -> Gate:
    """w-CSWAP: swaps the last two wires iff the leading wires equal the pattern."""
    w = bits_to_word(pattern)
    return _gate_from_function(
        len(pattern) + 2, lambda v: v ^ 0b11 if v >> 2 == w and (v ^ (v >> 1)) & 1 else v
    )


@lru_cache(maxsize=None)
def controlled_ck_gate(k: int) -> Gate:
    """CC_k: C_k on the last k wires when wire 1 is set."""
    mask = (1 << k) - 1
    return _gate_from_function(
        k + 1, lambda v: v ^ mask if v >> k and (v & mask) in (0, mask) else v
    )


def transposition_gate(n: int, y: int, z: int) -> Gate:
    """σ_{y,z}: swaps the words y and z, fixes the rest."""
    outputs = list(range(1 << n))
    outputs[y], outputs[z] = z, y
    return Gate(n, tuple(outputs))
