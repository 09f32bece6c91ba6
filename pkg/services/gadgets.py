"""
Gadgets: encoded universality and garbage witnesses.

Every non-degenerate class can simulate CNOT on an encoding of the bits
(α(0), α(1)); the Fredkin-like classes and ALL also simulate Fredkin.
A logical wire j becomes a block of L physical wires, and the shared
ancillas follow the blocks.

Garbage gadgets restrict a single gate: some inputs are fixed (they
become ancillas) and chosen outputs compute NOT, AND or COPY of the free
inputs, with the rest of the outputs left as garbage.
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from services.circuit import Circuit, CircuitBuilder, Operation, simulate, user_gate
from services.errors import BadParameter, DegenerateClass, PreconditionViolated, VerificationFailed
from services.gate_core import Gate, bit_of, signature, word_to_bits
from services.lattice import ClassKind, GateClass
from services.synth_nonaffine import SwapEmitter

logger = logging.getLogger(__name__)


# --- Data Structures ---

@dataclass(frozen=True)
class Encoding:
    zero: str
    one: str

    @property
    def block_size(self) -> int:
        return len(self.zero)

    def encode(self, bit: int) -> str:
        return self.one if bit else self.zero

    def encode_word(self, bits: str) -> str:
        return "".join(self.encode(int(b)) for b in bits)

    def __str__(self) -> str:
        return f"0->{self.zero}, 1->{self.one}"


@dataclass(frozen=True)
class GadgetCase:
    """One checked behavior: full-width input, the wires read back and their expected bits."""
    inputs: int
    mask: int
    expected: int


@dataclass(frozen=True)
class Gadget:
    circuit: Circuit
    contract: str
    cases: Tuple[GadgetCase, ...]
    encoding: Optional[Encoding] = None


def verify_gadget(g: Gadget) -> bool:
    return all((simulate(g.circuit, case.inputs) ^ case.expected) & case.mask == 0 for case in g.cases)


def _checked(g: Gadget) -> Gadget:
    if not verify_gadget(g):
        raise VerificationFailed(f"gadget does not meet its contract: {g.contract}")
    logger.debug(f"Gadget verified on {len(g.cases)} cases: {g.contract}")
    return g


# --- Encoded Gadgets ---

Block = Sequence[int]


class _Emitter:
    """Encoded gate templates for one class, writing into a builder."""

    def __init__(self, c: GateClass, builder: CircuitBuilder, ancillas: Sequence[int]):
        self.c = c
        self.builder = builder
        self.ancillas = list(ancillas)
        lower = c.modulus if c.is_mod and c.modulus >= 3 else 0
        self.swaps = SwapEmitter(builder, lower_to_ck=lower)

    def cnot(self, x: Block, y: Block):
        kind, add, a = self.c.kind, self.builder.add, self.ancillas
        if kind is ClassKind.ALL:
            add("TOFFOLI", x[0], a[0], y[0])
        elif kind is ClassKind.CNOT:
            add("CNOT", x[0], y[0])
        elif kind in (ClassKind.FREDKIN, ClassKind.FREDKIN_NOT, ClassKind.MOD):
            self.swaps.fredkin(x[0], y[0], y[1])
        elif kind is ClassKind.F4:
            add("FK4", x[0], y[0], y[1], a[0])
            add("SWAP", x[0], a[0])
            add("SWAP", y[0], y[1])
        elif kind in (ClassKind.CNOTNOT, ClassKind.CNOTNOT_NOT):
            add("CNOTNOT", x[0], y[0], y[1])
        elif kind in (ClassKind.T4, ClassKind.T4_NOTNOT, ClassKind.T4_NOT):
            add("TK4", x[0], y[0], y[1], a[0])
            add("SWAP", x[0], a[0])
        elif kind in (ClassKind.T6, ClassKind.T6_NOTNOT, ClassKind.T6_NOT):
            add("TK6", x[0], *y, a[0])
            add("SWAP", x[0], a[0])
        else:
            raise DegenerateClass(f"{self.c} has no encoded CNOT")

    def fredkin(self, c: Block, p: Block, q: Block):
        kind = self.c.kind
        if kind is ClassKind.ALL:
            add, one = self.builder.add, self.ancillas[0]
            add("TOFFOLI", q[0], one, p[0])
            add("TOFFOLI", c[0], p[0], q[0])
            add("TOFFOLI", q[0], one, p[0])
        elif kind in (ClassKind.FREDKIN, ClassKind.FREDKIN_NOT, ClassKind.MOD):
            self.swaps.fredkin(c[0], p[0], q[0])
            self.swaps.fredkin(c[0], p[1], q[1])
        else:
            raise BadParameter(f"{self.c} has no encoded Fredkin")


_DUAL_RAIL = Encoding("01", "10")
_REPETITION = Encoding("00", "11")
_TRIVIAL = Encoding("0", "1")


def encoding_for(c: GateClass) -> Tuple[Encoding, Tuple[int, ...]]:
    """(encoding, shared ancilla bits) used by c's encoded gadgets."""
    kind = c.kind
    if kind in (ClassKind.TRIVIAL, ClassKind.NOT, ClassKind.NOTNOT):
        raise DegenerateClass(f"{c} only contains degenerate transformations")
    if kind is ClassKind.ALL:
        return _TRIVIAL, (1,)
    if kind is ClassKind.CNOT:
        return _TRIVIAL, ()
    if kind in (ClassKind.FREDKIN, ClassKind.FREDKIN_NOT):
        return _DUAL_RAIL, ()
    if kind is ClassKind.MOD:
        # the C_k lowering allocates its own k - 2 wires held at 1
        return _DUAL_RAIL, ()
    if kind is ClassKind.F4:
        return _DUAL_RAIL, (1,)
    if kind in (ClassKind.CNOTNOT, ClassKind.CNOTNOT_NOT):
        return _REPETITION, ()
    if kind in (ClassKind.T4, ClassKind.T4_NOTNOT, ClassKind.T4_NOT):
        return _REPETITION, (0,)
    return Encoding("0011", "1100"), (0,)


def _complement_swaps(encoding: Encoding) -> List[Tuple[int, int]]:
    """Block positions to swap to turn α(0) into α(1), when that is a wire permutation."""
    zero, one = encoding.zero, encoding.one
    if sorted(zero) != sorted(one):
        return []
    wrong0 = [i for i in range(len(zero)) if zero[i] == "0" and one[i] == "1"]
    wrong1 = [i for i in range(len(zero)) if zero[i] == "1" and one[i] == "0"]
    return list(zip(wrong0, wrong1))


def encode_circuit(logical: Circuit, c: GateClass) -> Circuit:
    """Compile an ancilla-free CNOT/Fredkin/NOT circuit to c's encoded form."""
    if logical.ancilla_count:
        raise BadParameter("logical circuits must not use ancillas")
    encoding, ancilla_bits = encoding_for(c)
    L = encoding.block_size
    d = logical.data_wires
    builder = CircuitBuilder(d * L)
    ancillas = [builder.ancilla(bit) for bit in ancilla_bits]
    em = _Emitter(c, builder, ancillas)

    def block(wire: int) -> List[int]:
        return list(range((wire - 1) * L + 1, wire * L + 1))

    for op in logical.ops:
        name = op.gate.name if not op.gate.user else ""
        blocks = [block(w) for w in op.wires]
        if name == "CNOT":
            em.cnot(*blocks)
        elif name == "FREDKIN":
            em.fredkin(*blocks)
        elif name == "NOT":
            swaps = _complement_swaps(encoding)
            if not swaps:
                raise BadParameter(f"encoding {encoding} has no wire-permutation NOT")
            for i, j in swaps:
                builder.add("SWAP", blocks[0][i], blocks[0][j])
        else:
            raise BadParameter(f"cannot encode {op.gate.name}; use CNOT, FREDKIN or NOT")
    return builder.build()


def _encoded_cases(logical: Circuit, encoded: Circuit, encoding: Encoding) -> Tuple[GadgetCase, ...]:
    d = logical.data_wires
    width = encoded.width
    full = (1 << width) - 1
    cases = []
    for x in range(1 << d):
        y = simulate(logical, x)
        tail = word_to_bits(encoded.ancilla_word, encoded.ancilla_count)
        inputs = int(encoding.encode_word(word_to_bits(x, d)) + tail, 2)
        expected = int(encoding.encode_word(word_to_bits(y, d)) + tail, 2)
        cases.append(GadgetCase(inputs, full, expected))
    return tuple(cases)


def check_encoded(logical: Circuit, encoded: Circuit, encoding: Encoding) -> bool:
    """encoded maps α(x) to α(logical(x)) on every logical input, ancillas restored."""
    return all(
        simulate(encoded, case.inputs) == case.expected
        for case in _encoded_cases(logical, encoded, encoding)
    )


def _encoded_gadget(logical: Circuit, c: GateClass, what: str) -> Gadget:
    encoding, _ = encoding_for(c)
    encoded = encode_circuit(logical, c)
    contract = f"encoded {what} over {c} ({encoding})"
    return _checked(Gadget(encoded, contract, _encoded_cases(logical, encoded, encoding), encoding))


def encoded_cnot_gadget(c: GateClass) -> Gadget:
    logical = CircuitBuilder(2).add("CNOT", 1, 2).build()
    return _encoded_gadget(logical, c, "CNOT")


def encoded_fredkin_gadget(c: GateClass) -> Gadget:
    logical = CircuitBuilder(3).add("FREDKIN", 1, 2, 3).build()
    return _encoded_gadget(logical, c, "Fredkin")


# --- Garbage Gadgets ---

def _restriction_circuit(G: Gate, free: Sequence[int], fixed: Dict[int, int]) -> Tuple[Circuit, Dict[int, int]]:
    """One USER gate with the free positions as data wires; returns the position -> wire map."""
    order = list(free) + sorted(fixed)
    wire_of = {p: w for w, p in enumerate(order, 1)}
    op = Operation(user_gate("G", G), tuple(wire_of[p] for p in range(1, G.arity + 1)))
    ancillas = tuple(fixed[p] for p in sorted(fixed))
    return Circuit(G.arity, len(free), ancillas, (op,)), wire_of


def _full_input(c: Circuit, free_bits: Sequence[int]) -> int:
    word = 0
    for bit in free_bits:
        word = (word << 1) | bit
    return (word << c.ancilla_count) | c.ancilla_word


def _wire_mask(wires: Sequence[int], width: int) -> int:
    mask = 0
    for w in wires:
        mask |= 1 << (width - w)
    return mask


def _not_gadget(G: Gate) -> Gadget:
    n = G.arity
    for j in range(1, n + 1):
        for x in range(G.size):
            for i in range(1, n + 1):
                if bit_of(x, i, n):
                    continue
                high = x | (1 << (n - i))
                if bit_of(G(x), j, n) == 1 and bit_of(G(high), j, n) == 0:
                    fixed = {p: bit_of(x, p, n) for p in range(1, n + 1) if p != i}
                    c, wire_of = _restriction_circuit(G, [i], fixed)
                    out = wire_of[j]
                    mask = _wire_mask([out], n)
                    cases = tuple(
                        GadgetCase(_full_input(c, [a]), mask, (1 - a) << (n - out)) for a in (0, 1)
                    )
                    return Gadget(c, f"NOT: wire {out} = NOT wire 1 (input {i} free, output {j})", cases)
    raise PreconditionViolated("every output is monotone, so the gate is a wire permutation")


def _restrict(f: Callable[[Dict[int, int]], int], free: List[int], fixed: Dict[int, int]):
    """Truth table of f over the free positions, in the order given."""
    table = []
    for bits in product((0, 1), repeat=len(free)):
        assignment = dict(fixed)
        assignment.update(zip(free, bits))
        table.append(f(assignment))
    return table


def _is_affine_function(table: Sequence[int], m: int) -> bool:
    c0 = table[0]
    coeffs = [table[1 << (m - 1 - t)] ^ c0 for t in range(m)]
    for x, v in enumerate(table):
        expected = c0
        for t in range(m):
            if (x >> (m - 1 - t)) & 1:
                expected ^= coeffs[t]
        if expected != v:
            return False
    return True


def _and_gadget(G: Gate) -> Gadget:
    n = G.arity
    if signature(G).affine is not None:
        raise PreconditionViolated("gate is affine, so no restriction computes AND")

    def coordinate(j: int) -> Callable[[Dict[int, int]], int]:
        def f(assignment: Dict[int, int]) -> int:
            x = 0
            for p in range(1, n + 1):
                x = (x << 1) | assignment[p]
            return bit_of(G(x), j, n)
        return f

    for j in range(1, n + 1):
        f = coordinate(j)
        free, fixed = list(range(1, n + 1)), {}
        if _is_affine_function(_restrict(f, free, fixed), n):
            continue
        while len(free) > 2:
            for p, v in product(free, (0, 1)):
                rest = [q for q in free if q != p]
                trial = {**fixed, p: v}
                if not _is_affine_function(_restrict(f, rest, trial), len(rest)):
                    free, fixed = rest, trial
                    break
            else:
                raise PreconditionViolated(f"output {j} has no non-affine restriction")
        table = _restrict(f, free, fixed)
        odd = table.count(1) == 1
        a = table.index(1 if odd else 0)
        p, q, r = 1 - (a >> 1), 1 - (a & 1), 0 if odd else 1
        c, wire_of = _restriction_circuit(G, free, fixed)
        out = wire_of[j]
        mask = _wire_mask([out], n)
        cases = tuple(
            GadgetCase(_full_input(c, [x ^ p, y ^ q]), mask, ((x & y) ^ r) << (n - out))
            for x, y in product((0, 1), repeat=2)
        )
        literals = ["x̄" if p else "x", "ȳ" if q else "y"]
        result = "NOT(xy)" if r else "xy"
        contract = f"AND: wires 1, 2 = {literals[0]}, {literals[1]} gives wire {out} = {result}"
        return Gadget(c, contract, cases)
    raise PreconditionViolated("every output coordinate is affine")


def _copy_gadget(G: Gate) -> Gadget:
    n = G.arity
    if signature(G).degenerate:
        raise PreconditionViolated("gate is degenerate, so neighbors stay at distance 1")
    for x in range(G.size):
        for i in range(1, n + 1):
            if bit_of(x, i, n):
                continue
            high = x | (1 << (n - i))
            diff = G(x) ^ G(high)
            positions = [j for j in range(1, n + 1) if bit_of(diff, j, n)]
            if len(positions) < 2:
                continue
            fixed = {p: bit_of(x, p, n) for p in range(1, n + 1) if p != i}
            c, wire_of = _restriction_circuit(G, [i], fixed)
            outs = [wire_of[j] for j in positions]
            mask = _wire_mask(outs, n)
            flips = {wire_of[j]: bit_of(G(x), j, n) for j in positions}
            cases = []
            for a in (0, 1):
                expected = 0
                for w in outs:
                    expected |= (a ^ flips[w]) << (n - w)
                cases.append(GadgetCase(_full_input(c, [a]), mask, expected))
            copies = ", ".join(f"{w}={'NOT ' if flips[w] else ''}a" for w in outs)
            return Gadget(c, f"COPY: wire 1 = a gives {copies}", tuple(cases))
    raise PreconditionViolated("no neighboring inputs map to distance 2 or more")


_EXTRACTORS = {"NOT": _not_gadget, "AND": _and_gadget, "COPY": _copy_gadget}


def extract_garbage_gadget(G: Gate, kind: str) -> Gadget:
    extractor = _EXTRACTORS.get(kind.upper())
    if extractor is None:
        raise BadParameter(f"gadget kind must be NOT, AND or COPY, got {kind!r}")
    return _checked(extractor(G))
