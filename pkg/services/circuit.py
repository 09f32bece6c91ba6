"""
Circuit Representation and Verification.

A circuit is a wire count, a number of leading data wires, the initial
bits of the remaining (ancilla) wires, and an ordered list of named
gate applications. Wire lists put controls first and targets last.

Circuits are written in the line-oriented .rgc format:

    # comment
    width 5
    data 4
    ancilla 5 = 0
    deftable MYGATE
    00 -> 01
    ...
    gate FREDKIN 1 2 5
"""

import logging
import os
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from services.errors import (
    AncillaConflict,
    AncillaInputDependent,
    AncillaNotRestored,
    ArityMismatch,
    BadParameter,
    MalformedInput,
    RevGenError,
    TooLarge,
    WidthMismatch,
)
from services.gate_core import (
    Gate,
    bits_to_word,
    ck_gate,
    cnot_gate,
    cnotnot_gate,
    fk_gate,
    fredkin_gate,
    from_permutation,
    gate_from_table,
    inverse,
    not_gate,
    notnot_gate,
    swap_gate,
    tk_gate,
    toffoli_gate,
    word_to_bits,
)

logger = logging.getLogger(__name__)

# --- Configuration ---
MAX_SIM_WIDTH = int(os.getenv('REVGEN_MAX_SIM_WIDTH', '24'))

_FIXED_GATES: Dict[str, Callable[[], Gate]] = {
    "NOT": not_gate,
    "NOTNOT": notnot_gate,
    "CNOT": cnot_gate,
    "CNOTNOT": cnotnot_gate,
    "TOFFOLI": toffoli_gate,
    "FREDKIN": fredkin_gate,
    "SWAP": swap_gate,
}

_FAMILY_GATES: Dict[str, Callable[[int], Gate]] = {"CK": ck_gate, "TK": tk_gate, "FK": fk_gate}


# --- Data Structures ---

@dataclass(frozen=True)
class PrimitiveGate:
    name: str
    gate: Gate
    user: bool = False

    @property
    def arity(self) -> int:
        return self.gate.arity

    def inverse(self) -> "PrimitiveGate":
        if not self.user:
            return self
        inv = inverse(self.gate)
        if inv == self.gate:
            return self
        label = self.name[:-4] if self.name.endswith("_INV") else f"{self.name}_INV"
        return PrimitiveGate(label, inv, user=True)


@lru_cache(maxsize=None)
def primitive(name: str) -> PrimitiveGate:
    """Named primitive: NOT, CNOT, ..., or a family member such as CK4, TK6, FK4."""
    key = name.upper()
    if key in _FIXED_GATES:
        return PrimitiveGate(key, _FIXED_GATES[key]())
    match = re.fullmatch(r"(CK|TK|FK)(\d+)", key)
    if match:
        return PrimitiveGate(key, _FAMILY_GATES[match.group(1)](int(match.group(2))))
    raise BadParameter(f"unknown primitive gate {name!r}")


def is_named_gate(name: str) -> bool:
    try:
        primitive(name)
    except (BadParameter, RevGenError):
        return False
    return True


def user_gate(label: str, gate: Gate) -> PrimitiveGate:
    if is_named_gate(label) or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", label):
        raise BadParameter(f"{label!r} cannot label a user gate")
    return PrimitiveGate(label, gate, user=True)


@dataclass(frozen=True)
class Operation:
    gate: PrimitiveGate
    wires: Tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.gate.name} {' '.join(map(str, self.wires))}"


@dataclass(frozen=True)
class Circuit:
    width: int
    data_wires: int
    ancillas: Tuple[int, ...] = ()
    ops: Tuple[Operation, ...] = ()

    def __post_init__(self):
        if not 0 <= self.data_wires <= self.width:
            raise WidthMismatch(f"{self.data_wires} data wires in a width-{self.width} circuit")
        if len(self.ancillas) != self.width - self.data_wires:
            raise AncillaConflict(
                f"{len(self.ancillas)} ancilla bits for {self.width - self.data_wires} ancilla wires"
            )
        if any(bit not in (0, 1) for bit in self.ancillas):
            raise AncillaConflict("ancilla bits must be 0 or 1")
        for op in self.ops:
            wires = op.wires
            if len(wires) != op.gate.arity:
                raise ArityMismatch(f"{op} needs {op.gate.arity} wires")
            if len(set(wires)) != len(wires) or any(not 1 <= w <= self.width for w in wires):
                raise WidthMismatch(f"{op} uses invalid wires for width {self.width}")

    @property
    def ancilla_count(self) -> int:
        return self.width - self.data_wires

    @property
    def ancilla_init(self) -> Dict[int, int]:
        return {self.data_wires + j + 1: bit for j, bit in enumerate(self.ancillas)}

    @property
    def ancilla_word(self) -> int:
        word = 0
        for bit in self.ancillas:
            word = (word << 1) | bit
        return word

    @property
    def gate_count(self) -> int:
        return len(self.ops)

    def gate_names(self) -> set:
        return {op.gate.name for op in self.ops}


@dataclass(frozen=True)
class CircuitStats:
    gate_count: int
    ancilla_count: int
    depth: int


@dataclass
class VerificationReport:
    implements_target: bool
    ancilla_violations: List[Tuple[str, int, int]] = field(default_factory=list)
    mismatches: List[Tuple[str, str, str]] = field(default_factory=list)
    gate_count: int = 0
    ancilla_count: int = 0

    def summary(self) -> str:
        lines = [
            f"implements target: {'yes' if self.implements_target else 'no'}",
            f"gates: {self.gate_count}",
            f"ancillas: {self.ancilla_count}",
        ]
        for data_input, wire, bit in self.ancilla_violations[:10]:
            lines.append(f"ancilla wire {wire} ends as {bit} on input {data_input}")
        for data_input, expected, observed in self.mismatches[:10]:
            lines.append(f"input {data_input}: expected {expected}, got {observed}")
        hidden = len(self.ancilla_violations) + len(self.mismatches) - 20
        if hidden > 0:
            lines.append(f"... {hidden} more")
        return "\n".join(lines)


class CircuitBuilder:
    """Accumulates operations; ancilla wires are appended as they are requested."""

    def __init__(self, data_wires: int):
        self.data_wires = data_wires
        self._ancillas: List[int] = []
        self._ops: List[Operation] = []

    @property
    def width(self) -> int:
        return self.data_wires + len(self._ancillas)

    def ancilla(self, bit: int) -> int:
        self._ancillas.append(bit)
        return self.width

    def add(self, gate: Union[str, PrimitiveGate], *wires: int) -> "CircuitBuilder":
        prim = primitive(gate) if isinstance(gate, str) else gate
        self._ops.append(Operation(prim, tuple(wires)))
        return self

    def extend(self, ops: Sequence[Operation]) -> "CircuitBuilder":
        self._ops.extend(ops)
        return self

    def __len__(self) -> int:
        return len(self._ops)

    def build(self) -> Circuit:
        return Circuit(self.width, self.data_wires, tuple(self._ancillas), tuple(self._ops))


class LazyWire:
    """An ancilla wire allocated on first use."""

    def __init__(self, builder: CircuitBuilder, bit: int):
        self._builder = builder
        self._bit = bit
        self._wire: Optional[int] = None

    def __call__(self) -> int:
        if self._wire is None:
            self._wire = self._builder.ancilla(self._bit)
        return self._wire


# --- Simulation ---

def _compile(op: Operation, width: int) -> Callable[[int], int]:
    shifts = [width - w for w in op.wires]
    name = op.gate.name if not op.gate.user else ""
    if name == "NOT":
        m = 1 << shifts[0]
        return lambda s: s ^ m
    if name == "CNOT":
        c, t = shifts
        return lambda s: s ^ (((s >> c) & 1) << t)
    if name == "TOFFOLI":
        c1, c2, t = shifts
        return lambda s: s ^ ((((s >> c1) & (s >> c2)) & 1) << t)
    if name in ("FREDKIN", "SWAP"):
        p, q = shifts[-2:]
        pq = (1 << p) | (1 << q)
        if name == "SWAP":
            return lambda s: s ^ pq if ((s >> p) ^ (s >> q)) & 1 else s
        c = shifts[0]
        return lambda s: s ^ pq if (s >> c) & 1 and ((s >> p) ^ (s >> q)) & 1 else s

    table = op.gate.gate.table
    a = len(shifts)

    def step(s: int) -> int:
        sub = 0
        for sh in shifts:
            sub = (sub << 1) | ((s >> sh) & 1)
        diff = sub ^ table[sub]
        if diff:
            for j, sh in enumerate(shifts):
                if (diff >> (a - 1 - j)) & 1:
                    s ^= 1 << sh
        return s

    return step


def compile_circuit(c: Circuit) -> List[Callable[[int], int]]:
    return [_compile(op, c.width) for op in c.ops]


def simulate(c: Circuit, x: Union[int, str]) -> Union[int, str]:
    """Run every op on a full-width word; bit strings are answered in kind."""
    as_bits = isinstance(x, str)
    if as_bits:
        if len(x) != c.width:
            raise WidthMismatch(f"{len(x)}-bit input for a width-{c.width} circuit")
        x = bits_to_word(x)
    elif not 0 <= x < 1 << c.width:
        raise WidthMismatch(f"word {x} out of range for width {c.width}")
    for step in compile_circuit(c):
        x = step(x)
    return word_to_bits(x, c.width) if as_bits else x


def _check_budget(c: Circuit):
    if c.data_wires < 1:
        raise WidthMismatch("circuit has no data wires")
    if c.width > MAX_SIM_WIDTH:
        raise TooLarge(f"width {c.width} exceeds the enumeration budget of {MAX_SIM_WIDTH}")


def _run_all(c: Circuit) -> List[int]:
    steps = compile_circuit(c)
    shift = c.ancilla_count
    anc = c.ancilla_word
    finals = []
    for x in range(1 << c.data_wires):
        s = (x << shift) | anc
        for step in steps:
            s = step(s)
        finals.append(s)
    return finals


def realized_transformation(c: Circuit, loose: bool = False) -> Gate:
    """The d-bit gate computed on the data wires.

    Strict mode requires every ancilla to return to its initial bit;
    loose mode only requires the final ancilla pattern not to depend on
    the input.
    """
    _check_budget(c)
    shift = c.ancilla_count
    mask = (1 << shift) - 1
    anc = c.ancilla_word
    outputs = []
    observed: Optional[int] = None
    for x, s in enumerate(_run_all(c)):
        final = s & mask
        if loose:
            if observed is None:
                observed = final
            elif final != observed:
                raise AncillaInputDependent(
                    f"ancilla pattern {word_to_bits(final, shift)} on input "
                    f"{word_to_bits(x, c.data_wires)} differs from {word_to_bits(observed, shift)}"
                )
        elif final != anc:
            j = next(j for j in range(shift) if ((final ^ anc) >> (shift - 1 - j)) & 1)
            raise AncillaNotRestored(
                c.data_wires + j + 1,
                word_to_bits(x, c.data_wires),
                (final >> (shift - 1 - j)) & 1,
            )
        outputs.append(s >> shift)
    return from_permutation(outputs, c.data_wires)


def verify(c: Circuit, target: Gate, loose: bool = False) -> VerificationReport:
    if target.arity != c.data_wires:
        raise ArityMismatch(f"{target.arity}-bit target for {c.data_wires} data wires")
    _check_budget(c)
    d = c.data_wires
    shift = c.ancilla_count
    mask = (1 << shift) - 1
    reference = c.ancilla_word
    report = VerificationReport(True, gate_count=c.gate_count, ancilla_count=shift)
    finals = _run_all(c)
    if loose and finals:
        reference = finals[0] & mask
    for x, s in enumerate(finals):
        data_input = word_to_bits(x, d)
        diff = (s & mask) ^ reference
        for j in range(shift):
            if (diff >> (shift - 1 - j)) & 1:
                report.ancilla_violations.append((data_input, d + j + 1, (s >> (shift - 1 - j)) & 1))
        out = s >> shift
        if out != target.table[x]:
            report.mismatches.append((data_input, word_to_bits(target.table[x], d), word_to_bits(out, d)))
    report.implements_target = not report.ancilla_violations and not report.mismatches
    return report


# --- Circuit Algebra ---

def invert(c: Circuit) -> Circuit:
    ops = tuple(Operation(op.gate.inverse(), op.wires) for op in reversed(c.ops))
    return Circuit(c.width, c.data_wires, c.ancillas, ops)


def concatenate(c1: Circuit, c2: Circuit) -> Circuit:
    """c1 followed by c2."""
    if c1.width != c2.width or c1.data_wires != c2.data_wires:
        raise WidthMismatch(
            f"cannot join width {c1.width}/{c1.data_wires} with width {c2.width}/{c2.data_wires}"
        )
    if c1.ancillas != c2.ancillas:
        raise AncillaConflict("ancilla initial bits differ")
    return Circuit(c1.width, c1.data_wires, c1.ancillas, c1.ops + c2.ops)


def stats(c: Circuit) -> CircuitStats:
    level = [0] * (c.width + 1)
    depth = 0
    for op in c.ops:
        layer = max(level[w] for w in op.wires) + 1
        for w in op.wires:
            level[w] = layer
        depth = max(depth, layer)
    return CircuitStats(c.gate_count, c.ancilla_count, depth)


# --- Circuit Text Format ---

def format_circuit(c: Circuit) -> str:
    lines = [f"width {c.width}", f"data {c.data_wires}"]
    for wire, bit in c.ancilla_init.items():
        lines.append(f"ancilla {wire} = {bit}")
    declared = set()
    for op in c.ops:
        if op.gate.user and op.gate.name not in declared:
            declared.add(op.gate.name)
            lines.append(f"deftable {op.gate.name}")
            lines.extend(f"{inp} -> {out}" for inp, out in op.gate.gate.rows())
    for op in c.ops:
        lines.append(f"gate {op}")
    return "\n".join(lines) + "\n"


def _int(token: str, lineno: int) -> int:
    if not token.isdigit():
        raise MalformedInput(f"expected a number, got {token!r}", lineno)
    return int(token)


def parse_circuit(text: str) -> Circuit:
    width = data = None
    ancilla_bits: Dict[int, int] = {}
    user: Dict[str, PrimitiveGate] = {}
    ops: List[Operation] = []
    table_label: Optional[str] = None
    table_rows: List[Tuple[str, str]] = []
    table_line = 0

    def close_table():
        nonlocal table_label, table_rows
        if table_label is None:
            return
        try:
            user[table_label] = user_gate(table_label, gate_from_table(table_rows))
        except RevGenError as e:
            raise MalformedInput(f"table {table_label}: {e}", table_line) from e
        table_label, table_rows = None, []

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if table_label is not None and "->" in line:
            inp, _, out = line.partition("->")
            table_rows.append((inp.strip(), out.strip()))
            continue
        close_table()
        tokens = line.split()
        keyword = tokens[0].lower()
        if keyword == "width" and len(tokens) == 2:
            width = _int(tokens[1], lineno)
        elif keyword == "data" and len(tokens) == 2:
            data = _int(tokens[1], lineno)
        elif keyword == "ancilla" and len(tokens) == 4 and tokens[2] == "=":
            wire = _int(tokens[1], lineno)
            if tokens[3] not in ("0", "1"):
                raise MalformedInput(f"ancilla bit must be 0 or 1, got {tokens[3]!r}", lineno)
            if wire in ancilla_bits:
                raise MalformedInput(f"ancilla wire {wire} declared twice", lineno)
            ancilla_bits[wire] = int(tokens[3])
        elif keyword == "deftable" and len(tokens) == 2:
            if tokens[1] in user:
                raise MalformedInput(f"table {tokens[1]} declared twice", lineno)
            table_label, table_line = tokens[1], lineno
        elif keyword == "gate" and len(tokens) >= 2:
            name = tokens[1]
            if name in user:
                prim = user[name]
            else:
                try:
                    prim = primitive(name)
                except RevGenError as e:
                    raise MalformedInput(str(e), lineno) from e
            ops.append(Operation(prim, tuple(_int(t, lineno) for t in tokens[2:])))
        else:
            raise MalformedInput(f"cannot parse {line!r}", lineno)
    close_table()

    if width is None or data is None:
        raise MalformedInput("missing width or data header")
    expected = set(range(data + 1, width + 1))
    if set(ancilla_bits) != expected:
        raise MalformedInput(f"ancilla declarations must cover wires {sorted(expected)}")
    try:
        return Circuit(width, data, tuple(ancilla_bits[w] for w in sorted(expected)), tuple(ops))
    except RevGenError as e:
        raise MalformedInput(str(e)) from e


def load_circuit(path: str) -> Circuit:
    with open(path, "r") as f:
        return parse_circuit(f.read())


def save_circuit(c: Circuit, path: str):
    with open(path, "w") as f:
        f.write(format_circuit(c))
    logger.info(f"Wrote {c.gate_count} gates on {c.width} wires to {path}")
