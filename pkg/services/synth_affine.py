"""
Synthesis over the affine generators.

Targets are handled as (rows, offset) of G(x) = Ax ⊕ b. Gates are
post-composed on the outputs until only a wire permutation is left;
the circuit is that permutation followed by the gates in reverse.
"""

import logging
from typing import List, Sequence, Tuple

from services.circuit import Circuit, CircuitBuilder
from services.errors import BadParameter, FlavorMismatch, NotInClass, Singular, SynthesisError
from services.gate_core import AffineForm, signature_from_affine, weight
from services.gf2 import gf2_is_invertible, transpose

logger = logging.getLogger(__name__)

ISOMETRY_GATES = {"F4": ("FK4", 4), "T4": ("TK4", 4), "T6": ("TK6", 6)}


def _row_bit(i: int, n: int) -> int:
    """Mask of variable i (0-based) inside a row word."""
    return 1 << (n - 1 - i)


def emit_wire_permutation(builder: CircuitBuilder, dest: Sequence[int]):
    """SWAPs moving data wire i to wire dest[i-1]."""
    n = len(dest)
    pos = list(range(n + 1))
    at = list(range(n + 1))
    for v in range(1, n + 1):
        target, current = dest[v - 1], pos[v]
        if current == target:
            continue
        builder.add("SWAP", current, target)
        other = at[target]
        at[current], at[target] = other, v
        pos[other], pos[v] = current, target


def emit_offset(builder: CircuitBuilder, offset: int, n: int, paired: bool, one: int = 0):
    """XOR the offset onto the data wires.

    paired emits NOTNOT pairs (CNOTNOT from the 1-ancilla `one` when
    given); otherwise NOTs, or CNOTs from `one` when given.
    """
    wires = [i for i in range(1, n + 1) if (offset >> (n - i)) & 1]
    if paired:
        if len(wires) % 2:
            raise NotInClass("offset has odd weight")
        for u, v in zip(wires[0::2], wires[1::2]):
            if one:
                builder.add("CNOTNOT", one, u, v)
            else:
                builder.add("NOTNOT", u, v)
    else:
        for w in wires:
            if one:
                builder.add("CNOT", one, w)
            else:
                builder.add("NOT", w)


def emit_degenerate(builder: CircuitBuilder, form: AffineForm, pair_offsets: bool):
    n = form.arity
    emit_wire_permutation(builder, [n + 1 - col.bit_length() for col in form.columns])
    emit_offset(builder, form.offset, n, paired=pair_offsets)


def synth_degenerate(form: AffineForm, pair_offsets: bool = False) -> Circuit:
    if not form.is_degenerate:
        raise NotInClass("target is not a wire permutation with NOTs")
    builder = CircuitBuilder(form.arity)
    emit_degenerate(builder, form, pair_offsets)
    return builder.build()


def _check_invertible(form: AffineForm):
    if not gf2_is_invertible(form.columns, form.arity):
        raise Singular("matrix is not invertible over GF(2)")


def _eliminate(rows: List[int], n: int, paired: bool) -> Tuple[List[Tuple[int, ...]], List[int]]:
    """Row operations reducing rows to a permutation; returns (ops, dest)."""
    ops = []
    used = set()
    dest = [0] * n
    for i in range(n):
        bit = _row_bit(i, n)
        candidates = [r for r in range(n) if r not in used and rows[r] & bit]
        p = i if i in candidates else candidates[0]
        used.add(p)
        dest[i] = p + 1
        others = [r for r in range(n) if r != p and rows[r] & bit]
        if paired:
            for r1, r2 in zip(others[0::2], others[1::2]):
                ops.append((p, r1, r2))
                rows[r1] ^= rows[p]
                rows[r2] ^= rows[p]
        else:
            for r in others:
                ops.append((p, r))
                rows[r] ^= rows[p]
    return ops, dest


def _linear_circuit(form: AffineForm, paired: bool) -> CircuitBuilder:
    n = form.arity
    ops, dest = _eliminate(list(transpose(form.columns, n)), n, paired)
    builder = CircuitBuilder(n)
    emit_wire_permutation(builder, dest)
    name = "CNOTNOT" if paired else "CNOT"
    for op in reversed(ops):
        builder.add(name, *(r + 1 for r in op))
    return builder


def synth_affine(form: AffineForm) -> Circuit:
    """Any affine target over CNOT, with one 1-ancilla for the offset."""
    _check_invertible(form)
    builder = _linear_circuit(form, paired=False)
    if form.offset:
        emit_offset(builder, form.offset, form.arity, paired=False, one=builder.ancilla(1))
    return builder.build()


def _check_odd_columns(form: AffineForm):
    _check_invertible(form)
    if any(w % 2 == 0 for w in form.column_weights):
        raise NotInClass("linear part is not parity-preserving")


def synth_pp_affine(form: AffineForm) -> Circuit:
    """Parity-preserving affine target over CNOTNOT, with one 1-ancilla."""
    _check_odd_columns(form)
    if weight(form.offset) % 2:
        raise NotInClass("offset has odd weight")
    builder = _linear_circuit(form, paired=True)
    if form.offset:
        emit_offset(builder, form.offset, form.arity, paired=True, one=builder.ancilla(1))
    return builder.build()


def synth_pr_affine(form: AffineForm) -> Circuit:
    """Parity-respecting affine target over CNOTNOT and NOT, no ancillas."""
    _check_odd_columns(form)
    builder = _linear_circuit(form, paired=True)
    emit_offset(builder, form.offset, form.arity, paired=False)
    return builder.build()


def _check_flavor(form: AffineForm, flavor: str):
    sig = signature_from_affine(form)
    if flavor == "F4" and not sig.mod4_preserving:
        raise NotInClass("target is not mod-4-preserving")
    if flavor == "T4" and not (sig.linear and sig.orthogonal):
        raise NotInClass("target is not linear and orthogonal")
    if flavor == "T6" and not (sig.linear and sig.linear_part_mod4):
        raise NotInClass("target is not linear and mod-4-preserving")


def synth_isometry(form: AffineForm, flavor: str) -> Circuit:
    """Zero-ancilla circuit over FK4, TK4 or TK6 by variable elimination."""
    if flavor not in ISOMETRY_GATES:
        raise FlavorMismatch(f"unknown isometry flavor {flavor!r}")
    _check_invertible(form)
    _check_flavor(form, flavor)
    gate_name, width = ISOMETRY_GATES[flavor]
    take = width - 1
    n = form.arity
    rows = list(transpose(form.columns, n))
    offs = [(form.offset >> (n - 1 - r)) & 1 for r in range(n)]
    active_rows = set(range(n))
    active_vars = list(range(n))
    dest = [0] * n
    ops: List[Tuple[int, ...]] = []

    def occurrences(i: int) -> Tuple[List[int], List[int]]:
        bit = _row_bit(i, n)
        ordered = sorted(active_rows)
        return [r for r in ordered if rows[r] & bit], [r for r in ordered if not rows[r] & bit]

    def peel() -> bool:
        for i in active_vars:
            occ, _ = occurrences(i)
            if len(occ) == 1:
                active_vars.remove(i)
                active_rows.remove(occ[0])
                dest[i] = occ[0] + 1
                return True
        return False

    while active_vars:
        if peel():
            continue
        chosen = None
        for i in active_vars:
            occ, non = occurrences(i)
            if len(occ) >= take and non:
                chosen = i
                break
        if chosen is None:
            raise SynthesisError(f"variable elimination stalled with {len(active_vars)} variables left")
        while True:
            occ, non = occurrences(chosen)
            if len(occ) < take or not non:
                break
            wires = sorted(occ[:take] + non[:1])
            parity_row = 0
            parity_off = 1 if flavor == "F4" else 0
            for r in wires:
                parity_row ^= rows[r]
                parity_off ^= offs[r]
            for r in wires:
                rows[r] ^= parity_row
                offs[r] ^= parity_off
            ops.append(tuple(wires))
            logger.debug(f"{gate_name} on rows {wires} for variable {chosen}")
        if len(occurrences(chosen)[0]) != 1:
            raise SynthesisError(f"variable {chosen + 1} kept {len(occurrences(chosen)[0])} occurrences")

    if any(offs):
        raise SynthesisError("elimination left a nonzero offset")
    builder = CircuitBuilder(n)
    emit_wire_permutation(builder, dest)
    for op in reversed(ops):
        builder.add(gate_name, *(r + 1 for r in op))
    return builder.build()


def with_offset(c: Circuit, offset: int, paired: bool) -> Circuit:
    """Append NOT (or NOTNOT) cleanup gates for an affine offset."""
    builder = CircuitBuilder(c.data_wires)
    for bit in c.ancillas:
        builder.ancilla(bit)
    builder.extend(c.ops)
    emit_offset(builder, offset, c.data_wires, paired=paired)
    return builder.build()


def t_reduce(k: int, flavor: str = "T6") -> Circuit:
    """T6 from TK(4k+2), or T4 from TK(4k), with 3(2k-2) zero ancillas."""
    if flavor not in ("T6", "T4"):
        raise FlavorMismatch(f"t_reduce flavor must be T6 or T4, got {flavor!r}")
    if k < 1:
        raise BadParameter(f"t_reduce needs k >= 1, got {k}")
    width = 6 if flavor == "T6" else 4
    big = f"TK{4 * k + 2 if flavor == 'T6' else 4 * k}"
    builder = CircuitBuilder(width)
    data = list(range(1, width + 1))
    m = 2 * k - 2
    if not m:
        builder.add(big, *data)
        return builder.build()
    pad1 = [builder.ancilla(0) for _ in range(m)]
    pad2 = [builder.ancilla(0) for _ in range(m)]
    spare = [builder.ancilla(0) for _ in range(m)]
    for first, second in ((pad1, pad2), (spare, pad2), (pad1, spare)):
        builder.add(big, *first, *second, *data)
    return builder.build()
