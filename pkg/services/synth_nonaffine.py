"""
Synthesis over the non-affine generators: Toffoli, Fredkin, C_k and
Fredkin+NOT(NOT).

Every target is split into transpositions σ(y, z); each transposition
is realized by flagging the inputs y and z on an ancilla, swapping the
differing bits under that flag, and unflagging.
"""

import logging
from typing import List, Optional, Sequence, Tuple

from services.circuit import Circuit, CircuitBuilder, LazyWire, Operation, primitive
from services.errors import ArityTooSmall, BadParameter, NotInClass
from services.gate_core import (
    Gate,
    bit_of,
    ck_gate,
    signature,
    tensor,
    not_gate,
    weight,
)
from services.synth_affine import emit_degenerate

logger = logging.getLogger(__name__)

Control = Tuple[int, int]  # (wire, bit the wire must hold)


def transpositions(F: Gate) -> List[Tuple[int, int]]:
    """Transpositions (y, z), y < z, whose left-to-right application realizes F."""
    seen = [False] * F.size
    result = []
    for start in range(F.size):
        if seen[start]:
            continue
        cycle = []
        x = start
        while not seen[x]:
            seen[x] = True
            cycle.append(x)
            x = F.table[x]
        # c0 -> c1 -> ... : swap the tail pair first, then walk back to the head
        for j in range(len(cycle) - 1, 0, -1):
            y, z = cycle[j - 1], cycle[j]
            result.append((min(y, z), max(y, z)))
    return result


def _controls(wires: Sequence[int], pattern: int, n: int) -> List[Control]:
    return [(w, bit_of(pattern, i, n)) for i, w in enumerate(wires, 1)]


# --- Toffoli ---

class _ToffoliEmitter:
    """NOT and CNOT written as Toffolis on a pair of 1-ancillas."""

    def __init__(self, builder: CircuitBuilder):
        self.builder = builder
        self.one1 = LazyWire(builder, 1)
        self.one2 = LazyWire(builder, 1)

    def toffoli(self, c1: int, c2: int, t: int):
        self.builder.add("TOFFOLI", c1, c2, t)

    def not_(self, wire: int):
        self.toffoli(self.one1(), self.one2(), wire)

    def cnot(self, control: int, target: int):
        self.toffoli(control, self.one1(), target)

    def mcx(self, controls: Sequence[int], target: int, borrowed: Optional[int]):
        """Flip target iff every control is 1; borrowed may hold any value and is restored."""
        if len(controls) == 1:
            self.cnot(controls[0], target)
            return
        if len(controls) == 2:
            self.toffoli(controls[0], controls[1], target)
            return
        h = (len(controls) + 1) // 2
        first, rest = list(controls[:h]), list(controls[h:])
        for _ in range(2):
            self.mcx(first, borrowed, target)
            self.mcx(rest + [borrowed], target, first[0])

    def w_cnot(self, controls: Sequence[Control], target: int, borrowed: Optional[int]):
        zeros = [w for w, bit in controls if not bit]
        for w in zeros:
            self.not_(w)
        self.mcx([w for w, _ in controls], target, borrowed)
        for w in zeros:
            self.not_(w)


def multi_controlled_not(n: int, pattern: str) -> Circuit:
    """(n+1)-bit gate flipping the last wire iff wires 1..n read the pattern."""
    if n < 2:
        raise ArityTooSmall(f"multi-controlled NOT needs at least 2 controls, got {n}")
    if len(pattern) != n or any(ch not in "01" for ch in pattern):
        raise BadParameter(f"pattern {pattern!r} does not have {n} bits")
    builder = CircuitBuilder(n + 1)
    em = _ToffoliEmitter(builder)
    borrowed = em.one1() if n >= 3 else None
    controls = [(i, int(ch)) for i, ch in enumerate(pattern, 1)]
    em.w_cnot(controls, n + 1, borrowed)
    return builder.build()


def synth_all(F: Gate) -> Circuit:
    """Any permutation over Toffoli, with at most 3 ancillas."""
    n = F.arity
    builder = CircuitBuilder(n)
    swaps = transpositions(F)
    if not swaps:
        return builder.build()
    em = _ToffoliEmitter(builder)
    flag = builder.ancilla(0)
    data = list(range(1, n + 1))
    for y, z in swaps:
        logger.debug(f"Toffoli transposition {y} <-> {z}")
        borrowed = em.one1() if n >= 3 else None
        for word in (y, z):
            em.w_cnot(_controls(data, word, n), flag, borrowed)
        for i in range(1, n + 1):
            if bit_of(y, i, n) != bit_of(z, i, n):
                em.cnot(flag, i)
        for word in (z, y):
            em.w_cnot(_controls(data, word, n), flag, borrowed)
    return builder.build()


# --- Fredkin ---

class SwapEmitter:
    """Emits Fredkin, SWAP and C_k, optionally lowering Fredkin to three C_k."""

    def __init__(self, builder: CircuitBuilder, lower_to_ck: int = 0, notnot_as_nots: bool = False):
        self.builder = builder
        self.lower_to_ck = lower_to_ck
        self.notnot_as_nots = notnot_as_nots
        self._ones: List[LazyWire] = [LazyWire(builder, 1) for _ in range(max(lower_to_ck - 2, 0))]

    def fredkin(self, c: int, p: int, q: int):
        k = self.lower_to_ck
        if not k:
            self.builder.add("FREDKIN", c, p, q)
            return
        ones = [one() for one in self._ones]
        for t in (p, q, p):
            self.builder.add(f"CK{k}", c, t, *ones)

    def swap(self, p: int, q: int):
        self.builder.add("SWAP", p, q)

    def ck(self, wires: Sequence[int]):
        if len(wires) == 2:
            u, v = wires
            if self.notnot_as_nots:
                self.builder.add("NOT", u)
                self.builder.add("NOT", v)
            else:
                self.builder.add("NOTNOT", u, v)
            self.swap(u, v)
            return
        self.builder.add(f"CK{len(wires)}", *wires)


class _DualRailRegister:
    """An ancilla pair starting as (0, 1); swapping it toggles the first wire."""

    def __init__(self, builder: CircuitBuilder):
        self._bit = LazyWire(builder, 0)
        self._bar = LazyWire(builder, 1)

    @property
    def wires(self) -> Tuple[int, int]:
        return self._bit(), self._bar()

    @property
    def bit(self) -> int:
        return self.wires[0]


def _cswap1(em: SwapEmitter, control: Control, target: Tuple[int, int]):
    u, pu = control
    p, q = target
    if not pu:
        em.swap(p, q)
    em.fredkin(u, p, q)


def _ccswap(em: SwapEmitter, first: Control, second: Control, target: Tuple[int, int], scratch: LazyWire):
    (u, pu), (v, pv) = first, second
    if pu and not pv:
        first, second = second, first
        (u, pu), (v, pv) = first, second
    if not pu and not pv:
        # [u=0][v=0] = [u=0] xor [u=0][v=1]
        _cswap1(em, (u, 0), target)
        _ccswap(em, (u, 0), (v, 1), target, scratch)
        return
    c = scratch()
    if not pu:
        em.swap(v, c)
    em.fredkin(u, v, c)
    em.fredkin(c, *target)
    em.fredkin(u, v, c)
    if not pu:
        em.swap(v, c)


def _cswap(
    em: SwapEmitter,
    controls: Sequence[Control],
    target: Tuple[int, int],
    target_reg: Optional[_DualRailRegister],
    spare: Sequence[_DualRailRegister],
    scratch: LazyWire,
):
    """Swap target iff every control holds its bit.

    Registers in spare are borrowed: any complementary state works and is
    restored.
    """
    if len(controls) == 1:
        _cswap1(em, controls[0], target)
        return
    if len(controls) == 2:
        _ccswap(em, controls[0], controls[1], target, scratch)
        return
    reg = spare[0]
    inner_spare = list(spare[1:]) + ([target_reg] if target_reg is not None else [])
    for _ in range(2):
        _cswap(em, controls[:-1], reg.wires, reg, inner_spare, scratch)
        _ccswap(em, controls[-1], (reg.bit, 1), target, scratch)


def multi_controlled_swap(n: int, pattern: str) -> Circuit:
    """(n+2)-bit gate swapping the last two wires iff wires 1..n read the pattern."""
    if n < 1:
        raise ArityTooSmall(f"multi-controlled swap needs at least 1 control, got {n}")
    if len(pattern) != n or any(ch not in "01" for ch in pattern):
        raise BadParameter(f"pattern {pattern!r} does not have {n} bits")
    builder = CircuitBuilder(n + 2)
    em = SwapEmitter(builder)
    scratch = LazyWire(builder, 0)
    registers = [_DualRailRegister(builder), _DualRailRegister(builder)]
    controls = [(i, int(ch)) for i, ch in enumerate(pattern, 1)]
    _cswap(em, controls, (n + 1, n + 2), None, registers, scratch)
    return builder.build()


def controlled_ck(em: SwapEmitter, control: int, wires: Sequence[int], register: Tuple[int, int]):
    """C_k on wires when control is 1; register must hold (0, 1) and is restored."""
    r0, r1 = register
    y1, y2 = wires[0], wires[1]

    def exchange():
        em.fredkin(control, y1, r0)
        em.fredkin(control, y2, r1)
        em.swap(y1, r0)
        em.swap(y2, r1)

    exchange()
    em.ck(wires)
    exchange()


def build_cck(k: int) -> Circuit:
    """CC_k over Fredkin and C_k, with two ancillas (0, 1)."""
    if k < 2:
        raise BadParameter(f"CC_k needs k >= 2, got {k}")
    builder = CircuitBuilder(k + 1)
    em = SwapEmitter(builder)
    register = (builder.ancilla(0), builder.ancilla(1))
    controlled_ck(em, 1, list(range(2, k + 2)), register)
    return builder.build()


def fredkin_from_ck(k: int) -> Circuit:
    """Fredkin from three C_k applications sharing k-2 ancillas set to 1."""
    if k < 3:
        raise BadParameter(f"Fredkin from C_k needs k >= 3, got {k}")
    builder = CircuitBuilder(3)
    SwapEmitter(builder, lower_to_ck=k).fredkin(1, 2, 3)
    return builder.build()


def _synth_swap_family(F: Gate, k: int, lower_to_ck: int = 0, notnot_as_nots: bool = False) -> Circuit:
    """Mod-k-preserving F over Fredkin and C_k; k = 0 means conservative."""
    n = F.arity
    builder = CircuitBuilder(n)
    em = SwapEmitter(builder, lower_to_ck=lower_to_ck, notnot_as_nots=notnot_as_nots)
    scratch = LazyWire(builder, 0)
    flag = _DualRailRegister(builder)
    spare = _DualRailRegister(builder)
    data = list(range(1, n + 1))
    for y, z in transpositions(F):
        logger.debug(f"Fredkin transposition {y} <-> {z}")
        ctrl_y, ctrl_z = _controls(data, y, n), _controls(data, z, n)
        _cswap(em, ctrl_y, flag.wires, flag, [spare], scratch)
        _cswap(em, ctrl_z, flag.wires, flag, [spare], scratch)
        a = flag.bit
        ones_y = [i for i in data if bit_of(y, i, n) and not bit_of(z, i, n)]
        ones_z = [i for i in data if bit_of(z, i, n) and not bit_of(y, i, n)]
        for i, j in zip(ones_y, ones_z):
            em.fredkin(a, i, j)
        surplus = ones_y[len(ones_z):] or ones_z[len(ones_y):]
        if surplus:
            if not k or len(surplus) % k:
                raise NotInClass(f"transposition changes weight by {len(surplus)}")
            for g in range(0, len(surplus), k):
                controlled_ck(em, a, surplus[g:g + k], spare.wires)
        _cswap(em, ctrl_z, flag.wires, flag, [spare], scratch)
        _cswap(em, ctrl_y, flag.wires, flag, [spare], scratch)
    return builder.build()


def _degenerate_or_none(F: Gate, notnot_as_nots: bool = False) -> Optional[Circuit]:
    sig = signature(F)
    if not sig.degenerate:
        return None
    builder = CircuitBuilder(F.arity)
    emit_degenerate(builder, sig.affine, pair_offsets=not notnot_as_nots and sig.offset_even)
    return builder.build()


def synth_conservative(F: Gate) -> Circuit:
    if not signature(F).conservative:
        raise NotInClass("target changes some Hamming weight")
    return _degenerate_or_none(F) or _synth_swap_family(F, 0)


def synth_modk(F: Gate, k: int) -> Circuit:
    """Mod-k-preserving F over C_k, with at most k+3 ancillas."""
    if k < 3:
        raise BadParameter(f"MOD(k) synthesis needs k >= 3, got {k}")
    sig = signature(F)
    if not sig.profile.all_congruent(k, 0):
        raise NotInClass(f"target is not mod-{k}-preserving")
    if F.arity == k and F == ck_gate(k):
        builder = CircuitBuilder(k)
        builder.add(f"CK{k}", *range(1, k + 1))
        return builder.build()
    return _degenerate_or_none(F) or _synth_swap_family(F, k, lower_to_ck=k)


def synth_parity(F: Gate, flipping: bool = False) -> Circuit:
    """Parity-preserving F over Fredkin+NOTNOT, or parity-respecting F over Fredkin+NOT."""
    sig = signature(F)
    if not (sig.parity_preserving or (flipping and sig.parity_flipping)):
        raise NotInClass("target is not parity-" + ("respecting" if flipping else "preserving"))
    degenerate = _degenerate_or_none(F, notnot_as_nots=flipping)
    if degenerate is not None:
        return degenerate
    if sig.parity_preserving:
        return _synth_swap_family(F, 2, notnot_as_nots=flipping)
    # F ⊗ NOT is parity-preserving; its extra wire becomes a 0-ancilla reset by one NOT
    inner = _synth_swap_family(tensor(F, not_gate()), 2, notnot_as_nots=True)
    n = F.arity
    ops = inner.ops + (Operation(primitive("NOT"), (n + 1,)),)
    return Circuit(inner.width, n, (0,) + inner.ancillas, ops)
