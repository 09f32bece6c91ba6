"""
Gate Class Lattice.

Class identifiers, the containment order, joins, and the minimal-class
classifier. A class is pinned down by a checkable invariant on the
gate's signature; the classifier walks those invariants from the most
specific class upward.
"""

import logging
import re
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from services.errors import BadParameter
from services.gate_core import (
    Gate,
    InvariantSignature,
    ck_gate,
    cnot_gate,
    cnotnot_gate,
    fk_gate,
    fredkin_gate,
    not_gate,
    notnot_gate,
    signature,
    tk_gate,
    toffoli_gate,
    weight,
)

logger = logging.getLogger(__name__)


# --- Data Structures ---

class ClassKind(str, Enum):
    TRIVIAL = "TRIVIAL"
    NOTNOT = "NOTNOT"
    NOT = "NOT"
    T6 = "T6"
    T6_NOTNOT = "T6+NOTNOT"
    T6_NOT = "T6+NOT"
    T4 = "T4"
    F4 = "F4"
    T4_NOTNOT = "T4+NOTNOT"
    T4_NOT = "T4+NOT"
    CNOTNOT = "CNOTNOT"
    CNOTNOT_NOT = "CNOTNOT+NOT"
    CNOT = "CNOT"
    FREDKIN = "FREDKIN"
    MOD = "MOD"
    FREDKIN_NOT = "FREDKIN+NOT"
    ALL = "ALL"


@dataclass(frozen=True)
class GateClass:
    """A lattice element; modulus is only meaningful for the MOD family."""
    kind: ClassKind
    modulus: int = 0

    def __post_init__(self):
        if self.kind is ClassKind.MOD and self.modulus < 2:
            raise BadParameter(f"MOD classes need k >= 2, got {self.modulus}")
        if self.kind is not ClassKind.MOD and self.modulus:
            raise BadParameter(f"{self.kind.value} takes no modulus")

    @property
    def name(self) -> str:
        if self.kind is ClassKind.MOD:
            return f"MOD{self.modulus}"
        return self.kind.value

    @property
    def is_mod(self) -> bool:
        return self.kind is ClassKind.MOD

    def __str__(self) -> str:
        return self.name


def mod_class(k: int) -> GateClass:
    return GateClass(ClassKind.MOD, k)


TRIVIAL = GateClass(ClassKind.TRIVIAL)
NOTNOT = GateClass(ClassKind.NOTNOT)
NOT = GateClass(ClassKind.NOT)
T6 = GateClass(ClassKind.T6)
T6_NOTNOT = GateClass(ClassKind.T6_NOTNOT)
T6_NOT = GateClass(ClassKind.T6_NOT)
T4 = GateClass(ClassKind.T4)
F4 = GateClass(ClassKind.F4)
T4_NOTNOT = GateClass(ClassKind.T4_NOTNOT)
T4_NOT = GateClass(ClassKind.T4_NOT)
CNOTNOT = GateClass(ClassKind.CNOTNOT)
CNOTNOT_NOT = GateClass(ClassKind.CNOTNOT_NOT)
CNOT = GateClass(ClassKind.CNOT)
FREDKIN = GateClass(ClassKind.FREDKIN)
MOD2 = mod_class(2)
FREDKIN_NOT = GateClass(ClassKind.FREDKIN_NOT)
ALL = GateClass(ClassKind.ALL)

FINITE_CLASSES: Tuple[GateClass, ...] = (
    TRIVIAL, NOTNOT, NOT, T6, T6_NOTNOT, T6_NOT, T4, F4, T4_NOTNOT, T4_NOT,
    CNOTNOT, CNOTNOT_NOT, CNOT, FREDKIN, FREDKIN_NOT, ALL,
)

AFFINE_CLASSES: Tuple[GateClass, ...] = (
    TRIVIAL, NOTNOT, NOT, T6, T6_NOTNOT, T6_NOT, T4, F4, T4_NOTNOT, T4_NOT,
    CNOTNOT, CNOTNOT_NOT, CNOT,
)

# Covering relation among the finite kinds (upper -> lowers). The MOD
# family hangs between FREDKIN_NOT and FREDKIN and is handled in leq.
_COVERS: Dict[ClassKind, Tuple[ClassKind, ...]] = {
    ClassKind.ALL: (ClassKind.FREDKIN_NOT, ClassKind.CNOT),
    ClassKind.FREDKIN_NOT: (ClassKind.CNOTNOT_NOT, ClassKind.FREDKIN),
    ClassKind.CNOT: (ClassKind.CNOTNOT_NOT,),
    ClassKind.CNOTNOT_NOT: (ClassKind.CNOTNOT, ClassKind.T4_NOT),
    ClassKind.CNOTNOT: (ClassKind.T4_NOTNOT,),
    ClassKind.T4_NOT: (ClassKind.T4_NOTNOT, ClassKind.T6_NOT),
    ClassKind.T4_NOTNOT: (ClassKind.F4, ClassKind.T4, ClassKind.T6_NOTNOT),
    ClassKind.T6_NOT: (ClassKind.T6_NOTNOT, ClassKind.NOT),
    ClassKind.T6_NOTNOT: (ClassKind.T6, ClassKind.NOTNOT),
    ClassKind.F4: (ClassKind.T6,),
    ClassKind.T4: (ClassKind.T6,),
    ClassKind.T6: (ClassKind.TRIVIAL,),
    ClassKind.NOT: (ClassKind.NOTNOT,),
    ClassKind.NOTNOT: (ClassKind.TRIVIAL,),
    ClassKind.FREDKIN: (ClassKind.TRIVIAL,),
    ClassKind.TRIVIAL: (),
}


def _down_closure(kind: ClassKind) -> FrozenSet[ClassKind]:
    seen = {kind}
    stack = [kind]
    while stack:
        for lower in _COVERS[stack.pop()]:
            if lower not in seen:
                seen.add(lower)
                stack.append(lower)
    return frozenset(seen)


_BELOW: Dict[ClassKind, FrozenSet[ClassKind]] = {kind: _down_closure(kind) for kind in _COVERS}

# Largest MOD(k) a finite class sits inside: 0 means every k (weight is
# preserved outright), a missing entry means none.
_MOD_CEILING: Dict[ClassKind, int] = {
    ClassKind.CNOTNOT: 2,
    ClassKind.T4_NOTNOT: 2,
    ClassKind.T4: 2,
    ClassKind.T6_NOTNOT: 2,
    ClassKind.NOTNOT: 2,
    ClassKind.F4: 4,
    ClassKind.T6: 4,
    ClassKind.FREDKIN: 0,
    ClassKind.TRIVIAL: 0,
}

_DESCRIPTIONS: Dict[ClassKind, str] = {
    ClassKind.TRIVIAL: "wire permutations",
    ClassKind.NOTNOT: "degenerate, parity-preserving",
    ClassKind.NOT: "degenerate (wire permutations with NOTs)",
    ClassKind.T6: "linear, mod-4-preserving",
    ClassKind.T6_NOTNOT: "affine, parity-preserving, mod-4-preserving linear part",
    ClassKind.T6_NOT: "affine, mod-4-preserving linear part",
    ClassKind.T4: "linear, orthogonal",
    ClassKind.F4: "affine, mod-4-preserving",
    ClassKind.T4_NOTNOT: "affine, parity-preserving, orthogonal linear part",
    ClassKind.T4_NOT: "affine, orthogonal linear part",
    ClassKind.CNOTNOT: "affine, parity-preserving",
    ClassKind.CNOTNOT_NOT: "affine, parity-respecting",
    ClassKind.CNOT: "affine",
    ClassKind.FREDKIN: "conservative",
    ClassKind.FREDKIN_NOT: "parity-respecting",
    ClassKind.ALL: "all reversible transformations",
}


def describe(c: GateClass) -> str:
    if c.is_mod:
        return f"mod-{c.modulus}-preserving"
    return _DESCRIPTIONS[c.kind]


def defining_invariant(c: GateClass) -> str:
    """The invariant a gate must satisfy to lie in c."""
    return describe(c)


def parse_class(name: str) -> GateClass:
    """Accepts T6+NOT, T6_NOT, mod7, C7 and the other stable names."""
    text = name.strip().upper().replace("_", "+")
    match = re.fullmatch(r"(?:MOD|C)(\d+)", text)
    if match:
        return mod_class(int(match.group(1)))
    if text == "TOFFOLI":
        return ALL
    for kind in ClassKind:
        if kind is not ClassKind.MOD and kind.value == text:
            return GateClass(kind)
    raise BadParameter(f"unknown gate class {name!r}")


# --- Order ---

def leq(c1: GateClass, c2: GateClass) -> bool:
    """c1 ⊆ c2."""
    if c2.kind is ClassKind.ALL:
        return True
    if c1.kind is ClassKind.ALL:
        return False
    if c1.is_mod and c2.is_mod:
        return c1.modulus % c2.modulus == 0
    if c1.is_mod:
        return c2.kind is ClassKind.FREDKIN_NOT and c1.modulus % 2 == 0
    if c2.is_mod:
        ceiling = _MOD_CEILING.get(c1.kind)
        if ceiling is None:
            return False
        return ceiling == 0 or ceiling % c2.modulus == 0
    return c1.kind in _BELOW[c2.kind]


def _divisors(k: int) -> List[int]:
    return [d for d in range(2, k + 1) if k % d == 0]


def join(c1: GateClass, c2: GateClass) -> GateClass:
    moduli = {2, 4}
    for c in (c1, c2):
        if c.is_mod:
            moduli.update(_divisors(c.modulus))
    candidates = list(FINITE_CLASSES) + [mod_class(d) for d in sorted(moduli)]
    uppers = [c for c in candidates if leq(c1, c) and leq(c2, c)]
    for u in uppers:
        if all(leq(u, v) for v in uppers):
            return u
    raise AssertionError(f"no least upper bound for {c1} and {c2}")


# --- Membership ---

def satisfies(c: GateClass, sig: InvariantSignature) -> bool:
    """Evaluate c's defining invariant on a signature."""
    kind = c.kind
    if kind is ClassKind.ALL:
        return True
    if kind is ClassKind.FREDKIN_NOT:
        return sig.respecting.respects(2)
    if kind is ClassKind.MOD:
        return sig.profile.all_congruent(c.modulus, 0)
    if kind is ClassKind.FREDKIN:
        return sig.conservative
    if sig.affine is None:
        return False
    even = sig.offset_even
    return {
        ClassKind.CNOT: True,
        ClassKind.CNOTNOT_NOT: sig.odd_columns,
        ClassKind.CNOTNOT: sig.odd_columns and even,
        ClassKind.T4_NOT: sig.orthogonal,
        ClassKind.T4_NOTNOT: sig.orthogonal and even,
        ClassKind.T4: sig.orthogonal and sig.linear,
        ClassKind.F4: sig.mod4_preserving,
        ClassKind.T6_NOT: sig.linear_part_mod4,
        ClassKind.T6_NOTNOT: sig.linear_part_mod4 and even,
        ClassKind.T6: sig.linear_part_mod4 and sig.linear,
        ClassKind.NOT: sig.degenerate,
        ClassKind.NOTNOT: sig.degenerate and even,
        ClassKind.TRIVIAL: sig.degenerate and sig.linear,
    }[kind]


def contains(c: GateClass, G: Gate) -> bool:
    return satisfies(c, signature(G))


# --- Classification ---

def classify_signature(sig: InvariantSignature) -> GateClass:
    form = sig.affine
    if form is None:
        if sig.conservative:
            return FREDKIN
        k = sig.respecting.value
        if k >= 3:
            return mod_class(k)
        if k == 2:
            return MOD2 if sig.parity_preserving else FREDKIN_NOT
        return ALL
    even = weight(form.offset) % 2 == 0
    if sig.degenerate:
        if sig.linear:
            return TRIVIAL
        return NOTNOT if even else NOT
    if sig.linear_part_mod4:
        if sig.linear:
            return T6
        return T6_NOTNOT if even else T6_NOT
    if sig.orthogonal:
        if sig.mod4_preserving:
            return F4
        if sig.linear:
            return T4
        return T4_NOTNOT if even else T4_NOT
    if sig.odd_columns:
        return CNOTNOT if even else CNOTNOT_NOT
    return CNOT


def classify_gate(G: Gate) -> GateClass:
    return classify_signature(signature(G))


def classify_set(gates: Iterable[Gate]) -> GateClass:
    return reduce(join, (classify_gate(G) for G in gates), TRIVIAL)


def generates(gates: Sequence[Gate], H: Gate, loose: bool = False) -> bool:
    generated = classify_set(gates)
    if loose:
        generated = loose_collapse(generated)
    return contains(generated, H)


def loose_collapse(c: GateClass) -> GateClass:
    """Class generated when ancillas may end in any input-independent state."""
    return {NOTNOT: NOT, MOD2: FREDKIN_NOT, T4_NOTNOT: T4_NOT, T6_NOTNOT: T6_NOT}.get(c, c)


def canonical_generator(c: GateClass) -> List[Gate]:
    if c.is_mod:
        return [fredkin_gate(), notnot_gate()] if c.modulus == 2 else [ck_gate(c.modulus)]
    return {
        ClassKind.TRIVIAL: [],
        ClassKind.NOT: [not_gate()],
        ClassKind.NOTNOT: [notnot_gate()],
        ClassKind.T6: [tk_gate(6)],
        ClassKind.T6_NOTNOT: [tk_gate(6), notnot_gate()],
        ClassKind.T6_NOT: [tk_gate(6), not_gate()],
        ClassKind.T4: [tk_gate(4)],
        ClassKind.F4: [fk_gate(4)],
        ClassKind.T4_NOTNOT: [tk_gate(4), notnot_gate()],
        ClassKind.T4_NOT: [tk_gate(4), not_gate()],
        ClassKind.CNOTNOT: [cnotnot_gate()],
        ClassKind.CNOTNOT_NOT: [cnotnot_gate(), not_gate()],
        ClassKind.CNOT: [cnot_gate()],
        ClassKind.FREDKIN: [fredkin_gate()],
        ClassKind.FREDKIN_NOT: [fredkin_gate(), not_gate()],
        ClassKind.ALL: [toffoli_gate()],
    }[c.kind]


def minimum_class(sig: InvariantSignature, candidates: Iterable[GateClass]) -> Optional[GateClass]:
    """leq-minimum of the candidates whose invariant holds, by direct search."""
    holding = [c for c in candidates if satisfies(c, sig)]
    for c in holding:
        if all(leq(c, other) for other in holding):
            return c
    return None


def realizable_classes(n: int) -> List[GateClass]:
    """Classes whose generator counts are tracked at width n (MOD(k) only up to k = n)."""
    return list(FINITE_CLASSES) + [mod_class(k) for k in range(2, max(n, 2) + 1)]
