"""
Synthesis Dispatcher.

Routes a target to the synthesizer for the requested class, checks the
ancilla ceiling and verifies the result by exhaustive simulation.
"""

import logging
from dataclasses import dataclass
from typing import Optional

from services.circuit import Circuit, verify
from services.errors import AncillaBudgetExceeded, NotInClass, VerificationFailed
from services.gate_core import Gate, signature
from services.lattice import ClassKind, GateClass, describe, satisfies
from services.synth_affine import (
    synth_affine,
    synth_degenerate,
    synth_isometry,
    synth_pp_affine,
    synth_pr_affine,
    with_offset,
)
from services.synth_nonaffine import synth_all, synth_conservative, synth_modk, synth_parity

logger = logging.getLogger(__name__)

_CEILINGS = {
    ClassKind.ALL: 3,
    ClassKind.FREDKIN: 5,
    ClassKind.FREDKIN_NOT: 6,
    ClassKind.CNOT: 1,
    ClassKind.CNOTNOT: 1,
}


def ancilla_ceiling(c: GateClass) -> int:
    if c.is_mod:
        return c.modulus + 3
    return _CEILINGS.get(c.kind, 0)


# --- Data Structures ---

@dataclass(frozen=True)
class SynthesisRequest:
    target: Gate
    over: GateClass
    ancilla_budget: Optional[int] = None
    verify: bool = True


def _dispatch(target: Gate, over: GateClass) -> Circuit:
    kind = over.kind
    if kind is ClassKind.ALL:
        return synth_all(target)
    if kind is ClassKind.FREDKIN:
        return synth_conservative(target)
    if kind is ClassKind.FREDKIN_NOT:
        return synth_parity(target, flipping=True)
    if kind is ClassKind.MOD:
        if over.modulus == 2:
            return synth_parity(target, flipping=False)
        return synth_modk(target, over.modulus)

    form = signature(target).affine
    if kind is ClassKind.CNOT:
        return synth_affine(form)
    if kind is ClassKind.CNOTNOT:
        return synth_pp_affine(form)
    if kind is ClassKind.CNOTNOT_NOT:
        return synth_pr_affine(form)
    if kind in (ClassKind.TRIVIAL, ClassKind.NOT, ClassKind.NOTNOT):
        return synth_degenerate(form, pair_offsets=kind is ClassKind.NOTNOT)
    if kind is ClassKind.F4:
        return synth_isometry(form, "F4")
    flavor = "T6" if kind in (ClassKind.T6, ClassKind.T6_NOTNOT, ClassKind.T6_NOT) else "T4"
    circuit = synth_isometry(form.linear_part(), flavor)
    return with_offset(circuit, form.offset, paired=kind in (ClassKind.T6_NOTNOT, ClassKind.T4_NOTNOT))


def synthesize(req: SynthesisRequest) -> Circuit:
    target, over = req.target, req.over
    if not satisfies(over, signature(target)):
        raise NotInClass(f"target is not in {over} ({describe(over)})")
    circuit = _dispatch(target, over)
    budget = ancilla_ceiling(over) if req.ancilla_budget is None else req.ancilla_budget
    if circuit.ancilla_count > budget:
        raise AncillaBudgetExceeded(f"{circuit.ancilla_count} ancillas exceed the budget of {budget} for {over}")
    if req.verify:
        report = verify(circuit, target)
        if not report.implements_target:
            raise VerificationFailed(f"synthesized circuit for {over} failed verification:\n{report.summary()}")
    logger.info(f"Synthesized {target.arity}-bit target over {over}: "
                f"{circuit.gate_count} gates, {circuit.ancilla_count} ancillas")
    return circuit
