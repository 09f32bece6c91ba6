"""
Circuit Commands.

synth:    build a verified circuit for a target over a named class.
verify:   check a circuit against a target truth table.
simulate: run a circuit on one input word.
"""

import logging
from typing import Optional

from commands.common import EXIT_NEGATIVE, EXIT_OK, CommandResult, handles_errors, load_gate
from services.circuit import load_circuit, save_circuit, simulate, stats, verify
from services.errors import MalformedInput
from services.gate_core import word_to_bits
from services.lattice import parse_class
from services.synth import SynthesisRequest, ancilla_ceiling, synthesize

logger = logging.getLogger(__name__)


@handles_errors
def cmd_synth(target: str, class_name: str, out: str, budget: Optional[int] = None) -> CommandResult:
    G = load_gate(target)
    over = parse_class(class_name)
    circuit = synthesize(SynthesisRequest(G, over, ancilla_budget=budget))
    save_circuit(circuit, out)
    shape = stats(circuit)
    return CommandResult(
        EXIT_OK,
        f"{shape.gate_count} gates, {shape.ancilla_count} ancillas (ceiling {ancilla_ceiling(over)}), "
        f"depth {shape.depth}\nwrote {out}",
    )


@handles_errors
def cmd_verify(circuit_path: str, target: str, loose: bool = False) -> CommandResult:
    circuit = load_circuit(circuit_path)
    report = verify(circuit, load_gate(target), loose=loose)
    if not report.implements_target:
        logger.warning(f"{circuit_path} does not implement {target}")
    return CommandResult(EXIT_OK if report.implements_target else EXIT_NEGATIVE, report.summary())


@handles_errors
def cmd_simulate(circuit_path: str, bits: str) -> CommandResult:
    """Full-width inputs print the full-width output; data-only inputs get the declared ancillas."""
    circuit = load_circuit(circuit_path)
    if not bits or any(ch not in "01" for ch in bits):
        raise MalformedInput(f"input {bits!r} is not a bit string")
    if len(bits) == circuit.width:
        return CommandResult(EXIT_OK, simulate(circuit, bits))
    if len(bits) == circuit.data_wires:
        full = bits + word_to_bits(circuit.ancilla_word, circuit.ancilla_count)
        return CommandResult(EXIT_OK, simulate(circuit, full)[: circuit.data_wires])
    raise MalformedInput(
        f"input has {len(bits)} bits; expected {circuit.width} or {circuit.data_wires}"
    )


# --- Registration ---

def register(subparsers, parents):
    synth = subparsers.add_parser("synth", parents=parents, help="synthesize a target over a class")
    synth.add_argument("target", help=".rgt target")
    synth.add_argument("gate_class", metavar="class", help="class name, e.g. FREDKIN, MOD3, T4+NOT")
    synth.add_argument("out", help="output .rgc path")
    synth.add_argument("--budget", type=int, default=None, help="ancilla budget (default: class ceiling)")
    synth.set_defaults(handler=lambda args: cmd_synth(args.target, args.gate_class, args.out, args.budget))

    check = subparsers.add_parser("verify", parents=parents, help="verify a circuit against a target")
    check.add_argument("circuit", help=".rgc circuit")
    check.add_argument("target", help=".rgt target")
    check.set_defaults(handler=lambda args: cmd_verify(args.circuit, args.target, args.loose))

    sim = subparsers.add_parser("simulate", parents=parents, help="run a circuit on one input")
    sim.add_argument("circuit", help=".rgc circuit")
    sim.add_argument("bits", help="input bits, full width or data wires only")
    sim.set_defaults(handler=lambda args: cmd_simulate(args.circuit, args.bits))
