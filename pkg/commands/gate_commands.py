"""
Gate Set Commands.

classify: the class generated by a set of truth tables.
member:   whether a set of gates generates a target gate.
"""

import logging
from typing import Sequence

from commands.common import EXIT_NEGATIVE, EXIT_OK, CommandResult, handles_errors, load_gate, load_gates
from services.lattice import classify_gate, classify_set, defining_invariant, generates, loose_collapse

logger = logging.getLogger(__name__)


@handles_errors
def cmd_classify(files: Sequence[str], loose: bool = False, verbose: bool = False) -> CommandResult:
    gates = load_gates(files)
    generated = classify_set(gates)
    if loose:
        generated = loose_collapse(generated)
    lines = []
    if verbose:
        for path, G in zip(files, gates):
            lines.append(f"{path}: {classify_gate(G)}")
    lines.append(generated.name)
    logger.info(f"Classified {len(gates)} gates as {generated}{' (loose)' if loose else ''}")
    return CommandResult(EXIT_OK, "\n".join(lines))


@handles_errors
def cmd_member(target: str, generators: Sequence[str], loose: bool = False) -> CommandResult:
    H = load_gate(target)
    gates = load_gates(generators)
    if generates(gates, H, loose=loose):
        return CommandResult(EXIT_OK, "YES")
    generated = classify_set(gates)
    if loose:
        generated = loose_collapse(generated)
    return CommandResult(
        EXIT_NEGATIVE,
        f"NO: the generators only reach {generated} and the target is not {defining_invariant(generated)}",
    )


# --- Registration ---

def register(subparsers, parents):
    classify = subparsers.add_parser("classify", parents=parents, help="class generated by truth tables")
    classify.add_argument("files", nargs="+", help=".rgt truth tables")
    classify.set_defaults(handler=lambda args: cmd_classify(args.files, args.loose, args.verbose))

    member = subparsers.add_parser("member", parents=parents, help="do the generators generate the target")
    member.add_argument("target", help=".rgt target")
    member.add_argument("generators", nargs="+", help=".rgt generators")
    member.set_defaults(handler=lambda args: cmd_member(args.target, args.generators, args.loose))
