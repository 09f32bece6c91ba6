"""
Truth Table Files (.rgt).

    # optional comments
    bits 2
    00 -> 01
    01 -> 00
    10 -> 10
    11 -> 11

or a single permutation row giving outputs as integers in input order:

    perm 2: 1 0 2 3
"""

import logging
import re

from services.errors import MalformedInput, RevGenError
from services.gate_core import Gate, from_permutation, gate_from_table

logger = logging.getLogger(__name__)

_PERM_LINE = re.compile(r"perm\s+(\d+)\s*:(.*)")


def parse_truth_table(text: str) -> Gate:
    bits = None
    rows = []
    perm = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _PERM_LINE.fullmatch(line)
        if match:
            if perm is not None or rows or bits is not None:
                raise MalformedInput("perm row must be the only table entry", lineno)
            tokens = match.group(2).split()
            if not all(t.isdigit() for t in tokens):
                raise MalformedInput("perm entries must be non-negative integers", lineno)
            perm = (int(match.group(1)), [int(t) for t in tokens], lineno)
        elif line.startswith("bits"):
            tokens = line.split()
            if len(tokens) != 2 or not tokens[1].isdigit() or bits is not None:
                raise MalformedInput(f"bad header {line!r}", lineno)
            bits = int(tokens[1])
        elif "->" in line:
            if bits is None or perm is not None:
                raise MalformedInput("row before the bits header", lineno)
            inp, _, out = line.partition("->")
            inp, out = inp.strip(), out.strip()
            if len(inp) != bits or len(out) != bits:
                raise MalformedInput(f"row {line!r} does not have {bits} bits", lineno)
            rows.append((inp, out))
        else:
            raise MalformedInput(f"cannot parse {line!r}", lineno)

    try:
        if perm is not None:
            n, outputs, lineno = perm
            if len(outputs) != 1 << n:
                raise MalformedInput(f"perm {n} needs {1 << n} entries, got {len(outputs)}", lineno)
            return from_permutation(outputs, n)
        if bits is None:
            raise MalformedInput("missing bits header")
        return gate_from_table(rows)
    except MalformedInput:
        raise
    except RevGenError as e:
        raise MalformedInput(str(e)) from e


def format_truth_table(G: Gate) -> str:
    lines = [f"bits {G.arity}"]
    lines.extend(f"{inp} -> {out}" for inp, out in G.rows())
    return "\n".join(lines) + "\n"


def load_truth_table(path: str) -> Gate:
    with open(path, "r") as f:
        return parse_truth_table(f.read())


def save_truth_table(G: Gate, path: str):
    with open(path, "w") as f:
        f.write(format_truth_table(G))
    logger.info(f"Wrote {G.arity}-bit truth table to {path}")
