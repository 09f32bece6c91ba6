"""
Census and Property Commands.
"""

import logging
from typing import List, Optional, Sequence

from commands.common import EXIT_NEGATIVE, EXIT_OK, CommandResult, handles_errors
from services.census import (
    BRUTE_MAX_ARITY,
    brute_census,
    census_table,
    compare_with_reference,
    format_count,
)
from services.errors import BadParameter
from services.properties import run_property_suite

logger = logging.getLogger(__name__)

CENSUS_MODES = ("formula", "brute", "compare")
MAX_PROPS_WIDTH = 4


def _table_lines(table) -> List[str]:
    width = max(len(c.name) for c in table)
    return [f"{c.name:<{width}}  {format_count(count)}" for c, count in table.items()]


def _compare(n: int, jobs: Optional[int]) -> CommandResult:
    lines = []
    mismatched = 0
    if n <= BRUTE_MAX_ARITY:
        formula, brute = census_table(n), brute_census(n, jobs)
        for c in formula:
            if formula[c] != brute[c]:
                mismatched += 1
                lines.append(f"{c}: formula {formula[c]}, brute force {brute[c]}")
        if not mismatched:
            lines.append(f"formula and brute-force counts agree for all {len(formula)} classes")
    rows = compare_with_reference(n)
    if not rows and n > BRUTE_MAX_ARITY:
        raise BadParameter(f"no reference counts or brute census available at n={n}")
    bad = [row for row in rows if not row.matches]
    for row in bad:
        lines.append(f"{row.label}: reference {row.expected}, computed {row.computed}")
    if rows and not bad:
        lines.append(f"all {len(rows)} rows match the reference census")
    mismatched += len(bad)
    return CommandResult(EXIT_NEGATIVE if mismatched else EXIT_OK, "\n".join(lines))


@handles_errors
def cmd_census(n: int, mode: str = "formula", jobs: Optional[int] = None) -> CommandResult:
    if mode not in CENSUS_MODES:
        raise BadParameter(f"unknown census mode {mode!r}")
    if n < 1:
        raise BadParameter(f"census width must be at least 1, got {n}")
    if mode == "compare":
        return _compare(n, jobs)
    table = census_table(n) if mode == "formula" else brute_census(n, jobs)
    logger.info(f"{mode} census at n={n}: {sum(table.values())} gates")
    return CommandResult(EXIT_OK, "\n".join(_table_lines(table)))


@handles_errors
def cmd_props(
    n: int,
    seed: Optional[int] = None,
    jobs: Optional[int] = None,
    only: Optional[Sequence[str]] = None,
) -> CommandResult:
    if not 1 <= n <= MAX_PROPS_WIDTH:
        raise BadParameter(f"property suites run for 1 <= n <= {MAX_PROPS_WIDTH}, got {n}")
    results = run_property_suite(n, seed=seed, jobs=jobs, only=list(only) if only else None)
    failed = [r.name for r in results if not r.passed]
    lines = [r.summary() for r in results]
    lines.append(f"{len(results) - len(failed)}/{len(results)} suites passed")
    return CommandResult(EXIT_NEGATIVE if failed else EXIT_OK, "\n".join(lines))


# --- Registration ---

def register(subparsers, parents):
    census = subparsers.add_parser("census", parents=parents, help="generator counts per class")
    census.add_argument("n", type=int, help="number of bits")
    census.add_argument("mode", nargs="?", default="formula", choices=CENSUS_MODES)
    census.set_defaults(handler=lambda args: cmd_census(args.n, args.mode, args.jobs))

    props = subparsers.add_parser("props", parents=parents, help="run the exhaustive property suites")
    props.add_argument("n", type=int, help=f"number of bits (at most {MAX_PROPS_WIDTH})")
    props.add_argument("--only", action="append", default=None, metavar="SUITE",
                       help="run only the named suite (repeatable)")
    props.set_defaults(handler=lambda args: cmd_props(args.n, args.seed, args.jobs, args.only))
