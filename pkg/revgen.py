"""
RevGen - Reversible Gate Classification and Synthesis

Batch command-line tool:
- classify / member: which class a gate set generates
- synth / verify / simulate: circuits over a chosen gate class
- census / props: generator counts and exhaustive property suites

Results go to stdout, logs to stderr.
"""

import argparse
import logging
import os
import sys
from typing import Optional, Sequence

# Configure logging
LOG_LEVEL = os.getenv('REVGEN_LOG_LEVEL', 'INFO').upper()
logging.basicConfig(level=getattr(logging, LOG_LEVEL, logging.INFO),
                    format="%(asctime)s %(levelname)s %(name)s: %(message)s")
logger = logging.getLogger(__name__)

# Import command groups
from commands import census_commands, circuit_commands, gate_commands
from commands.common import common_flags


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="revgen",
        description="Classify, synthesize and count reversible gates.",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True
    parents = [common_flags()]
    for group in (gate_commands, circuit_commands, census_commands):
        group.register(subparsers, parents)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    logger.debug(f"Running {args.command} with {vars(args)}")
    result = args.handler(args)
    if result.report:
        print(result.report)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
