"""
Shared Command Plumbing.

Every command returns a CommandResult. Library errors are caught here,
logged, and turned into the documented exit codes.
"""

import argparse
import logging
import os
from dataclasses import dataclass
from functools import wraps
from typing import Callable, List, Sequence

from services.errors import GateError, MalformedInput, NotInClass, RevGenError
from services.gate_core import Gate
from services.truth_table import load_truth_table

logger = logging.getLogger(__name__)

# --- Configuration ---
DEFAULT_SEED = int(os.getenv('REVGEN_SEED', '2016'))
DEFAULT_JOBS = int(os.getenv('REVGEN_JOBS', '1'))

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_MALFORMED = 3
EXIT_NOT_IN_CLASS = 4


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    report: str

    @property
    def ok(self) -> bool:
        return self.exit_code == EXIT_OK


def exit_code_for(error: Exception) -> int:
    if isinstance(error, (MalformedInput, GateError, OSError)):
        return EXIT_MALFORMED
    if isinstance(error, NotInClass):
        return EXIT_NOT_IN_CLASS
    return EXIT_USAGE


def handles_errors(func: Callable[..., CommandResult]) -> Callable[..., CommandResult]:
    """Run a command, mapping toolkit and file errors to a failing CommandResult."""

    @wraps(func)
    def wrapper(*args, **kwargs) -> CommandResult:
        try:
            return func(*args, **kwargs)
        except (RevGenError, OSError) as e:
            code = exit_code_for(e)
            logger.error(f"{func.__name__} failed with exit code {code}: {e}")
            return CommandResult(code, f"error: {e}")

    return wrapper


# --- Loaders ---

def load_gate(path: str) -> Gate:
    G = load_truth_table(path)
    logger.debug(f"Loaded {G.arity}-bit gate from {path}")
    return G


def load_gates(paths: Sequence[str]) -> List[Gate]:
    return [load_gate(path) for path in paths]


def common_flags() -> argparse.ArgumentParser:
    """Parent parser carrying the flags every subcommand accepts."""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--loose", action="store_true",
                        help="allow ancillas to end in any input-independent state")
    parent.add_argument("--verbose", action="store_true", help="per-gate detail and debug logging")
    parent.add_argument("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized suites")
    parent.add_argument("--jobs", type=int, default=DEFAULT_JOBS, help="worker processes")
    return parent
