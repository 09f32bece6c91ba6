"""
Error types for the reversible gate toolkit.

Library code raises these; the command layer maps them to exit codes.
"""


class RevGenError(Exception):
    """Base class for every toolkit error."""


# --- Input ---

class MalformedInput(RevGenError):
    """A .rgt or .rgc file could not be parsed."""

    def __init__(self, message: str, line: int = 0):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


# --- Gates ---

class GateError(RevGenError):
    pass


class DuplicateRow(GateError):
    pass


class MissingRow(GateError):
    pass


class NotBijective(GateError):
    pass


class ArityMismatch(GateError):
    pass


class ArityTooLarge(GateError):
    pass


# --- Circuits ---

class CircuitError(RevGenError):
    pass


class WidthMismatch(CircuitError):
    pass


class AncillaNotRestored(CircuitError):
    def __init__(self, wire: int, data_input: str, observed: int):
        self.wire = wire
        self.data_input = data_input
        self.observed = observed
        super().__init__(f"ancilla wire {wire} ends as {observed} on input {data_input}")


class AncillaInputDependent(CircuitError):
    pass


class AncillaConflict(CircuitError):
    pass


class TooLarge(RevGenError):
    pass


# --- Synthesis ---

class SynthesisError(RevGenError):
    pass


class NotInClass(SynthesisError):
    pass


class ArityTooSmall(SynthesisError):
    pass


class BadParameter(RevGenError):
    pass


class Singular(SynthesisError):
    pass


class FlavorMismatch(SynthesisError):
    pass


class DegenerateClass(SynthesisError):
    pass


class PreconditionViolated(SynthesisError):
    def __init__(self, hypothesis: str):
        self.hypothesis = hypothesis
        super().__init__(f"precondition failed: {hypothesis}")


class AncillaBudgetExceeded(SynthesisError):
    pass


class VerificationFailed(SynthesisError):
    pass


# --- Census ---

class NotOrthogonal(RevGenError):
    pass
