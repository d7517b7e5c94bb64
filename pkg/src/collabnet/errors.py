"""Exception types raised across the toolkit.

Everything derives from ``CollabNetError`` so callers (and the CLI) can
distinguish data/usage problems from genuine bugs.
"""


class CollabNetError(Exception):
    """Base class for all toolkit errors."""


# --- mapping / record ingestion ---------------------------------------------

class MalformedRow(CollabNetError):
    """A CSV row has the wrong shape (column count, empty key, bad header)."""


class UnknownCategory(CollabNetError):
    """An institution category is not one of the four canonical tokens."""


class ConflictingMapping(CollabNetError):
    """The mapping file assigns conflicting values to the same key."""


class MalformedLine(CollabNetError):
    """A records-file line could not be parsed; carries the line number."""

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


# --- network lookups ----------------------------------------------------------

class UnknownInstitution(CollabNetError):
    """Referenced institution is not a node of the network."""


class UnknownSubject(CollabNetError):
    """Subject name is not one of the canonical journal subject classes."""


class SubjectsUnavailable(CollabNetError):
    """The network was built without per-subject edge breakdowns."""


# --- metrics ------------------------------------------------------------------

class EmptyNetwork(CollabNetError):
    """Operation requires at least one node."""


class DegenerateComponent(CollabNetError):
    """Path metrics need a largest component with at least two nodes."""


class InsufficientTail(CollabNetError):
    """No candidate cutoff leaves enough tail observations to fit."""


class DegenerateSequence(CollabNetError):
    """All observations equal; a power-law exponent is undefined."""


# --- centrality -----------------------------------------------------------------

class NoConvergence(CollabNetError):
    """Power iteration did not converge; carries the final residual."""

    def __init__(self, iterations: int, residual: float):
        super().__init__(
            f"no convergence after {iterations} iterations "
            f"(residual {residual:.3e})"
        )
        self.iterations = iterations
        self.residual = residual


# --- synthetic corpus generation ------------------------------------------------

class InvalidConfig(CollabNetError):
    """Synthetic-corpus configuration violates its own constraints."""
