"""Exception types.

Domain errors (bad preconditions, non-convergence) derive from
:class:`FlowmagError`; malformed input raises :class:`ParseError` or
:class:`SchemaError`.  The CLI maps the former to exit status 1 and the
latter to exit status 2.
"""


class FlowmagError(Exception):
    """Base class for domain errors."""


class PreconditionError(FlowmagError, ValueError):
    pass


class SizeError(FlowmagError, ValueError):
    pass


class CertificationError(FlowmagError, ArithmeticError):
    """Power iteration failed to bracket the spectral radius tightly enough."""

    def __init__(self, message, lower, upper):
        super().__init__(f"{message} (bracket [{lower!r}, {upper!r}])")
        self.lower = lower
        self.upper = upper


class DivergenceError(FlowmagError, ValueError):
    def __init__(self, alpha, rho):
        super().__init__(
            f"Katz series diverges: alpha={alpha!r} >= 1/rho with rho={rho!r}"
        )
        self.alpha = alpha
        self.rho = rho


class FlowGraphError(FlowmagError, ValueError):
    """A digraph fails one clause of the flow-graph definition.

    ``clause`` is one of ``"loops"``, ``"no-source-target"``,
    ``"multi-source"``, ``"multi-target"``, ``"entry-not-unique"``,
    ``"exit-not-unique"``, ``"not-strong"``, ``"parallel-edge"``.
    """

    def __init__(self, clause, message):
        super().__init__(message)
        self.clause = clause


class ShapeError(FlowmagError, ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class SchemaError(ValueError):
    pass
