"""Exception hierarchy.

Every domain error carries a stable ``code`` string; the CLI serializes it
into the error object it prints.
"""


class OrchardError(Exception):
    code = "orchard_error"

    def to_dict(self):
        return {"code": self.code, "message": str(self)}


class InputError(OrchardError, ValueError):
    code = "input_error"


class DimensionMismatch(InputError):
    code = "dimension_mismatch"


class ParseError(InputError):
    code = "parse_error"


class NonGenericError(OrchardError):
    """Raised when a configuration fails a genericity test.

    ``subset`` holds the 1-based labels of one degenerate subset.
    """

    code = "non_generic"

    def __init__(self, subset, message=None):
        self.subset = tuple(subset)
        if message is None:
            message = "degenerate subset %s" % (list(self.subset),)
        super().__init__(message)

    def to_dict(self):
        d = super().to_dict()
        d["subset"] = list(self.subset)
        return d


class ParityGateError(OrchardError):
    """An operation is only defined for one parity of a binomial coefficient."""

    code = "parity_gate"


class RetryBudgetExceeded(OrchardError):
    code = "retry_budget"


class FlipError(OrchardError):
    code = "degenerate_flip"


class ConsistencyError(OrchardError, AssertionError):
    """An internal invariant that the theory guarantees did not hold."""

    code = "internal_consistency"


class DiagramError(OrchardError):
    code = "invalid_diagram"

    def __init__(self, message, position=None):
        self.position = position
        super().__init__(message)

    def to_dict(self):
        d = super().to_dict()
        if self.position is not None:
            d["position"] = self.position
        return d
