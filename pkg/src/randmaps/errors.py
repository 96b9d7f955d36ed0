"""Exception types shared by the analysis modules."""


class InputError(ValueError):
    """Malformed or invalid system description."""


class PreconditionError(RuntimeError):
    """An analysis was asked for on a system that does not meet its hypotheses.

    ``condition`` names the violated hypothesis (e.g. ``"irreducible"``).
    """

    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class CapExceeded(RuntimeError):
    """A bounded enumeration ran past its size cap."""

    def __init__(self, message, partial_size=None):
        super().__init__(message)
        self.partial_size = partial_size


class ConsistencyError(AssertionError):
    """Two routes that must agree by theory produced different answers."""
