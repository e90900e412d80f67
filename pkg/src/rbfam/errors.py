class WorkbenchError(Exception):
    """Base class for every error raised by this package."""


class InputError(WorkbenchError):
    """Malformed input: bad shapes, bad literals, unknown names or fields."""


class MissingUnitError(WorkbenchError):
    """Degree-0 cohomology requested over a semigroup without a unit."""


class DegreeCapError(WorkbenchError):
    """Requested cochain degree exceeds the configured cap or size budget."""

    def __init__(self, message, estimated_entries=None):
        super().__init__(message)
        self.estimated_entries = estimated_entries


class PreconditionError(WorkbenchError):
    """An operation was fed a structure that fails its own axiom check."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class RouteMismatchError(WorkbenchError):
    """Two formula routes that must agree exactly disagreed."""
