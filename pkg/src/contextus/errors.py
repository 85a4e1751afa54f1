"""Exception hierarchy shared by every module."""


class ContextusError(Exception):
    """Base class, never raised directly."""


class DimensionError(ContextusError, ValueError):
    """Operands act on different numbers of qubits."""


class CapacityError(ContextusError):
    """A desk-scale size bound was exceeded."""


class DomainError(ContextusError, ValueError):
    """An argument lies outside the operation's domain."""


class ImpossibleOutcomeError(ContextusError):
    """A measurement outcome with zero Born probability was requested."""


class DeterminismError(ContextusError):
    """An MBQC spec does not deterministically compute its output."""

    def __init__(self, message, inputs=None):
        super().__init__(message)
        self.inputs = inputs


class PlanError(ContextusError):
    """A measurement plan is malformed or inconsistent."""


class PartialTableError(ContextusError, ValueError):
    """A function table is not total on its input cube."""
