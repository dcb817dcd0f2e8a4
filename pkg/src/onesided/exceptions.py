"""Error types. Each carries the CLI exit code it maps to."""


class ApproxError(Exception):
    exit_code = 1


class DimensionMismatch(ApproxError, ValueError):
    pass


class GeneralPositionViolation(ApproxError, ValueError):
    pass


class NotHomogeneous(ApproxError, ValueError):
    pass


class SizeMismatch(ApproxError, ValueError):
    pass


class IndexOutOfRange(ApproxError, IndexError):
    pass


class IndexCollision(ApproxError, ValueError):
    pass


class ArityTooSmall(ApproxError, ValueError):
    pass


class EpsilonOutOfRange(ApproxError, ValueError):
    pass


class AmbientMismatch(ApproxError, ValueError):
    pass


class UnbalancedInput(ApproxError, ValueError):
    pass


class NoPartitionFound(ApproxError, RuntimeError):
    pass


class PreconditionViolated(ApproxError, ValueError):
    pass


class NoStabilization(ApproxError, RuntimeError):
    def __init__(self, message, previous=None, last=None):
        super().__init__(message)
        self.previous = previous
        self.last = last


class EmptyApproximant(ApproxError, ValueError):
    pass


class NotConvexPosition(ApproxError, ValueError):
    pass


class NotPlanar(ApproxError, ValueError):
    pass


class InvalidSpec(ApproxError, ValueError):
    pass


class CapExceeded(ApproxError):
    exit_code = 2


class InfeasibleParams(ApproxError):
    exit_code = 3

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report or {}


class InternalInvariantViolation(ApproxError, AssertionError):
    exit_code = 4
