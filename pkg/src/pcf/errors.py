"""Exception types shared across the package."""


class PcfError(Exception):
    """Base class for all library errors."""


class DomainError(PcfError):
    """Argument lies outside the validity region of an operation."""


class BranchError(PcfError):
    """Evaluation requested on a branch cut without a side choice, or on a
    forbidden sheet."""


class ResolutionError(PcfError):
    """A sampled path is too coarse to track the continuous argument."""


class ConvergenceError(PcfError):
    """An iterative scheme failed to reach its tolerance."""


class RangeError(PcfError):
    """A curve parameter lies outside the attainable range."""


class PoleError(PcfError):
    """Evaluation at a pole of a special function."""


class SingularityError(PcfError):
    """Evaluation too close to a non-removable singularity."""


class ContourError(PcfError):
    """No admissible integration contour exists for the request."""


class UsageError(PcfError):
    """An operation was invoked with a nonsensical combination of options."""


class ConfigError(PcfError):
    """Invalid campaign configuration."""
