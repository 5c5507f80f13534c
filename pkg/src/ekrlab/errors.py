"""Exception types shared across the package."""


class ParameterError(ValueError):
    """An argument is outside the documented domain."""


class ResourceError(RuntimeError):
    """The requested instance is too large to materialize or scan."""


class ContractViolation(ValueError):
    """An input breaks a stated precondition (e.g. a set that is not independent)."""


class InconsistentFingerprintError(ValueError):
    """A fingerprint cannot be replayed: some x_i is absent from the current set."""
