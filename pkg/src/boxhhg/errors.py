"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Invalid parameters, dimensions, or run configuration."""


class DataError(ValueError):
    """Malformed or inconsistent input data (non-uniform grids, bad files)."""


class UndefinedSlopeError(DataError):
    """Envelope slope requested over harmonics with zero intensity."""


class InstabilityError(RuntimeError):
    """Non-finite amplitudes appeared during propagation (time step too large)."""

    def __init__(self, step_index: int, message: str | None = None):
        self.step_index = step_index
        super().__init__(message or f"non-finite amplitudes at step {step_index}")
