class NumericalStabilityError(ArithmeticError):
    """A structural residual (unitarity, block leakage, PSD) exceeded its tolerance."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ConfigError(ValueError):
    """Malformed or inconsistent run configuration."""
