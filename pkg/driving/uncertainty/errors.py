class NotPositiveSemidefiniteError(ValueError):
    """A covariance is asymmetric or has an eigenvalue below -1e-10."""


class InvalidConfidenceError(ValueError):
    """A confidence level is outside the open interval (0, 1)."""
