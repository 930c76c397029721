class DimensionMismatchError(ValueError):
    """Input features do not match the layer they are fed into."""


class CacheMismatchError(ValueError):
    """A backward pass was given a cache or output gradient from a different forward pass."""


class ShapeMismatchError(ValueError):
    """Two parameter trees that must line up (grads/params, online/target) do not."""


class CheckpointError(ValueError):
    """A checkpoint file is unreadable: wrong magic, truncated, or wrong layer sizes."""
