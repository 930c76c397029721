from jax import random
from jax.random import PRNGKey
from jax.nn.initializers import glorot_normal, zeros
from jax import Array
from jax.typing import ArrayLike
from typing import Tuple
from nn.typing import LayerParams, InitFun, ApplyFun
from nn.errors import DimensionMismatchError
from nn.decorators.dense_decorator import debug_decorator
import jax.numpy as jnp


@debug_decorator
def Dense(out_dim: int, weight_init=glorot_normal(), bias_init=zeros) -> Tuple[InitFun, ApplyFun]:
    """Layer constructor function for a dense (fully-connected) layer.

    Args:
        out_dim: The 1 dimensional output shape.
        weight_init: A function used to initialize the weights
        bias_init: A function used to initialize the biases

    Returns:
        ``(init_fun, apply_fun)``: Tuple of functions.
    """

    def init_fun(rng: PRNGKey, input_shape: Tuple) -> Tuple[Tuple, LayerParams]:
        """
        Args:
            rng: A PRNGKey used to initialize random values.
            input_shape: ``(input_size,)`` or ``(-1, input_size)``. -1 is a wildcard for the batch size.

        Returns:
            An ``output_shape, (weights, bias)`` tuple.
        """
        if not isinstance(input_shape, tuple) or len(input_shape) > 2:
            msg = ("input_shape must be a tuple of length 1 or 2. Examples:.\n"
                "    input_shape = (input_size,)\n"
                "    input_shape = (-1, input_size)\n"
                "    -1 means a wildcard for the batch size.\n")
            raise ValueError(msg)

        k1, k2 = random.split(rng)
        output_shape = -1, out_dim
        weights, bias = weight_init(k1, (input_shape[-1], out_dim), jnp.float64), bias_init(k2, (1, out_dim), jnp.float64)
        return output_shape, (weights, bias)

    def apply_fun(params: LayerParams, inputs: ArrayLike) -> Array:
        """
        Args:
            params: The (weights, bias) tuple of this layer.
            inputs: A ``(batch_size, input_size)`` array.

        Returns:
            ``inputs @ weights + bias``.
        """
        if inputs.ndim <= 1:
            raise DimensionMismatchError(
                "Input must be 2 dimensional. Where inputs.shape = (batch_size, input_size). This helps eliminate any confusion with mixing vector and matrix multiplication."
            )

        weights, bias = params
        if inputs.shape[-1] != weights.shape[0]:
            raise DimensionMismatchError(
                "Dense layer expects {} input features but received {}.".format(weights.shape[0], inputs.shape[-1])
            )
        return jnp.matmul(inputs, weights) + bias

    return init_fun, apply_fun
