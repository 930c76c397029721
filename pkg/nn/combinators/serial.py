from jax import random
from jax.random import PRNGKey
from typing import Any, Tuple
from jax import Array
from jax.typing import ArrayLike
from nn.typing import MlpParams
from nn.decorators.serial_decorator import debug_decorator


@debug_decorator
def serial(*layers):
    """Combinator for composing layers in serial.

    Args:
      *layers: a sequence of layers, each an (init_fun, apply_fun) pair.

    Returns:
      A new layer, meaning an (init_fun, apply_fun) pair, representing the serial
      composition of the given sequence of layers.
    """
    init_funs, apply_funs = zip(*layers)

    def init_fun(rng: PRNGKey, input_shape) -> Tuple[Any, MlpParams]:
        """
        Args:
            rng: A PRNGKey used to initialize random values.
            input_shape: The input shape of serial combinator.

        Returns:
            An ``output_shape, params`` tuple. params holds one entry per layer.
        """
        params = []
        for init_fun in init_funs:
            rng, layer_rng = random.split(rng)
            input_shape, param = init_fun(layer_rng, input_shape)
            params.append(param)

        # input_shape at this point represents the final layer's output shape
        return input_shape, params

    def apply_fun(params: MlpParams, inputs: ArrayLike) -> Array:
        for fun, param in zip(apply_funs, params):
            inputs = fun(param, inputs)
        return inputs

    return init_fun, apply_fun
