from typing import Tuple
from jax.typing import ArrayLike
from jax.random import PRNGKey
from nn.typing import LayerParams
from nn.init_config import INFO2, info2_enabled
import functools
import logging
import jax

logger = logging.getLogger(__name__)


def debug_decorator(dense_debug):
    """
    Decorator to wrap the Dense layer. At INFO2 it reports weight shapes on init and the matmul shapes on apply.
    """
    @functools.wraps(dense_debug)
    def Dense(*args, **kwargs):
        if not info2_enabled():
            return dense_debug(*args, **kwargs)

        init_fun_debug, apply_fun_debug = dense_debug(*args, **kwargs)

        @functools.wraps(init_fun_debug)
        def init_fun(rng: PRNGKey, input_shape: Tuple):
            output_shape, (weights, bias) = init_fun_debug(rng, input_shape)
            # A length 1 input shape such as (obs_dim,) is shown with the batch wildcard.
            shown_input = (-1, input_shape[0]) if len(input_shape) == 1 else input_shape
            debug_msg = "Dense(Input Shape: {}, Output Shape: {}) => Weight Shape: {}, Bias Shape: {}".format(
                shown_input, output_shape, weights.shape, bias.shape)
            logger.log(INFO2, debug_msg.replace("-1", "*"))
            return output_shape, (weights, bias)

        @functools.wraps(apply_fun_debug)
        def apply_fun(params: LayerParams, inputs: ArrayLike):
            weights, bias = params
            result = apply_fun_debug(params, inputs)
            jax.debug.print("I({}, {}) @ W({}, {}) + B({}, {}) = Output Shape: {}".format(
                inputs.shape[0], inputs.shape[1], weights.shape[0], weights.shape[1], bias.shape[0], bias.shape[1], result.shape
            ))
            return result

        return init_fun, apply_fun

    return Dense
