from jax.typing import ArrayLike
from jax.random import PRNGKey
from nn.init_config import INFO2, info2_enabled
import functools
import logging
import jax

logger = logging.getLogger(__name__)


def debug_decorator(activation_debug):
    """
    Decorator used to wrap all activation functions.
    """
    @functools.wraps(activation_debug)
    def Activation(*args, **kwargs):
        if not info2_enabled():
            return activation_debug(*args, **kwargs)

        init_fun_debug, apply_fun_debug = activation_debug(*args, **kwargs)
        name = args[0].__name__.capitalize() + "()"

        @functools.wraps(init_fun_debug)
        def init_fun(rng: PRNGKey, input_shape):
            output_shape, params = init_fun_debug(rng, input_shape)
            logger.log(INFO2, name)
            return output_shape, params

        @functools.wraps(apply_fun_debug)
        def apply_fun(params, inputs: ArrayLike):
            result = apply_fun_debug(params, inputs)
            jax.debug.print(name)
            return result

        return init_fun, apply_fun

    return Activation
