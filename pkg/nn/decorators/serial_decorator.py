from jax.random import PRNGKey
from nn.init_config import INFO2, info2_enabled
import functools
import logging

logger = logging.getLogger(__name__)


def debug_decorator(serial_debug):
    """
    Decorator that reports the number of composed layers and the final output shape for INFO2 log level.
    """
    @functools.wraps(serial_debug)
    def serial(*args, **kwargs):
        if not info2_enabled():
            return serial_debug(*args, **kwargs)

        init_fun_debug, apply_fun_debug = serial_debug(*args, **kwargs)

        @functools.wraps(init_fun_debug)
        def init_fun(rng: PRNGKey, input_shape):
            output_shape, params = init_fun_debug(rng, input_shape)
            logger.log(INFO2, "serial(%d layers) => Output Shape: %s", len(args), str(output_shape).replace("-1", "*"))
            return output_shape, params

        return init_fun, apply_fun_debug

    return serial
