from jax.random import PRNGKey
from nn.init_config import INFO2, info2_enabled
import time
import functools
import logging

logger = logging.getLogger(__name__)


def model_decorator(tuple_of_functions, name="model"):
    """
    Decorator that wraps the outer function of a network in order to track init time and provide text based separators.
    """
    if not info2_enabled():
        return tuple_of_functions

    tuple_init_fun, tuple_apply_fun = tuple_of_functions

    @functools.wraps(tuple_init_fun)
    def init_fun(rng: PRNGKey, input_shape):
        logger.log(INFO2, "=== Start %s Init ===", name)
        start_time = time.time()
        output_shape, params = tuple_init_fun(rng, input_shape)
        logger.log(INFO2, "=== End %s Init (%.2f seconds) ===", name, time.time() - start_time)
        return output_shape, params

    return (init_fun, tuple_apply_fun)
