import functools
import logging
import time

from nn.init_config import INFO2, info2_enabled

logger = logging.getLogger(__name__)


def rollout_debug_decorator(predict_rollouts):
    """At INFO2, log the predicted rewards and collision flags of the first rollout in each batch."""
    if not info2_enabled():
        return predict_rollouts

    @functools.wraps(predict_rollouts)
    def wrapper(transitions, spec, bootstrap, model=None):
        start_time = time.time()
        rollouts = predict_rollouts(transitions, spec, bootstrap, model)
        logger.log(INFO2, "=== %s rollouts for %d transitions (%.3f seconds) ===", spec.strategy, len(rollouts),
                   time.time() - start_time)
        if rollouts:
            first = rollouts[0]
            for step in first.steps:
                logger.log(INFO2, "tau=%.2f reward=%+.4f collided=%s terminal=%s", step.tau, step.reward,
                           step.collided, step.terminal)
            logger.log(INFO2, "first terminal step: %s", first.terminal_index)
        return rollouts

    return wrapper
