# Set logging level and jax flags based on environment variables. See env_vars.md for details.
import logging
import jax
from .helpers.envvar import getenv

INFO2 = 21

LOG_LEVEL = getenv('LOGLEVEL', 'WARNING')
DISABLE_JIT = getenv('DISABLE_JIT', 0)

valid_debug_modes = {'CRITICAL', 'ERROR', 'WARNING', 'INFO', 'INFO2', 'DEBUG', 'NOTSET'}
logging.addLevelName(INFO2, "INFO2")
if LOG_LEVEL.upper() in valid_debug_modes:
    logging.basicConfig(
        format='%(levelname)s %(name)s: %(message)s',
        level=LOG_LEVEL.upper()
    )
else:
    logging.basicConfig()
    logging.warning("Unknown log level %r, using the basic config.", LOG_LEVEL)

# Gradient checks and predicted returns are compared at 1e-9 and tighter, so everything runs in float64.
jax.config.update('jax_enable_x64', True)

# Add the ability to toggle jit when DISABLE_JIT = 1
if DISABLE_JIT == 1:
    logging.info("Disabling JIT.")
    jax.config.update('jax_disable_jit', True)

logging.getLogger(__name__).info("Running on jax platform: %s", jax.default_backend().upper())


def info2_enabled() -> bool:
    """True when the INFO2 debug level (layer shapes, predicted rollouts) is active."""
    return logging.getLevelName(logging.root.level) == "INFO2"
