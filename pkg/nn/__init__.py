# Import logging level, float64 and other envvar configuration. This is intentionally import first.
from .init_config import *

# Decorators
from .decorators.model_decorator import model_decorator

# Layers
from .layers.dense import Dense

# Layer Combinators
from .combinators.serial import serial

# Activation Functions
from .activations.activations import Tanh, Relu

# Optimizers
from .optimizers.optimizer import Optimizer, OptimizerState, optimizer_step
from .optimizers.adam import adam

# Loss Functions
from .losses.mean_squared_error import mean_squared_error

# Feed-forward networks with explicit forward/backward
from .mlp import MlpSpec, Network, ForwardCache, mlp, init_params, predict, forward, backward

# Saving and loading weights from file
from .data_processing.file_io import save_params, load_params

from .errors import DimensionMismatchError, CacheMismatchError, ShapeMismatchError, CheckpointError
