from jax import Array
from jax.typing import ArrayLike
from typing import Any, Callable, List, Tuple, Union
from jax.random import PRNGKey

# A Dense layer holds (weights, bias); activations hold ().
LayerParams = Union[Tuple[Array, Array], Tuple[()]]
# MlpParams: one entry per layer of a serial network.
MlpParams = List[LayerParams]
InitFun = Callable[[PRNGKey, Tuple], Tuple[Tuple, Any]]
ApplyFun = Callable[[Any, ArrayLike], Array]
