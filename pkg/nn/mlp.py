"""Feed-forward networks used as DDPG actor and critic heads.

A network is an ``(init_fun, apply_fun)`` pair built from ``serial``, ``Dense``
and activation layers. :func:`forward` runs it and keeps a cache with the
layer residuals, :func:`backward` turns an output gradient into parameter
gradients and the input gradient (the chain DDPG needs for the actor update).
"""
from typing import Any, Callable, NamedTuple, Tuple

import jax
import jax.numpy as jnp
from jax import Array
from jax.nn.initializers import normal
from jax.random import PRNGKey
from jax.tree_util import tree_structure
from jax.typing import ArrayLike

from nn.activations.activations import Relu, Tanh
from nn.combinators.serial import serial
from nn.decorators.model_decorator import model_decorator
from nn.errors import CacheMismatchError, DimensionMismatchError
from nn.layers.dense import Dense
from nn.typing import ApplyFun, InitFun, MlpParams

OUTPUT_ACTIVATIONS = ("identity", "tanh")


class MlpSpec(NamedTuple):
    """Layer sizes ``(input, hidden..., output)`` and the output head activation."""
    sizes: Tuple[int, ...]
    output_activation: str = "identity"


class Network(NamedTuple):
    spec: MlpSpec
    init_fun: InitFun
    apply_fun: ApplyFun


class ForwardCache(NamedTuple):
    inputs: Array
    outputs: Array
    tree_def: Any
    pullback: Callable


def mlp(spec: MlpSpec, name: str = "mlp", final_scale: float = 3e-3) -> Network:
    """Build a rectified-linear MLP with an identity or tanh head.

    The last Dense layer starts with small weights (std ``final_scale``) so that
    fresh actors emit actions near the centre of their range.
    """
    if len(spec.sizes) < 2:
        raise ValueError("an MLP needs at least input and output sizes, got {}".format(spec.sizes))
    if spec.output_activation not in OUTPUT_ACTIVATIONS:
        raise ValueError("output_activation must be one of {}".format(OUTPUT_ACTIVATIONS))

    layers = []
    for width in spec.sizes[1:-1]:
        layers += [Dense(width), Relu]
    layers.append(Dense(spec.sizes[-1], weight_init=normal(final_scale)))
    if spec.output_activation == "tanh":
        layers.append(Tanh)
    init_fun, apply_fun = model_decorator(serial(*layers), name=name)
    return Network(spec, init_fun, apply_fun)


def init_params(net: Network, rng: PRNGKey) -> MlpParams:
    _, params = net.init_fun(rng, (-1, net.spec.sizes[0]))
    return params


def _as_batch(net: Network, x: ArrayLike) -> Array:
    x = jnp.asarray(x, dtype=jnp.float64)
    if x.ndim == 1:
        x = x[None, :]
    if x.ndim != 2 or x.shape[-1] != net.spec.sizes[0]:
        raise DimensionMismatchError(
            "network expects {} input features, got array of shape {}".format(net.spec.sizes[0], x.shape)
        )
    return x


def predict(net: Network, params: MlpParams, x: ArrayLike) -> Array:
    return net.apply_fun(params, _as_batch(net, x))


def forward(net: Network, params: MlpParams, x: ArrayLike) -> Tuple[Array, ForwardCache]:
    """Evaluate the network on a ``(batch, features)`` array (a single vector is promoted).

    Returns:
        ``(y, cache)`` where ``cache`` must be handed to :func:`backward` together with ``dL/dy``.
    """
    x = _as_batch(net, x)
    y, pullback = jax.vjp(net.apply_fun, params, x)
    return y, ForwardCache(x, y, tree_structure(params), pullback)


def backward(params: MlpParams, cache: ForwardCache, dy: ArrayLike) -> Tuple[MlpParams, Array]:
    """Exact gradients for the forward pass that produced ``cache``.

    Returns:
        ``(param_grads, dL/dx)`` with ``param_grads`` shaped like ``params``.
    """
    dy = jnp.asarray(dy, dtype=cache.outputs.dtype)
    if tree_structure(params) != cache.tree_def:
        raise CacheMismatchError("cache was produced for a different parameter structure")
    if dy.shape != cache.outputs.shape:
        raise CacheMismatchError(
            "output gradient of shape {} does not match forward output {}".format(dy.shape, cache.outputs.shape)
        )
    grads, dx = cache.pullback(dy)
    return grads, dx
