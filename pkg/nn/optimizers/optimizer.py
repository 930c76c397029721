"""Optimizers written as per-array ``(init, update, get_params)`` triples.

The :func:`optimizer` decorator lifts a triple that only understands single
arrays into one that works on a whole parameter pytree (for example the list of
``(weights, bias)`` tuples produced by ``serial``). The lifted optimizer keeps
the parameters inside its state, so a training step reads::

    opt = adam(1e-3)
    opt_state = opt.init_fn(params)
    params, opt_state = optimizer_step(opt, grads, opt_state)

Every state is a pytree, which lets the update run inside ``jax.jit``.
"""

from typing import Any, Callable, NamedTuple, Tuple, Union

from collections import namedtuple
import functools

import jax.numpy as jnp
from jax.tree_util import tree_flatten, tree_unflatten, register_pytree_node

from nn.errors import ShapeMismatchError

Params = Any  # Parameters are arbitrary nests of `jnp.ndarrays`.
State = Any  # Per-array optimizer state, e.g. (x, m, v) for adam.
Step = int
Schedule = Callable[[Step], float]

# packed_state holds one per-array state per parameter leaf, step counts completed updates.
# tree_def and hyperparams are static, so they travel as pytree aux data.
OptimizerState = namedtuple(
    "OptimizerState", ["packed_state", "step", "tree_def", "hyperparams"]
)
register_pytree_node(
    OptimizerState,
    lambda s: ((s.packed_state, s.step), (s.tree_def, s.hyperparams)),
    lambda aux, children: OptimizerState(children[0], children[1], aux[0], aux[1]),
)


class Optimizer(NamedTuple):
    init_fn: Callable[[Params], OptimizerState]
    update_fn: Callable[[Params, OptimizerState], OptimizerState]
    params_fn: Callable[[OptimizerState], Params]


def optimizer(opt_maker: Callable[..., Tuple[Callable, Callable, Callable]]) -> Callable[..., Optimizer]:
    """Decorator to make an optimizer defined for arrays generalize to parameter pytrees.

    Args:
        opt_maker: returns ``(init, update, get_params)`` where ``init(x0)`` builds the
            per-array state, ``update(i, g, state)`` applies step ``i`` and
            ``get_params(state)`` extracts the array.

    Returns:
        A function with the same arguments as ``opt_maker`` that builds an :class:`Optimizer`.
    """

    @functools.wraps(opt_maker)
    def tree_opt_maker(*args, **kwargs):
        init, update, get_params = opt_maker(*args, **kwargs)
        hyperparams = (args, tuple(sorted(kwargs.items())))

        @functools.wraps(init)
        def tree_init(x0_tree):
            x0_flat, tree = tree_flatten(x0_tree)
            return OptimizerState([init(x0) for x0 in x0_flat], jnp.zeros((), jnp.int64), tree, hyperparams)

        @functools.wraps(update)
        def tree_update(grad_tree, opt_state):
            grad_flat, grad_treedef = tree_flatten(grad_tree)
            if grad_treedef != opt_state.tree_def:
                msg = (
                    "optimizer update function was passed a gradient tree that did "
                    "not match the parameter tree structure with which it was "
                    "initialized: parameter tree {} and grad tree {}."
                )
                raise ShapeMismatchError(msg.format(opt_state.tree_def, grad_treedef))
            for g, state in zip(grad_flat, opt_state.packed_state):
                if jnp.shape(g) != jnp.shape(get_params(state)):
                    raise ShapeMismatchError(
                        "gradient of shape {} for a parameter of shape {}".format(jnp.shape(g), jnp.shape(get_params(state)))
                    )
            new_states = [update(opt_state.step, g, state) for g, state in zip(grad_flat, opt_state.packed_state)]
            return OptimizerState(new_states, opt_state.step + 1, opt_state.tree_def, opt_state.hyperparams)

        @functools.wraps(get_params)
        def tree_get_params(opt_state):
            return tree_unflatten(opt_state.tree_def, [get_params(s) for s in opt_state.packed_state])

        return Optimizer(tree_init, tree_update, tree_get_params)

    return tree_opt_maker


def optimizer_step(opt: Optimizer, grads: Params, opt_state: OptimizerState) -> Tuple[Params, OptimizerState]:
    """Apply one update and return ``(new_params, new_state)``."""
    opt_state = opt.update_fn(grads, opt_state)
    return opt.params_fn(opt_state), opt_state


def constant(step_size) -> Schedule:
    def schedule(i):
        return step_size
    return schedule


def make_schedule(scalar_or_schedule: Union[float, Schedule]) -> Schedule:
    if callable(scalar_or_schedule):
        return scalar_or_schedule
    elif jnp.ndim(scalar_or_schedule) == 0:
        return constant(scalar_or_schedule)
    else:
        raise TypeError(type(scalar_or_schedule))
