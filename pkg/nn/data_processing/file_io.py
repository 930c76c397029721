"""Binary checkpoint files for MLP parameters.

Layout (all little-endian)::

    8 bytes   magic b"DRVMLP01"
    <u4       number of layer sizes n
    n x <u4   layer sizes (input, hidden..., output)
    <u4       output activation code (0 identity, 1 tanh)
    per Dense layer: row-major <f8 weights (in x out), then <f8 biases (out)

A ``<file>.manifest.txt`` sidecar repeats the header in readable form.
"""
import logging
from pathlib import Path
from typing import Optional, Tuple, Union

import jax.numpy as jnp
import numpy as np

from nn.errors import CheckpointError
from nn.mlp import OUTPUT_ACTIVATIONS, MlpSpec
from nn.typing import MlpParams

logger = logging.getLogger(__name__)

MAGIC = b"DRVMLP01"


def _dense_layers(params: MlpParams):
    return [layer for layer in params if len(layer) == 2]


def manifest_path(file_path: Union[str, Path]) -> Path:
    file_path = Path(file_path)
    return file_path.with_name(file_path.name + ".manifest.txt")


def save_params(params: MlpParams, spec: MlpSpec, file_path: Union[str, Path]):
    file_path = Path(file_path)
    sizes = np.asarray(spec.sizes, dtype="<u4")
    chunks = [MAGIC, np.asarray([len(sizes)], dtype="<u4").tobytes(), sizes.tobytes(),
              np.asarray([OUTPUT_ACTIVATIONS.index(spec.output_activation)], dtype="<u4").tobytes()]
    n_values = 0
    for weights, bias in _dense_layers(params):
        weights = np.asarray(weights, dtype="<f8")
        bias = np.asarray(bias, dtype="<f8").reshape(-1)
        chunks += [np.ascontiguousarray(weights).tobytes(), bias.tobytes()]
        n_values += weights.size + bias.size
    file_path.write_bytes(b"".join(chunks))
    manifest_path(file_path).write_text(
        "format = DRVMLP01\n"
        "byte_order = little\n"
        "dtype = float64\n"
        "layer_sizes = {}\n"
        "output_activation = {}\n"
        "parameters = {}\n".format(",".join(str(s) for s in spec.sizes), spec.output_activation, n_values)
    )
    logger.debug("Saved %d parameters to %s", n_values, file_path)


def load_params(file_path: Union[str, Path], expected: Optional[MlpSpec] = None) -> Tuple[MlpSpec, MlpParams]:
    """Read a checkpoint written by :func:`save_params`.

    Raises:
        CheckpointError: unreadable file, wrong magic, truncated payload, or sizes differing from ``expected``.
    """
    file_path = Path(file_path)
    try:
        raw = file_path.read_bytes()
    except OSError as err:
        raise CheckpointError("cannot read checkpoint {}: {}".format(file_path, err)) from err
    if raw[:len(MAGIC)] != MAGIC:
        raise CheckpointError("{} is not a DRVMLP01 checkpoint (bad magic)".format(file_path))

    offset = len(MAGIC)

    def take(count, dtype):
        nonlocal offset
        nbytes = count * np.dtype(dtype).itemsize
        if offset + nbytes > len(raw):
            raise CheckpointError("{} is truncated".format(file_path))
        values = np.frombuffer(raw, dtype=dtype, count=count, offset=offset)
        offset += nbytes
        return values

    n_sizes = int(take(1, "<u4")[0])
    sizes = tuple(int(s) for s in take(n_sizes, "<u4"))
    act_code = int(take(1, "<u4")[0])
    if n_sizes < 2 or act_code >= len(OUTPUT_ACTIVATIONS):
        raise CheckpointError("{} has a corrupt header".format(file_path))
    spec = MlpSpec(sizes, OUTPUT_ACTIVATIONS[act_code])
    if expected is not None and tuple(expected.sizes) != spec.sizes:
        raise CheckpointError("checkpoint layer sizes {} do not match expected {}".format(spec.sizes, tuple(expected.sizes)))
    if expected is not None and expected.output_activation != spec.output_activation:
        raise CheckpointError("checkpoint head {} does not match expected {}".format(spec.output_activation, expected.output_activation))

    params = []
    for i, (n_in, n_out) in enumerate(zip(sizes[:-1], sizes[1:])):
        weights = take(n_in * n_out, "<f8").reshape(n_in, n_out)
        bias = take(n_out, "<f8").reshape(1, n_out)
        params.append((jnp.asarray(weights, dtype=jnp.float64), jnp.asarray(bias, dtype=jnp.float64)))
        if i < len(sizes) - 2:
            params.append(())
    if spec.output_activation == "tanh":
        params.append(())
    if offset != len(raw):
        raise CheckpointError("{} has {} trailing bytes".format(file_path, len(raw) - offset))
    return spec, params
