"""Prediction-only Kalman covariance growth over planar ``(x, y, x_dot, y_dot)`` states.

Without measurements the filter reduces to its time update::

    Sigma <- F Sigma F^T + Q

with a constant-velocity ``F``. Ego and other road users get their own ``Q``.
"""
from dataclasses import dataclass
from typing import NamedTuple, Optional, Tuple

import numpy as np

from driving.uncertainty.errors import NotPositiveSemidefiniteError

EGO = "ego"
OTHER = "other"
PARTICIPANT_KINDS = (EGO, OTHER)

SYMMETRY_TOL = 1e-12
PSD_TOL = 1e-10


@dataclass(frozen=True)
class NoiseConfig:
    """Per-step process noise diagonals, initial covariances and ellipse settings.

    ``sigma0_ego``/``sigma0_other`` default to the matching process noise when left unset.
    """
    q_ego: Tuple[float, ...] = (0.02 ** 2, 0.02 ** 2, 0.05 ** 2, 0.05 ** 2)
    q_other: Tuple[float, ...] = (0.05 ** 2, 0.05 ** 2, 0.1 ** 2, 0.1 ** 2)
    sigma0_ego: Optional[Tuple[float, ...]] = None
    sigma0_other: Optional[Tuple[float, ...]] = None
    confidence: float = 0.95
    arc_samples: int = 4

    def initial_covariance(self, kind: str) -> np.ndarray:
        if kind == EGO:
            return np.diag(self.sigma0_ego if self.sigma0_ego is not None else self.q_ego).astype(np.float64)
        if kind == OTHER:
            return np.diag(self.sigma0_other if self.sigma0_other is not None else self.q_other).astype(np.float64)
        raise ValueError("participant kind must be one of {}, got {!r}".format(PARTICIPANT_KINDS, kind))


class NoiseModel(NamedTuple):
    F: np.ndarray
    q_ego: np.ndarray
    q_other: np.ndarray

    def process_noise(self, kind: str) -> np.ndarray:
        if kind == EGO:
            return self.q_ego
        if kind == OTHER:
            return self.q_other
        raise ValueError("participant kind must be one of {}, got {!r}".format(PARTICIPANT_KINDS, kind))


def constant_velocity_transition(step: float) -> np.ndarray:
    F = np.eye(4)
    F[0, 2] = step
    F[1, 3] = step
    return F


def make_noise_model(step: float, config: NoiseConfig = NoiseConfig()) -> NoiseModel:
    q_ego = np.diag(np.asarray(config.q_ego, dtype=np.float64))
    q_other = np.diag(np.asarray(config.q_other, dtype=np.float64))
    for name, q in (("q_ego", q_ego), ("q_other", q_other)):
        check_psd(q, name)
    return NoiseModel(constant_velocity_transition(step), q_ego, q_other)


def check_psd(sigma: np.ndarray, name: str = "covariance") -> None:
    """Raise unless ``sigma`` is a symmetric positive semidefinite square matrix.

    Raises:
        NotPositiveSemidefiniteError: asymmetric beyond 1e-12 or an eigenvalue below -1e-10.
    """
    sigma = np.asarray(sigma)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1]:
        raise NotPositiveSemidefiniteError("{} must be square, got shape {}".format(name, sigma.shape))
    if not np.all(np.isfinite(sigma)):
        raise NotPositiveSemidefiniteError("{} has non-finite entries".format(name))
    if np.max(np.abs(sigma - sigma.T), initial=0.0) > SYMMETRY_TOL:
        raise NotPositiveSemidefiniteError("{} is not symmetric".format(name))
    min_eig = float(np.linalg.eigvalsh(sigma)[0])
    if min_eig < -PSD_TOL:
        raise NotPositiveSemidefiniteError("{} has eigenvalue {:.3g}".format(name, min_eig))


def propagate_covariance(sigma: np.ndarray, model: NoiseModel, participant_kind: str) -> np.ndarray:
    """One prediction step ``F Sigma F^T + Q``.

    Args:
        sigma: 4x4 covariance over ``(x, y, x_dot, y_dot)``.
        model: Transition and process noise.
        participant_kind: ``"ego"`` or ``"other"``, selects the process noise.

    Returns:
        The propagated covariance, symmetrised.

    Raises:
        NotPositiveSemidefiniteError: ``sigma`` is not symmetric PSD.
    """
    check_psd(sigma)
    F = model.F
    propagated = F @ sigma @ F.T + model.process_noise(participant_kind)
    return 0.5 * (propagated + propagated.T)


def propagate_many(sigma: np.ndarray, model: NoiseModel, participant_kind: str, steps: int) -> np.ndarray:
    """Stack of ``steps + 1`` covariances starting with ``sigma``."""
    out = [np.asarray(sigma, dtype=np.float64)]
    for _ in range(steps):
        out.append(propagate_covariance(out[-1], model, participant_kind))
    return np.stack(out)
