"""Jerk-optimal quintic polynomials between two (position, velocity, acceleration) states."""
from typing import NamedTuple, Sequence, Tuple, Union

import numpy as np
from scipy.integrate import trapezoid

from driving.frenet.errors import InvalidDurationError

ArrayLike = Union[float, np.ndarray]


class QuinticCoeffs(NamedTuple):
    """``p(t) = c[0] + c[1] t + ... + c[5] t^5`` for ``t`` in ``[0, duration]``."""
    c: Tuple[float, float, float, float, float, float]
    duration: float


def quintic_coeffs(init: Sequence[float], end: Sequence[float], T: float) -> QuinticCoeffs:
    """Solve the boundary value problem.

    The first three coefficients follow directly from the initial state; the last
    three from the 3x3 system formed by the end state.

    Args:
        init: ``(p, p_dot, p_ddot)`` at ``t = 0``.
        end: ``(p, p_dot, p_ddot)`` at ``t = T``.
        T: Duration in seconds.

    Raises:
        InvalidDurationError: ``T <= 0``.
    """
    if not T > 0:
        raise InvalidDurationError("quintic duration must be positive, got {}".format(T))
    p0, v0, a0 = (float(v) for v in init)
    p1, v1, a1 = (float(v) for v in end)
    c0, c1, c2 = p0, v0, a0 / 2.0

    A = np.array([[T ** 3, T ** 4, T ** 5],
                  [3 * T ** 2, 4 * T ** 3, 5 * T ** 4],
                  [6 * T, 12 * T ** 2, 20 * T ** 3]])
    b = np.array([p1 - c0 - c1 * T - c2 * T ** 2,
                  v1 - c1 - 2 * c2 * T,
                  a1 - 2 * c2])
    c3, c4, c5 = np.linalg.solve(A, b)
    return QuinticCoeffs((c0, c1, c2, float(c3), float(c4), float(c5)), float(T))


def evaluate(q: QuinticCoeffs, t: ArrayLike, derivative: int = 0) -> ArrayLike:
    """Value (0), velocity (1), acceleration (2) or jerk (3) at ``t``."""
    c0, c1, c2, c3, c4, c5 = q.c
    if derivative == 0:
        return c0 + c1 * t + c2 * t ** 2 + c3 * t ** 3 + c4 * t ** 4 + c5 * t ** 5
    if derivative == 1:
        return c1 + 2 * c2 * t + 3 * c3 * t ** 2 + 4 * c4 * t ** 3 + 5 * c5 * t ** 4
    if derivative == 2:
        return 2 * c2 + 6 * c3 * t + 12 * c4 * t ** 2 + 20 * c5 * t ** 3
    if derivative == 3:
        return 6 * c3 + 24 * c4 * t + 60 * c5 * t ** 2
    raise ValueError("derivative must be 0..3, got {}".format(derivative))


def evaluate_state(q: QuinticCoeffs, t: ArrayLike) -> Tuple[ArrayLike, ArrayLike, ArrayLike]:
    return evaluate(q, t, 0), evaluate(q, t, 1), evaluate(q, t, 2)


def squared_jerk_integral(q: QuinticCoeffs, n: int = 2001) -> float:
    """Trapezoidal estimate of the integral of the squared jerk over the duration."""
    t = np.linspace(0.0, q.duration, n)
    return float(trapezoid(evaluate(q, t, 3) ** 2, t))
