from typing import NamedTuple

import numpy as np
from scipy.stats import chi2

from driving.uncertainty.covariance import check_psd
from driving.uncertainty.errors import InvalidConfidenceError


class Ellipse(NamedTuple):
    """Semi-axes ``a >= b`` with the major axis at ``angle`` (radians, in ``[-pi/2, pi/2)``)."""
    a: float
    b: float
    angle: float

    @property
    def area(self) -> float:
        return float(np.pi * self.a * self.b)

    def shape_matrix(self) -> np.ndarray:
        """``M`` such that the ellipse is ``{x : x^T M^-1 x <= 1}``."""
        c, s = np.cos(self.angle), np.sin(self.angle)
        R = np.array([[c, -s], [s, c]])
        return R @ np.diag([self.a ** 2, self.b ** 2]) @ R.T

    def support(self, directions: np.ndarray) -> np.ndarray:
        """Support function ``max_{x in E} u.x`` for each row ``u`` of ``directions``."""
        directions = np.atleast_2d(directions)
        M = self.shape_matrix()
        return np.sqrt(np.maximum(np.einsum("ij,jk,ik->i", directions, M, directions), 0.0))


ZERO_ELLIPSE = Ellipse(0.0, 0.0, 0.0)


def confidence_ellipse(sigma_pos: np.ndarray, confidence: float = 0.95) -> Ellipse:
    """Region holding the position with probability ``confidence``.

    Semi-axes are ``sqrt(chi2_2(confidence) * lambda_i)`` for the eigenvalues of the
    2x2 position block.

    Raises:
        InvalidConfidenceError: ``confidence`` outside (0, 1).
        NotPositiveSemidefiniteError: the block is not symmetric PSD.
    """
    if not 0.0 < confidence < 1.0:
        raise InvalidConfidenceError("confidence must be in (0, 1), got {}".format(confidence))
    sigma_pos = np.asarray(sigma_pos, dtype=np.float64)
    check_psd(sigma_pos, "position covariance")
    eigenvalues, eigenvectors = np.linalg.eigh(sigma_pos)
    eigenvalues = np.maximum(eigenvalues, 0.0)
    if eigenvalues[1] == 0.0:
        return ZERO_ELLIPSE
    scale = chi2.ppf(confidence, df=2)
    major = eigenvectors[:, 1]
    angle = np.mod(np.arctan2(major[1], major[0]) + np.pi / 2, np.pi) - np.pi / 2
    return Ellipse(float(np.sqrt(scale * eigenvalues[1])), float(np.sqrt(scale * eigenvalues[0])), float(angle))
