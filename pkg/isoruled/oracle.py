"""Central finite differences used as independent checks of closed forms.

Every helper takes a plain function of a real parameter vector and never
looks at jets, so agreement with jet-based values is a genuine cross-check.
"""

import logging
from typing import Callable

import numpy as np

from isoruled.errors import DomainError

logger = logging.getLogger(__name__)

DEFAULT_STEP = 1e-4
MIN_STEP = 1e-6
MAX_STEP = 1e-3

VectorFn = Callable[[np.ndarray], np.ndarray]


def check_step(step: float) -> float:
    if not MIN_STEP <= step <= MAX_STEP:
        raise DomainError(f"finite-difference step must lie in [{MIN_STEP}, {MAX_STEP}], got {step}")
    return float(step)


def directional(
    f: VectorFn, x0: np.ndarray, direction: np.ndarray, step: float = DEFAULT_STEP
) -> np.ndarray:
    """Central difference of f at x0 along ``direction``."""
    x0 = np.asarray(x0, dtype=float)
    d = np.asarray(direction, dtype=float)
    return (np.asarray(f(x0 + step * d)) - np.asarray(f(x0 - step * d))) / (2 * step)


def richardson(
    f: VectorFn, x0: np.ndarray, direction: np.ndarray, step: float = DEFAULT_STEP
) -> np.ndarray:
    """Directional derivative with one Richardson refinement (error O(h^4))."""
    coarse = directional(f, x0, direction, step)
    fine = directional(f, x0, direction, step / 2)
    return (4 * fine - coarse) / 3


def gradient(f: VectorFn, x0: np.ndarray, step: float = DEFAULT_STEP) -> np.ndarray:
    """Jacobian rows ``d f / d x_i`` stacked along axis 0."""
    x0 = np.asarray(x0, dtype=float)
    eye = np.eye(x0.size)
    return np.array([directional(f, x0, eye[i], step) for i in range(x0.size)])


def _hessian(f: VectorFn, x0: np.ndarray, step: float) -> np.ndarray:
    m = x0.size
    eye = np.eye(m) * step
    f0 = np.asarray(f(x0))
    out = np.zeros((m, m) + f0.shape)
    for i in range(m):
        fp = np.asarray(f(x0 + eye[i]))
        fm = np.asarray(f(x0 - eye[i]))
        out[i, i] = (fp - 2 * f0 + fm) / step**2
        for j in range(i + 1, m):
            pp = np.asarray(f(x0 + eye[i] + eye[j]))
            pm = np.asarray(f(x0 + eye[i] - eye[j]))
            mp = np.asarray(f(x0 - eye[i] + eye[j]))
            mm = np.asarray(f(x0 - eye[i] - eye[j]))
            out[i, j] = out[j, i] = (pp - pm - mp + mm) / (4 * step**2)
    return out


def hessian(
    f: VectorFn, x0: np.ndarray, step: float = DEFAULT_STEP, refine: bool = False
) -> np.ndarray:
    """Second partials ``d^2 f / d x_i d x_j`` with shape (m, m, ...).

    With ``refine`` the central differences at ``step`` and ``step / 2`` are
    combined by one Richardson step, taking the error from O(h^2) to O(h^4).
    """
    x0 = np.asarray(x0, dtype=float)
    coarse = _hessian(f, x0, step)
    if not refine:
        return coarse
    return (4 * _hessian(f, x0, step / 2) - coarse) / 3
