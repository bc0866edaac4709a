from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from mixstab.constants import FD_REL_STEP


def _steps(x: np.ndarray, h: Optional[Sequence[float]]) -> np.ndarray:
    if h is None:
        return FD_REL_STEP * (1.0 + np.abs(x))
    return np.broadcast_to(np.asarray(h, dtype=float), x.shape).copy()


def _central(f: Callable[[np.ndarray], float], x: np.ndarray, h: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    n = x.size
    grad = np.zeros(n)
    hess = np.zeros((n, n))
    f0 = f(x)
    for i in range(n):
        ei = np.zeros(n)
        ei[i] = h[i]
        fp, fm = f(x + ei), f(x - ei)
        grad[i] = (fp - fm) / (2.0 * h[i])
        hess[i, i] = (fp - 2.0 * f0 + fm) / (h[i] * h[i])
        for j in range(i + 1, n):
            ej = np.zeros(n)
            ej[j] = h[j]
            hess[i, j] = (
                f(x + ei + ej) - f(x + ei - ej) - f(x - ei + ej) + f(x - ei - ej)
            ) / (4.0 * h[i] * h[j])
            hess[j, i] = hess[i, j]
    return grad, hess


def fd_gradient_hessian(
    f: Callable[[np.ndarray], float],
    x: Sequence[float],
    h: Optional[Sequence[float]] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Central-difference gradient and Hessian with one Richardson level:
    D = (4 D(h/2) - D(h)) / 3, cancelling the O(h^2) term.
    """
    x = np.asarray(x, dtype=float)
    steps = _steps(x, h)
    g1, h1 = _central(f, x, steps)
    g2, h2 = _central(f, x, steps / 2.0)
    return (4.0 * g2 - g1) / 3.0, (4.0 * h2 - h1) / 3.0
