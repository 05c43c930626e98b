"""Gauss-Legendre rules on [-1, 1]."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidOrder, NonConvergence

MAX_ORDER = 200


@dataclass(frozen=True)
class QuadratureRule:
    """k-point rule: ascending ``nodes`` in (-1, 1) and positive ``weights``."""

    nodes: np.ndarray
    weights: np.ndarray

    @property
    def k(self) -> int:
        return len(self.nodes)

    def integrate(self, f) -> float:
        return np.sum(self.weights * f(self.nodes))


def _legendre_and_derivative(k: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    p_prev = np.ones_like(x)
    p = x.copy()
    for j in range(1, k):
        p_prev, p = p, ((2 * j + 1) * x * p - j * p_prev) / (j + 1)
    dp = k * (x * p - p_prev) / (x * x - 1.0)
    return p, dp


@lru_cache(maxsize=256)
def _gauss_legendre_cached(k: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    if k == 1:
        return (0.0,), (2.0,)
    m = (k + 1) // 2
    # Chebyshev points of the first kind, largest first; only the
    # nonnegative half is iterated and the rest mirrored
    i = np.arange(1, m + 1)
    x = np.cos(np.pi * (2 * i - 1) / (2 * k))
    for _ in range(100):
        p, dp = _legendre_and_derivative(k, x)
        dx = p / dp
        x = x - dx
        if np.max(np.abs(dx)) <= 1e-15:
            break
    else:
        raise NonConvergence(f"Newton iteration for k={k} Legendre roots did not converge")
    p, dp = _legendre_and_derivative(k, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    if k % 2:
        x[-1] = 0.0
    # + 0.0 turns the middle node's -0.0 into 0.0
    nodes = np.concatenate([-x, x[::-1][k % 2:]]) + 0.0
    weights = np.concatenate([w, w[::-1][k % 2:]])
    return tuple(nodes), tuple(weights)


def gauss_legendre(k: int) -> QuadratureRule:
    """Return the ``k``-point Gauss-Legendre rule, ``1 <= k <= 200``.

    Nodes are the roots of the degree-``k`` Legendre polynomial found by Newton's
    method on the three-term recurrence; weights are
    ``2 / ((1 - x**2) * L_k'(x)**2)``.
    """
    if isinstance(k, bool) or int(k) != k or not 1 <= k <= MAX_ORDER:
        raise InvalidOrder(f"quadrature order must be an integer in [1, {MAX_ORDER}], got {k!r}")
    nodes, weights = _gauss_legendre_cached(int(k))
    return QuadratureRule(np.array(nodes), np.array(weights))
