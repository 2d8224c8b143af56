"""Trapezoid quadrature over one Brillouin zone with node doubling.

For smooth 2*pi-periodic integrands the equally spaced trapezoid sum
converges geometrically, so doubling until two successive estimates agree
is both cheap and reliable. Each doubling only evaluates the new odd nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonConvergence

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class QuadratureConfig:
    tolerance: float = 1e-10
    max_nodes: int = 2**20
    initial_nodes: int = 64

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")
        if self.initial_nodes < 8:
            raise ValueError("initial_nodes must be at least 8")
        if self.max_nodes < self.initial_nodes:
            raise ValueError("max_nodes must be >= initial_nodes")


DEFAULT = QuadratureConfig()


def integrate_periodic(f, config: QuadratureConfig = DEFAULT):
    """Integral of ``f`` over ``[0, 2*pi]``.

    ``f`` maps an array of angles ``(n,)`` to values of shape ``(n,)`` or
    ``(k, n)``; in the latter case ``k`` integrals share the nodes and the
    tolerance applies to each component. Returns a float or an array of
    shape ``(k,)``.
    """
    n = config.initial_nodes
    total = np.sum(_eval(f, TWO_PI * np.arange(n) / n), axis=-1)
    estimate = TWO_PI * total / n
    while True:
        if 2 * n > config.max_nodes:
            raise NonConvergence(
                f"no convergence to tol={config.tolerance:g} within {config.max_nodes} nodes"
            )
        # new nodes sit halfway between the old ones
        total = total + np.sum(_eval(f, TWO_PI * (np.arange(n) + 0.5) / n), axis=-1)
        n *= 2
        refined = TWO_PI * total / n
        if not np.all(np.isfinite(refined)):
            raise NonConvergence("integrand produced non-finite values")
        err = np.abs(refined - estimate)
        if np.all(err <= config.tolerance * np.maximum(1.0, np.abs(refined))):
            return refined if np.ndim(refined) else float(refined)
        estimate = refined


def _eval(f, q):
    vals = np.asarray(f(q), dtype=float)
    if vals.shape[-1] != q.shape[0]:
        raise ValueError(f"integrand returned shape {vals.shape} for {q.shape[0]} nodes")
    return vals


def fixed_trapezoid(f, n: int):
    """Plain ``n``-node periodic trapezoid sum, no convergence control."""
    q = TWO_PI * np.arange(n) / n
    return TWO_PI * np.mean(_eval(f, q), axis=-1)
