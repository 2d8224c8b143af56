"""Parameter point of the driven XX chain and its single-particle dispersion."""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np


@dataclass(frozen=True)
class ChainParams:
    """One evaluation point.

    Parameters
    ----------
    j_coupling : float
        Nearest-neighbour coupling ``J > 0``.
    b_field : float
        Transverse field ``B >= 0``.
    temperature : float
        Steady-state temperature ``T = 1/beta > 0``.
    gamma : float
        Multiplier of the energy current in ``exp(-beta H0 - gamma J^E)``.
    b_aux : float
        Auxiliary scale on the Zeeman term, ``1`` for the physical chain.
    """

    j_coupling: float = 1.0
    b_field: float = 0.0
    temperature: float = 1.0
    gamma: float = 0.0
    b_aux: float = 1.0

    def __post_init__(self):
        for name in ("j_coupling", "b_field", "temperature", "gamma", "b_aux"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.j_coupling <= 0:
            raise ValueError(f"j_coupling must be positive, got {self.j_coupling}")
        if self.temperature <= 0:
            raise ValueError(f"temperature must be positive, got {self.temperature}")
        if self.b_field < 0:
            raise ValueError(f"b_field must be non-negative, got {self.b_field}")

    @property
    def beta(self) -> float:
        return 1.0 / self.temperature

    @property
    def gamma_t(self) -> float:
        """Driving per unit inverse temperature, ``gamma / beta``."""
        return self.gamma * self.temperature

    def with_(self, **changes) -> ChainParams:
        return replace(self, **changes)


def xi(params: ChainParams, q):
    """Single-particle energy including the auxiliary field scale ``b``.

    ``xi(q) = bB - J cos q + 2 (gamma/beta) J sin q (B - J cos q)``.
    Accepts scalars or arrays of momenta.
    """
    j, b = params.j_coupling, params.b_field
    q = np.asarray(q, dtype=float)
    return params.b_aux * b - j * np.cos(q) + 2.0 * params.gamma_t * j * np.sin(q) * (b - j * np.cos(q))


def lambda_dispersion(params: ChainParams, q):
    """Factored dispersion ``(B - J cos q)(2 (gamma/beta) J sin q + 1)`` of the physical chain."""
    j, b = params.j_coupling, params.b_field
    q = np.asarray(q, dtype=float)
    return (b - j * np.cos(q)) * (2.0 * params.gamma_t * j * np.sin(q) + 1.0)


def beta_xi(params: ChainParams, q):
    """``beta * xi(q)`` evaluated without forming ``gamma/beta``.

    Keeps the driving term finite and exact when ``T`` is huge.
    """
    j, b = params.j_coupling, params.b_field
    q = np.asarray(q, dtype=float)
    c, s = np.cos(q), np.sin(q)
    return params.beta * (params.b_aux * b - j * c) + 2.0 * params.gamma * j * s * (b - j * c)
