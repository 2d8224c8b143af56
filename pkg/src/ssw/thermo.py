"""Per-site steady-state densities in the thermodynamic limit.

All quantities are Brillouin-zone averages of ``tanh(beta xi(q))`` weighted by
trigonometric factors, except ``ln Z`` which averages ``ln 2cosh(beta xi)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .params import ChainParams, beta_xi
from .quadrature import DEFAULT, TWO_PI, QuadratureConfig, integrate_periodic


@dataclass(frozen=True)
class ThermoPoint:
    log_z_density: float
    m_density: float
    e_density: float
    q_density: float
    u_density: float


def log2cosh(x):
    """Overflow-safe ``ln(2 cosh x)``."""
    ax = np.abs(x)
    return ax + np.log1p(np.exp(-2.0 * ax))


def _average(f, config):
    return integrate_periodic(f, config) / TWO_PI


def log_z_density(params: ChainParams, config: QuadratureConfig = DEFAULT) -> float:
    return _average(lambda q: log2cosh(beta_xi(params, q)), config)


def magnetization_density(params: ChainParams, config: QuadratureConfig = DEFAULT) -> float:
    return _average(lambda q: np.tanh(beta_xi(params, q)), config)


def energy_density_term(params: ChainParams, config: QuadratureConfig = DEFAULT) -> float:
    """``<H0>/N = -(1/N) d ln Z / d beta`` at fixed ``gamma``."""
    j, b = params.j_coupling, params.b_field * params.b_aux
    return _average(lambda q: (j * np.cos(q) - b) * np.tanh(beta_xi(params, q)), config)


def energy_current_density(params: ChainParams, config: QuadratureConfig = DEFAULT) -> float:
    """``Q/N = <J^E>/N = -(1/N) d ln Z / d gamma``."""
    j, b = params.j_coupling, params.b_field
    return _average(
        lambda q: 2.0 * j * (j * np.cos(q) - b) * np.sin(q) * np.tanh(beta_xi(params, q)), config
    )


def internal_energy_density(params: ChainParams, config: QuadratureConfig = DEFAULT) -> float:
    """``<H0 + (gamma/beta) J^E>/N``."""
    tp = thermo_point(params, config)
    return tp.u_density


def thermo_point(params: ChainParams, config: QuadratureConfig = DEFAULT) -> ThermoPoint:
    """All densities from a single shared set of quadrature nodes."""
    j, b = params.j_coupling, params.b_field
    bb = b * params.b_aux

    def integrand(q):
        x = beta_xi(params, q)
        t = np.tanh(x)
        c, s = np.cos(q), np.sin(q)
        return np.stack(
            [log2cosh(x), t, (j * c - bb) * t, 2.0 * j * (j * c - b) * s * t]
        )

    lz, m, e, cur = _average(integrand, config)
    return ThermoPoint(
        log_z_density=float(lz),
        m_density=float(m),
        e_density=float(e),
        q_density=float(cur),
        u_density=float(e + params.gamma_t * cur),
    )
