"""Steady-state entanglement witnesses for the energy-current-carrying XX chain."""

__version__ = "0.1.0"

from .correlators import (  # noqa: E402
    CorrelatorSet,
    PairCorrelators,
    concurrence,
    correlator_set,
    g_r,
    pair_correlators,
    s_r,
)
from .contour import detection_boundary, marching_squares  # noqa: E402
from .errors import *  # noqa: E402,F401,F403
from .freefermion import FiniteResult, free_fermion_finite  # noqa: E402
from .params import ChainParams, lambda_dispersion, xi  # noqa: E402
from .quadrature import QuadratureConfig, integrate_periodic  # noqa: E402
from .scangrid import ScanGrid, scan  # noqa: E402
from .thermo import (  # noqa: E402
    ThermoPoint,
    energy_current_density,
    energy_density_term,
    internal_energy_density,
    log_z_density,
    magnetization_density,
    thermo_point,
)
from .witness import WitnessResult, w1, w_ss, witnesses  # noqa: E402
