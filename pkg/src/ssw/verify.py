"""Three-way comparison: exact diagonalization, finite free fermions, quadrature."""

from __future__ import annotations

from itertools import product

from .correlators import concurrence_from_pairs, pair_correlators_from_gs, correlator_set
from .ed import MAX_SITES, chain_observables
from .errors import SizeLimit
from .freefermion import free_fermion_finite
from .params import ChainParams
from .quadrature import DEFAULT, QuadratureConfig
from .thermo import thermo_point

DEFAULT_B = (0.0, 0.5, 1.0, 1.5)
DEFAULT_T = (0.2, 1.0, 5.0)
DEFAULT_GAMMA = (0.0, 1.0, 2.0)
THRESHOLD = 1e-8

PAIR_FIELDS = ("xx_plus_yy", "yx_minus_xy", "zz")


def _flatten(scalars: dict, pairs: dict, conc: dict) -> dict:
    out = dict(scalars)
    for r, pc in pairs.items():
        for f in PAIR_FIELDS:
            out[f"{f}_R{r}"] = pc[f] if isinstance(pc, dict) else getattr(pc, f)
    for r, c in conc.items():
        out[f"C_R{r}"] = c
    return out


def _quadrature_values(params, config) -> dict:
    tp = thermo_point(params, config)
    cs = correlator_set(params, r_max=2, config=config)
    pairs = {r: pair_correlators_from_gs(cs.g, cs.s, r) for r in (1, 2)}
    conc = {r: concurrence_from_pairs(pc) for r, pc in pairs.items()}
    scal = {"m": tp.m_density, "u": tp.u_density, "q": tp.q_density}
    return _flatten(scal, pairs, conc)


def compare_point(params: ChainParams, n: int, config: QuadratureConfig = DEFAULT) -> list[dict]:
    """One row per quantity with all three values and their differences."""
    ed = chain_observables(params, n)
    ff = free_fermion_finite(params, n)
    ed_flat = _flatten({k: ed[k] for k in ("m", "u", "q")}, ed["pairs"], ed["concurrence"])
    ff_flat = _flatten({"m": ff.m, "u": ff.u, "q": ff.q}, ff.pairs, ff.concurrence)
    quad = _quadrature_values(params, config)
    rows = []
    for name in ed_flat:
        rows.append(
            {
                "B": params.b_field,
                "T": params.temperature,
                "gamma": params.gamma,
                "quantity": name,
                "ed": ed_flat[name],
                "free_fermion": ff_flat[name],
                "quadrature": quad[name],
                "abs_diff_ed_ff": abs(ed_flat[name] - ff_flat[name]),
                "abs_diff_ed_quad": abs(ed_flat[name] - quad[name]),
            }
        )
    return rows


def verify(
    n: int = 8,
    b_values=DEFAULT_B,
    t_values=DEFAULT_T,
    gamma_values=DEFAULT_GAMMA,
    j_coupling: float = 1.0,
    threshold: float = THRESHOLD,
    config: QuadratureConfig = DEFAULT,
) -> dict:
    """Run the ED versus free-fermion comparison over a parameter grid.

    Only the ED/free-fermion difference is judged against ``threshold``;
    the quadrature column is the infinite chain and is reported for context.
    """
    if n > MAX_SITES:
        raise SizeLimit(f"N={n} exceeds the dense limit of {MAX_SITES} sites")
    rows = []
    for b, t, g in product(b_values, t_values, gamma_values):
        rows.extend(compare_point(ChainParams(j_coupling, b, t, g), n, config))
    worst = max(rows, key=lambda r: r["abs_diff_ed_ff"])
    return {
        "N": n,
        "threshold": threshold,
        "passed": worst["abs_diff_ed_ff"] < threshold,
        "worst": worst,
        "rows": rows,
    }
