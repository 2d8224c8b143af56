"""Free-fermion evaluation of the periodic chain at finite ``N``.

The Jordan-Wigner boundary term makes the fermions antiperiodic in the
even-parity sector and periodic in the odd one. Writing the parity
projectors as ``(1 +- P)/2`` with ``P = (-1)^{N_f}`` splits

    exp(-K) = [e^{-K_A}(1 + P) + e^{-K_P}(1 - P)] / 2,

four unnormalised Gaussian operators. Each factorises over momenta into
``alpha_k (1 - n_k) + beta_k n_k`` so Wick's theorem applies term by term
and the exact finite-chain expectation is their weighted sum.

The ``P``-weighted terms carry mode weights ``1 - exp(-eps_k)``, which
vanish whenever a single-particle energy does. Expectations are affine in
each mode's ``beta_k``, so such modes are replaced by the average of two
well-conditioned points ``beta_k +- DELTA`` (exact, no limit taken).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .correlators import PairCorrelators, concurrence_from_pairs, pair_correlators_from_gs
from .params import ChainParams, beta_xi

DELTA = 0.5
SINGULAR = 0.25
MAX_AVERAGED_MODES = 6


@dataclass(frozen=True)
class FiniteResult:
    n_sites: int
    log_z: float
    m: float
    e: float
    u: float
    q: float
    g: np.ndarray
    s: np.ndarray
    pairs: dict = field(default_factory=dict)
    concurrence: dict = field(default_factory=dict)


def sector_momenta(n: int, periodic: bool) -> np.ndarray:
    offset = 0.0 if periodic else 0.5
    return 2.0 * np.pi * (np.arange(n) + offset) / n


def _gaussian_terms(params: ChainParams, n: int):
    """Yield ``(coefficient, log_scale, alpha, beta, momenta)`` for the four terms."""
    for periodic, parity in product((False, True), (1.0, -1.0)):
        k = sector_momenta(n, periodic)
        eps = 2.0 * beta_xi(params, k)
        pos = eps >= 0
        ex = np.exp(-np.abs(eps))
        alpha = np.where(pos, 1.0, ex)
        beta = parity * np.where(pos, ex, 1.0)
        log_scale = float(np.sum(np.where(pos, 0.0, -eps)))
        coeff = -0.5 if (periodic and parity < 0) else 0.5
        yield coeff, log_scale, alpha, beta, k


def _corners(alpha, beta):
    """Replace nearly singular modes by two-point averages; yield ``(weight, beta)``."""
    w = np.abs(alpha + beta)
    bad = np.flatnonzero(w < SINGULAR)
    bad = bad[np.argsort(w[bad])][:MAX_AVERAGED_MODES]
    if bad.size == 0:
        yield 1.0, beta
        return
    weight = 0.5**bad.size
    for signs in product((-1.0, 1.0), repeat=bad.size):
        b = beta.copy()
        b[bad] += DELTA * np.asarray(signs)
        yield weight, b


def _log_sum_signed(logs, signs):
    logs = np.asarray(logs)
    top = np.max(logs)
    return top, np.sum(np.asarray(signs) * np.exp(logs - top))


def free_fermion_finite(params: ChainParams, n: int, r_max: int = 2, pairs=(1, 2)) -> FiniteResult:
    """Exact thermodynamics and correlators of the periodic ``n``-site chain.

    Parameters
    ----------
    params : ChainParams
    n : int
        Number of sites, at least 3.
    r_max : int
        Largest separation for ``g`` and ``s``; must be below ``n``.
    pairs : iterable of int
        Separations for which spin pair correlators and concurrence are formed.
    """
    if n < 3:
        raise ValueError("need at least 3 sites")
    pairs = tuple(pairs)
    r_max = max(r_max, 2, *pairs) if pairs else max(r_max, 2)
    if r_max >= n:
        raise ValueError(f"separation {r_max} aliases on a {n}-site ring")
    rs = np.arange(r_max + 1)

    z_logs, z_signs = [], []
    parts = []
    for coeff, log_scale, alpha, beta, k in _gaussian_terms(params, n):
        # partition weight needs no averaging: it is a plain product
        wz = alpha + beta
        if np.all(wz):
            z_logs.append(log_scale + np.sum(np.log(np.abs(wz))))
            z_signs.append(coeff * np.prod(np.sign(wz)))
        cos_kr = np.cos(np.outer(rs, k))
        sin_kr = np.sin(np.outer(rs, k))
        for cw, b in _corners(alpha, beta):
            w = alpha + b
            if not np.all(w):
                # three or more exact zeros left: every Wick monomial vanishes
                continue
            occ = 1.0 - 2.0 * b / w
            g = cos_kr @ occ / n
            s = sin_kr @ occ / n
            log_w = log_scale + np.sum(np.log(np.abs(w)))
            sign = coeff * cw * np.prod(np.sign(w))
            parts.append((log_w, sign, g, s))

    top, zsum = _log_sum_signed(z_logs, z_signs)
    log_z_total = top + np.log(zsum)
    # the Fock-space constant exp(beta b B N) was dropped from K
    log_z = (log_z_total + params.beta * params.b_aux * params.b_field * n) / n

    weights = np.array([sgn * np.exp(lw - log_z_total) for lw, sgn, _, _ in parts])
    g = sum(w * p[2] for w, p in zip(weights, parts))
    s = sum(w * p[3] for w, p in zip(weights, parts))
    s[0] = 0.0

    j, bf = params.j_coupling, params.b_field
    m = g[0]
    e = j * g[1] - params.b_aux * bf * g[0]
    cur = j * j * s[2] - 2.0 * bf * j * s[1]

    pair_out, conc = {}, {}
    for r in pairs:
        acc = np.zeros(4)
        for w, (_, _, gg, ss) in zip(weights, parts):
            pc = pair_correlators_from_gs(gg, ss, r)
            acc += w * np.array([pc.xx_plus_yy, pc.yx_minus_xy, pc.zz, pc.z_single])
        pc = PairCorrelators(*map(float, acc), separation=r)
        pair_out[r] = pc
        conc[r] = concurrence_from_pairs(pc)

    return FiniteResult(
        n_sites=n,
        log_z=float(log_z),
        m=float(m),
        e=float(e),
        u=float(e + params.gamma_t * cur),
        q=float(cur),
        g=g,
        s=s,
        pairs=pair_out,
        concurrence=conc,
    )
