"""Fermionic two-point functions, spin pair correlators and concurrence.

With the Jordan-Wigner fermions ``c_l`` (an occupied site is a down spin)
the Majorana operators are ``A_l = c_l^dag + c_l`` and ``B_l = c_l^dag - c_l``,
so ``sigma^z_l = A_l B_l``. In any translation-invariant, particle-number
conserving Gaussian state the only contractions are

    <A_m B_n> = G_{n-m}      <B_m A_n> = -G_{n-m}
    <A_m A_n> = -i s_{n-m}   <B_m B_n> = i s_{n-m}     (m != n)

with ``G`` even and ``s`` odd in the separation. Spin correlators are
Majorana strings and follow from Wick's theorem as Pfaffians.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NegativeVy, UnsupportedSeparation
from .params import ChainParams, beta_xi
from .pfaffian import pfaffian
from .quadrature import DEFAULT, TWO_PI, QuadratureConfig, integrate_periodic

IMAG_TOL = 1e-12
VY_TOL = 1e-10


@dataclass(frozen=True)
class CorrelatorSet:
    """``g[R] = G_R`` and ``s[R]`` (with ``S_R = i s_R``) for ``R = 0..r_max``."""

    g: np.ndarray
    s: np.ndarray

    @property
    def r_max(self) -> int:
        return len(self.g) - 1


@dataclass(frozen=True)
class PairCorrelators:
    xx_plus_yy: float
    yx_minus_xy: float
    zz: float
    z_single: float
    separation: int


def correlator_set(params: ChainParams, r_max: int = 2, config: QuadratureConfig = DEFAULT) -> CorrelatorSet:
    """All ``G_R`` and ``s_R`` up to ``r_max`` from one shared quadrature."""
    if r_max < 0:
        raise ValueError("r_max must be non-negative")
    rs = np.arange(r_max + 1)

    def integrand(q):
        t = np.tanh(beta_xi(params, q))
        phase = np.outer(rs, q)
        return np.concatenate([np.cos(phase) * t, np.sin(phase[1:]) * t])

    vals = integrate_periodic(integrand, config) / TWO_PI
    vals = np.atleast_1d(vals)
    g = vals[: r_max + 1]
    s = np.concatenate([[0.0], vals[r_max + 1 :]])
    return CorrelatorSet(g=g, s=s)


def g_r(params: ChainParams, r: int, config: QuadratureConfig = DEFAULT) -> float:
    if r < 0:
        raise ValueError("separation must be non-negative")
    return integrate_periodic(lambda q: np.cos(r * q) * np.tanh(beta_xi(params, q)), config) / TWO_PI


def s_r(params: ChainParams, r: int, config: QuadratureConfig = DEFAULT) -> float:
    if r < 0:
        raise ValueError("separation must be non-negative")
    if r == 0:
        return 0.0
    return integrate_periodic(lambda q: np.sin(r * q) * np.tanh(beta_xi(params, q)), config) / TWO_PI


def _contraction(g, s, a, b) -> complex:
    """``<a b>`` for Majorana labels ``(kind, site)`` with distinct operators."""
    (ka, ma), (kb, mb) = a, b
    d = mb - ma
    gd = g[abs(d)]
    sd = np.sign(d) * s[abs(d)]
    if ka == "A" and kb == "B":
        return gd
    if ka == "B" and kb == "A":
        return -gd
    if ka == "A":
        return -1j * sd
    return 1j * sd


def string_expectation(g, s, ops) -> complex:
    """Wick expectation of the ordered Majorana product ``ops``.

    ``ops`` is a sequence of ``("A" | "B", site)`` labels, all distinct.
    """
    n = len(ops)
    if len(set(ops)) != n:
        raise ValueError("Majorana labels in a string must be distinct")
    m = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i + 1, n):
            m[i, j] = _contraction(g, s, ops[i], ops[j])
            m[j, i] = -m[i, j]
    return pfaffian(m)


def _strings(r: int):
    mid = [(k, m) for m in range(1, r) for k in ("A", "B")]
    return {
        "aa": [("A", 0), *mid, ("A", r)],
        "ab": [("A", 0), *mid, ("B", r)],
        "ba": [("B", 0), *mid, ("A", r)],
        "bb": [("B", 0), *mid, ("B", r)],
        "zz": [("A", 0), ("B", 0), ("A", r), ("B", r)],
    }


def _real(val: complex, what: str) -> float:
    if abs(val.imag) > IMAG_TOL:
        raise ArithmeticError(f"{what} has imaginary residue {val.imag:.3e}")
    return float(val.real)


def pair_correlators_from_gs(g, s, r: int) -> PairCorrelators:
    """Spin pair correlators at separation ``r`` of a single Gaussian state.

    Uses the string identities
    ``xx + yy = -<A_0 P B_r> + <B_0 P A_r>``,
    ``yx - xy = i<A_0 P A_r> - i<B_0 P B_r>`` and
    ``zz = <A_0 B_0 A_r B_r>``, where ``P`` is the product of
    ``A_m B_m`` over the sites strictly between.
    """
    if r < 1 or r >= len(g):
        raise ValueError(f"need 1 <= r <= {len(g) - 1}")
    st = {k: string_expectation(g, s, ops) for k, ops in _strings(r).items()}
    return PairCorrelators(
        xx_plus_yy=_real(-st["ab"] + st["ba"], "xx+yy"),
        yx_minus_xy=_real(1j * st["aa"] - 1j * st["bb"], "yx-xy"),
        zz=_real(st["zz"], "zz"),
        z_single=float(np.real(g[0])),
        separation=r,
    )


def _check_r(r):
    if r not in (1, 2):
        raise UnsupportedSeparation(f"separation {r} not supported, use 1 or 2")


def pair_correlators(params: ChainParams, r: int, config: QuadratureConfig = DEFAULT) -> PairCorrelators:
    _check_r(r)
    cs = correlator_set(params, r_max=r, config=config)
    return pair_correlators_from_gs(cs.g, cs.s, r)


def concurrence_from_pairs(pc: PairCorrelators) -> float:
    """``2 max(|z| - sqrt(vy), 0)`` for a U(1)-symmetric two-site state."""
    abs_z = np.hypot(pc.xx_plus_yy, pc.yx_minus_xy) / 4.0
    vy = ((1.0 + pc.zz) ** 2 - 4.0 * pc.z_single**2) / 16.0
    if vy < -VY_TOL:
        raise NegativeVy(f"vy = {vy:.3e} < 0 at separation {pc.separation}")
    return float(2.0 * max(abs_z - np.sqrt(max(vy, 0.0)), 0.0))


def concurrence(params: ChainParams, r: int, config: QuadratureConfig = DEFAULT) -> float:
    return concurrence_from_pairs(pair_correlators(params, r, config))
