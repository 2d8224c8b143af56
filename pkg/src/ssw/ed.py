"""Exact diagonalization of short periodic XX chains.

Everything here works with explicit ``2**N x 2**N`` matrices and shares no
code with the free-fermion routines, so it can serve as ground truth for
them. Sites are labelled ``1..N`` and site 1 is the most significant qubit
of the computational basis; ``|0>`` is spin up (``sigma^z = +1``).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np
import scipy.sparse as sp

from .errors import (
    DimensionMismatch,
    EigensolverFailure,
    InvalidDensityMatrix,
    SizeLimit,
)

MAX_SITES = 12

PAULI = {
    "i": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class PauliOperator:
    """Dense operator on an ``n_sites`` spin-1/2 chain."""

    n_sites: int
    matrix: np.ndarray
    hermitian: bool = True

    def __post_init__(self):
        dim = 2**self.n_sites
        if self.matrix.shape != (dim, dim):
            raise DimensionMismatch(
                f"matrix shape {self.matrix.shape} does not match {self.n_sites} sites"
            )

    def __add__(self, other: PauliOperator) -> PauliOperator:
        _check_same_size(self, other)
        return PauliOperator(
            self.n_sites, self.matrix + other.matrix, self.hermitian and other.hermitian
        )

    def __sub__(self, other: PauliOperator) -> PauliOperator:
        _check_same_size(self, other)
        return PauliOperator(
            self.n_sites, self.matrix - other.matrix, self.hermitian and other.hermitian
        )

    def __matmul__(self, other: PauliOperator) -> PauliOperator:
        _check_same_size(self, other)
        return PauliOperator(self.n_sites, self.matrix @ other.matrix, hermitian=False)

    def hermiticity_residue(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.conj().T), initial=0.0))


def _check_same_size(a: PauliOperator, b: PauliOperator):
    if a.n_sites != b.n_sites:
        raise DimensionMismatch(f"{a.n_sites} sites vs {b.n_sites} sites")


def _check_size(n: int, minimum: int = 1):
    if n > MAX_SITES:
        raise SizeLimit(f"N={n} exceeds the dense limit of {MAX_SITES} sites")
    if n < minimum:
        raise ValueError(f"need at least {minimum} sites, got {n}")


def _pauli_string(n: int, ops: dict[int, str]) -> sp.csr_matrix:
    """Sparse Kronecker product with ``ops[site]`` placed on 1-based sites."""
    factors = [sp.csr_matrix(PAULI[ops.get(site, "i")]) for site in range(1, n + 1)]
    return reduce(lambda a, b: sp.kron(a, b, format="csr"), factors)


def _wrap(n: int, site: int) -> int:
    return (site - 1) % n + 1


def build_site_operator(n: int, site: int, axis: str) -> PauliOperator:
    """``sigma^axis`` acting on ``site`` (1-based) of an ``n``-site chain."""
    _check_size(n)
    if not 1 <= site <= n:
        raise ValueError(f"site {site} outside 1..{n}")
    if axis not in ("x", "y", "z"):
        raise ValueError(f"unknown Pauli axis {axis!r}")
    return PauliOperator(n, _pauli_string(n, {site: axis}).toarray())


def _bond(n: int, l: int, coupling: float) -> sp.csr_matrix:
    """V(l, l+1) = -(J/2)(xx + yy) with periodic wrap."""
    a, b = _wrap(n, l), _wrap(n, l + 1)
    return -0.5 * coupling * (_pauli_string(n, {a: "x", b: "x"}) + _pauli_string(n, {a: "y", b: "y"}))


def _onsite(n: int, l: int, field: float) -> sp.csr_matrix:
    return -field * _pauli_string(n, {_wrap(n, l): "z"})


def build_h0(n: int, j: float, b_field: float, b_aux: float = 1.0) -> PauliOperator:
    """Periodic XX Hamiltonian ``-(J/2) sum(xx + yy) - b B sum z``."""
    _check_size(n, minimum=3)
    h = sp.csr_matrix((2**n, 2**n), dtype=complex)
    for l in range(1, n + 1):
        h = h + _bond(n, l, j) + _onsite(n, l, b_aux * b_field)
    return PauliOperator(n, h.toarray())


def build_je(n: int, j: float, b_field: float) -> PauliOperator:
    """Energy current of the XX chain written directly as Pauli strings."""
    _check_size(n, minimum=3)
    cur = sp.csr_matrix((2**n, 2**n), dtype=complex)
    for l in range(1, n + 1):
        s0, s1, s2 = l, _wrap(n, l + 1), _wrap(n, l + 2)
        two_site = _pauli_string(n, {s0: "y", s1: "x"}) - _pauli_string(n, {s0: "x", s1: "y"})
        three_site = _pauli_string(n, {s0: "y", s1: "z", s2: "x"}) - _pauli_string(
            n, {s0: "x", s1: "z", s2: "y"}
        )
        cur = cur - b_field * j * two_site + 0.5 * j**2 * three_site
    return PauliOperator(n, cur.toarray())


def _comm(a, b):
    return a @ b - b @ a


def build_jl(n: int, l: int, j: float, b_field: float, b_aux: float = 1.0) -> PauliOperator:
    """Local energy current from the generic continuity-equation formula.

    ``j_l = (i/2)([h_l - h_{l+1}, V(l,l+1)] + [V(l,l+1), V(l+1,l+2)]
    + [V(l-1,l), V(l,l+1)])`` with ``h_l = -b B z_l``.
    """
    _check_size(n, minimum=3)
    field = b_aux * b_field
    v_prev, v, v_next = _bond(n, l - 1, j), _bond(n, l, j), _bond(n, l + 1, j)
    dh = _onsite(n, l, field) - _onsite(n, l + 1, field)
    out = 0.5j * (_comm(dh, v) + _comm(v, v_next) + _comm(v_prev, v))
    return PauliOperator(n, sp.csr_matrix(out).toarray())


def local_energy(n: int, l: int, j: float, b_field: float, b_aux: float = 1.0) -> PauliOperator:
    """Energy density ``h_l = h_l^0 + (V(l-1,l) + V(l,l+1))/2`` used by the continuity check."""
    _check_size(n, minimum=3)
    h = _onsite(n, l, b_aux * b_field) + 0.5 * (_bond(n, l - 1, j) + _bond(n, l, j))
    return PauliOperator(n, h.toarray())


@dataclass(frozen=True)
class ThermalState:
    rho: np.ndarray
    beta: float
    gamma: float

    @property
    def n_sites(self) -> int:
        return int(round(np.log2(self.rho.shape[0])))


def thermal_state(h0, je, beta: float, gamma: float) -> ThermalState:
    """``exp(-beta h0 - gamma je) / Z`` through a Hermitian eigendecomposition.

    ``h0`` and ``je`` may be :class:`PauliOperator` or plain square arrays.
    """
    h = getattr(h0, "matrix", h0)
    c = getattr(je, "matrix", je)
    if h.shape != c.shape:
        raise DimensionMismatch(f"{h.shape} vs {c.shape}")
    k = beta * h + gamma * c
    k = 0.5 * (k + k.conj().T)
    try:
        evals, evecs = np.linalg.eigh(k)
    except np.linalg.LinAlgError as exc:
        raise EigensolverFailure(str(exc)) from exc
    weights = np.exp(-(evals - evals[0]))
    weights /= weights.sum()
    rho = (evecs * weights) @ evecs.conj().T
    return ThermalState(0.5 * (rho + rho.conj().T), beta, gamma)


def log_partition(h0, je, beta: float, gamma: float) -> float:
    """``ln tr exp(-beta h0 - gamma je)``."""
    h = getattr(h0, "matrix", h0)
    c = getattr(je, "matrix", je)
    evals = np.linalg.eigvalsh(beta * h + gamma * c)
    shift = evals[0]
    return float(-shift + np.log(np.sum(np.exp(-(evals - shift)))))


def expect(op, state: ThermalState) -> float:
    """Real expectation value ``tr(op rho)`` of a Hermitian operator."""
    m = getattr(op, "matrix", op)
    if m.shape != state.rho.shape:
        raise DimensionMismatch(f"operator {m.shape} vs state {state.rho.shape}")
    val = np.einsum("ij,ji->", m, state.rho)
    if abs(val.imag) > 1e-10 * max(1.0, abs(val.real)):
        raise ValueError(f"expectation has imaginary part {val.imag:.3e}; operator not Hermitian?")
    return float(val.real)


def two_site_rdm(state: ThermalState | np.ndarray, l: int, r: int) -> np.ndarray:
    """Reduced density matrix of sites ``l`` and ``r`` (1-based), ordered (l, r)."""
    rho = getattr(state, "rho", state)
    n = int(round(np.log2(rho.shape[0])))
    if rho.shape != (2**n, 2**n):
        raise DimensionMismatch(f"state shape {rho.shape} is not a qubit register")
    if l == r or not (1 <= l <= n and 1 <= r <= n):
        raise DimensionMismatch(f"invalid site pair ({l}, {r}) for {n} sites")
    t = rho.reshape((2,) * (2 * n))
    keep = [l - 1, r - 1]
    rest = [s for s in range(n) if s not in keep]
    # bra axes follow ket axes; contract every traced site with its bra partner
    perm = keep + rest + [n + s for s in keep] + [n + s for s in rest]
    t = t.transpose(perm).reshape(4, 2 ** (n - 2), 4, 2 ** (n - 2))
    return np.einsum("ajbj->ab", t)


_YY = np.kron(PAULI["y"], PAULI["y"])


def wootters_concurrence(rdm: np.ndarray, tol: float = 1e-10) -> float:
    """Wootters concurrence of a two-qubit density matrix."""
    rdm = np.asarray(rdm, dtype=complex)
    if rdm.shape != (4, 4):
        raise InvalidDensityMatrix(f"expected 4x4, got {rdm.shape}")
    if np.max(np.abs(rdm - rdm.conj().T)) > 1e-8 or abs(np.trace(rdm) - 1) > 1e-8:
        raise InvalidDensityMatrix("matrix is not a Hermitian unit-trace operator")
    p, v = np.linalg.eigh(0.5 * (rdm + rdm.conj().T))
    if p[0] < -1e-8:
        raise InvalidDensityMatrix(f"negative eigenvalue {p[0]:.3e}")
    sqrt_rho = (v * np.sqrt(np.clip(p, 0.0, None))) @ v.conj().T
    # singular values of sqrt(rho) Y sqrt(rho)^* are the square roots of eig(rho rho~)
    lam = np.linalg.svd(sqrt_rho @ _YY @ sqrt_rho.conj(), compute_uv=False)
    lam = np.sort(lam)[::-1]
    c = lam[0] - lam[1] - lam[2] - lam[3]
    return float(max(0.0, c)) if c > -tol else 0.0


def chain_observables(params, n: int, separations=(1, 2)) -> dict:
    """Per-site densities, pair correlators and concurrence of the ``n``-site ring.

    Everything is read off the dense thermal state; keys mirror
    :class:`ssw.freefermion.FiniteResult`.
    """
    j, b = params.j_coupling, params.b_field
    h0 = build_h0(n, j, b, params.b_aux)
    je = build_je(n, j, b)
    st = thermal_state(h0, je, params.beta, params.gamma)
    sig = {a: [None] + [build_site_operator(n, s, a).matrix for s in range(1, n + 1)] for a in "xyz"}
    out = {
        "log_z": log_partition(h0, je, params.beta, params.gamma) / n,
        "m": expect(sig["z"][1], st),
        "e": expect(h0, st) / n,
        "q": expect(je, st) / n,
        "u": expect(h0.matrix + params.gamma_t * je.matrix, st) / n,
        "pairs": {},
        "concurrence": {},
    }
    for r in separations:
        x0, y0, z0 = sig["x"][1], sig["y"][1], sig["z"][1]
        xr, yr, zr = sig["x"][1 + r], sig["y"][1 + r], sig["z"][1 + r]
        out["pairs"][r] = {
            "xx_plus_yy": expect(x0 @ xr + y0 @ yr, st),
            "yx_minus_xy": expect(y0 @ xr - x0 @ yr, st),
            "zz": expect(z0 @ zr, st),
            "z_single": out["m"],
        }
        out["concurrence"][r] = wootters_concurrence(two_site_rdm(st, 1, 1 + r))
    return out
