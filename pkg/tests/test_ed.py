import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import product_state
from ssw import ChainParams, DimensionMismatch, InvalidDensityMatrix, SizeLimit
from ssw.ed import (
    MAX_SITES,
    PauliOperator,
    build_h0,
    build_je,
    build_jl,
    build_site_operator,
    chain_observables,
    expect,
    local_energy,
    log_partition,
    thermal_state,
    two_site_rdm,
    wootters_concurrence,
)


def comm(a, b):
    return a @ b - b @ a


def brute_h0(n, j, b_field):
    """Bond-by-bond action on bit strings; bit 1 (most significant) is site 1, 0 = up."""
    dim = 2**n
    h = np.zeros((dim, dim))
    for s in range(dim):
        bits = [(s >> (n - 1 - k)) & 1 for k in range(n)]
        h[s, s] -= b_field * sum(1 - 2 * x for x in bits)
        for k in range(n):
            kk = (k + 1) % n
            if bits[k] != bits[kk]:
                t = s ^ (1 << (n - 1 - k)) ^ (1 << (n - 1 - kk))
                # -(J/2)(xx + yy) = -J (s+s- + s-s+)
                h[t, s] -= j
    return h


# ---- Pauli algebra -------------------------------------------------------------


@pytest.mark.parametrize("site", [1, 2, 3])
def test_pauli_algebra_on_chain(site):
    n = 3
    x, y, z = (build_site_operator(n, site, a).matrix for a in "xyz")
    eye = np.eye(2**n)
    for s in (x, y, z):
        np.testing.assert_allclose(s @ s, eye, atol=1e-15)
    np.testing.assert_allclose(x @ y, 1j * z, atol=1e-15)
    np.testing.assert_allclose(y @ z, 1j * x, atol=1e-15)
    np.testing.assert_allclose(z @ x, 1j * y, atol=1e-15)


def test_distinct_sites_commute():
    a = build_site_operator(4, 1, "x").matrix
    b = build_site_operator(4, 3, "y").matrix
    assert np.max(np.abs(comm(a, b))) == 0.0


def test_site_one_is_most_significant():
    z1 = build_site_operator(3, 1, "z").matrix
    # basis index 4 = |1 0 0> has site 1 down
    assert z1[4, 4] == -1 and z1[3, 3] == 1


def test_operator_arithmetic_and_mismatch():
    a = build_site_operator(3, 1, "x")
    b = build_site_operator(3, 2, "x")
    assert isinstance(a + b, PauliOperator)
    with pytest.raises(DimensionMismatch):
        a + build_site_operator(4, 1, "x")
    with pytest.raises(DimensionMismatch):
        PauliOperator(3, np.eye(4))


def test_size_limit():
    with pytest.raises(SizeLimit):
        build_h0(MAX_SITES + 1, 1.0, 0.0)


# ---- Hamiltonian and currents -------------------------------------------------


def test_h0_three_sites_against_brute_force():
    h = build_h0(3, 1.0, 0.5).matrix
    assert np.max(np.abs(h - h.conj().T)) < 1e-14
    np.testing.assert_allclose(h.real, brute_h0(3, 1.0, 0.5), atol=1e-14)
    np.testing.assert_allclose(np.linalg.eigvalsh(h), np.linalg.eigvalsh(brute_h0(3, 1.0, 0.5)), atol=1e-12)


@pytest.mark.parametrize("n", [4, 5, 6])
def test_h0_matches_brute_force(n):
    np.testing.assert_allclose(build_h0(n, 0.7, 1.3).matrix.real, brute_h0(n, 0.7, 1.3), atol=1e-14)


def test_h0_conserves_magnetization():
    n = 6
    h = build_h0(n, 1.0, 0.4).matrix
    mz = sum(build_site_operator(n, s, "z").matrix for s in range(1, n + 1))
    assert np.max(np.abs(comm(h, mz))) < 1e-13


def test_zeeman_shift_within_sectors():
    n, delta = 5, 0.37
    h_a = build_h0(n, 1.0, 0.2).matrix
    h_b = build_h0(n, 1.0, 0.2 + delta).matrix
    mag = np.array([sum(1 - 2 * ((s >> k) & 1) for k in range(n)) for s in range(2**n)])
    for m in np.unique(mag):
        idx = np.flatnonzero(mag == m)
        ea = np.linalg.eigvalsh(h_a[np.ix_(idx, idx)])
        eb = np.linalg.eigvalsh(h_b[np.ix_(idx, idx)])
        np.testing.assert_allclose(eb, ea - delta * m, atol=1e-12)


def test_b_aux_scales_only_zeeman():
    n = 4
    zeeman = lambda b: build_h0(n, 1.0, 0.6, b_aux=b).matrix  # noqa: E731
    np.testing.assert_allclose(zeeman(2.0) - zeeman(1.0), zeeman(1.0) - zeeman(0.0), atol=1e-14)


@pytest.mark.parametrize("n", [4, 6, 8])
def test_total_current_is_sum_of_local_currents(n):
    je = build_je(n, 1.0, 0.5).matrix
    total = sum(build_jl(n, l, 1.0, 0.5).matrix for l in range(1, n + 1))
    assert np.max(np.abs(je - total)) < 1e-12


@pytest.mark.parametrize("n, b", [(4, 0.0), (6, 0.5), (8, 1.2)])
def test_current_commutes_with_h0(n, b):
    h = build_h0(n, 1.0, b).matrix
    je = build_je(n, 1.0, b).matrix
    assert np.max(np.abs(comm(h, je))) < 1e-12


def test_local_energy_sums_to_h0_and_obeys_continuity():
    n, j, b = 6, 1.0, 0.5
    h = build_h0(n, j, b).matrix
    hl = [None] + [local_energy(n, l, j, b).matrix for l in range(1, n + 1)]
    assert np.max(np.abs(sum(hl[1:]) - h)) < 1e-13
    jl = [None] + [build_jl(n, l, j, b).matrix for l in range(1, n + 1)]
    for l in range(1, n + 1):
        prev = (l - 2) % n + 1
        # j_l flows across bond (l, l+1): d h_l / dt = i [H, h_l] = j_{l-1} - j_l
        lhs = 1j * comm(h, hl[l])
        assert np.max(np.abs(lhs - (jl[prev] - jl[l]))) < 1e-12


def test_current_vanishes_without_coupling():
    assert np.max(np.abs(build_je(4, 0.0, 0.7).matrix)) == 0.0


@pytest.mark.parametrize("n", [4, 7])
def test_current_is_traceless_and_hermitian(n):
    je = build_je(n, 1.0, 0.8)
    assert abs(np.trace(je.matrix)) < 1e-12
    assert je.hermiticity_residue() < 1e-13


# ---- thermal states ------------------------------------------------------------


def test_thermal_state_axioms():
    n = 6
    st_ = thermal_state(build_h0(n, 1.0, 0.5), build_je(n, 1.0, 0.5), 1.0, 1.0)
    rho = st_.rho
    assert abs(np.trace(rho) - 1) < 1e-12
    assert np.max(np.abs(rho - rho.conj().T)) < 1e-14
    assert np.linalg.eigvalsh(rho).min() > -1e-14


def test_two_site_gibbs_closed_form():
    # one bond: H = -(J/2)(xx+yy) - B(z1 + z2), eigenbasis known in closed form
    j, b, beta = 0.8, 0.3, 1.7
    x, y, z = (np.array(m, dtype=complex) for m in ([[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]))
    i2 = np.eye(2)
    h = -(j / 2) * (np.kron(x, x) + np.kron(y, y)) - b * (np.kron(z, i2) + np.kron(i2, z))
    up_up, dn_dn = np.eye(4)[0], np.eye(4)[3]
    trip = (np.eye(4)[1] + np.eye(4)[2]) / np.sqrt(2)
    sing = (np.eye(4)[1] - np.eye(4)[2]) / np.sqrt(2)
    levels = [(up_up, -2 * b), (dn_dn, 2 * b), (trip, -j), (sing, j)]
    z_part = sum(np.exp(-beta * e) for _, e in levels)
    expected = sum(np.exp(-beta * e) * np.outer(v, v.conj()) for v, e in levels) / z_part
    got = thermal_state(h, np.zeros((4, 4)), beta, 0.0).rho
    np.testing.assert_allclose(got, expected, atol=1e-14)
    assert log_partition(h, np.zeros((4, 4)), beta, 0.0) == pytest.approx(np.log(z_part), abs=1e-13)


def test_low_temperature_reaches_ground_energy():
    n = 6
    h = build_h0(n, 1.0, 0.3)
    st_ = thermal_state(h, build_je(n, 1.0, 0.3), 300.0, 0.0)
    assert expect(h, st_) == pytest.approx(np.linalg.eigvalsh(h.matrix)[0], abs=1e-8)


def test_infinite_temperature_is_maximally_mixed():
    n = 4
    st_ = thermal_state(build_h0(n, 1.0, 0.3), build_je(n, 1.0, 0.3), 0.0, 0.0)
    np.testing.assert_allclose(st_.rho, np.eye(16) / 16, atol=1e-15)


def test_expect_rejects_non_hermitian():
    n = 3
    st_ = thermal_state(build_h0(n, 1.0, 0.3), build_je(n, 1.0, 0.3), 1.0, 0.5)
    sp = 0.5 * (build_site_operator(n, 1, "x").matrix + 1j * build_site_operator(n, 2, "y").matrix)
    with pytest.raises(ValueError):
        expect(sp @ sp + 1j * np.eye(8), st_)


# ---- reduced density matrices ---------------------------------------------------


def brute_partial_trace(rho, n, l, r):
    out = np.zeros((4, 4), dtype=complex)
    dim = 2**n
    for a in range(dim):
        for b in range(dim):
            ba = [(a >> (n - 1 - k)) & 1 for k in range(n)]
            bb = [(b >> (n - 1 - k)) & 1 for k in range(n)]
            if any(ba[k] != bb[k] for k in range(n) if k not in (l - 1, r - 1)):
                continue
            out[2 * ba[l - 1] + ba[r - 1], 2 * bb[l - 1] + bb[r - 1]] += rho[a, b]
    return out


@pytest.mark.parametrize("pair", [(1, 2), (2, 4), (4, 1)])
def test_rdm_against_explicit_partial_trace(rng, pair):
    n = 4
    m = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
    rho = m @ m.conj().T
    rho /= np.trace(rho)
    np.testing.assert_allclose(two_site_rdm(rho, *pair), brute_partial_trace(rho, n, *pair), atol=1e-14)


def test_rdm_of_mixed_and_polarized_states():
    np.testing.assert_allclose(two_site_rdm(np.eye(32) / 32, 2, 5), np.eye(4) / 4, atol=1e-15)
    psi = np.zeros(32)
    psi[0] = 1.0
    np.testing.assert_allclose(two_site_rdm(np.outer(psi, psi), 1, 3), np.diag([1, 0, 0, 0]), atol=1e-15)


def test_chain_rdm_is_x_shaped():
    n = 8
    st_ = thermal_state(build_h0(n, 1.0, 0.5), build_je(n, 1.0, 0.5), 1.0, 1.0)
    for r in (1, 2):
        rdm = two_site_rdm(st_, 1, 1 + r)
        mask = np.ones((4, 4), bool)
        for a, b in [(0, 0), (1, 1), (2, 2), (3, 3), (1, 2), (2, 1), (0, 3), (3, 0)]:
            mask[a, b] = False
        assert np.max(np.abs(rdm[mask])) < 1e-10
        # magnetization conservation also kills the 0-3 coherence
        assert abs(rdm[0, 3]) < 1e-10


def test_rdm_invalid_sites():
    with pytest.raises(DimensionMismatch):
        two_site_rdm(np.eye(8) / 8, 2, 2)
    with pytest.raises(DimensionMismatch):
        two_site_rdm(np.eye(8) / 8, 1, 4)


# ---- concurrence ----------------------------------------------------------------


def bell(kind):
    v = {"phi+": [1, 0, 0, 1], "psi-": [0, 1, -1, 0], "psi+": [0, 1, 1, 0]}[kind]
    v = np.array(v, dtype=complex) / np.sqrt(2)
    return np.outer(v, v.conj())


@pytest.mark.parametrize("kind", ["phi+", "psi-", "psi+"])
def test_bell_states_fully_entangled(kind):
    assert wootters_concurrence(bell(kind)) == pytest.approx(1.0, abs=1e-12)


def test_product_state_has_zero_concurrence():
    a = np.array([np.cos(0.3), np.exp(0.4j) * np.sin(0.3)])
    b = np.array([np.cos(1.1), np.exp(-2j) * np.sin(1.1)])
    v = np.kron(a, b)
    assert wootters_concurrence(np.outer(v, v.conj())) == pytest.approx(0.0, abs=1e-7)


@pytest.mark.parametrize("p, expected", [(0.6, 0.4), (1.0, 1.0), (1 / 3, 0.0), (0.2, 0.0)])
def test_werner_states(p, expected):
    rho = p * bell("psi-") + (1 - p) * np.eye(4) / 4
    # closed form max(0, (3p - 1)/2)
    assert wootters_concurrence(rho) == pytest.approx(expected, abs=1e-12)


@settings(max_examples=100)
@given(
    st.floats(0.0, 1.0), st.floats(0.0, 1.0), st.floats(0.0, 1.0), st.floats(0.0, 1.0),
    st.floats(0.0, 1.0), st.floats(0.0, 1.0), st.floats(0.0, 2 * np.pi), st.floats(0.0, 2 * np.pi),
)
def test_x_state_closed_form(a, b, c, d, fz, fw, phz, phw):
    # diag (a, b, c, d) with coherences limited by positivity
    tot = a + b + c + d
    if tot < 1e-3:
        return
    a, b, c, d = (t / tot for t in (a, b, c, d))
    z = fz * np.sqrt(b * c) * np.exp(1j * phz)
    w = fw * np.sqrt(a * d) * np.exp(1j * phw)
    rho = np.array([[a, 0, 0, w], [0, b, z, 0], [0, np.conj(z), c, 0], [np.conj(w), 0, 0, d]])
    expected = 2 * max(0.0, abs(z) - np.sqrt(a * d), abs(w) - np.sqrt(b * c))
    assert wootters_concurrence(rho) == pytest.approx(expected, abs=1e-7)


def test_wootters_input_checks():
    with pytest.raises(InvalidDensityMatrix):
        wootters_concurrence(np.eye(3) / 3)
    with pytest.raises(InvalidDensityMatrix):
        wootters_concurrence(np.eye(4) / 2)
    with pytest.raises(InvalidDensityMatrix):
        wootters_concurrence(np.diag([1.5, -0.5, 0, 0]))


# ---- separable bounds -----------------------------------------------------------


@pytest.mark.parametrize("b_field", [0.3, 1.0])
def test_product_states_respect_separability_bounds(b_field):
    n, j = 6, 1.0
    gen = np.random.default_rng(7)
    h = build_h0(n, j, b_field).matrix
    je = build_je(n, j, b_field).matrix
    z = sum(build_site_operator(n, s, "z").matrix for s in range(1, n + 1))
    hxx = h + b_field * z
    bound = j * (2 * b_field + j) / 2
    for _ in range(200):
        psi = product_state(gen.uniform(0, np.pi, n), gen.uniform(0, 2 * np.pi, n))
        q = np.vdot(psi, je @ psi).real / n
        exx = np.vdot(psi, hxx @ psi).real / n
        assert abs(q) <= bound + 1e-12
        # the XX bond energy per site of any product state is at most J/2
        assert abs(exx) <= j / 2 + 1e-12


# ---- observables bundle --------------------------------------------------------


def test_chain_observables_keys_and_consistency():
    p = ChainParams(1.0, 0.5, 1.0, 1.0)
    obs = chain_observables(p, 6)
    assert set(obs) >= {"log_z", "m", "e", "q", "u", "pairs", "concurrence"}
    assert obs["u"] == pytest.approx(obs["e"] + p.gamma_t * obs["q"], abs=1e-13)
    assert set(obs["pairs"]) == {1, 2}
