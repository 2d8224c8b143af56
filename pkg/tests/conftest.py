import numpy as np
import pytest

from ssw import ChainParams, QuadratureConfig

# tight enough that finite differences of ln Z are not swamped by quadrature noise
TIGHT = QuadratureConfig(tolerance=1e-14)


@pytest.fixture
def ref_params():
    """The reference point used throughout: J=1, B=0.5, T=1, gamma=1."""
    return ChainParams(j_coupling=1.0, b_field=0.5, temperature=1.0, gamma=1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


def product_state(thetas, phis):
    """Pure product state with site k pointing along (theta_k, phi_k); site 1 first."""
    psi = np.array([1.0 + 0j])
    for th, ph in zip(thetas, phis):
        psi = np.kron(psi, np.array([np.cos(th / 2), np.exp(1j * ph) * np.sin(th / 2)]))
    return psi


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, detail) in results.items():
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {name}: {detail}")
