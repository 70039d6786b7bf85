import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlkp import _kernels
from nlkp.kpcore import (
    BlowUpError,
    CoefficientPair,
    ModelParams,
    current_grid,
    density_profile,
    lattice_step,
    propagate,
    propagate_cumulative,
    recoil_energy,
    site_basis,
    site_jumps,
    wavefunction_at,
    wavefunction_grid,
)

C0 = CoefficientPair(0.2674 + 0j, -0.2985j)


def test_params_validation():
    with pytest.raises(ValueError):
        ModelParams(-1.0, 0.01)
    with pytest.raises(ValueError):
        ModelParams(1.0, 0.0)
    with pytest.raises(ValueError):
        ModelParams(1.0, 0.01, alpha=float("nan"))
    with pytest.raises(ValueError):
        ModelParams(1.0, 0.01, L_max=0)


def test_linear_free_step_is_identity():
    p = ModelParams(1.0, 0.01, 0.0, 0.0)
    assert lattice_step(p, 3, C0) == C0


def test_linear_step_scales():
    p = ModelParams(1.0, 0.01, 0.0, 0.3)
    s = 0.7 - 1.2j
    a = lattice_step(p, 5, C0 * s)
    b = lattice_step(p, 5, C0)
    assert abs(a.A - s * b.A) < 1e-14 and abs(a.B - s * b.B) < 1e-14


def test_step_matches_kernel():
    p = ModelParams(1.0, 0.01, 0.015, 0.025, L_max=10)
    prop = propagate(p, C0)
    c = C0
    for n in range(1, 10):
        c = lattice_step(p, n, c)
        assert abs(c.A - prop.A[n]) < 1e-14
        assert abs(c.B - prop.B[n]) < 1e-14


def test_step_and_cumulative_forms_agree():
    p = ModelParams(1.0, 0.01, 0.02, 0.415)
    a = propagate(p, CoefficientPair(0.0027 + 0j, -0.2985j))
    b = propagate_cumulative(p, CoefficientPair(0.0027 + 0j, -0.2985j))
    np.testing.assert_allclose(a.A, b.A, rtol=0, atol=1e-12)
    np.testing.assert_allclose(a.psi, b.psi, rtol=0, atol=1e-12)


def test_numpy_fallback_propagation_matches():
    p = ModelParams(1.0, 0.01, 0.015, 0.025)
    prop = propagate(p, C0)
    vp, ph, _, _ = site_basis(p)
    A, B, psi, done = _kernels._propagate_sites(vp, ph, C0.A, C0.B, p.alpha, p.beta, 1e8)
    assert done == p.L_max
    np.testing.assert_allclose(psi, prop.psi, rtol=1e-14)


def test_blowup_reported():
    p = ModelParams(1.0, 0.01, alpha=50.0, beta=5.0)
    prop = propagate(p, CoefficientPair(3.0 + 0j, 3.0j), cap=1e6)
    assert not prop.ok
    assert prop.n_sites < p.L_max
    with pytest.raises(BlowUpError):
        prop.check()


nonlinear = st.fixed_dictionaries(
    dict(
        E=st.floats(0.5, 2.0),
        F=st.floats(0.005, 0.05),
        alpha=st.floats(-0.1, 0.1),
        beta=st.floats(-0.5, 0.5),
        a=st.floats(0.0, 1.0),
        b=st.floats(-1.0, 1.0),
    )
)


@settings(max_examples=20, deadline=None)
@given(nonlinear)
def test_continuity_and_jump_property(d):
    p = ModelParams(d["E"], d["F"], d["alpha"], d["beta"], L_max=30)
    prop = propagate(p, CoefficientPair(complex(d["a"]), complex(0, d["b"])))
    _, cont, jump = site_jumps(p, prop)
    scale = max(1.0, np.max(np.abs(prop.A)), np.max(np.abs(prop.B)))
    assert cont.max(initial=0) < 1e-10 * scale
    assert jump.max(initial=0) < 1e-9 * scale


@settings(max_examples=20, deadline=None)
@given(nonlinear)
def test_current_constant_property(d):
    p = ModelParams(d["E"], d["F"], d["alpha"], d["beta"], L_max=20)
    prop = propagate(p, CoefficientPair(complex(d["a"]), complex(0, d["b"])))
    if not prop.ok:
        return
    psi, psi_x = wavefunction_grid(p, prop, np.linspace(0, prop.n_sites, 20 * 40 + 1))
    j = current_grid(psi, psi_x)
    assert j.max() - j.min() < 1e-8 * max(1.0, np.max(np.abs(psi)) ** 2)


def test_interior_current_closed_form():
    # A real, B imaginary: j = (|A|^2 - gamma^2 |B|^2) / (2 gamma) with gamma = pi / (4 (3F)^{1/3})
    p = ModelParams(1.0, 0.01, 0.015, 0.025)
    prop = propagate(p, C0)
    gamma = np.pi / (4 * (3 * p.F) ** (1 / 3))
    expect = (abs(C0.A) ** 2 - gamma**2 * abs(C0.B) ** 2) / (2 * gamma)
    psi, psi_x = wavefunction_grid(p, prop, np.linspace(0, 60, 601))
    np.testing.assert_allclose(current_grid(psi, psi_x), expect, atol=1e-12)


def test_wavefunction_one_sided_derivative():
    p = ModelParams(1.0, 0.01, 0.015, 0.025)
    prop = propagate(p, C0)
    left = wavefunction_at(p, prop, 4.0, side="left")
    right = wavefunction_at(p, prop, 4.0, side="right")
    g = 2 * (p.beta + p.alpha * abs(left.psi) ** 2) * left.psi
    assert abs(left.psi - right.psi) < 1e-14
    assert abs(right.psi_x - left.psi_x - g) < 1e-14
    psi, psi_x = wavefunction_grid(p, prop, [4.0])
    assert psi_x[0] == pytest.approx(right.psi_x, abs=1e-15)


def test_density_profile_columns():
    p = ModelParams(1.0, 0.01)
    prop = propagate(p, C0)
    rows = density_profile(p, prop, np.linspace(0, 10, 11), R0=0.2822)
    assert rows.shape == (11, 3)
    np.testing.assert_allclose(rows[:, 2], rows[:, 1] / 0.2822**2)
    assert rows[5, 1] == pytest.approx(abs(prop.psi[4]) ** 2, rel=1e-12)


def test_recoil_energy_value():
    # hbar^2 / (0.067 m_e (2 nm)^2), evaluated independently in eV
    hbar_ev_s = 6.582119569e-16
    me_ev = 0.51099895000e6 / (2.99792458e8) ** 2
    expect = hbar_ev_s**2 / (0.067 * me_ev * (2e-9) ** 2)
    assert recoil_energy() == pytest.approx(expect, rel=1e-8)
    assert recoil_energy() == pytest.approx(0.2843, abs=1e-4)
