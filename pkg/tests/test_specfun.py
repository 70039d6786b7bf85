import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nlkp import _kernels
from nlkp.kpcore import ModelParams
from nlkp.specfun import (
    AccuracyError,
    basis_at,
    basis_grid,
    normalization,
    scaled_coords,
    wronskian_residual,
)

mpmath.mp.dps = 30


def mp_h1(nu, z):
    return complex(mpmath.hankel1(nu, z))


Z_SAMPLES = [1e-3, 0.01, 0.3, 1.0, 2.5, 7.0, 11.9, 12.1, 14.0, 20.0, 94.28, 242.42, 1e3, 1e5, 1e6]


@pytest.mark.parametrize("z", Z_SAMPLES)
def test_hankel_pair_against_mpmath(z):
    h13, hm23 = _kernels.hankel_pairs(np.array([z]))
    for got, nu in ((h13[0], 1 / 3), (hm23[0], -2 / 3)):
        ref = mp_h1(nu, z)
        assert abs(got - ref) <= 1e-11 * abs(ref)


def test_numpy_fallback_matches_compiled():
    z = np.geomspace(1e-3, 1e6, 400)
    a, b = _kernels.hankel1_pair_array(z)
    c, d = _kernels.hankel1_pair_numpy(z)
    # summation order differs, so agreement is at the certified accuracy
    assert np.max(np.abs(a - c) / np.abs(a)) < 5e-12
    assert np.max(np.abs(b - d) / np.abs(b)) < 5e-12


def test_crossover_is_continuous():
    lo, hi = np.nextafter(_kernels.Z_CROSSOVER, 0), _kernels.Z_CROSSOVER
    a, _ = _kernels.hankel_pairs(np.array([lo, hi]))
    assert abs(a[0] - a[1]) < 1e-11 * abs(a[0])


def test_scaled_coordinate_values():
    # z = (2/3) (2F)^{1/2} (E/F + x)^{3/2}
    p = ModelParams(1.0, 0.01)
    assert scaled_coords(p, 0.0).z == pytest.approx(94.2809, abs=1e-4)
    p2 = ModelParams(2.0, 0.011)
    assert scaled_coords(p2, 0.0).z == pytest.approx(242.4242, abs=1e-4)
    sc = scaled_coords(p, 3.0)
    assert sc.dz_dx == pytest.approx((3 * 0.01 * sc.z) ** (1 / 3), rel=1e-14)


def test_basis_moduli_at_origin():
    bv = basis_at(ModelParams(1.0, 0.01), 0.0)
    assert abs(bv.varphi) == pytest.approx(0.3740, abs=1e-4)
    assert abs(bv.phi) == pytest.approx(0.9453, abs=1e-4)


def test_basis_against_mpmath_definition():
    E, F, x = 1.3, 0.02, 4.5
    zeta = (2 * F) ** (1 / 3) * (E / F + x)
    z = mpmath.mpf(2) / 3 * mpmath.mpf(zeta) ** 1.5
    vp = complex(z ** (mpmath.mpf(1) / 3) * mpmath.hankel1(mpmath.mpf(1) / 3, z))
    c = 1j * math.pi / (4 * (3 * F) ** (1 / 3))
    ph = c * complex(z ** (mpmath.mpf(1) / 3) * mpmath.hankel2(mpmath.mpf(1) / 3, z))
    bv = basis_at(ModelParams(E, F), x)
    assert abs(bv.varphi - vp) < 1e-12 * abs(vp)
    assert abs(bv.phi - ph) < 1e-12 * abs(ph)


def test_phi_is_scaled_conjugate():
    E, F = 1.0, 0.01
    xs = np.linspace(0, 60, 121)
    vp, ph, _, _ = basis_grid(E, F, xs)
    np.testing.assert_allclose(ph, normalization(F) * np.conj(vp), rtol=1e-14)
    # hence arg(-i phi) = -arg(varphi)
    for v, p in zip(vp, ph):
        assert cmath.phase(-1j * p) == pytest.approx(-cmath.phase(v), abs=1e-12)


@pytest.mark.parametrize("x", [0.0, 7.3, 33.0, 59.5])
def test_derivative_by_finite_difference(x):
    p = ModelParams(1.0, 0.01)
    errs = []
    for h in (1e-2, 5e-3):
        f = [basis_at(p, x + s * h) for s in (-2, -1, 1, 2)]
        for attr, dattr in (("varphi", "varphi_x"), ("phi", "phi_x")):
            v = [getattr(b, attr) for b in f]
            fd = (v[0] - 8 * v[1] + 8 * v[2] - v[3]) / (12 * h)
            errs.append(abs(fd - getattr(basis_at(p, x), dattr)))
    # fourth-order stencil: halving h cuts the error by ~16
    assert max(errs) < 1e-7
    assert errs[2] < errs[0] / 8


def test_ode_residual():
    # psi'' = -2(E + F x) psi checked with a second difference
    E, F, h = 0.8, 0.03, 1e-3
    xs = np.array([5.0 - h, 5.0, 5.0 + h])
    vp, ph, _, _ = basis_grid(E, F, xs)
    for y in (vp, ph):
        d2 = (y[0] - 2 * y[1] + y[2]) / h**2
        assert abs(d2 + 2 * (E + F * 5.0) * y[1]) < 1e-5 * abs(y[1])


@settings(max_examples=60, deadline=None)
@given(
    E=st.floats(0.3, 3.0),
    F=st.floats(0.005, 0.05),
    x=st.floats(0.0, 60.0),
)
def test_wronskian_property(E, F, x):
    bv = basis_at(ModelParams(E, F), x)
    assert abs(bv.wronskian - 1.0) < 1e-9


def test_wronskian_residual_grid():
    p = ModelParams(1.0, 0.01)
    assert wronskian_residual(p, np.linspace(0, 60, 601)) < 1e-12


def test_domain_errors():
    with pytest.raises(ValueError):
        basis_grid(1.0, 0.0, np.array([0.0]))
    with pytest.raises(ValueError):
        basis_grid(1.0, 0.01, np.array([-200.0]))
    # E/F + x = 1e-5 gives z far below the certified range
    with pytest.raises(AccuracyError):
        basis_grid(1e-7, 0.01, np.array([0.0]))
