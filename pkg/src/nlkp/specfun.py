"""Field-region basis functions.

Between lattice sites the wavefunction obeys ``psi'' = -2(E + F x) psi``.
With ``zeta = (2F)^(1/3) (E/F + x)`` and ``z = (2/3) zeta^(3/2)`` two
independent solutions are

    varphi(x) = z^(1/3) H1_{1/3}(z)
    phi(x)    = i pi / (4 (3F)^(1/3)) * z^(1/3) H2_{1/3}(z)

normalized so that ``varphi * phi_x - phi * varphi_x == 1``.
Derivatives use ``d/dz [z^nu H_nu(z)] = z^nu H_{nu-1}(z)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _kernels

#: z-interval on which the Hankel evaluation is certified to ~5e-12
#: relative error (checked against mpmath in the test suite).
CERTIFIED_Z = (1e-3, 1e6)

TOL_WRONSKIAN = 1e-9


class AccuracyError(ValueError):
    """Requested argument lies outside the certified evaluation range."""


@dataclass(frozen=True)
class ScaledCoordinate:
    zeta: float
    z: float
    dz_dx: float


@dataclass(frozen=True)
class BasisValue:
    varphi: complex
    phi: complex
    varphi_x: complex
    phi_x: complex

    @property
    def wronskian(self) -> complex:
        return self.varphi * self.phi_x - self.phi * self.varphi_x


def normalization(F: float) -> complex:
    """Constant multiplying the second-kind solution."""
    return 1j * math.pi / (4.0 * (3.0 * F) ** (1.0 / 3.0))


def _check_domain(E: float, F: float, x) -> np.ndarray:
    if not F > 0:
        raise ValueError(f"field F must be positive, got {F!r}")
    shifted = E / F + np.asarray(x, dtype=np.float64)
    if np.any(~(shifted > 0)):
        raise ValueError("E/F + x must be positive (classically allowed region)")
    return shifted


def _z_of(E: float, F: float, x) -> tuple[np.ndarray, np.ndarray]:
    shifted = _check_domain(E, F, x)
    zeta = (2.0 * F) ** (1.0 / 3.0) * shifted
    z = (2.0 / 3.0) * zeta**1.5
    return zeta, z


def _check_certified(z: np.ndarray) -> None:
    lo, hi = CERTIFIED_Z
    bad = (z < lo) | (z > hi)
    if np.any(bad):
        zb = np.asarray(z)[bad].ravel()[0]
        raise AccuracyError(f"z = {zb:.6g} outside certified range [{lo:g}, {hi:g}]")


def scaled_coords(params, x: float) -> ScaledCoordinate:
    zeta, z = _z_of(params.E, params.F, x)
    zeta = float(zeta)
    z = float(z)
    return ScaledCoordinate(zeta, z, (3.0 * params.F) ** (1.0 / 3.0) * z ** (1.0 / 3.0))


def basis_grid(
    E: float, F: float, x
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized basis evaluation.

    Returns ``(varphi, phi, varphi_x, phi_x)`` as complex arrays with the
    shape of ``x``.
    """
    x = np.asarray(x, dtype=np.float64)
    _, z = _z_of(E, F, x)
    _check_certified(z)
    flat = z.ravel()
    h13, hm23 = _kernels.hankel_pairs(flat)
    z13 = np.cbrt(flat)
    c = normalization(F)
    vp = z13 * h13
    vpx = np.cbrt(3.0 * F) * z13 * z13 * hm23
    # H2 is the complex conjugate of H1 for real argument
    ph = c * np.conj(vp)
    phx = c * np.conj(vpx)
    shape = x.shape
    return vp.reshape(shape), ph.reshape(shape), vpx.reshape(shape), phx.reshape(shape)


def basis_at(params, x: float) -> BasisValue:
    vp, ph, vpx, phx = basis_grid(params.E, params.F, np.array([x], dtype=np.float64))
    return BasisValue(complex(vp[0]), complex(ph[0]), complex(vpx[0]), complex(phx[0]))


def wronskian_residual(params, x_samples: Iterable[float]) -> float:
    """Max of ``|varphi phi_x - phi varphi_x - 1|`` over the samples."""
    xs = np.asarray(list(x_samples), dtype=np.float64)
    if xs.size == 0:
        raise ValueError("need at least one sample position")
    vp, ph, vpx, phx = basis_grid(params.E, params.F, xs)
    return float(np.max(np.abs(vp * phx - ph * vpx - 1.0)))
