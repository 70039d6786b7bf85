"""Model parameters and propagation of the piecewise-exact solution.

On segment ``n`` (``[n-1, n)`` for ``n >= 2``, ``[0, 1)`` for ``n = 1``)
the wavefunction is ``A_n varphi(x) + B_n phi(x)``. Crossing the delta at
site ``n`` updates the coefficients by

    g       = 2 (beta + alpha |psi(n)|^2) psi(n)
    A_{n+1} = A_n - phi(n) g
    B_{n+1} = B_n + varphi(n) g

which keeps psi continuous and makes psi_x jump by exactly ``g``
(unit Wronskian).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .specfun import basis_at, basis_grid

BLOWUP_CAP = 1e8

# CODATA 2018
HBAR = 1.054571817e-34  # J s
ELECTRON_MASS = 9.1093837015e-31  # kg
ELEMENTARY_CHARGE = 1.602176634e-19  # C


class BlowUpError(ArithmeticError):
    """Coefficient magnitude exceeded the cap during propagation."""

    def __init__(self, site: int, message: str | None = None):
        self.site = site
        super().__init__(message or f"coefficients exceeded cap after site {site}")


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless system parameters.

    Energies are in recoil units ``E_r = hbar^2 / (m lambda^2)``, lengths in
    lattice spacings. ``alpha = 0`` is the linear Kronig-Penney lattice.
    """

    E: float
    F: float
    alpha: float = 0.0
    beta: float = 0.0
    L_max: int = 60

    def __post_init__(self):
        for name in ("E", "F", "alpha", "beta"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
        if not self.E > 0:
            raise ValueError(f"E must be positive, got {self.E!r}")
        if not self.F > 0:
            raise ValueError(f"F must be positive, got {self.F!r}")
        if int(self.L_max) != self.L_max or self.L_max < 1:
            raise ValueError(f"L_max must be a positive integer, got {self.L_max!r}")
        object.__setattr__(self, "L_max", int(self.L_max))


@dataclass(frozen=True)
class CoefficientPair:
    A: complex
    B: complex

    def __mul__(self, s: complex) -> "CoefficientPair":
        return CoefficientPair(self.A * s, self.B * s)

    __rmul__ = __mul__

    def __add__(self, other: "CoefficientPair") -> "CoefficientPair":
        return CoefficientPair(self.A + other.A, self.B + other.B)


@dataclass(frozen=True)
class WaveSample:
    x: float
    psi: complex
    psi_x: complex


@dataclass
class Propagation:
    """Coefficients ``A_n, B_n`` and ``psi(n)`` for ``n = 1 .. n_sites``.

    ``blowup_site`` is set when propagation stopped early; the arrays then
    hold only the sites reached before the cap was exceeded.
    """

    params: ModelParams
    A: np.ndarray
    B: np.ndarray
    psi: np.ndarray
    blowup_site: int | None = None
    _pairs: list = field(default=None, repr=False)

    @property
    def n_sites(self) -> int:
        return len(self.A)

    @property
    def ok(self) -> bool:
        return self.blowup_site is None

    def check(self) -> "Propagation":
        if self.blowup_site is not None:
            raise BlowUpError(self.blowup_site)
        return self

    def coefficients(self) -> list[CoefficientPair]:
        if self._pairs is None:
            self._pairs = [CoefficientPair(complex(a), complex(b)) for a, b in zip(self.A, self.B)]
        return self._pairs

    def coeff(self, n: int) -> CoefficientPair:
        return CoefficientPair(complex(self.A[n - 1]), complex(self.B[n - 1]))

    def density_at_sites(self) -> np.ndarray:
        return np.abs(self.psi) ** 2


def _kick(params: ModelParams, psi: complex) -> complex:
    return 2.0 * (params.beta + params.alpha * abs(psi) ** 2) * psi


def lattice_step(
    params: ModelParams, n: int, coeff: CoefficientPair, cap: float = BLOWUP_CAP
) -> CoefficientPair:
    """Map ``(A_n, B_n)`` across the delta at site ``n``."""
    if not 1 <= n <= params.L_max - 1:
        raise ValueError(f"site index {n} outside 1..{params.L_max - 1}")
    bv = basis_at(params, float(n))
    psi = coeff.A * bv.varphi + coeff.B * bv.phi
    g = _kick(params, psi)
    out = CoefficientPair(coeff.A - bv.phi * g, coeff.B + bv.varphi * g)
    if not (abs(out.A) <= cap and abs(out.B) <= cap):
        raise BlowUpError(n)
    return out


def site_basis(params: ModelParams, n_sites: int | None = None):
    """Basis values at the sites ``1 .. n_sites``."""
    n_sites = params.L_max if n_sites is None else n_sites
    sites = np.arange(1, n_sites + 1, dtype=np.float64)
    return basis_grid(params.E, params.F, sites)


def propagate(
    params: ModelParams, initial: CoefficientPair, cap: float = BLOWUP_CAP
) -> Propagation:
    a1, b1 = complex(initial.A), complex(initial.B)
    if not (math.isfinite(abs(a1)) and math.isfinite(abs(b1))):
        raise ValueError("initial coefficients must be finite")
    vp, ph, _, _ = site_basis(params)
    A, B, psi, done = _kernels.propagate_sites(
        vp, ph, a1, b1, float(params.alpha), float(params.beta), float(cap)
    )
    blow = None if done == params.L_max else done
    return Propagation(params, A[:done].copy(), B[:done].copy(), psi[:done].copy(), blow)


def propagate_cumulative(params: ModelParams, initial: CoefficientPair) -> Propagation:
    """Same result as :func:`propagate`, via the closed cumulative sums.

    ``A_n = A_1 - sum_{j<n} phi(j) g_j`` and ``B_n = B_1 + sum_{j<n} varphi(j) g_j``
    with each sum recomputed from scratch. Kept as an independent check of
    the step form.
    """
    vp, ph, _, _ = site_basis(params)
    a1, b1 = complex(initial.A), complex(initial.B)
    kicks: list[complex] = []
    L = params.L_max
    A = np.empty(L, dtype=np.complex128)
    B = np.empty(L, dtype=np.complex128)
    psi = np.empty(L, dtype=np.complex128)
    for n in range(1, L + 1):
        A[n - 1] = a1 - sum(ph[j] * kicks[j] for j in range(n - 1))
        B[n - 1] = b1 + sum(vp[j] * kicks[j] for j in range(n - 1))
        psi[n - 1] = A[n - 1] * vp[n - 1] + B[n - 1] * ph[n - 1]
        kicks.append(_kick(params, complex(psi[n - 1])))
    return Propagation(params, A, B, psi)


def _segment(x: float, n_sites: int, side: str) -> int:
    if x < 1.0:
        return 1
    n = int(math.floor(x)) + 1
    if side == "left" and x == math.floor(x):
        n -= 1
    return min(n, n_sites)


def wavefunction_at(
    params: ModelParams, prop: Propagation, x: float, side: str = "right"
) -> WaveSample:
    """Evaluate psi and psi_x at ``x`` in ``[0, n_sites]``.

    At an integer site ``side`` picks the one-sided limit of ``psi_x``;
    ``x = n_sites`` always uses the last segment.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if not 0.0 <= x <= prop.n_sites:
        raise ValueError(f"x = {x} outside [0, {prop.n_sites}]")
    n = _segment(x, prop.n_sites, side)
    bv = basis_at(params, x)
    a, b = prop.A[n - 1], prop.B[n - 1]
    return WaveSample(
        float(x),
        complex(a * bv.varphi + b * bv.phi),
        complex(a * bv.varphi_x + b * bv.phi_x),
    )


def wavefunction_grid(
    params: ModelParams, prop: Propagation, xs
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized :func:`wavefunction_at` (right limits at interior sites)."""
    xs = np.asarray(xs, dtype=np.float64)
    if xs.size and (xs.min() < 0.0 or xs.max() > prop.n_sites):
        raise ValueError(f"grid outside [0, {prop.n_sites}]")
    seg = np.where(xs < 1.0, 1, np.floor(xs).astype(np.int64) + 1)
    seg = np.minimum(seg, prop.n_sites)
    vp, ph, vpx, phx = basis_grid(params.E, params.F, xs)
    a = prop.A[seg - 1]
    b = prop.B[seg - 1]
    return a * vp + b * ph, a * vpx + b * phx


def site_jumps(params: ModelParams, prop: Propagation) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Continuity and derivative-jump residuals at interior sites.

    Returns ``(sites, |psi(n+) - psi(n-)|, |psi_x(n+) - psi_x(n-) - g_n|)``.
    """
    n_int = prop.n_sites - 1
    if n_int < 1:
        empty = np.empty(0)
        return empty.astype(np.int64), empty, empty
    sites = np.arange(1, n_int + 1)
    vp, ph, vpx, phx = basis_grid(params.E, params.F, sites.astype(np.float64))
    Al, Bl = prop.A[:n_int], prop.B[:n_int]
    Ar, Br = prop.A[1 : n_int + 1], prop.B[1 : n_int + 1]
    left = Al * vp + Bl * ph
    right = Ar * vp + Br * ph
    dleft = Al * vpx + Bl * phx
    dright = Ar * vpx + Br * phx
    g = 2.0 * (params.beta + params.alpha * np.abs(left) ** 2) * left
    return sites, np.abs(right - left), np.abs(dright - dleft - g)


def probability_current(sample: WaveSample) -> float:
    """``Im(conj(psi) psi_x)`` in recoil-frequency units."""
    return float((np.conj(sample.psi) * sample.psi_x).imag)


def current_grid(psi: np.ndarray, psi_x: np.ndarray) -> np.ndarray:
    return (np.conj(psi) * psi_x).imag


def density_profile(
    params: ModelParams,
    prop: Propagation,
    grid,
    R0: float | None = None,
    boundary=None,
) -> np.ndarray:
    """Plot-ready rows ``(x, |psi|^2, |psi|^2 / R0^2)``.

    With ``boundary`` (a :class:`nlkp.boundary.BoundaryData` carrying ``L``
    and ``b``) points with ``x < 0`` use the incident + reflected waves and
    points with ``x > L`` the transmitted wave; otherwise the grid must lie
    in ``[0, n_sites]``.
    """
    xs = np.asarray(grid, dtype=np.float64)
    dens = np.empty(xs.shape, dtype=np.float64)
    if boundary is not None:
        R0 = boundary.R0
        L = boundary.L if boundary.L is not None else prop.n_sites
        k, a = boundary.k, boundary.a
        left = xs < 0
        right = xs > L
        mid = ~(left | right)
        xl = xs[left]
        dens[left] = np.abs(
            boundary.R0 * np.exp(1j * k * (xl + a)) + boundary.R1 * np.exp(-1j * k * (xl + a))
        ) ** 2
        dens[right] = boundary.T**2
    else:
        mid = np.ones(xs.shape, dtype=bool)
    if mid.any():
        psi, _ = wavefunction_grid(params, prop, xs[mid])
        dens[mid] = np.abs(psi) ** 2
    rel = dens / R0**2 if R0 else np.full(xs.shape, np.nan)
    return np.column_stack([xs, dens, rel])


def recoil_energy(lattice_spacing: float = 2e-9, effective_mass: float = 0.067) -> float:
    """``hbar^2 / (m lambda^2)`` in eV.

    ``lattice_spacing`` in metres, ``effective_mass`` in units of the
    electron rest mass.
    """
    if not (lattice_spacing > 0 and effective_mass > 0):
        raise ValueError("lattice spacing and mass must be positive")
    m = effective_mass * ELECTRON_MASS
    return HBAR**2 / (m * lattice_spacing**2) / ELEMENTARY_CHARGE
