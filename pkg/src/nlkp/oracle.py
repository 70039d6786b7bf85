"""Brute-force check of the exact solution.

Integrates ``psi'' = -2(E + F x) psi`` with fixed-step RK4 and applies
``psi_x += 2(beta + alpha |psi|^2) psi`` at every interior site. Nothing
here calls into the special-function code except to build the initial
data at ``x = 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .boundary import MatchResult
from .kpcore import (
    BLOWUP_CAP,
    BlowUpError,
    CoefficientPair,
    ModelParams,
    current_grid,
    propagate,
    site_jumps,
    wavefunction_grid,
)
from .specfun import basis_at, wronskian_residual


class OracleError(RuntimeError):
    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"[{path}] {message}")


@dataclass(frozen=True)
class IntegrationConfig:
    step: float = 1e-3
    cap: float = BLOWUP_CAP

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("step must be positive")
        if abs(self.substeps * self.step - 1.0) > 1e-12:
            raise ValueError(f"step {self.step} does not divide the unit cell")

    @property
    def substeps(self) -> int:
        return max(1, int(round(1.0 / self.step)))


@dataclass
class Trajectory:
    x: np.ndarray
    psi: np.ndarray
    psi_x: np.ndarray
    blowup: bool = False


def integrate_direct(
    params: ModelParams,
    psi0: complex,
    dpsi0: complex,
    config: IntegrationConfig = IntegrationConfig(),
    L: int | None = None,
) -> Trajectory:
    """RK4 trajectory on ``[0, L]`` (default ``params.L_max``).

    At interior sites the stored ``psi_x`` is the right limit.
    """
    L = params.L_max if L is None else int(L)
    if not (math.isfinite(abs(psi0)) and math.isfinite(abs(dpsi0))):
        raise ValueError("initial values must be finite")
    xs, ps, ds, n = _kernels.rk4_lattice(
        float(params.E), float(params.F), float(params.alpha), float(params.beta),
        complex(psi0), complex(dpsi0), config.substeps, L, float(config.cap),
    )
    return Trajectory(xs[:n], ps[:n], ds[:n], blowup=n < len(xs))


def initial_values(params: ModelParams, coeff: CoefficientPair) -> tuple[complex, complex]:
    bv = basis_at(params, 0.0)
    return (
        coeff.A * bv.varphi + coeff.B * bv.phi,
        coeff.A * bv.varphi_x + coeff.B * bv.phi_x,
    )


@dataclass(frozen=True)
class OracleComparison:
    max_dpsi: float
    max_dpsi_x: float
    current_spread: float  # max - min of Im(conj psi psi_x) along the oracle path

    @property
    def deviation(self) -> float:
        return max(self.max_dpsi, self.max_dpsi_x)


def compare_exact_oracle(
    params: ModelParams,
    match: MatchResult | CoefficientPair,
    L: int,
    config: IntegrationConfig = IntegrationConfig(),
) -> OracleComparison:
    """Max pointwise ``|dpsi|`` and ``|dpsi_x|`` between both paths on ``[0, L]``."""
    coeff = match.coeff1 if isinstance(match, MatchResult) else match
    p = ModelParams(params.E, params.F, params.alpha, params.beta, int(L))
    prop = propagate(p, coeff)
    if not prop.ok:
        raise OracleError("exact", f"blow-up after site {prop.blowup_site}")
    psi0, dpsi0 = initial_values(p, coeff)
    traj = integrate_direct(p, psi0, dpsi0, config, L)
    if traj.blowup:
        raise OracleError("oracle", f"blow-up near x = {traj.x[-1]:.3f}")
    psi, psi_x = wavefunction_grid(p, prop, traj.x)
    j = (np.conj(traj.psi) * traj.psi_x).imag
    return OracleComparison(
        float(np.max(np.abs(psi - traj.psi))),
        float(np.max(np.abs(psi_x - traj.psi_x))),
        float(j.max() - j.min()),
    )


def convergence_study(params, match, L: int, steps=(1 / 8, 1 / 16, 1 / 32)):
    """Deviations for successive steps and the observed orders between them."""
    devs = [compare_exact_oracle(params, match, L, IntegrationConfig(h)).max_dpsi for h in steps]
    orders = [
        math.log(devs[i] / devs[i + 1]) / math.log(steps[i] / steps[i + 1])
        for i in range(len(devs) - 1)
    ]
    return devs, orders


def linear_superposition_check(
    params: ModelParams,
    c1: CoefficientPair,
    c2: CoefficientPair,
    w1: complex,
    w2: complex,
) -> float:
    """Relative residual of ``P(w1 c1 + w2 c2) - w1 P(c1) - w2 P(c2)``.

    Zero up to rounding for ``alpha = 0``; measurably nonzero otherwise.
    """
    mixed = propagate(params, w1 * c1 + w2 * c2)
    p1 = propagate(params, c1)
    p2 = propagate(params, c2)
    for prop in (mixed, p1, p2):
        if not prop.ok:
            raise BlowUpError(prop.blowup_site)
    dA = mixed.A - (w1 * p1.A + w2 * p2.A)
    dB = mixed.B - (w1 * p1.B + w2 * p2.B)
    scale = max(np.max(np.abs(mixed.A)), np.max(np.abs(mixed.B)), 1e-300)
    return float(max(np.max(np.abs(dA)), np.max(np.abs(dB))) / scale)


TOLERANCES = {
    "wronskian": 1e-9,
    "continuity": 1e-10,
    "jump": 1e-9,
    "current": 1e-8,
    "oracle": 1e-6,
}


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    tol: float

    @property
    def passed(self) -> bool:
        # NaN never passes
        return bool(self.value <= self.tol)

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name:<11} {self.value:.3e} (tol {self.tol:.0e})"


def invariant_checks(
    params: ModelParams,
    coeff: CoefficientPair,
    L: int,
    config: IntegrationConfig = IntegrationConfig(),
    points_per_site: int = 50,
    tolerances: dict | None = None,
) -> list[Check]:
    """Wronskian, continuity, jump, current constancy and oracle agreement on ``[0, L]``."""
    tol = dict(TOLERANCES, **(tolerances or {}))
    p = ModelParams(params.E, params.F, params.alpha, params.beta, int(L))
    prop = propagate(p, coeff)
    if not prop.ok:
        raise OracleError("exact", f"blow-up after site {prop.blowup_site}")
    xs = np.linspace(0.0, float(L), int(L) * points_per_site + 1)
    _, cont, jump = site_jumps(p, prop)
    psi, psi_x = wavefunction_grid(p, prop, xs)
    j = current_grid(psi, psi_x)
    cmp_ = compare_exact_oracle(p, coeff, L, config)
    return [
        Check("wronskian", wronskian_residual(p, xs), tol["wronskian"]),
        Check("continuity", float(cont.max(initial=0.0)), tol["continuity"]),
        Check("jump", float(jump.max(initial=0.0)), tol["jump"]),
        Check("current", float(j.max() - j.min()), tol["current"]),
        Check("oracle", cmp_.max_dpsi, tol["oracle"]),
    ]
