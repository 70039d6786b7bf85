"""Inverse transmission problem.

Left of the lattice ``psi = R0 e^{ik(x+a)} + R1 e^{-ik(x+a)}``, right of it
``psi = T e^{ik(x+b)}``. Incident and reflected amplitudes are prescribed;
the left boundary fixes ``A_1``, ``B_1`` and ``a``, and the admissible
lengths ``L`` are the sites where ``|psi(L)| = T``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .kpcore import CoefficientPair, ModelParams, Propagation, propagate
from .specfun import basis_at

#: Relative tolerance on ``| |psi(L)|^2 - T^2 |``. Calibrated on the
#: general-transmission reference case, see README.
EPS_MATCH = 0.03
#: Absolute floor for the tolerance scale when ``T^2`` is (nearly) zero.
FLOOR_ABS = 1e-8


@dataclass(frozen=True)
class MatchResult:
    coeff1: CoefficientPair
    branch: str  # "positive", "negative" or "degenerate" sign of Arg varphi(0)
    a: float
    arg_varphi0: float


@dataclass(frozen=True)
class BoundaryData:
    R0: float
    R1: float
    k: float
    a: float
    T: float
    t: float
    b: float | None = None
    L: int | None = None


def transmission_coefficient(R0: float, R1: float) -> float:
    """``t = T^2 / R0^2 = 1 - R1^2 / R0^2``."""
    if not R0 > 0:
        raise ValueError(f"R0 must be positive, got {R0!r}")
    if R1 < 0:
        raise ValueError(f"R1 must be non-negative, got {R1!r}")
    if R1 > R0:
        raise ValueError(f"R1 = {R1} exceeds R0 = {R0}; probability not conserved")
    return 1.0 - (R1 / R0) ** 2


def transmitted_amplitude(R0: float, R1: float) -> float:
    transmission_coefficient(R0, R1)
    return math.sqrt(R0 * R0 - R1 * R1)


def conductance_landauer(t: float) -> float:
    """Relative conductance ``t / (1 - t)``; ``inf`` at total transmission."""
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t must lie in [0, 1], got {t!r}")
    if t == 1.0:
        return math.inf
    return t / (1.0 - t)


def match_left(params: ModelParams, R0: float, R1: float, k: float) -> MatchResult:
    """Solve ``R0 e^{ika} + R1 e^{-ika} = A_1 varphi(0) + B_1 phi(0)``.

    ``A_1`` is taken real positive and ``B_1`` negative imaginary. Because
    ``-i phi(0)`` has argument ``-Arg varphi(0)``, the sign of
    ``Arg varphi(0)`` decides whether ``A_1`` carries the incident or the
    reflected wave.
    """
    # R1 == R0 (t = 0) is allowed so spectra can include the zero-transmission row
    if not (R0 > 0 and R0 >= R1 >= 0):
        raise ValueError(f"need R0 >= R1 >= 0 and R0 > 0, got R0={R0!r}, R1={R1!r}")
    if not k > 0:
        raise ValueError(f"k must be positive, got {k!r}")
    bv = basis_at(params, 0.0)
    arg = math.atan2(bv.varphi.imag, bv.varphi.real)
    mod_vp = abs(bv.varphi)
    mod_ph = abs(bv.phi)
    if arg > 0:
        branch, a, A1, B1 = "positive", arg / k, R0 / mod_vp, R1 / mod_ph
    elif arg < 0:
        branch, a, A1, B1 = "negative", -arg / k, R1 / mod_vp, R0 / mod_ph
    else:
        # continuity from arg > 0
        branch, a, A1, B1 = "degenerate", 0.0, R0 / mod_vp, R1 / mod_ph
    return MatchResult(CoefficientPair(complex(A1, 0.0), complex(0.0, -B1)), branch, a, arg)


def amplitude_residuals(prop: Propagation, T: float, floor_abs: float = FLOOR_ABS) -> np.ndarray:
    """``(|psi(n)|^2 - T^2) / max(T^2, floor_abs)`` for every propagated site."""
    T2 = T * T
    return (np.abs(prop.psi) ** 2 - T2) / max(T2, floor_abs)


def scan_right(
    params: ModelParams,
    match: MatchResult,
    T: float,
    L_max: int | None = None,
    eps_match: float = EPS_MATCH,
    floor_abs: float = FLOOR_ABS,
    prop: Propagation | None = None,
) -> list[int]:
    """Sites ``L <= L_max`` with ``| |psi(L)|^2 - T^2 | <= eps * max(T^2, floor)``.

    An empty list is a legitimate outcome. Raises
    :class:`nlkp.kpcore.BlowUpError` if propagation diverges first.
    """
    if L_max is None:
        L_max = params.L_max
    if L_max < 1:
        raise ValueError("L_max must be >= 1")
    if prop is None or prop.n_sites < L_max and prop.ok:
        if params.L_max != L_max:
            params = ModelParams(params.E, params.F, params.alpha, params.beta, L_max)
        prop = propagate(params, match.coeff1)
    prop.check()
    res = amplitude_residuals(prop, T, floor_abs)[:L_max]
    return [int(n) for n in np.nonzero(np.abs(res) <= eps_match)[0] + 1]


def phase_b(prop: Propagation, L: int, k: float) -> float:
    """Right phase ``b = Arg(psi(L)) / k - L`` with Arg in (-pi, pi]."""
    p = complex(prop.psi[L - 1])
    arg = math.atan2(p.imag, p.real)
    if arg == -math.pi:
        arg = math.pi
    return arg / k - L


@dataclass
class CaseResult:
    params: ModelParams
    R0: float
    R1: float
    k: float
    match: MatchResult
    prop: Propagation
    T: float
    t: float
    lengths: list[int]
    phases: list[float]
    residuals: np.ndarray

    def boundary(self, L: int | None = None) -> BoundaryData:
        if L is None and self.lengths:
            L = self.lengths[0]
        b = phase_b(self.prop, L, self.k) if L is not None else None
        return BoundaryData(self.R0, self.R1, self.k, self.match.a, self.T, self.t, b, L)


def solve_case(
    params: ModelParams,
    R0: float,
    R1: float,
    k: float,
    eps_match: float = EPS_MATCH,
    floor_abs: float = FLOOR_ABS,
) -> CaseResult:
    """Left matching, propagation, right scan and phases in one call."""
    t = transmission_coefficient(R0, R1)
    T = transmitted_amplitude(R0, R1)
    match = match_left(params, R0, R1, k)
    prop = propagate(params, match.coeff1)
    lengths = scan_right(params, match, T, params.L_max, eps_match, floor_abs, prop=prop)
    phases = [phase_b(prop, L, k) for L in lengths]
    return CaseResult(
        params, R0, R1, k, match, prop, T, t, lengths, phases,
        amplitude_residuals(prop, T, floor_abs),
    )
