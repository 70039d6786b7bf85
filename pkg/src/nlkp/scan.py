"""Transmission and energy spectra against sample length."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .boundary import EPS_MATCH, FLOOR_ABS, solve_case
from .kpcore import BlowUpError, ModelParams

DEFAULT_T_GRID = tuple(round(0.1 * i, 10) for i in range(11))
DEFAULT_E_GRID = tuple(round(0.5 + 0.1 * i, 10) for i in range(11))


@dataclass
class SpectrumTable:
    """Admissible lengths for each swept value, plus the transposed map.

    ``residuals[value]`` holds the relative amplitude mismatch at every
    site ``1..L_max`` so that near misses can be reported.
    """

    axis: str
    rows: list[tuple[float, list[int]]]
    inverse: list[tuple[int, list[float]]] = field(default_factory=list)
    residuals: dict[float, np.ndarray] = field(default_factory=dict)
    failures: dict[float, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.inverse:
            self.inverse = invert_rows(self.rows)

    def pairs(self) -> set[tuple[float, int]]:
        return {(v, L) for v, Ls in self.rows for L in Ls}


def invert_rows(rows) -> list[tuple[int, list[float]]]:
    inv: dict[int, list[float]] = {}
    for value, lengths in rows:
        for L in lengths:
            inv.setdefault(L, []).append(value)
    return [(L, inv[L]) for L in sorted(inv)]


def rows_from_inverse(inverse, values) -> list[tuple[float, list[int]]]:
    """Transpose back; ``values`` fixes row order and includes empty rows."""
    fwd: dict[float, list[int]] = {v: [] for v in values}
    for L, vs in inverse:
        for v in vs:
            fwd[v].append(L)
    return [(v, sorted(fwd[v])) for v in values]


def _sweep(axis, values, solve, workers):
    values = [float(v) for v in values]

    def one(v):
        try:
            res = solve(v)
        except (BlowUpError, ValueError) as exc:
            return v, [], None, f"{type(exc).__name__}: {exc}"
        return v, res.lengths, res.residuals, None

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(one, values))
    else:
        out = [one(v) for v in values]
    rows = [(v, Ls) for v, Ls, _, _ in out]
    residuals = {v: r for v, _, r, _ in out if r is not None}
    failures = {v: msg for v, _, _, msg in out if msg is not None}
    return SpectrumTable(axis, rows, residuals=residuals, failures=failures)


def t_length_spectrum(
    params: ModelParams,
    R0: float,
    k: float,
    t_grid=DEFAULT_T_GRID,
    eps_match: float = EPS_MATCH,
    floor_abs: float = FLOOR_ABS,
    workers: int = 1,
) -> SpectrumTable:
    """Sweep the prescribed transmission at fixed energy.

    ``R1 = R0 sqrt(1 - t)`` for each grid value; ``params.L_max`` bounds
    the scan.
    """
    for t in t_grid:
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"t grid value {t!r} outside [0, 1]")

    def solve(t):
        R1 = R0 * float(np.sqrt(max(0.0, 1.0 - t)))
        return solve_case(params, R0, R1, k, eps_match, floor_abs)

    return _sweep("t", t_grid, solve, workers)


def energy_length_spectrum(
    params: ModelParams,
    R0: float,
    R1: float,
    k: float,
    E_grid=DEFAULT_E_GRID,
    eps_match: float = EPS_MATCH,
    floor_abs: float = FLOOR_ABS,
    workers: int = 1,
) -> SpectrumTable:
    """Sweep the eigenenergy at fixed boundary amplitudes; ``params.E`` is ignored."""
    for E in E_grid:
        if not E > 0:
            raise ValueError(f"energy grid value {E!r} must be positive")

    def solve(E):
        p = ModelParams(E, params.F, params.alpha, params.beta, params.L_max)
        return solve_case(p, R0, R1, k, eps_match, floor_abs)

    return _sweep("E", E_grid, solve, workers)


def multivalue_detect(table: SpectrumTable) -> list[tuple[int, list[float]]]:
    return [(L, vs) for L, vs in table.inverse if len(vs) >= 2]


@dataclass
class TableComparison:
    matched: list[tuple[float, int]]
    missing: list[tuple[float, int, float]]  # (value, L, residual) in reference only
    extra: list[tuple[float, int, float]]  # (value, L, residual) computed only

    @property
    def agreement(self) -> float:
        """Matched pairs over the union of reference and computed pairs."""
        total = len(self.matched) + len(self.missing) + len(self.extra)
        return len(self.matched) / total if total else 1.0

    @property
    def recall(self) -> float:
        ref = len(self.matched) + len(self.missing)
        return len(self.matched) / ref if ref else 1.0


def compare_table(table: SpectrumTable, reference) -> TableComparison:
    """Pairwise comparison with a reference ``[(value, [L, ...]), ...]`` list."""
    ref = {(float(v), int(L)) for v, Ls in reference for L in Ls}
    got = table.pairs()

    def resid(v, L):
        r = table.residuals.get(v)
        if r is None or L > len(r):
            return float("nan")
        return float(r[L - 1])

    return TableComparison(
        matched=sorted(ref & got),
        missing=[(v, L, resid(v, L)) for v, L in sorted(ref - got)],
        extra=[(v, L, resid(v, L)) for v, L in sorted(got - ref)],
    )
