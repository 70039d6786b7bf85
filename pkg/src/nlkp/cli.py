"""Command line: ``nlkp case | spectrum | verify``.

Each invocation reads one JSON config (a path or the name of a bundled
config such as ``case1``) and applies flag overrides on top. Exit status
is 0 on success, 1 when a computation or check fails and 2 on invalid
input.
"""
from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import sys
from dataclasses import asdict, dataclass, field, fields
from importlib import resources
from pathlib import Path

import numpy as np

from . import __version__, reference
from ._accel import backend_name
from .boundary import EPS_MATCH, FLOOR_ABS, conductance_landauer, solve_case
from .kpcore import BlowUpError, ModelParams, current_grid, density_profile, wavefunction_grid
from .oracle import IntegrationConfig, OracleError, invariant_checks
from .scan import (
    compare_table,
    energy_length_spectrum,
    multivalue_detect,
    t_length_spectrum,
)
from .specfun import AccuracyError

log = logging.getLogger("nlkp")

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


class SpecError(ValueError):
    def __init__(self, field_name: str, message: str):
        self.field = field_name
        super().__init__(f"{field_name}: {message}")


@dataclass
class CaseSpec:
    E: float = 1.0
    F: float = 0.01
    alpha: float = 0.0
    beta: float = 0.0
    R0: float = 0.2822
    R1: float = 0.1
    k: float = 1.0
    L_max: int = 60
    eps_match: float = EPS_MATCH
    floor_abs: float = FLOOR_ABS
    density_points: int = 40  # samples per lattice spacing
    density_L: int | None = None  # length used for the density profile
    step: float = 1e-3
    kind: str | None = None  # spectrum axis, "t" or "E"
    grid: list[float] | None = None
    name: str = ""
    extra: dict = field(default_factory=dict)

    def validate(self) -> "CaseSpec":
        for f in ("E", "F", "alpha", "beta", "R0", "R1", "k", "eps_match", "floor_abs", "step"):
            v = getattr(self, f)
            if not isinstance(v, (int, float)) or isinstance(v, bool) or not math.isfinite(v):
                raise SpecError(f, f"must be a finite number, got {v!r}")
        for f in ("E", "F", "R0", "k", "eps_match", "floor_abs", "step"):
            if not getattr(self, f) > 0:
                raise SpecError(f, f"must be positive, got {getattr(self, f)!r}")
        if self.R1 < 0:
            raise SpecError("R1", f"must be non-negative, got {self.R1!r}")
        if self.R1 > self.R0:
            raise SpecError("R1", f"reflected amplitude {self.R1} exceeds incident {self.R0}")
        for f in ("L_max", "density_points"):
            v = getattr(self, f)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise SpecError(f, f"must be a positive integer, got {v!r}")
        if self.density_L is not None and not 1 <= self.density_L <= self.L_max:
            raise SpecError("density_L", f"must lie in 1..L_max, got {self.density_L!r}")
        if abs(round(1.0 / self.step) * self.step - 1.0) > 1e-12:
            raise SpecError("step", f"{self.step} does not divide the unit cell")
        if self.kind not in (None, "t", "E"):
            raise SpecError("kind", f"must be 't' or 'E', got {self.kind!r}")
        if self.grid is not None:
            if not isinstance(self.grid, list) or not all(
                isinstance(g, (int, float)) and not isinstance(g, bool) for g in self.grid
            ):
                raise SpecError("grid", "must be a list of numbers")
            self.grid = [float(g) for g in self.grid]
        return self

    @property
    def params(self) -> ModelParams:
        return ModelParams(float(self.E), float(self.F), float(self.alpha), float(self.beta), self.L_max)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.update(d.pop("extra"))
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "CaseSpec":
        if not isinstance(data, dict):
            raise SpecError("<root>", "config must be a JSON object")
        known = {f.name for f in fields(cls)} - {"extra"}
        kwargs = {k: v for k, v in data.items() if k in known}
        unknown = {k: v for k, v in data.items() if k not in known}
        # keys starting with "_" are free-form comments
        bad = [k for k in unknown if not k.startswith("_")]
        if bad:
            raise SpecError(bad[0], "unknown config field")
        for f in ("E", "F", "alpha", "beta", "R0", "R1", "k", "eps_match", "floor_abs", "step"):
            if isinstance(kwargs.get(f), int) and not isinstance(kwargs.get(f), bool):
                kwargs[f] = float(kwargs[f])
        return cls(**kwargs, extra=unknown).validate()


def bundled_configs() -> list[str]:
    root = resources.files("nlkp") / "configs"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_config(ref: str | None) -> dict:
    if ref is None:
        return {}
    path = Path(ref)
    if path.exists():
        text = path.read_text()
    else:
        res = resources.files("nlkp") / "configs" / f"{ref}.json"
        if not res.is_file():
            raise SpecError("config", f"no file or bundled config named {ref!r} "
                            f"(bundled: {', '.join(bundled_configs())})")
        text = res.read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError("config", f"invalid JSON: {exc}") from exc


_OVERRIDES = [
    ("--e", "E", float), ("--f", "F", float), ("--alpha", "alpha", float),
    ("--beta", "beta", float), ("--r0", "R0", float), ("--r1", "R1", float),
    ("--k", "k", float), ("--lmax", "L_max", int), ("--eps-match", "eps_match", float),
    ("--step", "step", float), ("--density-l", "density_L", int),
    ("--density-points", "density_points", int),
]


def build_spec(args) -> CaseSpec:
    data = load_config(args.config)
    for flag, key, _ in _OVERRIDES:
        v = getattr(args, key, None)
        if v is not None:
            data[key] = v
    if getattr(args, "kind", None):
        data["kind"] = args.kind
    if getattr(args, "grid", None) is not None:
        data["grid"] = args.grid
    return CaseSpec.from_dict(data)


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _write_csv(path: Path, header, rows) -> None:
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) if isinstance(v, float) else v for v in row])


def _cplx(z) -> list[float]:
    return [float(z.real), float(z.imag)]


def run_case(spec: CaseSpec) -> tuple[dict, np.ndarray, np.ndarray]:
    """Solve one case; returns (report, density table, per-site table)."""
    params = spec.params
    res = solve_case(params, spec.R0, spec.R1, spec.k, spec.eps_match, spec.floor_abs)
    prop = res.prop
    prop.check()
    L = spec.density_L or (res.lengths[0] if res.lengths else None)
    xs_in = np.linspace(0.0, float(L or params.L_max), (L or params.L_max) * spec.density_points + 1)
    psi, psi_x = wavefunction_grid(params, prop, xs_in)
    j = current_grid(psi, psi_x)
    if L is not None:
        bd = res.boundary(L)
        grid = np.linspace(-2.0, L + 2.0, (L + 4) * spec.density_points + 1)
        density = density_profile(params, prop, grid, boundary=bd)
    else:
        density = density_profile(params, prop, xs_in, R0=spec.R0)
    checks = invariant_checks(params, res.match.coeff1, L or params.L_max, IntegrationConfig(spec.step))
    report = {
        "name": spec.name,
        "params": spec.to_dict(),
        "backend": backend_name(),
        "A1": _cplx(res.match.coeff1.A),
        "B1": _cplx(res.match.coeff1.B),
        "abs_A1": abs(res.match.coeff1.A),
        "abs_B1": abs(res.match.coeff1.B),
        "a": res.match.a,
        "arg_varphi0": res.match.arg_varphi0,
        "branch": res.match.branch,
        "T": res.T,
        "T2": res.T**2,
        "t": res.t,
        "conductance_ratio": conductance_landauer(res.t),
        "lengths": res.lengths,
        "phases_b": dict(zip(map(str, res.lengths), res.phases)),
        "density_L": L,
        "current_interior": float(np.mean(j)),
        "current_interior_spread": float(j.max() - j.min()),
        "current_transmitted": spec.k * res.T**2,
        "site_density": [float(v) for v in np.abs(prop.psi) ** 2],
        "invariants": {c.name: {"value": c.value, "tol": c.tol, "pass": c.passed} for c in checks},
    }
    sites = np.column_stack([
        np.arange(1, prop.n_sites + 1), np.abs(prop.psi) ** 2, res.residuals,
    ])
    return report, density, sites


def cmd_case(args) -> int:
    spec = build_spec(args)
    report, density, sites = run_case(spec)
    print(f"case {spec.name or '(custom)'}  backend={report['backend']}")
    print(f"  A1 = {report['abs_A1']:.4f}  B1 = -{report['abs_B1']:.4f}i  a = {report['a']:.4f}"
          f"  ({report['branch']} Arg varphi(0))")
    print(f"  T = {report['T']:.4f}  T^2 = {report['T2']:.4f}  t = {report['t']:.5f}")
    print(f"  admissible L (eps={spec.eps_match}): {report['lengths']}")
    for L, b in report["phases_b"].items():
        print(f"    L = {L:>3}  b = {b:.4f}")
    print(f"  current inside = {report['current_interior']:.4f}  transmitted k T^2 = "
          f"{report['current_transmitted']:.4f}")
    for name, c in report["invariants"].items():
        print(f"  {'PASS' if c['pass'] else 'FAIL'} {name:<11} {c['value']:.3e}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(json.dumps(report, indent=2))
        _write_csv(out / "density.csv", ["x", "density", "relative_density"],
                   [tuple(float(v) for v in r) for r in density])
        _write_csv(out / "sites.csv", ["site", "density", "residual"],
                   [(int(r[0]), float(r[1]), float(r[2])) for r in sites])
        print(f"  wrote {out}/report.json, density.csv, sites.csv")
    ok = all(c["pass"] for c in report["invariants"].values())
    return EXIT_OK if ok else EXIT_FAIL


def _reference_for(spec: CaseSpec):
    sp = reference.SPECTRUM_PARAMS
    same = all(
        math.isclose(getattr(spec, key), sp[key]) for key in ("F", "alpha", "beta", "R0", "k")
    ) and spec.L_max == sp["L_max"]
    if not same:
        return None
    if spec.kind == "t" and math.isclose(spec.E, 1.0):
        return reference.T_LENGTH
    if spec.kind == "E" and math.isclose(spec.R1, 0.001):
        return reference.E_LENGTH
    return None


def run_spectrum(spec: CaseSpec, workers: int = 1):
    if spec.kind is None:
        raise SpecError("kind", "spectrum needs kind 't' or 'E'")
    if spec.kind == "t":
        grid = spec.grid if spec.grid is not None else [round(0.1 * i, 10) for i in range(11)]
        table = t_length_spectrum(spec.params, spec.R0, spec.k, grid, spec.eps_match,
                                  spec.floor_abs, workers)
    else:
        grid = spec.grid if spec.grid is not None else [round(0.5 + 0.1 * i, 10) for i in range(11)]
        table = energy_length_spectrum(spec.params, spec.R0, spec.R1, spec.k, grid,
                                       spec.eps_match, spec.floor_abs, workers)
    return table


def cmd_spectrum(args) -> int:
    spec = build_spec(args)
    table = run_spectrum(spec, args.workers)
    axis = table.axis
    print(f"{axis}-L spectrum, {len(table.rows)} grid values, eps={spec.eps_match}")
    for v, Ls in table.rows:
        print(f"  [{v:g}, {tuple(Ls)}]")
    multi = multivalue_detect(table)
    print("  multivalued: " + ", ".join(f"[{L}, {tuple(vs)}]" for L, vs in multi))
    report = {
        "name": spec.name,
        "params": spec.to_dict(),
        "axis": axis,
        "rows": [[v, Ls] for v, Ls in table.rows],
        "inverse": [[L, vs] for L, vs in table.inverse],
        "multivalued": [[L, vs] for L, vs in multi],
        "failures": {str(k): v for k, v in table.failures.items()},
    }
    ref = _reference_for(spec)
    if ref is not None:
        cmp_ = compare_table(table, ref)
        report["reference_comparison"] = {
            "agreement": cmp_.agreement,
            "recall": cmp_.recall,
            "matched": cmp_.matched,
            "missing": cmp_.missing,
            "extra": cmp_.extra,
        }
        print(f"  reference agreement {cmp_.agreement:.2%} "
              f"({len(cmp_.matched)} matched, {len(cmp_.missing)} missing, {len(cmp_.extra)} extra)")
        for v, L, r in cmp_.missing:
            print(f"    missing [{v:g}, {L}] residual {r:+.4f}")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        _write_csv(out / f"spectrum_{axis}.csv", ["swept_value", "L"],
                   [(float(v), L) for v, Ls in table.rows for L in Ls])
        _write_csv(out / f"inverse_{axis}.csv", ["L", "swept_value"],
                   [(L, float(v)) for L, vs in table.inverse for v in vs])
        (out / f"spectrum_{axis}.json").write_text(json.dumps(report, indent=2))
        print(f"  wrote {out}/spectrum_{axis}.csv, inverse_{axis}.csv, spectrum_{axis}.json")
    return EXIT_FAIL if table.failures else EXIT_OK


def cmd_verify(args) -> int:
    spec = build_spec(args)
    res = solve_case(spec.params, spec.R0, spec.R1, spec.k, spec.eps_match, spec.floor_abs)
    L = args.length or spec.L_max
    checks = invariant_checks(spec.params, res.match.coeff1, L, IntegrationConfig(spec.step))
    print(f"verify {spec.name or '(custom)'} on [0, {L}] step={spec.step} backend={backend_name()}")
    for c in checks:
        print("  " + c.line())
    ok = all(c.passed for c in checks)
    print("PASS" if ok else "FAIL")
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "verify.json").write_text(json.dumps(
            {"params": spec.to_dict(), "L": L,
             "checks": [{"name": c.name, "value": c.value, "tol": c.tol, "pass": c.passed}
                        for c in checks]}, indent=2))
    return EXIT_OK if ok else EXIT_FAIL


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", "-c", help="JSON config path or bundled name")
    for flag, key, typ in _OVERRIDES:
        p.add_argument(flag, dest=key, type=typ, default=None)
    p.add_argument("--out", "-o", help="output directory")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nlkp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("case", help="solve one inverse transmission case")
    _add_common(p)
    p.set_defaults(func=cmd_case)

    p = sub.add_parser("spectrum", help="t-L or E-L spectrum sweep")
    _add_common(p)
    p.add_argument("--kind", choices=["t", "E"])
    p.add_argument("--grid", type=float, nargs="*", help="swept values (default 0..1 or 0.5..1.5)")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="exact solution vs direct integration and invariants")
    _add_common(p)
    p.add_argument("--length", "-L", type=int, help="interval [0, L] (default L_max)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("configs", help="list bundled configs")
    p.set_defaults(func=lambda args: print("\n".join(bundled_configs())) or EXIT_OK)
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (SpecError, AccuracyError) as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (BlowUpError, OracleError, ArithmeticError) as exc:
        print(f"error: computation failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        print(f"error: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
