"""Command line front end.

Exit codes: 0 success, 1 verification found a failing check, 2 bad
usage/model/config, 3 a numerical routine did not converge.
"""

from __future__ import annotations

import dataclasses
import functools
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click
import numpy as np

from .bethe import solve_bae
from .errors import (
    CoincidentRoots,
    ConfigError,
    ConvergenceFailure,
    DomainViolation,
    GridTooCoarse,
    IntegrationDiverged,
    InvalidModel,
    InvalidRoots,
    LevelOutOfRange,
    NoConvergence,
    ParameterWindowExceeded,
    UnviableCoordinate,
)
from .prepotential import eigenfunction, energy, potential_v0
from .presets import PRESETS, Preset, model_from_mapping
from .serialize import canonical_json, csv_text
from .susy import spectrum_via_si
from .verify import GridSpec, full_report

_USAGE_ERRORS = (
    InvalidModel,
    UnviableCoordinate,
    DomainViolation,
    LevelOutOfRange,
    ParameterWindowExceeded,
    ConfigError,
)
_NUMERIC_ERRORS = (
    NoConvergence,
    ConvergenceFailure,
    IntegrationDiverged,
    GridTooCoarse,
    CoincidentRoots,
    InvalidRoots,
)

_CONFIG_KEYS = {
    "model",
    "nmax",
    "grid_points",
    "format",
    "out",
    "parallel",
    "x_lo",
    "x_hi",
    "fd_tol",
}


def _guard(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except _USAGE_ERRORS as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except _NUMERIC_ERRORS as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(3)

    return wrapper


def _load_config(path: str | None) -> dict:
    if path is None:
        return {}
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigError("config must be a flat JSON object")
    unknown = set(data) - _CONFIG_KEYS
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    return data


def _pick(flag, cfg: dict, key: str, default=None):
    if flag is not None:
        return flag
    if key in cfg and cfg[key] is not None:
        return cfg[key]
    return default


def _resolve_models(spec: str | None) -> list[Preset]:
    if spec is None:
        raise ConfigError("--model is required (preset name, 'all', or inline JSON)")
    if spec == "all":
        return list(PRESETS.values())
    if spec.lstrip().startswith("{"):
        try:
            mapping = json.loads(spec)
        except json.JSONDecodeError as exc:
            raise InvalidModel(f"inline model is not valid JSON: {exc}") from None
        model = model_from_mapping(mapping)
        default_n = 5 if model.max_bound_level is None else min(5, model.max_bound_level)
        return [
            Preset(
                name=model.name,
                description="inline model",
                model=model,
                x_lo=math.nan,
                x_hi=math.nan,
                grid_points=4000,
                fd_tol=5e-3,
                nmax=default_n,
            )
        ]
    if spec in PRESETS:
        return [PRESETS[spec]]
    known = ", ".join(PRESETS)
    raise InvalidModel(f"unknown model '{spec}' (presets: {known}, or 'all')")


def _with_grid(preset: Preset, x_lo, x_hi, grid_points, fd_tol) -> Preset:
    """Apply grid overrides; inline models must supply their own bounds."""
    changes = {}
    if x_lo is not None:
        changes["x_lo"] = float(x_lo)
    if x_hi is not None:
        changes["x_hi"] = float(x_hi)
    if grid_points is not None:
        changes["grid_points"] = int(grid_points)
    if fd_tol is not None:
        changes["fd_tol"] = float(fd_tol)
    out = dataclasses.replace(preset, **changes) if changes else preset
    if math.isnan(out.x_lo) or math.isnan(out.x_hi):
        raise ConfigError("inline models need --x-lo and --x-hi")
    if not out.x_hi > out.x_lo:
        raise ConfigError("need x_hi > x_lo")
    return out


def _write_out(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        click.echo(text, nl=False)


def _effective_nmax(preset: Preset, nmax, clamp: bool = False) -> int:
    n = preset.nmax if nmax is None else int(nmax)
    win = preset.model.max_bound_level
    if win is not None and n > win:
        # over 'all' each model caps at its own window; a named model is strict
        if not clamp:
            raise LevelOutOfRange(
                f"--nmax {n} exceeds the bound-state window 0..{win} "
                f"of model '{preset.name}'"
            )
        n = win
    if n < 0:
        raise ConfigError("--nmax must be >= 0")
    return n


@click.group()
def main():
    """Exactly solvable 1D models: spectra, root systems, verification."""


@main.command("list-models")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@_guard
def list_models(fmt):
    """Show the built-in model presets."""
    rows = []
    for p in PRESETS.values():
        win = "all n" if p.model.max_bound_level is None else f"n <= {p.model.max_bound_level}"
        rows.append(
            {
                "name": p.name,
                "description": p.description,
                "window": win,
                "x_lo": p.x_lo,
                "x_hi": p.x_hi,
                "grid_points": p.grid_points,
            }
        )
    if fmt == "json":
        click.echo(canonical_json(rows), nl=False)
        return
    width = max(len(r["name"]) for r in rows)
    for r in rows:
        click.echo(f"{r['name']:<{width}}  {r['window']:<9}  {r['description']}")


@main.command()
@click.option("--model", "model_spec", default=None, help="preset name, 'all', or inline JSON")
@click.option("--nmax", type=int, default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default=None)
@click.option("--out", default=None, help="output path (default stdout)")
@click.option("--config", "config_path", default=None, help="flat JSON defaults file")
@_guard
def spectrum(model_spec, nmax, fmt, out, config_path):
    """Closed-form level energies, plus the telescoped cross-check."""
    cfg = _load_config(config_path)
    model_spec = _pick(model_spec, cfg, "model")
    nmax = _pick(nmax, cfg, "nmax")
    fmt = _pick(fmt, cfg, "format", "json")
    out = _pick(out, cfg, "out")
    rows = []
    presets = _resolve_models(model_spec)
    for preset in presets:
        top = _effective_nmax(preset, nmax, clamp=len(presets) > 1)
        for n in range(top + 1):
            rows.append(
                {
                    "model": preset.name,
                    "n": n,
                    "energy": energy(preset.model, n),
                    "energy_telescoped": spectrum_via_si(preset.model, n),
                }
            )
    if fmt == "csv":
        text = csv_text(["model", "n", "energy", "energy_telescoped"], rows)
    else:
        text = canonical_json(rows)
    _write_out(text, out)


@main.command()
@click.option("--model", "model_spec", default=None)
@click.option("--nmax", type=int, default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default=None)
@click.option("--out", default=None)
@click.option("--config", "config_path", default=None)
@_guard
def bae(model_spec, nmax, fmt, out, config_path):
    """Solve the root equations for every level up to nmax."""
    cfg = _load_config(config_path)
    model_spec = _pick(model_spec, cfg, "model")
    nmax = _pick(nmax, cfg, "nmax")
    fmt = _pick(fmt, cfg, "format", "json")
    out = _pick(out, cfg, "out")
    rows = []
    presets = _resolve_models(model_spec)
    for preset in presets:
        top = _effective_nmax(preset, nmax, clamp=len(presets) > 1)
        for n in range(1, top + 1):
            sol = solve_bae(preset.model, n)
            for k, root in enumerate(sol.roots):
                rows.append(
                    {
                        "model": preset.name,
                        "n": n,
                        "k": k,
                        "root": float(root),
                        "residual": sol.residual,
                        "iterations": sol.iterations,
                        "strategy": sol.strategy.value,
                    }
                )
    if fmt == "csv":
        text = csv_text(
            ["model", "n", "k", "root", "residual", "iterations", "strategy"], rows
        )
    else:
        text = canonical_json(rows)
    _write_out(text, out)


@main.command()
@click.option("--model", "model_spec", default=None)
@click.option("--nmax", type=int, default=None)
@click.option("--grid-points", type=int, default=None)
@click.option("--x-lo", type=float, default=None)
@click.option("--x-hi", type=float, default=None)
@click.option("--fd-tol", type=float, default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default=None)
@click.option("--out", default=None)
@click.option("--config", "config_path", default=None)
@click.option("--parallel", is_flag=True, default=None)
@_guard
def verify(model_spec, nmax, grid_points, x_lo, x_hi, fd_tol, fmt, out, config_path, parallel):
    """Run every numerical check; exit 1 if any model fails."""
    cfg = _load_config(config_path)
    model_spec = _pick(model_spec, cfg, "model")
    nmax = _pick(nmax, cfg, "nmax")
    grid_points = _pick(grid_points, cfg, "grid_points")
    x_lo = _pick(x_lo, cfg, "x_lo")
    x_hi = _pick(x_hi, cfg, "x_hi")
    fd_tol = _pick(fd_tol, cfg, "fd_tol")
    fmt = _pick(fmt, cfg, "format", "json")
    out = _pick(out, cfg, "out")
    parallel = bool(_pick(parallel, cfg, "parallel", False))
    presets = [
        _with_grid(p, x_lo, x_hi, grid_points, fd_tol)
        for p in _resolve_models(model_spec)
    ]
    tops = [_effective_nmax(p, nmax, clamp=len(presets) > 1) for p in presets]

    def run(args):
        preset, top = args
        return full_report(preset, nmax=top)

    if parallel and len(presets) > 1:
        with ThreadPoolExecutor(max_workers=min(4, len(presets))) as pool:
            reports = list(pool.map(run, zip(presets, tops)))
    else:
        reports = [run(a) for a in zip(presets, tops)]
    for rep in reports:
        status = "PASS" if rep.passed else "FAIL"
        click.echo(f"{rep.name}: {status}", err=True)
        for msg in rep.failures:
            click.echo(f"  {msg}", err=True)
    all_passed = all(r.passed for r in reports)
    if fmt == "csv":
        rows = []
        for rep in reports:
            for lv in rep.levels:
                row = {"model": rep.name}
                row.update(lv)
                row["passed"] = rep.passed
                rows.append(row)
        text = csv_text(
            [
                "model",
                "n",
                "energy",
                "energy_fd",
                "energy_error",
                "telescope_error",
                "bae_residual",
                "wavefunction_residual",
                "nodes",
                "passed",
            ],
            rows,
        )
    else:
        text = canonical_json(
            {
                "schema_version": 1,
                "passed": all_passed,
                "reports": [r.to_dict() for r in reports],
            }
        )
    _write_out(text, out)
    if not all_passed:
        sys.exit(1)


@main.command("plot-data")
@click.option("--model", "model_spec", default=None)
@click.option("--nmax", type=int, default=None)
@click.option("--grid-points", type=int, default=None)
@click.option("--x-lo", type=float, default=None)
@click.option("--x-hi", type=float, default=None)
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default=None)
@click.option("--out", default=None)
@click.option("--config", "config_path", default=None)
@_guard
def plot_data(model_spec, nmax, grid_points, x_lo, x_hi, fmt, out, config_path):
    """Tabulate V(x) and the normalized eigenfunctions for plotting."""
    cfg = _load_config(config_path)
    model_spec = _pick(model_spec, cfg, "model")
    nmax = _pick(nmax, cfg, "nmax")
    grid_points = _pick(grid_points, cfg, "grid_points")
    x_lo = _pick(x_lo, cfg, "x_lo")
    x_hi = _pick(x_hi, cfg, "x_hi")
    fmt = _pick(fmt, cfg, "format", "csv")
    out = _pick(out, cfg, "out")
    presets = _resolve_models(model_spec)
    if len(presets) != 1:
        raise ConfigError("plot-data takes a single model")
    preset = _with_grid(presets[0], x_lo, x_hi, grid_points, None)
    top = _effective_nmax(preset, nmax)
    grid = GridSpec(preset.x_lo, preset.x_hi, preset.grid_points)
    x = grid.interior()
    columns = {"x": x, "potential": potential_v0(preset.model, x)}
    for n in range(top + 1):
        sol = solve_bae(preset.model, n)
        vals = eigenfunction(preset.model, sol, x).values
        vals = vals / (math.sqrt(grid.h) * float(np.linalg.norm(vals)))
        if vals[int(np.argmax(np.abs(vals)))] < 0:
            vals = -vals
        columns[f"psi_{n}"] = vals
    names = list(columns)
    if fmt == "csv":
        rows = [
            {name: float(columns[name][i]) for name in names} for i in range(x.size)
        ]
        text = csv_text(names, rows)
    else:
        text = canonical_json({name: columns[name] for name in names})
    _write_out(text, out)


if __name__ == "__main__":
    main()
