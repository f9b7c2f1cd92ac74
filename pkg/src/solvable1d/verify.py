"""Numerical cross-checks: matrix spectra, residuals, node counts, reports.

The independent route to the spectrum is a second-order finite-difference
Hamiltonian on a uniform grid with Dirichlet walls; closed-form energies,
eigenfunctions and partner/telescoping relations are compared against it
at per-model tolerances.  Everything here is deterministic: fixed grids,
fixed thresholds, no randomness, so a repeated report is bit-identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .bethe import solve_bae
from .coords import coordinate_ode_check
from .errors import GridTooCoarse
from .prepotential import (
    ModelSpec,
    NonSinusoidalModel,
    eigenfunction,
    energy,
    potential_v0,
    w0,
)
from .presets import Preset
from .susy import (
    apply_lowering,
    partner_potential,
    si_residual_numeric,
    spectrum_via_si,
)

WAVE_RESIDUAL_TOL = 1e-4
BAE_RESIDUAL_TOL = 1e-8
SI_NUMERIC_TOL = 1e-10
TELESCOPE_TOL = 1e-12
ANNIHILATION_TOL = 1e-5
ODE_DEVIATION_TOL = 1e-6
PARTNER_TOL_FACTOR = 2.0
SUPPORT_FLOOR = 3e-5


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid on (lo, hi): `points` interior nodes, walls excluded."""

    lo: float
    hi: float
    points: int

    @property
    def h(self) -> float:
        return (self.hi - self.lo) / (self.points + 1)

    def interior(self) -> np.ndarray:
        return self.lo + self.h * np.arange(1, self.points + 1)


def _fd_eigs(v: np.ndarray, h: float, nlevels: int) -> np.ndarray:
    d = 2.0 / h**2 + v
    e = np.full(v.size - 1, -1.0 / h**2)
    return eigh_tridiagonal(
        d, e, select="i", select_range=(0, nlevels - 1), eigvals_only=True
    )


def fd_spectrum_potential(vfunc, grid: GridSpec, nlevels: int) -> np.ndarray:
    if nlevels <= 0:
        return np.empty(0)
    if grid.points < max(50, 10 * nlevels):
        raise GridTooCoarse(
            f"{grid.points} interior points cannot support {nlevels} levels"
        )
    x = grid.interior()
    return _fd_eigs(np.asarray(vfunc(x), dtype=float), grid.h, nlevels)


def fd_spectrum(model: ModelSpec, grid: GridSpec, nlevels: int) -> np.ndarray:
    """Lowest eigenvalues of -d^2/dx^2 + V on the grid (Dirichlet walls)."""
    return fd_spectrum_potential(lambda x: potential_v0(model, x), grid, nlevels)


def wavefunction_residual(model: ModelSpec, solution, grid: GridSpec) -> float:
    """Relative Schroedinger defect of the closed-form level on the grid.

    Uses the three-point second derivative on the interior stencil, so the
    value reflects the h^2 discretization floor, not the eigenfunction.
    """
    x = grid.interior()
    pair = eigenfunction(model, solution, x)
    phi = pair.values
    h = grid.h
    d2 = (phi[2:] - 2.0 * phi[1:-1] + phi[:-2]) / h**2
    v = potential_v0(model, x[1:-1])
    r = -d2 + (v - pair.energy) * phi[1:-1]
    denom = float(np.linalg.norm(phi[1:-1])) * (1.0 + abs(pair.energy))
    return float(np.linalg.norm(r)) / denom


def count_nodes(values: np.ndarray, rel_floor: float = 1e-8) -> int:
    """Sign changes of a tabulated function, ignoring near-zero samples."""
    v = np.asarray(values, dtype=float)
    keep = v[np.abs(v) >= rel_floor * np.max(np.abs(v))]
    s = np.sign(keep)
    return int(np.sum(s[1:] * s[:-1] < 0))


def ground_support_grid(
    model: ModelSpec,
    lo: float,
    hi: float,
    points: int = 4000,
    rel_floor: float = SUPPORT_FLOOR,
) -> np.ndarray:
    """Uniform grid over the interval where exp(-W0) is non-negligible.

    A scan at the same resolution locates the support; the returned grid
    re-spends all `points` on it, so narrow states keep a fine spacing.
    """
    x = GridSpec(lo, hi, points).interior()
    phi = np.exp(-w0(model, 0, x))
    mask = phi >= rel_floor * float(np.max(phi))
    idx = np.nonzero(mask)[0]
    return np.linspace(x[idx[0]], x[idx[-1]], points)


def annihilation_ratio(
    model: ModelSpec, lo: float, hi: float, points: int = 4000
) -> float:
    """|| (d/dx + W0') exp(-W0) ||_2 relative to || exp(-W0) ||_2."""
    x = ground_support_grid(model, lo, hi, points)
    phi = np.exp(-w0(model, 0, x))
    out = apply_lowering(model, x, phi)
    return float(np.linalg.norm(out) / np.linalg.norm(phi))


def _inset_grid(lo: float, hi: float, frac: float = 0.05, points: int = 201):
    pad = frac * (hi - lo)
    return np.linspace(lo + pad, hi - pad, points)


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of every per-model check, plus the grid it ran on."""

    name: str
    model: dict
    grid: dict
    levels: list
    checks: dict
    passed: bool
    failures: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "name": self.name,
            "model": self.model,
            "grid": self.grid,
            "levels": self.levels,
            "checks": self.checks,
            "passed": self.passed,
            "failures": list(self.failures),
        }


def _model_descriptor(model: ModelSpec) -> dict:
    fam = model.family
    if isinstance(fam, NonSinusoidalModel):
        return {
            "family": "non-sinusoidal",
            "A": fam.A,
            "B": fam.B,
            "lambda": fam.lam,
            "branch": fam.form.branch,
            "max_bound_level": model.max_bound_level,
        }
    q = fam.form.q_coeffs()
    return {
        "family": "sinusoidal",
        "case": model.form.case,
        "a": fam.a,
        "b": fam.b,
        "alpha": q.alpha,
        "beta": q.beta,
        "gamma": q.gamma,
        "max_bound_level": model.max_bound_level,
    }


def full_report(
    preset: Preset, nmax: int | None = None, grid_points: int | None = None
) -> VerificationReport:
    """Run every check for one preset and collect a pass/fail report."""
    model = preset.model
    if nmax is None:
        nmax = preset.nmax
    if model.max_bound_level is not None:
        nmax = min(nmax, model.max_bound_level)
    grid = GridSpec(preset.x_lo, preset.x_hi, grid_points or preset.grid_points)
    failures: list[str] = []

    fd = fd_spectrum(model, grid, nmax + 1)
    levels = []
    for n in range(nmax + 1):
        sol = solve_bae(model, n)
        e_exact = energy(model, n)
        e_si = spectrum_via_si(model, n)
        pair = eigenfunction(model, sol, grid.interior())
        row = {
            "n": n,
            "energy": e_exact,
            "energy_fd": float(fd[n]),
            "energy_error": abs(float(fd[n]) - e_exact),
            "telescope_error": abs(e_si - e_exact),
            "bae_residual": sol.residual,
            "wavefunction_residual": wavefunction_residual(model, sol, grid),
            "nodes": count_nodes(pair.values),
        }
        levels.append(row)
        if row["energy_error"] > preset.fd_tol:
            failures.append(
                f"level {n}: grid energy off by {row['energy_error']:.3e} "
                f"(tol {preset.fd_tol:.1e})"
            )
        if row["telescope_error"] > TELESCOPE_TOL:
            failures.append(f"level {n}: telescoped energy off")
        if row["bae_residual"] > BAE_RESIDUAL_TOL:
            failures.append(f"level {n}: root-equation residual too large")
        if row["wavefunction_residual"] > WAVE_RESIDUAL_TOL:
            failures.append(f"level {n}: wavefunction residual too large")
        if row["nodes"] != n:
            failures.append(f"level {n}: counted {row['nodes']} nodes")

    xin = _inset_grid(grid.lo, grid.hi)
    si_res = si_residual_numeric(model, xin)
    ann = annihilation_ratio(model, grid.lo, grid.hi)
    ode_dev = coordinate_ode_check(model.form, xin).closed_form_deviation
    partner_err = None
    if nmax >= 1:
        fd_partner = fd_spectrum_potential(
            lambda x: partner_potential(model, x), grid, nmax
        )
        e0 = energy(model, 0)
        gaps = [energy(model, k + 1) - e0 for k in range(nmax)]
        partner_err = float(np.max(np.abs(fd_partner - np.array(gaps))))
        if partner_err > PARTNER_TOL_FACTOR * preset.fd_tol:
            failures.append(f"partner spectrum off by {partner_err:.3e}")
    if si_res > SI_NUMERIC_TOL:
        failures.append(f"shape-invariance residual {si_res:.3e}")
    if ann > ANNIHILATION_TOL:
        failures.append(f"ground state not annihilated (ratio {ann:.3e})")
    if ode_dev > ODE_DEVIATION_TOL:
        failures.append(f"coordinate ODE deviates by {ode_dev:.3e}")

    checks = {
        "fd_tolerance": preset.fd_tol,
        "fd_max_error": max(r["energy_error"] for r in levels),
        "si_residual": si_res,
        "annihilation_ratio": ann,
        "partner_gap_max_error": partner_err,
        "coordinate_ode_deviation": ode_dev,
        "pole_residual_max": max(r["bae_residual"] for r in levels),
    }
    return VerificationReport(
        name=preset.name,
        model=_model_descriptor(model),
        grid={"lo": grid.lo, "hi": grid.hi, "points": grid.points},
        levels=levels,
        checks=checks,
        passed=not failures,
        failures=failures,
    )
