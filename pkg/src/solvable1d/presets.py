"""Named model presets with verification grids and tolerances.

Each preset pins concrete parameters for one of the ten classical models
the construction reproduces, together with a truncation window and grid
that make the matrix eigensolver check pass at the stated tolerance.
Half-line models keep the wall at x = 0 where the true eigenfunctions
vanish, so truncation costs nothing there; the far edge is placed where
the highest checked level has decayed below the discretization error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidModel
from .prepotential import ModelSpec, nonsinusoidal_model, sinusoidal_model


@dataclass(frozen=True)
class Preset:
    """A ready-to-verify model: parameters, window, grid, tolerance."""

    name: str
    description: str
    model: ModelSpec
    x_lo: float
    x_hi: float
    grid_points: int
    fd_tol: float
    nmax: int  # deepest level exercised by default verification


def _sin(name, desc, a, b, alpha=0.0, beta=0.0, gamma=0.0, **kw):
    return Preset(
        name=name,
        description=desc,
        model=sinusoidal_model(a, b, alpha, beta, gamma, name=name),
        **kw,
    )


def _ns(name, desc, A, B, lam, branch=None, **kw):
    return Preset(
        name=name,
        description=desc,
        model=nonsinusoidal_model(A, B, lam, branch, name=name),
        **kw,
    )


def _build() -> dict[str, Preset]:
    entries = [
        _sin(
            "shifted-oscillator",
            "harmonic well on the line, linear coordinate",
            a=1.0, b=0.0, gamma=1.0,
            x_lo=-6.0, x_hi=6.0, grid_points=4000, fd_tol=2e-3, nmax=5,
        ),
        _sin(
            "3d-oscillator",
            "radial oscillator with centrifugal wall on the half line",
            a=1.0, b=-1.0, beta=2.0,
            x_lo=0.0, x_hi=12.0, grid_points=4000, fd_tol=2e-3, nmax=5,
        ),
        _sin(
            "morse",
            "exponential well with finitely many levels",
            a=4.0, b=-2.0, alpha=1.0,
            x_lo=-2.5, x_hi=12.0, grid_points=4000, fd_tol=2e-3, nmax=3,
        ),
        _sin(
            "scarf2",
            "hyperbolic well on the line (sinh coordinate)",
            a=3.0, b=1.0, alpha=1.0, gamma=1.0,
            x_lo=-12.0, x_hi=12.0, grid_points=4000, fd_tol=2e-3, nmax=2,
        ),
        _sin(
            "gen-poschl-teller",
            "hyperbolic half-line well (cosh coordinate)",
            a=3.0, b=-4.0, alpha=1.0, gamma=-1.0,
            x_lo=0.0, x_hi=12.0, grid_points=4000, fd_tol=2e-3, nmax=2,
        ),
        _sin(
            "scarf1",
            "trigonometric box well (sin coordinate)",
            a=3.0, b=1.0, alpha=-1.0, gamma=1.0,
            x_lo=-0.5 * math.pi, x_hi=0.5 * math.pi,
            grid_points=4000, fd_tol=5e-3, nmax=5,
        ),
        _ns(
            "coulomb",
            "attractive 1/x tail with centrifugal-free s-wave levels",
            A=1.0, B=1.0, lam=0.0,
            x_lo=0.0, x_hi=130.0, grid_points=9000, fd_tol=5e-3, nmax=5,
        ),
        _ns(
            "eckart",
            "repulsive core with exponential tail (coth coordinate)",
            A=2.0, B=6.0, lam=1.0, branch="coth",
            x_lo=0.0, x_hi=12.0, grid_points=4000, fd_tol=5e-3, nmax=0,
        ),
        _ns(
            "rosen-morse2",
            "asymmetric hyperbolic well on the line (tanh coordinate)",
            A=3.0, B=1.0, lam=1.0, branch="tanh",
            x_lo=-12.0, x_hi=12.0, grid_points=4000, fd_tol=2e-3, nmax=1,
        ),
        _ns(
            "rosen-morse1",
            "trigonometric well with linear tilt (cot coordinate)",
            A=2.0, B=1.0, lam=-1.0,
            x_lo=0.0, x_hi=math.pi, grid_points=4000, fd_tol=5e-3, nmax=5,
        ),
    ]
    return {p.name: p for p in entries}


PRESETS: dict[str, Preset] = _build()


def get_preset(name: str) -> Preset:
    try:
        return PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise InvalidModel(f"unknown preset '{name}' (known: {known})") from None


def model_from_mapping(d: dict) -> ModelSpec:
    """Build a model from a flat mapping (the CLI's inline-JSON form)."""
    if not isinstance(d, dict):
        raise InvalidModel("inline model must be a JSON object")
    data = dict(d)
    family = data.pop("family", None)
    name = data.pop("name", "inline")
    if family == "sinusoidal":
        allowed = {"a", "b", "alpha", "beta", "gamma"}
        unknown = set(data) - allowed
        if unknown:
            raise InvalidModel(f"unknown sinusoidal keys: {sorted(unknown)}")
        if "a" not in data or "b" not in data:
            raise InvalidModel("sinusoidal model needs at least 'a' and 'b'")
        return sinusoidal_model(
            float(data["a"]),
            float(data["b"]),
            float(data.get("alpha", 0.0)),
            float(data.get("beta", 0.0)),
            float(data.get("gamma", 0.0)),
            name=name,
        )
    if family == "non-sinusoidal":
        allowed = {"A", "B", "lambda", "branch"}
        unknown = set(data) - allowed
        if unknown:
            raise InvalidModel(f"unknown non-sinusoidal keys: {sorted(unknown)}")
        if "A" not in data or "B" not in data or "lambda" not in data:
            raise InvalidModel("non-sinusoidal model needs 'A', 'B' and 'lambda'")
        branch = data.get("branch")
        if branch is not None and not isinstance(branch, str):
            raise InvalidModel("'branch' must be a string")
        return nonsinusoidal_model(
            float(data["A"]), float(data["B"]), float(data["lambda"]),
            branch, name=name,
        )
    raise InvalidModel("model 'family' must be 'sinusoidal' or 'non-sinusoidal'")
