"""Root equations for eigenfunction polynomials and a damped Newton solver.

Level N of a model has phi_N = exp(-W0) prod_k (z - z_k); demanding that
the induced potential stays pole-free forces the roots z_k to satisfy a
coupled algebraic system (one equation per root):

  sinusoidal      (a - alpha/2) z_k + b - beta/4
                      - sum_{l != k} Q(z_k) / (z_k - z_l) = 0
  non-sinusoidal  sum_{l != k} (z_k^2 - lam) / (z_k - z_l)
                      - (A + N - 1) z_k + B / (A + N) = 0

The solver is deterministic: a fixed Chebyshev-spread seed window per
coordinate case, a fixed set of perturbed retries, then a continuation
sweep that climbs one level at a time.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .coords import ConstQ, LinearQ, NonSinusoidalForm, QuadQ
from .errors import CoincidentRoots, NoConvergence
from .prepotential import ModelSpec, NonSinusoidalModel, SinusoidalModel

_TARGET = 1e-12  # aim of the Newton iteration
_ACCEPT = 1e-8  # hard ceiling on an acceptable residual
_MAX_ITER = 25
_GAP_FLOOR = 1e-9  # relative minimum spacing between solved roots
_RETRY_SCALES = (0.6, 0.8, 1.25, 1.5, 0.45, 1.8, 1.0)


class SeedStrategy(enum.Enum):
    CHEBYSHEV = "chebyshev-spread"
    CONTINUATION = "continuation"
    USER = "user-supplied"


@dataclass(frozen=True)
class BaeSolution:
    """Converged root set for one level, roots in ascending order."""

    N: int
    roots: np.ndarray
    residual: float
    iterations: int
    strategy: SeedStrategy


def _params(model: ModelSpec):
    fam = model.family
    if isinstance(fam, SinusoidalModel):
        return ("sin", fam.a, fam.b, fam.form.q_coeffs())
    return ("ns", fam.paper_A, fam.B, fam.lam)


def bae_residual(model: ModelSpec, roots) -> np.ndarray:
    """Left sides of the root equations at the given root vector."""
    z = np.asarray(roots, dtype=float)
    n = z.size
    kind, p1, p2, extra = _params(model)
    if kind == "sin":
        q = extra
        out = (p1 - 0.5 * q.alpha) * z + p2 - 0.25 * q.beta
        for k in range(n):
            d = z[k] - np.delete(z, k)
            out[k] -= np.sum(q.of(z[k]) / d)
        return out
    an = p1 + n
    out = -(an - 1.0) * z + p2 / an
    for k in range(n):
        d = z[k] - np.delete(z, k)
        out[k] += np.sum((z[k] ** 2 - extra) / d)
    return out


def bae_jacobian(model: ModelSpec, roots) -> np.ndarray:
    z = np.asarray(roots, dtype=float)
    n = z.size
    kind, p1, p2, extra = _params(model)
    jac = np.zeros((n, n))
    if kind == "sin":
        q = extra
        qp = lambda t: 2.0 * q.alpha * t + q.beta  # noqa: E731
        for k in range(n):
            diag = p1 - 0.5 * q.alpha
            for l in range(n):
                if l == k:
                    continue
                d = z[k] - z[l]
                diag -= (qp(z[k]) * d - q.of(z[k])) / d**2
                jac[k, l] = -q.of(z[k]) / d**2
            jac[k, k] = diag
        return jac
    an = p1 + n
    for k in range(n):
        diag = -(an - 1.0)
        for l in range(n):
            if l == k:
                continue
            d = z[k] - z[l]
            diag += (2.0 * z[k] * d - (z[k] ** 2 - extra)) / d**2
            jac[k, l] = (z[k] ** 2 - extra) / d**2
        jac[k, k] = diag
    return jac


def first_level_root(model: ModelSpec) -> float:
    """Closed-form single root of the N = 1 equation."""
    kind, p1, p2, extra = _params(model)
    if kind == "sin":
        q = extra
        return (0.25 * q.beta - p2) / (p1 - 0.5 * q.alpha)
    return p2 / ((p1 + 1.0) * p1)


def _cheb_points(lo: float, hi: float, n: int) -> np.ndarray:
    j = np.arange(1, n + 1)
    pts = 0.5 * (lo + hi) + 0.5 * (hi - lo) * np.cos((2 * j - 1) * np.pi / (2 * n))
    return np.sort(pts)


def _seed_window(model: ModelSpec, n: int) -> np.ndarray:
    """Deterministic Chebyshev-spread seeds sized to the root support."""
    fam = model.family
    form = model.form
    if isinstance(fam, SinusoidalModel):
        a, b = fam.a, fam.b
        if isinstance(form, ConstQ):
            c = -b / a
            w = math.sqrt(form.gamma * (2 * n + 1) / a) + math.sqrt(form.gamma / a)
            return _cheb_points(c - w, c + w, n)
        if isinstance(form, LinearQ):
            nu = -2.0 * b / form.beta - 0.5
            hi = 4.0 * n + 2.0 * nu + 4.0
            u = _cheb_points(1e-3 * hi, hi, n)
            return np.sort(0.5 * form.beta / a * u)
        if form.alpha > 0 and form.delta == 0:
            nu = 2.0 * (a - n * form.alpha) / form.alpha
            y = _cheb_points(0.3, 4.0 * n + 2.0 * nu + 4.0, n)
            return np.sort(-2.0 * b / (form.alpha * y))
        if form.alpha > 0 and form.delta == 1:
            c = -b / a
            w = 1.5 * math.sqrt(2.0 * n + 1.0) * max(1.0, abs(b) / a)
            return _cheb_points(c - w, c + w, n)
        if form.alpha > 0:
            hi = 1.0 + (2.0 * abs(b) / a) * (n + 1.0)
            return _cheb_points(1.02, hi, n)
        return _cheb_points(-0.97, 0.97, n)
    mu = math.sqrt(abs(fam.lam)) if fam.lam != 0 else 0.0
    if fam.lam == 0:
        hi = 4.0 * fam.B / (fam.paper_A * (fam.paper_A + 1.0))
        return _cheb_points(1e-3 * hi, hi, n)
    if form.branch == "coth":
        return _cheb_points(1.02 * mu, mu * (1.0 + 2.0 * (n + 1.0)), n)
    if form.branch == "tanh":
        return _cheb_points(-0.9 * mu, 0.9 * mu, n)
    w = mu * (1.5 / math.tan(math.pi / (2.0 * (n + 2.0))) + 1.0)
    return _cheb_points(-w, w, n)


def _min_gap(z: np.ndarray) -> float:
    if z.size < 2:
        return math.inf
    s = np.sort(z)
    return float(np.min(np.diff(s)))


def _newton(model: ModelSpec, z0: np.ndarray) -> tuple[np.ndarray, float, int] | None:
    """One damped Newton run; None signals a failed attempt."""
    z = np.array(z0, dtype=float)
    r = bae_residual(model, z)
    rn = float(np.max(np.abs(r)))
    for it in range(1, _MAX_ITER + 1):
        if rn <= _TARGET:
            return z, rn, it - 1
        if _min_gap(z) < 1e-12:
            return None
        try:
            step = np.linalg.solve(bae_jacobian(model, z), -r)
        except np.linalg.LinAlgError:
            return None
        t = 1.0
        while t >= 1e-4:
            zt = z + t * step
            rt = bae_residual(model, zt)
            rtn = float(np.max(np.abs(rt)))
            if np.all(np.isfinite(rt)) and rtn < rn:
                z, r, rn = zt, rt, rtn
                break
            t *= 0.5
        else:
            return None
    if rn <= _ACCEPT:
        return z, rn, _MAX_ITER
    return None


def _finish(model: ModelSpec, n: int, z: np.ndarray, rn: float, it: int,
            strategy: SeedStrategy) -> BaeSolution:
    z = np.sort(z)
    gap_floor = _GAP_FLOOR * (1.0 + float(np.max(np.abs(z))))
    if _min_gap(z) <= gap_floor:
        raise CoincidentRoots(
            f"solved roots nearly coincide (min gap {_min_gap(z):.3e})"
        )
    # residual is permutation-invariant but recheck on the sorted vector
    rn = float(np.max(np.abs(bae_residual(model, z))))
    if rn > _ACCEPT:
        raise NoConvergence(f"residual {rn:.3e} above acceptance {_ACCEPT:.0e}")
    return BaeSolution(N=n, roots=z, residual=rn, iterations=it, strategy=strategy)


def _perturbed(seeds: np.ndarray, attempt: int, n: int) -> np.ndarray:
    rng = np.random.default_rng(7919 * attempt + n)
    c = float(np.mean(seeds))
    w = float(np.max(seeds) - np.min(seeds)) if n > 1 else max(1.0, abs(c))
    z = c + (seeds - c) * _RETRY_SCALES[attempt - 1]
    z = z + 0.05 * w * rng.uniform(-1.0, 1.0, size=n)
    z = np.sort(z)
    # keep retries strictly separated
    for k in range(1, n):
        if z[k] - z[k - 1] < 1e-6 * (1.0 + w):
            z[k] = z[k - 1] + 1e-6 * (1.0 + w)
    return z


def continuation_sweep(model: ModelSpec, n: int) -> BaeSolution:
    """Climb levels 1..n, reusing each solved root set as the next seed.

    The new root enters just above the previous maximum (falling back to
    just below the minimum), which tracks how the root chain grows.
    """
    model.require_level(n)
    if n == 0:
        return BaeSolution(
            N=0,
            roots=np.empty(0),
            residual=0.0,
            iterations=0,
            strategy=SeedStrategy.CONTINUATION,
        )
    prev: np.ndarray | None = None
    for m in range(1, n + 1):
        if m == 1:
            candidates = [np.array([first_level_root(model)])]
        else:
            span = float(np.max(prev) - np.min(prev)) if m > 2 else 1.0
            pad = max(span / (m - 1), 0.5 * (1.0 + abs(float(np.max(prev)))))
            candidates = [
                np.sort(np.append(prev, np.max(prev) + pad)),
                np.sort(np.append(prev, np.min(prev) - pad)),
            ]
        got = None
        for z0 in candidates:
            got = _newton(model, z0)
            if got is not None:
                break
        if got is None:
            raise NoConvergence(
                f"continuation stalled at level {m} (target {n})"
            )
        prev = got[0]
    return _finish(model, n, got[0], got[1], got[2], SeedStrategy.CONTINUATION)


def solve_bae(model: ModelSpec, n: int, seeds=None) -> BaeSolution:
    """Solve the level-n root equations.

    With explicit seeds only that start is tried.  Otherwise the seed
    window plus seven fixed perturbed retries run first, then the
    continuation sweep; everything is deterministic for a given model.
    """
    model.require_level(n)
    if n == 0:
        return BaeSolution(
            N=0,
            roots=np.empty(0),
            residual=0.0,
            iterations=0,
            strategy=SeedStrategy.CHEBYSHEV if seeds is None else SeedStrategy.USER,
        )
    if seeds is not None:
        z0 = np.asarray(seeds, dtype=float)
        if z0.shape != (n,):
            raise NoConvergence(f"need exactly {n} seeds, got shape {z0.shape}")
        got = _newton(model, z0)
        if got is None:
            raise NoConvergence("Newton failed from the supplied seeds")
        return _finish(model, n, *got, SeedStrategy.USER)
    base = _seed_window(model, n)
    attempts = [base] + [_perturbed(base, k, n) for k in range(1, 8)]
    for z0 in attempts:
        got = _newton(model, z0)
        if got is not None:
            return _finish(model, n, *got, SeedStrategy.CHEBYSHEV)
    return continuation_sweep(model, n)
