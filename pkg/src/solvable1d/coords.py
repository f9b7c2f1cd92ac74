"""Sinusoidal coordinates and their canonical forms.

A coordinate z(x) is *sinusoidal* when (dz/dx)^2 = Q(z) with Q quadratic.
Shifting and positively rescaling z brings Q to one of three canonical
shapes (constant, linear, quadratic), which pin down z(x) in closed form.
A fourth, non-sinusoidal family uses dz/dx = lambda - z^2 instead.

All closed forms fix the branch so that dz/dx > 0 on the open domain
interior; domains are open intervals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainViolation, IntegrationDiverged, UnviableCoordinate

_ODE_STEPS = 10_000  # fixed RK4 resolution across the requested span


@dataclass(frozen=True)
class Interval:
    """Open interval (lo, hi); infinite endpoints allowed."""

    lo: float
    hi: float

    def contains(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return (x > self.lo) & (x < self.hi)

    def require(self, x) -> None:
        x = np.asarray(x, dtype=float)
        ok = self.contains(x)
        if not np.all(ok):
            bad = float(np.atleast_1d(x)[~np.atleast_1d(ok)][0])
            raise DomainViolation(
                f"x={bad!r} outside open domain ({self.lo}, {self.hi})"
            )


@dataclass(frozen=True)
class QuadraticQ:
    """Coefficients of Q(z) = alpha z^2 + beta z + gamma."""

    alpha: float
    beta: float
    gamma: float

    def of(self, z):
        return (self.alpha * z + self.beta) * z + self.gamma


@dataclass(frozen=True)
class ConstQ:
    """Canonical case (i): z'^2 = gamma > 0, z = sqrt(gamma) x on the line."""

    gamma: float
    shift: float = 0.0
    scale: float = 1.0
    x_domain: Interval = field(default_factory=lambda: Interval(-math.inf, math.inf))

    case = "const-q"

    def q_coeffs(self) -> QuadraticQ:
        return QuadraticQ(0.0, 0.0, self.gamma)

    def z_of(self, x):
        return math.sqrt(self.gamma) * np.asarray(x, dtype=float)

    def zprime_of(self, x):
        x = np.asarray(x, dtype=float)
        return np.full_like(x, math.sqrt(self.gamma))


@dataclass(frozen=True)
class LinearQ:
    """Canonical case (ii): z'^2 = beta z, z = (beta/4) x^2 on the half line."""

    beta: float
    shift: float = 0.0
    scale: float = 1.0
    x_domain: Interval = field(default_factory=lambda: Interval(0.0, math.inf))

    case = "linear-q"

    def q_coeffs(self) -> QuadraticQ:
        return QuadraticQ(0.0, self.beta, 0.0)

    def z_of(self, x):
        x = np.asarray(x, dtype=float)
        return 0.25 * self.beta * x * x

    def zprime_of(self, x):
        return 0.5 * self.beta * np.asarray(x, dtype=float)


@dataclass(frozen=True)
class QuadQ:
    """Canonical case (iii): z'^2 = alpha (z^2 + delta).

    alpha > 0: delta = 0 exponential, +1 sinh on the line, -1 cosh on the
    half line.  alpha < 0 (delta = -1): z = sin(mu x) on a finite box.
    """

    alpha: float
    delta: int
    shift: float = 0.0
    scale: float = 1.0
    x_domain: Interval = field(default_factory=lambda: Interval(-math.inf, math.inf))

    case = "quad-q"

    def q_coeffs(self) -> QuadraticQ:
        return QuadraticQ(self.alpha, 0.0, self.alpha * self.delta)

    def z_of(self, x):
        x = np.asarray(x, dtype=float)
        mu = math.sqrt(abs(self.alpha))
        if self.alpha > 0:
            if self.delta == 0:
                return np.exp(mu * x)
            if self.delta == 1:
                return np.sinh(mu * x)
            return np.cosh(mu * x)
        return np.sin(mu * x)

    def zprime_of(self, x):
        x = np.asarray(x, dtype=float)
        mu = math.sqrt(abs(self.alpha))
        if self.alpha > 0:
            if self.delta == 0:
                return mu * np.exp(mu * x)
            if self.delta == 1:
                return mu * np.cosh(mu * x)
            return mu * np.sinh(mu * x)
        return mu * np.cos(mu * x)


def _ns_domain(lam: float, branch: str | None) -> Interval:
    if lam > 0 and branch == "tanh":
        return Interval(-math.inf, math.inf)
    if lam > 0:
        return Interval(0.0, math.inf)
    if lam == 0:
        return Interval(0.0, math.inf)
    return Interval(0.0, math.pi / math.sqrt(-lam))


@dataclass(frozen=True)
class NonSinusoidalForm:
    """Coordinate law dz/dx = lambda - z^2.

    lambda > 0 has two branches (tanh on the line, coth on the half line);
    lambda = 0 gives z = 1/x; lambda < 0 gives z = sqrt(|lambda|) cot.
    """

    lam: float
    branch: str | None = None
    shift: float = 0.0
    scale: float = 1.0
    x_domain: Interval = field(init=False)

    case = "non-sinusoidal"

    def __post_init__(self):
        if self.lam > 0 and self.branch not in ("tanh", "coth"):
            raise UnviableCoordinate(
                "lambda > 0 requires branch 'tanh' or 'coth'"
            )
        object.__setattr__(self, "x_domain", _ns_domain(self.lam, self.branch))

    def z_of(self, x):
        x = np.asarray(x, dtype=float)
        if self.lam > 0:
            mu = math.sqrt(self.lam)
            if self.branch == "tanh":
                return mu * np.tanh(mu * x)
            return mu / np.tanh(mu * x)
        if self.lam == 0:
            return 1.0 / x
        mu = math.sqrt(-self.lam)
        return mu / np.tan(mu * x)

    def zprime_of(self, x):
        z = self.z_of(x)
        return self.lam - z * z


CanonicalForm = ConstQ | LinearQ | QuadQ | NonSinusoidalForm


@dataclass(frozen=True)
class CoordinateGrid:
    """Tabulated coordinate: z and dz/dx on a strictly increasing x grid."""

    x_values: np.ndarray
    z_values: np.ndarray
    zprime_values: np.ndarray
    closed_form_deviation: float | None = None

    def max_law_violation(self, form: CanonicalForm) -> float:
        """Relative violation of (dz/dx)^2 against the coordinate law."""
        if isinstance(form, NonSinusoidalForm):
            rhs = (form.lam - self.z_values**2) ** 2
        else:
            rhs = form.q_coeffs().of(self.z_values)
        lhs = self.zprime_values**2
        return float(np.max(np.abs(lhs - rhs) / (1.0 + np.abs(rhs))))


def classify(q: QuadraticQ) -> CanonicalForm:
    """Bring z'^2 = Q(z) to canonical form by shifting/rescaling z.

    The recorded transform is z_hat = scale * (z + shift) with scale > 0.
    Raises UnviableCoordinate for combinations with no real coordinate
    (gamma <= 0 constants, negative-slope linear, alpha < 0 with positive
    discriminant, degenerate alpha < 0).
    """
    alpha, beta, gamma = q.alpha, q.beta, q.gamma
    if alpha == 0.0 and beta == 0.0:
        if gamma <= 0.0:
            raise UnviableCoordinate("constant Q needs gamma > 0")
        return ConstQ(gamma=gamma)
    if alpha == 0.0:
        if beta < 0.0:
            raise UnviableCoordinate(
                "linear Q needs beta > 0 (use the reflected coordinate "
                "z -> -z, i.e. flip the sign of b, to recast)"
            )
        return LinearQ(beta=beta, shift=gamma / beta)
    disc = 4.0 * alpha * gamma - beta * beta
    shift = beta / (2.0 * alpha)
    if disc == 0.0:
        if alpha < 0.0:
            raise UnviableCoordinate("alpha < 0 with zero discriminant collapses z")
        return QuadQ(alpha=alpha, delta=0, shift=shift)
    if alpha < 0.0 and disc > 0.0:
        raise UnviableCoordinate(
            "alpha < 0 with positive discriminant needs an imaginary rescaling"
        )
    scale = 2.0 * abs(alpha) / math.sqrt(abs(disc))
    delta = 1 if disc > 0.0 else -1
    mu = math.sqrt(abs(alpha))
    if alpha > 0:
        domain = Interval(0.0, math.inf) if delta == -1 else Interval(-math.inf, math.inf)
    else:
        domain = Interval(-0.5 * math.pi / mu, 0.5 * math.pi / mu)
    return QuadQ(alpha=alpha, delta=delta, shift=shift, scale=scale, x_domain=domain)


def _default_quad_domain(alpha: float, delta: int) -> Interval:
    mu = math.sqrt(abs(alpha))
    if alpha > 0:
        return Interval(0.0, math.inf) if delta == -1 else Interval(-math.inf, math.inf)
    return Interval(-0.5 * math.pi / mu, 0.5 * math.pi / mu)


def make_quad_q(alpha: float, delta: int) -> QuadQ:
    """Canonical quadratic form with the matching default domain."""
    if alpha > 0 and delta not in (-1, 0, 1):
        raise UnviableCoordinate("delta must be -1, 0 or +1")
    if alpha < 0 and delta != -1:
        raise UnviableCoordinate("alpha < 0 admits only delta = -1")
    if alpha == 0:
        raise UnviableCoordinate("alpha must be nonzero for the quadratic case")
    return QuadQ(alpha=alpha, delta=delta, x_domain=_default_quad_domain(alpha, delta))


def coordinate_closed_form(form: CanonicalForm, x) -> CoordinateGrid:
    """Evaluate the closed-form z(x), dz/dx on a grid inside the domain."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    form.x_domain.require(x)
    return CoordinateGrid(x, form.z_of(x), form.zprime_of(x))


def _ode_rhs(form: CanonicalForm):
    if isinstance(form, NonSinusoidalForm):
        return lambda z: form.lam - z * z
    q = form.q_coeffs()

    def rhs(z):
        val = q.of(z)
        if val < 0.0:
            raise IntegrationDiverged(
                f"Q(z) went negative (z={z!r}); integration left the domain"
            )
        return math.sqrt(val)

    return rhs


def _rk4_segment(rhs, z: float, x0: float, x1: float, h_target: float) -> float:
    n = max(1, int(math.ceil(abs(x1 - x0) / h_target)))
    h = (x1 - x0) / n
    for _ in range(n):
        k1 = rhs(z)
        k2 = rhs(z + 0.5 * h * k1)
        k3 = rhs(z + 0.5 * h * k2)
        k4 = rhs(z + h * k3)
        z = z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not math.isfinite(z) or abs(z) > 1e12:
            raise IntegrationDiverged(f"coordinate blew up near x={x1!r}")
    return z


def coordinate_ode_check(
    form: CanonicalForm,
    x,
    anchor_x: float | None = None,
) -> CoordinateGrid:
    """Re-derive z(x) by integrating the coordinate ODE with fixed-step RK4.

    Starts from the closed-form value at one interior anchor (grid midpoint
    by default) and marches to every requested point.  The returned grid
    carries the max pointwise deviation from the closed form.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.size < 2:
        raise IntegrationDiverged("need at least two grid points")
    if np.any(np.diff(x) <= 0):
        raise IntegrationDiverged("x grid must be strictly increasing")
    form.x_domain.require(x)

    if anchor_x is None:
        idx = x.size // 2
        anchor_x = float(x[idx])
    else:
        form.x_domain.require(anchor_x)
        idx = int(np.argmin(np.abs(x - anchor_x)))
        anchor_x = float(x[idx])

    rhs = _ode_rhs(form)
    h = (x[-1] - x[0]) / _ODE_STEPS
    z = np.empty_like(x)
    z[idx] = float(form.z_of(anchor_x))
    for j in range(idx + 1, x.size):
        z[j] = _rk4_segment(rhs, z[j - 1], x[j - 1], x[j], h)
    for j in range(idx - 1, -1, -1):
        z[j] = _rk4_segment(rhs, z[j + 1], x[j + 1], x[j], h)

    if isinstance(form, NonSinusoidalForm):
        zp = form.lam - z * z
    else:
        zp = np.sqrt(form.q_coeffs().of(z))
    deviation = float(np.max(np.abs(z - form.z_of(x))))
    return CoordinateGrid(x, z, zp, closed_form_deviation=deviation)
