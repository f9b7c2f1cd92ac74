"""Partner potentials, shape invariance and exact-arithmetic identities.

With W0 the ground prepotential, the pair V_- = W0'^2 - W0'' and
V_+ = W0'^2 + W0'' share their spectrum except for the ground level,
and A = d/dx + W0' annihilates the ground state.  For every model here
the partner is the *same* potential at stepped parameters:

  sinusoidal      (a, b) -> (a - alpha, b - beta/2),  R = 2a - alpha
  non-sinusoidal  (A, B) -> (A + 1, B),
                  R = B^2 (1/A^2 - 1/(A+1)^2) - lam (2A + 1)

in the frame of the model's own Q (for canonical frames the sinusoidal
step touches only the coefficients actually present).  Level energies
then telescope: E_n = E_0 + sum of the first n energy shifts.

The same relations are restated over exact rationals so the parameter
map can be checked with zero numerical tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ParameterWindowExceeded
from .prepotential import (
    ModelSpec,
    NonSinusoidalModel,
    SinusoidalModel,
    energy,
    ns_w0_prime_raw,
    ns_w0_second_raw,
    sin_w0_prime_raw,
    sin_w0_second_raw,
)

ExactRational = Fraction


@dataclass(frozen=True)
class SiMap:
    """One shape-invariance step: old parameters, new ones, energy shift."""

    case: str
    params0: tuple[float, float]
    params1: tuple[float, float]
    energy_shift: float


def _sin_step(a: float, b: float, alpha: float, beta: float):
    return (a - alpha, b - 0.5 * beta), 2.0 * a - alpha


def _ns_step(A: float, B: float, lam: float):
    r = B * B * (1.0 / A**2 - 1.0 / (A + 1.0) ** 2) - lam * (2.0 * A + 1.0)
    return (A + 1.0, B), r


def si_parameter_map(model: ModelSpec) -> SiMap:
    """Parameters of the partner model and the constant energy shift.

    Raises ParameterWindowExceeded when the step flips the sign that
    anchors the model's normalizable class (shrinking-a quadratic case,
    growing-A tanh case); windows that merely tighten are not an error,
    the relation stays an algebraic identity.
    """
    fam = model.family
    if isinstance(fam, SinusoidalModel):
        q = fam.form.q_coeffs()
        (a1, b1), r = _sin_step(fam.a, fam.b, q.alpha, q.beta)
        if q.alpha > 0 and a1 <= 0:
            raise ParameterWindowExceeded(
                f"partner coefficient a={a1!r} loses the bound-state sign"
            )
        return SiMap(model.form.case, (fam.a, fam.b), (a1, b1), r)
    (a1, b1), r = _ns_step(fam.paper_A, fam.B, fam.lam)
    if fam.form.branch == "tanh" and a1 >= 0:
        raise ParameterWindowExceeded(
            f"partner coefficient A={a1!r} loses the bound-state sign"
        )
    return SiMap(model.form.case, (fam.paper_A, fam.B), (a1, b1), r)


def ground_potential(model: ModelSpec, x) -> np.ndarray:
    """V_- = W0'^2 - W0'' (ground energy removed)."""
    fam = model.family
    model.form.x_domain.require(x)
    if isinstance(fam, SinusoidalModel):
        wp = sin_w0_prime_raw(fam.form, fam.a, fam.b, x)
        return wp * wp - sin_w0_second_raw(fam.form, fam.a, fam.b, x)
    wp = ns_w0_prime_raw(fam.form, fam.paper_A, fam.B, 0, x)
    return wp * wp - ns_w0_second_raw(fam.form, fam.paper_A, fam.B, 0, x)


def partner_potential(model: ModelSpec, x) -> np.ndarray:
    """V_+ = W0'^2 + W0''; its levels are the model's with the ground removed."""
    fam = model.family
    model.form.x_domain.require(x)
    if isinstance(fam, SinusoidalModel):
        wp = sin_w0_prime_raw(fam.form, fam.a, fam.b, x)
        return wp * wp + sin_w0_second_raw(fam.form, fam.a, fam.b, x)
    wp = ns_w0_prime_raw(fam.form, fam.paper_A, fam.B, 0, x)
    return wp * wp + ns_w0_second_raw(fam.form, fam.paper_A, fam.B, 0, x)


def si_residual_numeric(model: ModelSpec, x) -> float:
    """max_x |V_+(x; p0) - V_-(x; p1) - R| on the given grid.

    The stepped potential is evaluated straight from the prepotential
    derivatives, so parameter sets outside the model constructors'
    windows are still compared (the identity does not need them).
    """
    fam = model.family
    model.form.x_domain.require(x)
    m = si_parameter_map(model)
    vp = partner_potential(model, x)
    if isinstance(fam, SinusoidalModel):
        a1, b1 = m.params1
        wp = sin_w0_prime_raw(fam.form, a1, b1, x)
        vm = wp * wp - sin_w0_second_raw(fam.form, a1, b1, x)
    else:
        a1, b1 = m.params1
        wp = ns_w0_prime_raw(fam.form, a1, b1, 0, x)
        vm = wp * wp - ns_w0_second_raw(fam.form, a1, b1, 0, x)
    return float(np.max(np.abs(vp - vm - m.energy_shift)))


def spectrum_via_si(model: ModelSpec, n: int) -> float:
    """Level energy rebuilt by telescoping the shape-invariance shifts."""
    model.require_level(n)
    fam = model.family
    total = 0.0 if isinstance(fam, SinusoidalModel) else energy(model, 0)
    if isinstance(fam, SinusoidalModel):
        q = fam.form.q_coeffs()
        a, b = fam.a, fam.b
        for _ in range(n):
            (a1, b1), r = _sin_step(a, b, q.alpha, q.beta)
            if q.alpha > 0 and a1 <= 0:
                raise ParameterWindowExceeded(
                    f"telescoping left the bound-state window at a={a1!r}"
                )
            total += r
            a, b = a1, b1
        return total
    A, B = fam.paper_A, fam.B
    for _ in range(n):
        (a1, b1), r = _ns_step(A, B, fam.lam)
        if fam.form.branch == "tanh" and a1 >= 0:
            raise ParameterWindowExceeded(
                f"telescoping left the bound-state window at A={a1!r}"
            )
        total += r
        A, B = a1, b1
    return total


def _deriv_uniform4(v: np.ndarray, h: float) -> np.ndarray:
    """Fourth-order first derivative on a uniform grid (5-point stencils)."""
    d = np.empty_like(v)
    d[2:-2] = (-v[4:] + 8.0 * v[3:-1] - 8.0 * v[1:-3] + v[:-4]) / (12.0 * h)
    d[0] = (-25 * v[0] + 48 * v[1] - 36 * v[2] + 16 * v[3] - 3 * v[4]) / (12.0 * h)
    d[1] = (-3 * v[0] - 10 * v[1] + 18 * v[2] - 6 * v[3] + v[4]) / (12.0 * h)
    d[-1] = (25 * v[-1] - 48 * v[-2] + 36 * v[-3] - 16 * v[-4] + 3 * v[-5]) / (12.0 * h)
    d[-2] = (3 * v[-1] + 10 * v[-2] - 18 * v[-3] + 6 * v[-4] - v[-5]) / (12.0 * h)
    return d


def numerical_derivative(x: np.ndarray, values: np.ndarray) -> np.ndarray:
    """d(values)/dx; fourth order on uniform grids, second order otherwise."""
    x = np.asarray(x, dtype=float)
    values = np.asarray(values, dtype=float)
    dx = np.diff(x)
    if x.size >= 5 and np.allclose(dx, dx[0], rtol=1e-10, atol=0.0):
        return _deriv_uniform4(values, (x[-1] - x[0]) / (x.size - 1))
    return np.gradient(values, x, edge_order=2)


def apply_lowering(model: ModelSpec, x, values, level: int = 0) -> np.ndarray:
    """(d/dx + W0') applied to a tabulated function.

    Applied to the tabulated level-``level`` ground factor exp(-W0) this
    returns stencil-sized noise; anything else keeps an O(1) remainder.
    """
    from .prepotential import w0_prime

    x = np.asarray(x, dtype=float)
    values = np.asarray(values, dtype=float)
    return numerical_derivative(x, values) + w0_prime(model, level, x) * values


# --- exact-rational restatement -------------------------------------------

_HALF = Fraction(1, 2)


def exact_si_map_sinusoidal(
    a: Fraction, b: Fraction, alpha: Fraction, beta: Fraction, gamma: Fraction
) -> tuple[tuple[Fraction, Fraction], Fraction]:
    """Stepped (a, b) and shift R over exact rationals, any Q frame."""
    a = Fraction(a)
    b = Fraction(b)
    return (a - Fraction(alpha), b - _HALF * Fraction(beta)), 2 * a - Fraction(alpha)


def exact_si_identities_sinusoidal(
    a0, b0, a1, b1, r, alpha, beta, gamma
) -> tuple[Fraction, Fraction, Fraction]:
    """The three coefficient identities behind V_+(p0) = V_-(p1) + R.

    Each entry is exactly zero iff the corresponding power of z matches;
    (alternate branch note: (a1, b1) = (-a0, -b0) also zeroes them, with
    R = 0, but flips the sign that normalizability needs, so the map
    never takes it.)
    """
    a0, b0, a1, b1, r = map(Fraction, (a0, b0, a1, b1, r))
    alpha, beta, gamma = map(Fraction, (alpha, beta, gamma))
    i1 = a0 * a0 - a1 * a1 - r * alpha
    i2 = (
        2 * (a0 * b0 - a1 * b1)
        + _HALF * beta * (a0 + a1)
        - alpha * (b0 + b1)
        - r * beta
    )
    i3 = (
        b0 * b0
        - b1 * b1
        + gamma * (a0 + a1)
        - _HALF * beta * (b0 + b1)
        - r * gamma
    )
    return i1, i2, i3


def exact_si_map_nonsinusoidal(
    A: Fraction, B: Fraction, lam: Fraction
) -> tuple[tuple[Fraction, Fraction], Fraction]:
    A = Fraction(A)
    B = Fraction(B)
    lam = Fraction(lam)
    r = B * B * (Fraction(1) / (A * A) - Fraction(1) / ((A + 1) * (A + 1))) - lam * (
        2 * A + 1
    )
    return (A + 1, B), r


def exact_si_identities_nonsinusoidal(
    a0, b0, a1, b1, r, lam
) -> tuple[Fraction, Fraction, Fraction]:
    """Coefficient identities (z^2, z, constant) for the stepped-A pair."""
    a0, b0, a1, b1, r, lam = map(Fraction, (a0, b0, a1, b1, r, lam))
    i1 = a0 * (a0 + 1) - a1 * (a1 - 1)
    i2 = 2 * (b1 - b0)
    i3 = (b0 * b0 / (a0 * a0) - lam * a0) - (b1 * b1 / (a1 * a1) + lam * a1) - r
    return i1, i2, i3
