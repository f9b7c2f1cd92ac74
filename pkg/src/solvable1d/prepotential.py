"""Model construction from a prepotential W0 over a chosen coordinate.

Every model is specified by two low-order polynomials: the quadratic Q in
z'^2 = Q(z) and the linear P1 with W0' z' = P1(z) (sinusoidal family), or
the law z' = lambda - z^2 together with W0'(N) = -(A+N) z + B/(A+N)
(non-sinusoidal family).  Units are hbar = 2m = 1; the potential returned
by :func:`potential_v0` makes the closed-form level energies exact
eigenvalues of -d^2/dx^2 + V.

Level-N eigenfunctions are exp(-W0) times a polynomial whose roots must
satisfy algebraic root equations (see :mod:`solvable1d.bethe`).

Non-sinusoidal sign convention: for the tanh branch the normalizable
regime of the construction has a *negative* leading coefficient, so a
user-facing A > 0 is mapped internally to paper_A = -A.  The coth,
reciprocal and cot branches use paper_A = A unchanged.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coords import (
    CanonicalForm,
    ConstQ,
    LinearQ,
    NonSinusoidalForm,
    QuadQ,
    QuadraticQ,
    classify,
)
from .errors import InvalidModel, InvalidRoots, LevelOutOfRange

_ROOT_RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class SinusoidalModel:
    """P1 coefficients (a, b) in the canonical coordinate frame."""

    a: float
    b: float
    form: ConstQ | LinearQ | QuadQ


@dataclass(frozen=True)
class NonSinusoidalModel:
    """User-facing parameters A > 0, B and the coordinate law parameter."""

    A: float
    B: float
    lam: float
    form: NonSinusoidalForm

    @property
    def paper_A(self) -> float:
        if self.form.branch == "tanh":
            return -self.A
        return self.A


@dataclass(frozen=True)
class ModelSpec:
    """A validated model: family parameters plus its bound-state window.

    max_bound_level is the largest admissible N, or None when the window
    is unbounded.
    """

    name: str
    family: SinusoidalModel | NonSinusoidalModel
    max_bound_level: int | None

    @property
    def form(self) -> CanonicalForm:
        return self.family.form

    @property
    def is_sinusoidal(self) -> bool:
        return isinstance(self.family, SinusoidalModel)

    def level_in_window(self, n: int) -> bool:
        return n >= 0 and (self.max_bound_level is None or n <= self.max_bound_level)

    def require_level(self, n: int) -> None:
        if not self.level_in_window(n):
            win = (
                "unbounded"
                if self.max_bound_level is None
                else f"0..{self.max_bound_level}"
            )
            raise LevelOutOfRange(
                f"level N={n} outside bound-state window {win} for model "
                f"'{self.name}'"
            )


def _strict_floor(x: float) -> int:
    """Largest integer strictly below x (floor with exact-integer backoff)."""
    f = math.floor(x)
    return f - 1 if f == x else f


def sinusoidal_model(
    a: float,
    b: float,
    alpha: float = 0.0,
    beta: float = 0.0,
    gamma: float = 0.0,
    name: str = "sinusoidal",
) -> ModelSpec:
    """Build and validate a sinusoidal-coordinate model.

    Q may be given in any frame; it is canonicalized and (a, b) are mapped
    along (a is frame-invariant, b picks up scale*(b - a*shift)).
    """
    form = classify(QuadraticQ(alpha, beta, gamma))
    b_canon = form.scale * (b - a * form.shift)
    if a <= 0:
        raise InvalidModel("need a > 0 for a normalizable ground state")
    max_level: int | None = None
    if isinstance(form, LinearQ):
        if b_canon >= 0:
            raise InvalidModel("linear-Q models need b < 0 (canonical frame)")
    elif isinstance(form, QuadQ):
        if form.alpha > 0:
            if form.delta == 0 and b_canon >= 0:
                raise InvalidModel("exponential-coordinate models need b < 0")
            if form.delta == -1 and a + b_canon >= 0:
                raise InvalidModel("cosh-coordinate models need a + b < 0")
            max_level = _strict_floor(a / form.alpha)
        else:
            if a <= abs(b_canon):
                raise InvalidModel("sin-coordinate models need a > |b|")
    return ModelSpec(name=name, family=SinusoidalModel(a, b_canon, form), max_bound_level=max_level)


def nonsinusoidal_model(
    A: float,
    B: float,
    lam: float,
    branch: str | None = None,
    name: str = "non-sinusoidal",
) -> ModelSpec:
    """Build and validate a non-sinusoidal model (A > 0 in all branches)."""
    if A <= 0:
        raise InvalidModel("need A > 0")
    if lam > 0 and branch not in ("tanh", "coth"):
        raise InvalidModel("lambda > 0 needs branch='tanh' or 'coth'")
    if lam <= 0:
        branch = None
    form = NonSinusoidalForm(lam=lam, branch=branch)
    max_level: int | None = None
    if lam == 0:
        if B <= 0:
            raise InvalidModel("reciprocal-coordinate models need B > 0")
    elif branch == "coth":
        # level N normalizable iff (A+N)^2 < B / sqrt(lam)
        limit = B / math.sqrt(lam)
        if A * A >= limit:
            raise InvalidModel("coth-branch models need B > A^2 sqrt(lambda)")
        max_level = _strict_floor(math.sqrt(limit) - A)
    elif branch == "tanh":
        # level N normalizable iff (N-A)^2 > |B| / sqrt(lam) with N < A
        q = math.sqrt(abs(B) / math.sqrt(lam))
        if A <= q:
            raise InvalidModel("tanh-branch models need A > sqrt(|B|/sqrt(lambda))")
        max_level = _strict_floor(A - q)
    return ModelSpec(
        name=name,
        family=NonSinusoidalModel(A, B, lam, form),
        max_bound_level=max_level,
    )


# --- raw evaluators (no window validation; susy partner math reuses these)


def sin_w0_prime_raw(form, a: float, b: float, x):
    z = form.z_of(x)
    return (a * z + b) / form.zprime_of(x)


def sin_w0_second_raw(form, a: float, b: float, x):
    q = form.q_coeffs()
    z = form.z_of(x)
    return a - (a * z + b) * (q.alpha * z + 0.5 * q.beta) / q.of(z)


def sin_w0_raw(form, a: float, b: float, x):
    """Closed-form antiderivative of W0' for each canonical case."""
    x = np.asarray(x, dtype=float)
    if isinstance(form, ConstQ):
        return 0.5 * a * x * x + (b / math.sqrt(form.gamma)) * x
    if isinstance(form, LinearQ):
        return 0.25 * a * x * x + (2.0 * b / form.beta) * np.log(x)
    al = form.alpha
    mu = math.sqrt(abs(al))
    if al > 0:
        if form.delta == 0:
            return (a / mu) * x - (b / al) * np.exp(-mu * x)
        if form.delta == 1:
            return (a / al) * np.log(np.cosh(mu * x)) + (b / al) * np.arctan(
                np.sinh(mu * x)
            )
        return (a / al) * np.log(np.sinh(mu * x)) + (b / al) * np.log(
            np.tanh(0.5 * mu * x)
        )
    c = np.cos(mu * x)
    s = np.sin(mu * x)
    return (-a * np.log(c) + b * np.log((1.0 + s) / c)) / abs(al)


def ns_w0_prime_raw(form, paper_A: float, B: float, level: int, x):
    an = paper_A + level
    return -an * form.z_of(x) + B / an


def ns_w0_second_raw(form, paper_A: float, B: float, level: int, x):
    z = form.z_of(x)
    return -(paper_A + level) * (form.lam - z * z)


def ns_w0_raw(form, paper_A: float, B: float, level: int, x):
    # integral of z is -log|lam - z^2| / 2, since z'' = -2 z z'; the log is
    # expanded per branch to avoid cancellation where z approaches sqrt(lam)
    x = np.asarray(x, dtype=float)
    an = paper_A + level
    lam = form.lam
    if lam > 0:
        mu = math.sqrt(lam)
        ch = np.cosh(mu * x) if form.branch == "tanh" else np.sinh(mu * x)
        log_term = math.log(lam) - 2.0 * np.log(np.abs(ch))
    elif lam == 0:
        log_term = -2.0 * np.log(x)
    else:
        mu = math.sqrt(-lam)
        log_term = math.log(-lam) - 2.0 * np.log(np.sin(mu * x))
    return 0.5 * an * log_term + (B / an) * x


def ns_potential_raw(form, paper_A: float, B: float, x):
    z = form.z_of(x)
    return paper_A * (paper_A - 1.0) * z * z - 2.0 * B * z


# --- model-level API


def w0_prime(model: ModelSpec, level: int, x):
    """dW0/dx at x; the sinusoidal prepotential is level-independent."""
    fam = model.family
    if isinstance(fam, SinusoidalModel):
        model.form.x_domain.require(x)
        return sin_w0_prime_raw(fam.form, fam.a, fam.b, x)
    model.require_level(level)
    model.form.x_domain.require(x)
    return ns_w0_prime_raw(fam.form, fam.paper_A, fam.B, level, x)


def w0_second(model: ModelSpec, level: int, x):
    fam = model.family
    if isinstance(fam, SinusoidalModel):
        model.form.x_domain.require(x)
        return sin_w0_second_raw(fam.form, fam.a, fam.b, x)
    model.require_level(level)
    model.form.x_domain.require(x)
    return ns_w0_second_raw(fam.form, fam.paper_A, fam.B, level, x)


def w0(model: ModelSpec, level: int, x):
    fam = model.family
    if isinstance(fam, SinusoidalModel):
        model.form.x_domain.require(x)
        return sin_w0_raw(fam.form, fam.a, fam.b, x)
    model.require_level(level)
    model.form.x_domain.require(x)
    return ns_w0_raw(fam.form, fam.paper_A, fam.B, level, x)


def potential_v0(model: ModelSpec, x):
    """The model potential V(x).

    Sinusoidal family: V = W0'^2 - W0'' (ground energy 0).  Non-sinusoidal
    family: V = A(A-1) z^2 - 2 B z, against which the closed-form level
    energies are absolute.
    """
    fam = model.family
    model.form.x_domain.require(x)
    if isinstance(fam, SinusoidalModel):
        wp = sin_w0_prime_raw(fam.form, fam.a, fam.b, x)
        return wp * wp - sin_w0_second_raw(fam.form, fam.a, fam.b, x)
    return ns_potential_raw(fam.form, fam.paper_A, fam.B, x)


def energy(model: ModelSpec, n: int) -> float:
    """Closed-form energy of level n (LevelOutOfRange outside the window)."""
    model.require_level(n)
    fam = model.family
    if isinstance(fam, SinusoidalModel):
        alpha = fam.form.q_coeffs().alpha
        return 2.0 * fam.a * n - alpha * n * n
    an = fam.paper_A + n
    return -fam.B**2 / an**2 - fam.lam * (fam.paper_A * (2 * n + 1) + n * n)


@dataclass(frozen=True)
class Eigenpair:
    """Level N eigenfunction tabulated on a grid (unnormalized)."""

    N: int
    energy: float
    x_values: np.ndarray
    values: np.ndarray
    roots: np.ndarray


def eigenfunction(model: ModelSpec, solution, x) -> Eigenpair:
    """phi_N = exp(-W0) * prod_k (z - z_k) on the given grid.

    ``solution`` is a BaeSolution (or any object with N and roots);
    its roots are re-checked against the root equations.
    """
    from .bethe import bae_residual

    n = int(solution.N)
    model.require_level(n)
    roots = np.asarray(solution.roots, dtype=float)
    if roots.size != n:
        raise InvalidRoots(f"expected {n} roots, got {roots.size}")
    if n > 0:
        resid = np.max(np.abs(bae_residual(model, roots)))
        if resid > _ROOT_RESIDUAL_TOL:
            raise InvalidRoots(
                f"root equations violated: max residual {resid:.3e}"
            )
    x = np.atleast_1d(np.asarray(x, dtype=float))
    vals = np.exp(-w0(model, n, x))
    if n > 0:
        z = model.form.z_of(x)
        for zk in roots:
            vals = vals * (z - zk)
    return Eigenpair(
        N=n, energy=energy(model, n), x_values=x, values=vals, roots=roots
    )


def pole_cancellation_check(model: ModelSpec, solution) -> float:
    """Max residue coefficient left at the roots z_k.

    The level-N potential picks up a simple pole at each root unless its
    residue (the left side of the root equations) vanishes; this returns
    the worst absolute residue, 0.0 for N = 0.
    """
    from .bethe import bae_residual

    roots = np.asarray(solution.roots, dtype=float)
    if roots.size == 0:
        return 0.0
    return float(np.max(np.abs(bae_residual(model, roots))))
