import math

import numpy as np
import pytest

from solvable1d import (
    ConstQ,
    DomainViolation,
    Interval,
    LinearQ,
    NonSinusoidalForm,
    QuadQ,
    QuadraticQ,
    UnviableCoordinate,
    classify,
    coordinate_closed_form,
    coordinate_ode_check,
    make_quad_q,
)
from solvable1d.errors import IntegrationDiverged


def test_interval_membership():
    box = Interval(0.0, 2.0)
    assert box.contains(1.0)
    assert not box.contains(0.0)  # open at the ends
    assert not box.contains(2.0)
    box.require([0.5, 1.9])
    with pytest.raises(DomainViolation):
        box.require([0.5, 2.5])


def test_classify_constant():
    form = classify(QuadraticQ(0.0, 0.0, 3.0))
    assert isinstance(form, ConstQ)
    assert form.gamma == 3.0
    with pytest.raises(UnviableCoordinate):
        classify(QuadraticQ(0.0, 0.0, 0.0))
    with pytest.raises(UnviableCoordinate):
        classify(QuadraticQ(0.0, 0.0, -1.0))


def test_classify_linear_records_shift():
    form = classify(QuadraticQ(0.0, 2.0, 6.0))
    assert isinstance(form, LinearQ)
    assert form.beta == 2.0
    assert form.shift == 3.0
    # negative slope would need z -> -z, which is left to the caller
    with pytest.raises(UnviableCoordinate):
        classify(QuadraticQ(0.0, -2.0, 0.0))


def test_classify_quadratic_branches():
    exp_form = classify(QuadraticQ(4.0, 4.0, 1.0))  # (2z+1)^2
    assert isinstance(exp_form, QuadQ) and exp_form.delta == 0
    assert exp_form.shift == 0.5

    sinh_form = classify(QuadraticQ(1.0, 2.0, 5.0))  # disc 16 > 0
    assert sinh_form.delta == 1
    assert sinh_form.shift == 1.0
    assert sinh_form.scale == pytest.approx(0.5)

    cosh_form = classify(QuadraticQ(1.0, 0.0, -1.0))
    assert cosh_form.delta == -1
    assert cosh_form.x_domain.lo == 0.0

    sin_form = classify(QuadraticQ(-1.0, 0.0, 1.0))
    assert sin_form.delta == -1
    assert sin_form.x_domain.hi == pytest.approx(0.5 * math.pi)

    with pytest.raises(UnviableCoordinate):
        classify(QuadraticQ(-1.0, 0.0, -1.0))  # disc > 0 with alpha < 0
    with pytest.raises(UnviableCoordinate):
        classify(QuadraticQ(-4.0, 4.0, -1.0))  # disc = 0 with alpha < 0


def test_make_quad_q_rejects_bad_delta():
    make_quad_q(1.0, -1)
    with pytest.raises(UnviableCoordinate):
        make_quad_q(1.0, 2)
    with pytest.raises(UnviableCoordinate):
        make_quad_q(-1.0, 0)
    with pytest.raises(UnviableCoordinate):
        make_quad_q(0.0, 0)


def _law_residual(form, x):
    grid = coordinate_closed_form(form, x)
    return grid.max_law_violation(form)


def test_closed_forms_satisfy_their_law():
    cases = [
        (ConstQ(gamma=2.0), np.linspace(-4.0, 4.0, 300)),
        (LinearQ(beta=2.0), np.linspace(0.1, 8.0, 300)),
        (make_quad_q(1.0, 0), np.linspace(-3.0, 3.0, 300)),
        (make_quad_q(1.0, 1), np.linspace(-3.0, 3.0, 300)),
        (make_quad_q(1.0, -1), np.linspace(0.05, 4.0, 300)),
        (make_quad_q(-1.0, -1), np.linspace(-1.5, 1.5, 300)),
        (NonSinusoidalForm(lam=1.0, branch="tanh"), np.linspace(-4.0, 4.0, 300)),
        (NonSinusoidalForm(lam=1.0, branch="coth"), np.linspace(0.1, 5.0, 300)),
        (NonSinusoidalForm(lam=0.0), np.linspace(0.1, 10.0, 300)),
        (NonSinusoidalForm(lam=-1.0), np.linspace(0.1, math.pi - 0.1, 300)),
    ]
    for form, x in cases:
        assert _law_residual(form, x) < 1e-12, form


def test_nonsinusoidal_needs_branch_for_positive_lambda():
    with pytest.raises(UnviableCoordinate):
        NonSinusoidalForm(lam=1.0)
    with pytest.raises(UnviableCoordinate):
        NonSinusoidalForm(lam=2.0, branch="cot")


def test_domains_are_enforced():
    form = make_quad_q(1.0, -1)
    with pytest.raises(DomainViolation):
        coordinate_closed_form(form, np.array([-0.5, 1.0]))
    box = NonSinusoidalForm(lam=-4.0)
    assert box.x_domain.hi == pytest.approx(math.pi / 2.0)


def test_ode_check_reproduces_closed_forms():
    cases = [
        (ConstQ(gamma=2.0), np.linspace(-4.0, 4.0, 200), 1e-10),
        (LinearQ(beta=2.0), np.linspace(0.2, 8.0, 200), 1e-8),
        (make_quad_q(1.0, 1), np.linspace(-3.0, 3.0, 200), 1e-8),
        (make_quad_q(-1.0, -1), np.linspace(-1.4, 1.4, 200), 1e-10),
        (NonSinusoidalForm(lam=1.0, branch="tanh"), np.linspace(-4.0, 4.0, 200), 1e-10),
        (NonSinusoidalForm(lam=0.0), np.linspace(0.5, 10.0, 200), 1e-8),
    ]
    for form, x, tol in cases:
        grid = coordinate_ode_check(form, x)
        assert grid.closed_form_deviation < tol, form
        # tabulated z' is recomputed through the law itself
        assert grid.max_law_violation(form) < 1e-10


def test_ode_check_anchor_and_bad_grids():
    form = ConstQ(gamma=1.0)
    x = np.linspace(-2.0, 2.0, 50)
    grid = coordinate_ode_check(form, x, anchor_x=-1.0)
    assert grid.closed_form_deviation < 1e-10
    with pytest.raises(IntegrationDiverged):
        coordinate_ode_check(form, np.array([0.0, 0.0, 1.0]))
    with pytest.raises(IntegrationDiverged):
        coordinate_ode_check(form, np.array([1.0]))


def test_classify_random_roundtrip():
    # canonical forms must satisfy z'^2 = Q(z) for the *canonical* Q
    rng = np.random.default_rng(7)
    for _ in range(200):
        alpha = float(rng.uniform(-2.0, 2.0))
        beta = float(rng.uniform(-2.0, 2.0))
        gamma = float(rng.uniform(-2.0, 3.0))
        q = QuadraticQ(alpha, beta, gamma)
        try:
            form = classify(q)
        except UnviableCoordinate:
            continue
        lo, hi = form.x_domain.lo, form.x_domain.hi
        lo = max(lo, -3.0) + 0.05
        hi = min(hi, 3.0) - 0.05
        if hi <= lo:
            continue
        x = np.linspace(lo, hi, 64)
        assert _law_residual(form, x) < 1e-10
