import math

import numpy as np
import pytest

from solvable1d import (
    InvalidModel,
    InvalidRoots,
    LevelOutOfRange,
    eigenfunction,
    energy,
    ground_potential,
    nonsinusoidal_model,
    pole_cancellation_check,
    potential_v0,
    sinusoidal_model,
    solve_bae,
    w0,
    w0_prime,
    w0_second,
)
from conftest import inset_points, preset_grid


def test_harmonic_potential_and_spectrum(presets):
    m = presets["shifted-oscillator"].model
    x = np.linspace(-3.0, 3.0, 11)
    assert np.allclose(potential_v0(m, x), x * x - 1.0, atol=1e-14)
    assert [energy(m, n) for n in range(4)] == [0.0, 2.0, 4.0, 6.0]


def test_closed_form_energies_frozen(presets):
    expect = {
        "3d-oscillator": [2.0 * n for n in range(6)],
        "morse": [0.0, 7.0, 12.0, 15.0],
        "scarf2": [0.0, 5.0, 8.0],
        "gen-poschl-teller": [0.0, 5.0, 8.0],
        "scarf1": [6.0 * n + n * n for n in range(6)],
        "coulomb": [-1.0 / (n + 1) ** 2 for n in range(6)],
        "eckart": [-11.0],
        "rosen-morse2": [26.0 / 9.0, 31.0 / 4.0],
        "rosen-morse1": [-1.0 / (n + 2) ** 2 + n * n + 4 * n + 2 for n in range(6)],
    }
    for name, energies in expect.items():
        m = presets[name].model
        got = [energy(m, n) for n in range(len(energies))]
        assert got == pytest.approx(energies, abs=1e-12), name


def test_level_window_enforced(presets):
    with pytest.raises(LevelOutOfRange):
        energy(presets["morse"].model, 4)
    with pytest.raises(LevelOutOfRange):
        energy(presets["eckart"].model, 1)
    with pytest.raises(LevelOutOfRange):
        energy(presets["rosen-morse2"].model, 2)
    with pytest.raises(LevelOutOfRange):
        energy(presets["coulomb"].model, -1)
    assert energy(presets["coulomb"].model, 40) == pytest.approx(-1.0 / 41**2)


def test_model_validation_windows():
    with pytest.raises(InvalidModel):
        sinusoidal_model(-1.0, 0.0, gamma=1.0)
    with pytest.raises(InvalidModel):
        sinusoidal_model(1.0, 0.5, beta=2.0)  # half-line wall needs b < 0
    with pytest.raises(InvalidModel):
        sinusoidal_model(4.0, 2.0, alpha=1.0)  # exponential tail needs b < 0
    with pytest.raises(InvalidModel):
        sinusoidal_model(3.0, -2.0, alpha=1.0, gamma=-1.0)  # needs a + b < 0
    with pytest.raises(InvalidModel):
        sinusoidal_model(1.0, 2.0, alpha=-1.0, gamma=1.0)  # needs a > |b|
    with pytest.raises(InvalidModel):
        nonsinusoidal_model(0.0, 1.0, 0.0)
    with pytest.raises(InvalidModel):
        nonsinusoidal_model(1.0, -1.0, 0.0)  # 1/x tail needs B > 0
    with pytest.raises(InvalidModel):
        nonsinusoidal_model(2.0, 3.0, 1.0, "coth")  # needs B > A^2 sqrt(lam)
    with pytest.raises(InvalidModel):
        nonsinusoidal_model(0.9, 1.0, 1.0, "tanh")
    with pytest.raises(InvalidModel):
        nonsinusoidal_model(1.0, 1.0, 1.0)  # branch required


def test_finite_windows_match_hand_counts(presets):
    assert presets["morse"].model.max_bound_level == 3
    assert presets["scarf2"].model.max_bound_level == 2
    assert presets["gen-poschl-teller"].model.max_bound_level == 2
    assert presets["eckart"].model.max_bound_level == 0
    assert presets["rosen-morse2"].model.max_bound_level == 1
    assert presets["shifted-oscillator"].model.max_bound_level is None
    assert presets["rosen-morse1"].model.max_bound_level is None
    # boundary case: a/alpha integer leaves out the equality level
    assert sinusoidal_model(2.0, -1.0, alpha=1.0).max_bound_level == 1


def test_noncanonical_frame_gives_identical_potential():
    # z -> (z - 1) / 2 recasting of a sinh-type model: same physics
    raw = sinusoidal_model(3.0, 1.0, alpha=1.0, beta=2.0, gamma=5.0)
    canon = sinusoidal_model(3.0, 0.5 * (1.0 - 3.0 * 1.0), alpha=1.0, gamma=1.0)
    x = np.linspace(-3.0, 3.0, 41)
    assert np.allclose(potential_v0(raw, x), potential_v0(canon, x), atol=1e-12)
    assert energy(raw, 2) == energy(canon, 2)


def test_prepotential_derivative_chain(presets):
    # w0_prime is the x derivative of w0, w0_second of w0_prime
    h = 1e-5
    for name, preset in presets.items():
        m = preset.model
        x = inset_points(preset, 9)
        num1 = (w0(m, 0, x + h) - w0(m, 0, x - h)) / (2.0 * h)
        assert np.allclose(num1, w0_prime(m, 0, x), atol=1e-6), name
        num2 = (w0_prime(m, 0, x + h) - w0_prime(m, 0, x - h)) / (2.0 * h)
        assert np.allclose(num2, w0_second(m, 0, x), atol=1e-5), name


def test_level_dependence_only_where_expected(presets):
    sin_model = presets["morse"].model
    ns_model = presets["rosen-morse1"].model
    x = np.linspace(0.5, 2.0, 7)
    assert np.array_equal(w0_prime(sin_model, 0, x), w0_prime(sin_model, 3, x))
    assert not np.allclose(w0_prime(ns_model, 0, x), w0_prime(ns_model, 1, x))


def test_potential_matches_prepotential_combination(presets):
    for name, preset in presets.items():
        m = preset.model
        x = inset_points(preset, 33)
        combo = w0_prime(m, 0, x) ** 2 - w0_second(m, 0, x)
        if m.is_sinusoidal:
            assert np.allclose(potential_v0(m, x), combo, atol=1e-9), name
        else:
            shifted = ground_potential(m, x) + energy(m, 0)
            assert np.allclose(potential_v0(m, x), shifted, atol=1e-9), name


def test_nonsinusoidal_potentials_frozen(presets):
    rm2 = presets["rosen-morse2"].model
    assert potential_v0(rm2, 0.0) == pytest.approx(0.0, abs=1e-14)
    assert potential_v0(rm2, 20.0) == pytest.approx(10.0, abs=1e-12)
    eck = presets["eckart"].model
    assert potential_v0(eck, 20.0) == pytest.approx(-10.0, abs=1e-8)
    clb = presets["coulomb"].model
    assert potential_v0(clb, 0.5) == pytest.approx(-4.0, abs=1e-14)


def test_eigenfunction_shapes_and_nodes(presets):
    # nodes can sit near a half-line wall, so use the verification grid
    for name, preset in presets.items():
        m = preset.model
        top = min(preset.nmax, 2)
        x = preset_grid(preset).interior()
        for n in range(top + 1):
            pair = eigenfunction(m, solve_bae(m, n), x)
            assert pair.values.shape == x.shape
            signs = np.sign(pair.values[np.abs(pair.values) > 1e-9 * np.max(np.abs(pair.values))])
            flips = int(np.sum(signs[1:] * signs[:-1] < 0))
            assert flips == n, (name, n)
        ground = eigenfunction(m, solve_bae(m, 0), x)
        assert np.all(ground.values > 0.0), name


def test_eigenfunction_rejects_bad_roots(presets):
    m = presets["shifted-oscillator"].model
    sol = solve_bae(m, 2)
    x = np.linspace(-2.0, 2.0, 5)

    class Fake:
        N = 2
        roots = sol.roots + 0.1

    with pytest.raises(InvalidRoots):
        eigenfunction(m, Fake(), x)

    class Short:
        N = 2
        roots = sol.roots[:1]

    with pytest.raises(InvalidRoots):
        eigenfunction(m, Short(), x)


def test_pole_cancellation(presets):
    for name, preset in presets.items():
        n = min(preset.nmax, 2)
        sol = solve_bae(preset.model, n)
        assert pole_cancellation_check(preset.model, sol) <= 1e-8, name
    m = presets["morse"].model

    class Fake:
        N = 2
        roots = np.array([0.5, 1.5])

    assert pole_cancellation_check(m, Fake()) > 1e-2
