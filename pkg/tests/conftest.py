import numpy as np
import pytest

from solvable1d import PRESETS, GridSpec


@pytest.fixture(scope="session")
def presets():
    return dict(PRESETS)


def preset_grid(preset) -> GridSpec:
    return GridSpec(preset.x_lo, preset.x_hi, preset.grid_points)


def inset_points(preset, n=101, frac=0.05) -> np.ndarray:
    pad = frac * (preset.x_hi - preset.x_lo)
    return np.linspace(preset.x_lo + pad, preset.x_hi - pad, n)
