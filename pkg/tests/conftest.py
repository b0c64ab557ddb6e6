"""Shared fixtures for the focalfront test suite."""

import numpy as np
import pytest

from focalfront.config import Settings
from focalfront.geometry.jets import Jet2, JetVec3
from focalfront.geometry.surface import frame_maps
from focalfront.services.fixtures import get_fixture

WORKED_EXAMPLES = ("sw-ce", "cbf-sw", "cbf-cbk", "cbf-clp")


@pytest.fixture
def settings() -> Settings:
    return Settings()


@pytest.fixture
def surface():
    """Registered surface by name."""
    return get_fixture


@pytest.fixture
def frame_of(settings):
    """FrontFrame of a registered surface at its marked point."""

    def build(name: str, order: int = 6):
        spec = get_fixture(name)
        return frame_maps(spec, spec.point_float, order, settings)

    return build


def _coeffs(a):
    if isinstance(a, JetVec3):
        return [c.coeffs for c in a.components]
    return [a.coeffs]


@pytest.fixture
def assert_jets_close():
    """Coefficientwise comparison of two jets (or jet vectors) up to the lower order."""

    def check(a: Jet2 | JetVec3, b: Jet2 | JetVec3, tol: float = 1e-8) -> None:
        diff = a - b
        scale = max(1.0, a.max_abs(), b.max_abs())
        worst = max(float(np.max(np.abs(c))) for c in _coeffs(diff))
        assert worst <= tol * scale, f"jets differ by {worst:.3e} (scale {scale:.3e})"

    return check
