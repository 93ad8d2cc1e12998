import numpy as np
import pytest

from loopspec import geometry


@pytest.fixture(scope="session")
def circle_curve():
    return geometry.circle(1.0, 1024)


@pytest.fixture(scope="session")
def circle_fine():
    return geometry.circle(1.0, 2048)


@pytest.fixture(scope="session")
def ellipse_curve():
    return geometry.ellipse(2.0, 1.0, 1024)


@pytest.fixture(scope="session")
def wiggly_curve():
    return geometry.wiggly_loop(amplitude=0.3, lobes=3, m=1024)


@pytest.fixture(scope="session")
def ellipse_points():
    t = np.arange(512) * 2.0 * np.pi / 512
    return np.column_stack((2.0 * np.cos(t), np.sin(t)))
