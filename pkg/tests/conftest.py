"""Shared fixtures: the shipped surfaces and in-memory stand-ins for disk and time."""

import pytest

from isoruled.clock import SyntheticClock
from isoruled.console import MemoryConsole
from isoruled.filesystem import MemoryFilesystem
from isoruled.holocurve import HoloCurveSpec, holo_framing
from isoruled.surfgeo import OsculatingFraming
from isoruled.weierstrass import SeedSpec, build_surface, series_from_coefficients

SEED_A_ALPHA = [[1.0], [0.0, 1.0]]
SEED_B_ALPHA = [[1.0], [0.0, 1.0], [0.0, 0.0, 0.5], [0.0, 0.0, 0.0, 1.0 / 6.0]]
SEED_B_BASE = 0.25 + 0.25j
HOLO_C_ROWS = [[0, 1], [0, 0, 0.5], [0, 0, 0, 1 / 6], [0, 0, 0, 0, 1 / 24]]


def pytest_configure(config):
    """Configure pytest markers."""
    config.addinivalue_line("markers", "integration: mark test as integration test")


@pytest.fixture(scope="session")
def seed_a_chart():
    """N = 6 surface from alpha0 = (1, z)."""
    seed = SeedSpec(ambient_dim=6, alpha0=series_from_coefficients(SEED_A_ALPHA), name="seed-a")
    return build_surface(seed)


@pytest.fixture(scope="session")
def seed_a(seed_a_chart):
    return OsculatingFraming(seed_a_chart)


@pytest.fixture(scope="session")
def seed_b_chart():
    """N = 8 surface from alpha0 = (1, z, z^2/2, z^3/6); not a holomorphic curve.

    Expanded about a point off the real axis: with real coefficients and a real
    base point the surface is symmetric under z -> conj(z) and its second normal
    plane collapses along the real axis.
    """
    alpha0 = series_from_coefficients(SEED_B_ALPHA).recentered(SEED_B_BASE)
    seed = SeedSpec(ambient_dim=8, alpha0=alpha0, base_point=SEED_B_BASE, name="seed-b")
    return build_surface(seed)


@pytest.fixture(scope="session")
def seed_b(seed_b_chart):
    return OsculatingFraming(seed_b_chart)


@pytest.fixture(scope="session")
def seed_b_real_axis():
    """The same seed expanded about z = 0, degenerate along the real axis."""
    seed = SeedSpec(ambient_dim=8, alpha0=series_from_coefficients(SEED_B_ALPHA), name="seed-b")
    return OsculatingFraming(build_surface(seed))


@pytest.fixture(scope="session")
def holo_c_spec():
    """zeta = (z, z^2/2, z^3/6, z^4/24) in C^4."""
    return HoloCurveSpec.from_coefficients(HOLO_C_ROWS, name="holo-c")


@pytest.fixture(scope="session")
def holo_c(holo_c_spec):
    return holo_framing(holo_c_spec)


@pytest.fixture
def memory_fs():
    return MemoryFilesystem()


@pytest.fixture
def clock():
    return SyntheticClock(start_time=1_700_000_000.0)


@pytest.fixture
def console():
    return MemoryConsole()


TINY_CONFIG = """{
  "name": "tiny",
  "seed": {"ambient_dim": 6, "alpha0": [[1.0], [0.0, 1.0]], "name": "seed-a"},
  "samples": {
    "radius": 0.3,
    "grid": 3,
    "ricci_grid": 2,
    "ruled_points": 3,
    "family_points": 2,
    "cloud_points": 12,
    "thetas": [0.0, 0.5]
  },
  "suites": ["surface", "ruled", "family"]
}
"""


@pytest.fixture
def tiny_config_path(memory_fs):
    """A small seed-a run written to the in-memory filesystem."""
    memory_fs.write_text("/configs/tiny.json", TINY_CONFIG)
    return "/configs/tiny.json"
