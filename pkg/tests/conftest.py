"""
Shared test fixtures.
"""

import numpy as np
import pytest

from qwalk_geophase.core.config import get_settings
from qwalk_geophase.modules.cavity import services as cavity_services
from qwalk_geophase.modules.geophase import services as geophase_services
from qwalk_geophase.modules.numkit import services as numkit_services
from qwalk_geophase.modules.stargeo import services as stargeo_services
from qwalk_geophase.modules.topo import services as topo_services
from qwalk_geophase.modules.walks import services as walks_services

SINGLETONS = [
    (numkit_services, "_numkit_service"),
    (geophase_services, "_geophase_service"),
    (stargeo_services, "_star_geometry_service"),
    (walks_services, "_walk_service"),
    (topo_services, "_topo_service"),
    (cavity_services, "_cavity_service"),
]


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Rebuild settings and service singletons around every test."""
    get_settings.cache_clear()
    for module, name in SINGLETONS:
        monkeypatch.setattr(module, name, None)
    yield
    get_settings.cache_clear()


@pytest.fixture
def rng():
    """Seeded random generator."""
    return np.random.default_rng(get_settings().RANDOM_SEED)


@pytest.fixture
def output_dir(tmp_path):
    """Temporary output directory for exported runs."""
    path = tmp_path / "results"
    path.mkdir()
    return path


@pytest.fixture
def random_state(rng):
    """Factory for random normalized complex states."""

    def make(dim: int) -> np.ndarray:
        psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
        return psi / np.linalg.norm(psi)

    return make
