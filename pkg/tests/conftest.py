from __future__ import annotations

import pytest

from quintic_witness.certificate import build_certificate
from quintic_witness.construct import ConstructionConfig, build_example
from quintic_witness.curves import implicitize_plane_cubic, standard_nodal_cubic
from quintic_witness.poly import MultiPoly


@pytest.fixture(scope="session")
def c0():
    return standard_nodal_cubic()


@pytest.fixture(scope="session")
def g2(c0):
    return implicitize_plane_cubic(c0)


@pytest.fixture(scope="session")
def fermat():
    return MultiPoly.parse("z0^5 + z1^5 + z2^5 + z3^5 + z4^5")


@pytest.fixture(scope="session")
def flagship():
    """The seed-42 build (about 20 s); shared by every test that needs it."""
    return build_example(ConstructionConfig(seed=42))


@pytest.fixture(scope="session")
def flagship_certificate(flagship):
    return build_certificate(flagship)
