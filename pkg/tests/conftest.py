"""Shared fixtures: the reference system used across the test suite."""

import math

import pytest

from plasmarray import (
    ArrayGeometry,
    DrudeMetal,
    HostMedium,
    QdParams,
    derive_material,
)
from plasmarray.constants import NM

GAMMA_I = 2.0 * math.pi * 1e8  # rad/s

# reference inputs: silver-like Drude particles of radius 30 nm in a host
# with eps_m = 2.98, 2 nm dots, 30 nm gaps
OMEGA_P_EV = 8.5472
EPS_INF = 5.0
GAMMA_P_EV = 0.018
EPS_M = 2.98
R_MNP = 30.0 * NM
R_QD = 2.0 * NM
GAP = 30.0 * NM


@pytest.fixture(scope="session")
def material():
    metal = DrudeMetal.from_ev(OMEGA_P_EV, EPS_INF, GAMMA_P_EV)
    return derive_material(metal, HostMedium(EPS_M), R_MNP)


@pytest.fixture(scope="session")
def qd_resonant(material):
    return QdParams.at_resonance(material, R_QD, GAMMA_I)


@pytest.fixture
def geometry():
    def _make(n: int, s_z: float = 2.0) -> ArrayGeometry:
        return ArrayGeometry(r=R_MNP, r0=R_QD, s=GAP, n=n, s_z=s_z)

    return _make
