import math

import pytest

from casimir_kit.model import AtomModel, CavityConfig, PerfectMirror, PlasmaMirror

# natural units with lambda_P = 1
OMEGA_P = 2.0 * math.pi


@pytest.fixture
def mirror():
    return PlasmaMirror(OMEGA_P)


def plasma_cavity(x, area=1.0):
    """Identical plasma mirrors at L / lambda_P = x."""
    return CavityConfig.identical(PlasmaMirror(OMEGA_P), x, area)


def perfect_cavity(L, area=1.0):
    return CavityConfig.identical(PerfectMirror(), L, area)


@pytest.fixture
def hydrogen_like():
    # one transition, lambda_A = 1
    return AtomModel.single(2.0 * math.pi, 1.0)
