import numpy as np
import pytest

from inceheun.equations import DcheParams, InceDcheParams, InceGsweParams


class ParamFactory:
    """Seeded random parameter records in the ranges the solvers are tuned for."""

    def __init__(self, seed):
        self.rng = np.random.default_rng(seed)

    def c(self, s=1.0):
        return complex(self.rng.uniform(-s, s), self.rng.uniform(-0.3 * s, 0.3 * s))

    def ince_gswe(self):
        return InceGsweParams(B1=self.c(), B2=1 + self.c(), B3=self.c(), z0=1 + self.c(0.3), q=self.c(2))

    def ince_dche(self):
        return InceDcheParams(B1=self.c(), B2=1 + self.c(), B3=self.c(), q=self.c(2))

    def dche_b2(self):
        return DcheParams(B1=self.c(), B2=2, B3=self.c(), eta=self.c(), omega=self.c(2))


@pytest.fixture
def factory():
    return ParamFactory(20261014)


@pytest.fixture(scope="session")
def pg():
    return InceGsweParams(B1=0.6 + 0.1j, B2=1.3, B3=0.4, z0=1.0, q=0.8)


@pytest.fixture(scope="session")
def pd():
    return InceDcheParams(B1=0.7, B2=1.3 - 0.2j, B3=0.4, q=0.8)


@pytest.fixture(scope="session")
def pc():
    return DcheParams(B1=0.7, B2=2, B3=0.4, eta=0.3, omega=1.1)
