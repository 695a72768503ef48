import pytest

from thinlie.engine import compute, thin_core
from thinlie.fields import PrimeField
from thinlie.presentations import Presentation, build_theorem41


@pytest.fixture(scope="session")
def free_p3():
    return compute(Presentation(PrimeField(3), ()), 10)


@pytest.fixture(scope="session")
def t41_p3_algebra():
    return compute(build_theorem41(3, 1, 1), 25)


@pytest.fixture(scope="session")
def t41_p3_core(t41_p3_algebra):
    return thin_core(t41_p3_algebra)


@pytest.fixture(scope="session")
def t41_p5_core():
    return thin_core(compute(build_theorem41(5, 1, 1), 30))
