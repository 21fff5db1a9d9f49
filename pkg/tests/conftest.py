import pytest
from hypothesis import HealthCheck, settings

from corep.hopf import build_A, build_Hefuv, truncate_coalgebra

settings.register_profile(
    "corep", derandomize=True, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("corep")


@pytest.fixture(scope="session")
def hefuv():
    return build_Hefuv()


@pytest.fixture(scope="session")
def H1(hefuv):
    return truncate_coalgebra(hefuv, 1)


@pytest.fixture(scope="session")
def H2(hefuv):
    return truncate_coalgebra(hefuv, 2)


@pytest.fixture(scope="session")
def H3(hefuv):
    return truncate_coalgebra(hefuv, 3)


@pytest.fixture(scope="session")
def H4(hefuv):
    return truncate_coalgebra(hefuv, 4)


@pytest.fixture(scope="session")
def A4():
    return truncate_coalgebra(build_A(4, 2, 1, -1))


@pytest.fixture(scope="session")
def hefuv_comodules(H2):
    from corep.comodule import build_paper_comodules

    return build_paper_comodules(H2, ks=(1, 2, 5))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.RESULTS:
        terminalreporter.write_line(line)
