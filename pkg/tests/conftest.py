import pytest
from hypothesis import HealthCheck, settings

from powergraph import groups as grp

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


SMALL_GROUPS = {
    "Z1": lambda: grp.build_cyclic(1),
    "Z6": lambda: grp.build_cyclic(6),
    "Z8": lambda: grp.build_cyclic(8),
    "Z12": lambda: grp.build_cyclic(12),
    "Z2^2": lambda: grp.build_elementary_abelian(2, 2),
    "Z3^2": lambda: grp.build_elementary_abelian(3, 2),
    "Q8": lambda: grp.build_generalized_quaternion(2),
    "Q12": lambda: grp.build_generalized_quaternion(3),
    "D8": lambda: grp.build_dihedral(4),
    "D10": lambda: grp.build_dihedral(5),
    "S3": lambda: grp.build_symmetric(3),
    "S4": lambda: grp.build_symmetric(4),
    "A4": lambda: grp.build_alternating(4),
    "F21": lambda: grp.build_frobenius_7_3(),
    "Heis(3)": lambda: grp.build_heisenberg(3),
    "S3xZ3": lambda: grp.direct_product(grp.build_symmetric(3), grp.build_cyclic(3)),
}


@pytest.fixture(params=sorted(SMALL_GROUPS))
def small_group(request):
    return SMALL_GROUPS[request.param]()


ACCEPTANCE_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE_LINES] = []


@pytest.fixture
def acceptance_log(request):
    return request.config.stash[ACCEPTANCE_LINES]


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
