import pytest

from semigroup_lab import (build_b2, build_b21, build_cyclic, build_ic,
                           build_semilattice_chain, build_tn2)

import acceptance_report


def pytest_terminal_summary(terminalreporter):
    if not acceptance_report.results:
        return
    terminalreporter.section("acceptance criteria")
    for num, desc, ok, elapsed, bound in sorted(acceptance_report.results):
        status = "PASS" if ok and elapsed < bound else "FAIL"
        terminalreporter.write_line(
            f"criterion {num}: {status} ({elapsed:.2f}s, bound {bound:g}s) {desc}")


@pytest.fixture(scope="session")
def ic4():
    return build_ic(4)


@pytest.fixture(scope="session")
def b2():
    return build_b2()


@pytest.fixture(scope="session")
def b21():
    return build_b21()


@pytest.fixture(scope="session")
def t42():
    return build_tn2(4)


@pytest.fixture(scope="session")
def sl2():
    return build_semilattice_chain(2)


@pytest.fixture(scope="session")
def sl3():
    return build_semilattice_chain(3)


@pytest.fixture(scope="session")
def c2():
    return build_cyclic(2)


@pytest.fixture(scope="session")
def c3():
    return build_cyclic(3)
