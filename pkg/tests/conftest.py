import pytest

import dirac_kepler


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile the integration kernels once so timed tests measure solves,
    # not JIT latency
    dirac_kepler.warm_up()
