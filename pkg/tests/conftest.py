import numpy as np
import pytest

from cavity_grover import (
    Level,
    SystemParams,
    design_schedule,
    figure3_pulse,
    propagate,
)


def random_uniform_column_unitary(rng, n_atoms):
    """Random complex unitary of size (N-1)x(N-1) whose first column is uniform."""
    m = n_atoms - 1
    a = rng.normal(size=(m, m)) + 1j * rng.normal(size=(m, m))
    a[:, 0] = 1.0
    q, r = np.linalg.qr(a)
    # make the first column exactly the (positive) uniform vector
    q = q * (np.abs(r.diagonal()) / r.diagonal())
    return q


@pytest.fixture(scope="session")
def fig3_schedule():
    return design_schedule(8, 0.05, figure3_pulse(8, 0.05), n_samples=4000)


@pytest.fixture(scope="session")
def fig3_trajectory(fig3_schedule):
    params = SystemParams(n_atoms=8, g=1.0)
    return propagate(Level.EFFECTIVE3, params, fig3_schedule)
