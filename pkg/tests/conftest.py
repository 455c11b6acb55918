import numpy as np
import pytest
from hypothesis import strategies as st

from polnoise import DEFAULT_PARAMS, FrequencyGrid, LaserParams, derive_operating_point


@pytest.fixture(scope="session")
def params():
    return DEFAULT_PARAMS


@pytest.fixture(scope="session")
def op(params):
    return derive_operating_point(params)


@pytest.fixture(scope="session")
def grid():
    return FrequencyGrid.default()


@pytest.fixture(scope="session")
def small_grid():
    # coarse grid for property tests that sweep many parameter draws
    return FrequencyGrid(np.concatenate(([0.0], np.geomspace(0.05, 500.0, 60))))


def lasing_params() -> st.SearchStrategy:
    """Well-conditioned above-threshold parameter draws.

    Ranges stay moderate on purpose: the closed forms and the oracle
    are compared at tight tolerance elsewhere; here the goal is
    structural properties over a representative neighbourhood.
    """

    def build(kappa, ka_frac, omega_p, alpha, gamma, gs_extra, r, p):
        return LaserParams(
            kappa=kappa,
            kappa_a=ka_frac * kappa,
            omega_p=omega_p,
            alpha=alpha,
            gamma=gamma,
            gamma_s=gamma + gs_extra,
            r=r,
            p=p,
        )

    return st.builds(
        build,
        kappa=st.floats(20.0, 300.0),
        ka_frac=st.floats(-0.4, 0.6),
        omega_p=st.floats(1.0, 80.0),
        alpha=st.floats(-4.0, 4.0),
        gamma=st.floats(0.5, 3.0),
        gs_extra=st.floats(0.0, 100.0),
        r=st.floats(1.2, 20.0),
        p=st.floats(-1.0, 1.0),
    )
