import os

import pytest

from domainwall import make_single_wall
from domainwall.experiments import ExperimentConfig, run_sweep

SWEEP_DELTAS = [3.0, 4.0, 5.0, 6.0]


def _jobs():
    return max(1, min(4, (os.cpu_count() or 1)))


@pytest.fixture(scope="session")
def mollifier():
    return make_single_wall("mollifier")


@pytest.fixture(scope="session")
def tanh_wall():
    return make_single_wall("tanh")


@pytest.fixture(scope="session")
def sweep_two():
    cfg = ExperimentConfig(n=2, deltas=list(SWEEP_DELTAS), jobs=_jobs())
    return run_sweep(cfg)


@pytest.fixture(scope="session")
def sweep_three():
    cfg = ExperimentConfig(n=3, deltas=list(SWEEP_DELTAS), jobs=_jobs())
    return run_sweep(cfg)
