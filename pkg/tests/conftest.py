"""Shared fixtures: the expensive sequences, fits and tables are built once."""

import pytest

from polyspiral.geometry import centers_all, centers_odd
from polyspiral.metrics import (
    TARGET_SPIRAL,
    distance_table,
    fit_motion_to_approximant,
    fit_motion_to_spiral,
)


@pytest.fixture(scope="session")
def p_seq():
    return centers_all(2000)


@pytest.fixture(scope="session")
def q_seq():
    return centers_odd(2000)


@pytest.fixture(scope="session")
def p_fit(p_seq):
    return fit_motion_to_approximant(p_seq, (500, 1000))


@pytest.fixture(scope="session")
def p_records(p_seq, p_fit):
    motion, _ = p_fit
    return distance_table(p_seq, motion, 2000)


@pytest.fixture(scope="session")
def p_spiral_fit(p_seq, p_fit):
    motion, _ = p_fit
    return fit_motion_to_spiral(p_seq, TARGET_SPIRAL, (500, 1000), init=motion)


@pytest.fixture(scope="session")
def q_fit(q_seq):
    return fit_motion_to_spiral(q_seq, TARGET_SPIRAL, (500, 1000))


@pytest.fixture(scope="session")
def q_records(q_seq, q_fit):
    motion, _ = q_fit
    return distance_table(q_seq, motion, 2000)
