"""Shared fixtures.

The expensive cylinder-model objects are built once per session and shared
between the unit tests and the acceptance suite.
"""

from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from dgnet.maxwell import (
    kg_model,
    small_model,
    quasifree_state,
    two_point_condition_report,
    bisolution_report,
)
from dgnet.maxwell.state import two_point_table

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def small():
    """The four-generator cylinder model at the default configuration."""
    return small_model()


@pytest.fixture(scope="session")
def small_state(small):
    """The quasi-free functional on the four-generator CCR algebra."""
    return quasifree_state(small.algebra, two_point_table(small.cochains))


@pytest.fixture(scope="session")
def twopoint_conditions(small):
    """The six cochain-condition residuals of the two-point pairing."""
    return two_point_condition_report(small.model)


@pytest.fixture(scope="session")
def bisolution_residual(small):
    """Worst wave-operator probe residual of the two-point pairing."""
    return bisolution_report(small.model)


@pytest.fixture(scope="session")
def kg():
    """The scalar-field nets over the three nested regions."""
    return kg_model(word_cutoff=2)
