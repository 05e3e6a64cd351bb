"""The positive-frequency two-point pairing of the cylinder model."""

import pytest

from dgnet.maxwell.checks import antisymmetry_report

CONDITION_KEYS = (
    "m=-1",
    "m in (-p, 0)",
    "m=0",
    "m=1",
    "m in (1, p+1)",
    "m=p+1",
)


def test_condition_report_covers_all_ranges(twopoint_conditions):
    assert set(twopoint_conditions) == set(CONDITION_KEYS)


@pytest.mark.parametrize("key", CONDITION_KEYS)
def test_cochain_map_condition(twopoint_conditions, key):
    assert twopoint_conditions[key] < 1e-9


def test_bisolution_property(bisolution_residual):
    assert bisolution_residual < 1e-9


def test_antisymmetric_part_is_i_times_poisson(small):
    assert antisymmetry_report(small.cochains) < 1e-9
