"""Initial-data comparison and the time-slice property."""

import pytest

from dgnet._ratback import rat
from dgnet.maxwell.checks import data_comparison_report, timeslice_check
from dgnet.maxwell.cylinder import Region


def test_data_comparison(small):
    report = data_comparison_report(small.model)
    assert report["ok"]
    assert report["mode0_quasi_iso"]
    assert report["oscillator_acyclic"]
    assert report["observable_cohomology"] == report["data_cohomology"]
    assert all(v < 1e-9 for v in report["sector_defects"].values())


def test_timeslice_on_supporting_slab(small):
    region = Region.slab(rat(-7, 8), rat(7, 8))
    report = timeslice_check(small.config, region)
    assert report["ok"]
    assert all(report["sector_quasi_iso"].values())
    assert report["slab_cohomology"] == report["full_cohomology"]


def test_timeslice_rejects_degenerate_slab(small):
    with pytest.raises(ValueError):
        timeslice_check(small.config, Region.slab(rat(0), rat(0)))
