"""Localized diamond generators: vanishing and non-vanishing pairings."""

from dgnet._ratback import rat
from dgnet.maxwell.checks import causality_check
from dgnet.maxwell.cylinder import Region


def diamond(theta_num, theta_den):
    return Region.diamond(rat(0), rat(theta_num, theta_den), rat(1, 10))


def test_disjoint_diamonds_commute():
    report = causality_check(diamond(0, 1), diamond(1, 2), n_modes=120)
    assert report["n_modes"] == 120
    # the rigorous truncation bound only becomes small at cutoffs in the
    # thousands; the acceptance suite runs that configuration
    assert report["max_pairing"] < 1e-9
    assert report["pairings"]
    assert all(abs(v) <= report["max_pairing"]
               for v in report["pairings"].values())


def test_overlapping_diamonds_do_not_commute():
    report = causality_check(diamond(0, 1), diamond(1, 20), n_modes=100)
    assert report["max_pairing"] > 1e-3


def test_tail_bound_shrinks_with_cutoff():
    lo = causality_check(diamond(0, 1), diamond(1, 2), n_modes=40)
    hi = causality_check(diamond(0, 1), diamond(1, 2), n_modes=120)
    assert hi["tail_bound"] < lo["tail_bound"]
