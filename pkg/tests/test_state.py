"""The quasi-free state, its GNS radical, and the global observable net."""

import random

import pytest

from dgnet.maxwell.state import (
    GlobalAlgebra,
    comparison_morphism,
    degree_zero_gram,
    gns_module,
    gns_radical,
    koszul_extract_sign,
    left_ideal_defect,
    observable_net,
    radical_contains,
    two_point_table,
)
from dgnet.nets import validate_net
from dgnet.scalar import QQi, ZERO

GENS = ("e_dagger", "a1", "a2", "e")


def _matchings(idx):
    if not idx:
        yield []
        return
    a = idx[0]
    for k in range(1, len(idx)):
        rest = idx[1:k] + idx[k + 1:]
        for m in _matchings(rest):
            yield [(a, idx[k])] + m


def wick_oracle(state, word):
    """Independent pair-partition sum: enumerate all perfect matchings and
    compute each Koszul sign from scratch by counting odd-odd inversions."""
    if not word:
        return QQi(1)
    if len(word) % 2:
        return ZERO
    degs = [state.algebra.degree(g) for g in word]
    total = ZERO
    for matching in _matchings(tuple(range(len(word)))):
        seq = [k for pair in matching for k in pair]
        sign = 1
        for p in range(len(seq)):
            for q in range(p + 1, len(seq)):
                if (seq[p] > seq[q]
                        and degs[seq[p]] % 2 and degs[seq[q]] % 2):
                    sign = -sign
        prod = QQi(sign)
        for i, j in matching:
            prod = prod * state.pair(word[i], word[j])
        total = total + prod
    return total


def test_normalization_and_odd_vanishing(small_state):
    assert small_state(()) == QQi(1)
    assert small_state(("e",)) == ZERO
    assert small_state(("a1", "a2", "e")) == ZERO


def test_koszul_extract_sign():
    assert koszul_extract_sign([1, 1, 1], 2) == -1
    assert koszul_extract_sign([1, 0, 1], 2) == 1
    assert koszul_extract_sign([1, 1, 1], 1) == 1


def test_word_values_match_pair_partition_oracle(small_state):
    rng = random.Random(5)
    words = [tuple(rng.choice(GENS) for _ in range(n))
             for n in (2, 2, 4, 4, 4, 6) for _ in range(8)]
    for w in words:
        assert small_state(w) == wick_oracle(small_state, w), w


def test_state_vanishes_on_relation_ideal(small_state):
    """omega(u (gh - eps hg - i tau(g,h)) v) = 0 on raw tensor words."""
    algebra = small_state.algebra
    tau = algebra.relations.table
    rng = random.Random(7)
    for _ in range(20):
        u = tuple(rng.choice(GENS) for _ in range(rng.randint(0, 2)))
        v = tuple(rng.choice(GENS) for _ in range(rng.randint(0, 2)))
        g, h = rng.choice(GENS), rng.choice(GENS)
        eps = (-1) ** (algebra.degree(g) * algebra.degree(h))
        t = tau.get((g, h))
        tau_term = (QQi(0, 1) * t * small_state(u + v)
                    if t is not None else ZERO)
        lhs = (small_state(u + (g, h) + v)
               - QQi(eps) * small_state(u + (h, g) + v)
               - tau_term)
        assert lhs == ZERO, (u, g, h, v)


def test_state_descends_to_normal_form(small_state):
    algebra = small_state.algebra
    rng = random.Random(9)
    for _ in range(30):
        w = tuple(rng.choice(GENS) for _ in range(rng.randint(0, 4)))
        nf = algebra.normal_form({w: 1})
        total = ZERO
        for word, c in nf.terms.items():
            total = total + c * small_state(word)
        assert total == small_state(w), w


def test_gns_radical_quotient_dims(small_state):
    report = gns_radical(small_state, 3)
    assert report.quotient_dims() == {-1: 6, 0: 13, 1: 6}


def test_gns_radical_stable_under_row_cutoff(small_state):
    base = gns_radical(small_state, 3)
    probed = gns_radical(small_state, 3, row_cutoff=4)
    assert probed.quotient_dims() == base.quotient_dims()
    for n in base.monomials:
        assert base.dim(n) == probed.dim(n)


def test_unit_and_field_not_in_radical(small_state):
    report = gns_radical(small_state, 3)
    assert not radical_contains(small_state, report, ())
    assert not radical_contains(small_state, report, ("e",))


def test_radical_is_left_ideal(small_state):
    report = gns_radical(small_state, 3)
    assert left_ideal_defect(small_state, report, test_cutoff=3) == 0


def test_degree_zero_gram(small_state):
    mono, g, eig = degree_zero_gram(small_state, 1)
    assert len(mono) == 3
    for i in range(3):
        for j in range(3):
            assert g[i][j] == g[j][i].conj()
    assert eig == pytest.approx([-0.5, 0.5, 1.0], abs=1e-12)


def test_gns_module_builds(small_state):
    report = gns_radical(small_state, 3)
    m = gns_module(small_state.algebra, report, cutoff=3)
    r = m.realization()
    dims = {n: r.dim(n) for n in r.complex.degrees() if r.dim(n)}
    assert dims == {-1: 6, 0: 13, 1: 6}


def test_global_algebra_and_net(small):
    g = GlobalAlgebra(small.config, word_cutoff=2)
    assert len(g.algebra.names()) == 20
    assert len(g.subalgebra_names("U0")) == 4
    assert len(g.subalgebra_names("U1")) == 12
    net = observable_net(g)
    validate_net(net)
    cmp = comparison_morphism(small, g)
    assert cmp.target is g.algebra


def test_global_two_point_table_extends_local(small, small_state):
    g = GlobalAlgebra(small.config, word_cutoff=2)
    local = two_point_table(small.cochains)
    rename = {"e_dagger": "edag_M", "a1": "a1_M", "a2": "a2_M", "e": "e_M"}
    for (x, y), v in local.items():
        assert g.omega2[(rename[x], rename[y])] == v
