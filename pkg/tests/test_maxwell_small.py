"""The four-generator cylinder model: retraction, cohomology, pairing table."""

from dgnet.complexes import cohomology, is_quasi_iso
from dgnet.maxwell import TAU_TABLE, harmonic_complex
from dgnet.maxwell.green import poisson
from dgnet.maxwell.small import GENERATOR_DEGREES, GENERATOR_ORDER
from dgnet.scalar import QQi


def test_harmonic_complex_shape():
    l = harmonic_complex()
    assert l.dims == {-1: 1, 0: 2, 1: 1}
    assert cohomology(l).dims == {-1: 1, 0: 2, 1: 1}


def test_retraction_is_identity(small):
    assert small.retraction_is_identity()


def test_inclusion_is_quasi_iso(small):
    assert is_quasi_iso(small.c)
    assert small.sectorwise_quasi_iso()


def test_cohomology_retraction(small):
    assert small.cohomology_retraction()


def test_truncated_cohomology_dims(small):
    dims = small.model.cohomology_dims()
    assert dims == {-1: 1, 0: 2, 1: 1}
    assert dims.get(-2, 0) == 0


def test_generator_cochains_are_cocycles(small):
    for name, cochain in small.cochains.items():
        assert cochain.m == GENERATOR_DEGREES[name]
        d = cochain.d()
        if d is not None:
            assert d.form.is_zero()


def test_tau_table_exact(small):
    table = small.tau_table()
    assert table[("e", "e_dagger")] == QQi(1)
    assert table[("e_dagger", "e")] == QQi(1)
    assert table[("a2", "a1")] == QQi(1)
    assert table[("a1", "a2")] == QQi(-1)
    for x in ("a1", "a2"):
        for y in ("e", "e_dagger"):
            assert table[(x, y)] == QQi(0)
            assert table[(y, x)] == QQi(0)


def test_tau_residual_below_tolerance(small):
    worst = 0.0
    for x in GENERATOR_ORDER:
        for y in GENERATOR_ORDER:
            cx, cy = small.cochains[x], small.cochains[y]
            if cx.m + cy.m != 0:
                continue
            v = poisson(cx, cy)
            target = complex(small.tau_table()[(x, y)])
            worst = max(worst, abs(v.value - target))
    assert worst < 1e-9


def test_tau_matches_relations(small):
    assert small.tau_matches_relations()


def test_algebra_generators(small):
    a = small.algebra
    assert {g: a.degree(g) for g in a.names()} == GENERATOR_DEGREES
    assert dict(TAU_TABLE) == {("e", "e_dagger"): 1, ("a2", "a1"): 1}
