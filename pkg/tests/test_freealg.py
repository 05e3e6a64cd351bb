"""Presented DGAs: PBW rewriting, star involution, morphisms, wire format."""

import pytest
from hypothesis import given, strategies as st

from dgnet.freealg import (
    CCRRelationSet,
    CutoffError,
    DGAMorphism,
    GeneratorSpec,
    NCElement,
    algebra_from_json,
    algebra_to_json,
    check_morphism,
    check_star,
    compose_morphisms,
    graded_commutator,
    identity_morphism,
    is_weak_equivalence_dga,
    monomial_label,
    pbw_monomials,
    PresentedDGA,
    star,
)
from dgnet.maxwell import ccr_algebra
from dgnet.scalar import I, QQi, qq

ALG = ccr_algebra(word_cutoff=6)
NAMES = ALG.names()

words = st.lists(st.sampled_from(NAMES), max_size=6).map(tuple)
scalars = st.builds(
    QQi,
    st.builds(lambda a, b: qq(a, b).re, st.integers(-9, 9), st.integers(1, 4)),
    st.builds(lambda a, b: qq(a, b).re, st.integers(-9, 9), st.integers(1, 4)),
)
raw_terms = st.dictionaries(words, scalars, max_size=4)


def homogeneous(terms):
    degs = {ALG.word_degree(w) for w in terms}
    return len(degs) <= 1


@given(words, scalars)
def test_rewriting_confluence(w, c):
    left = ALG.normal_form({w: c}, strategy="leftmost")
    right = ALG.normal_form({w: c}, strategy="rightmost")
    assert left == right


@given(raw_terms)
def test_normal_form_idempotent(terms):
    x = ALG.normal_form(terms)
    assert ALG.normal_form(x.terms) == x


@given(words)
def test_normal_form_words_are_sorted(w):
    x = ALG.normal_form({w: 1})
    for word in x.terms:
        orders = [ALG.order(g) for g in word]
        assert orders == sorted(orders)
        # no repeated odd generator survives
        for a, b in zip(word, word[1:]):
            assert not (a == b and ALG.degree(a) % 2)


@given(raw_terms)
def test_normal_form_preserves_degree(terms):
    if not homogeneous(terms):
        return
    degs = {ALG.word_degree(w) for w in terms}
    x = ALG.normal_form(terms)
    assert {ALG.word_degree(w) for w in x.terms} <= degs


def test_cutoff_enforced():
    with pytest.raises(CutoffError):
        ALG.normal_form({("a1",) * 7: 1})


def test_commutators_realize_tau():
    for a in NAMES:
        for b in NAMES:
            comm = graded_commutator(ALG.gen(a), ALG.gen(b))
            assert comm == I * ALG.tau(a, b) * ALG.one()


def test_ccr_relation_set_completion():
    rel = CCRRelationSet(
        {("e", "e_dagger"): 1, ("a2", "a1"): 1},
        {n: ALG.degree(n) for n in NAMES},
    )
    # even-even pairs complete antisymmetrically, odd-odd symmetrically
    assert rel.tau("a1", "a2") == QQi(-1)
    assert rel.tau("e_dagger", "e") == QQi(1)
    assert rel.tau("a1", "e") == 0


def test_ccr_relation_set_rejects_bad_degree():
    with pytest.raises(ValueError):
        CCRRelationSet({("a1", "e"): 1}, {n: ALG.degree(n) for n in NAMES})


def pbw_count(cutoff):
    """Monomials e_dagger^a a1^b a2^c e^d with a, d in {0, 1} and total
    length at most the cutoff."""
    total = 0
    for a in (0, 1):
        for d in (0, 1):
            n = cutoff - a - d
            if n >= 0:
                total += (n + 1) * (n + 2) // 2
    return total


@pytest.mark.parametrize("cutoff", range(7))
def test_pbw_monomial_count_formula(cutoff):
    monos = pbw_monomials(ALG, cutoff)
    assert len(monos) == pbw_count(cutoff)
    assert len({monomial_label(w) for w in monos}) == len(monos)


def test_star_involution_table():
    check_star(ALG)  # raises on an inconsistent table
    assert star(ALG.gen("e")) == QQi(-1) * ALG.gen("e")
    assert star(ALG.gen("a1")) == ALG.gen("a1")


short_words = st.lists(st.sampled_from(NAMES), max_size=2).map(tuple)
short_terms = st.dictionaries(short_words, scalars, max_size=3)


@given(short_terms, short_terms)
def test_star_properties(t1, t2):
    x = ALG.normal_form(t1)
    y = ALG.normal_form(t2)
    assert star(star(x)) == x
    assert star(x * y) == star(y) * star(x)
    assert star(x + y) == star(x) + star(y)


@given(short_terms, short_terms, short_terms)
def test_algebra_axioms(t1, t2, t3):
    x, y, z = (ALG.normal_form(t) for t in (t1, t2, t3))
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


def _resolved_pair():
    """A presentation with a contractible pair (w, q) adjoined to one
    degree-0 generator, and its collapse onto that generator."""
    a = PresentedDGA(
        [
            GeneratorSpec("w", -1, {"q": 1}),
            GeneratorSpec("v", 0, {}),
            GeneratorSpec("q", 0, {}),
        ],
        word_cutoff=4,
    )
    b = PresentedDGA([GeneratorSpec("u", 0, {})], word_cutoff=4)
    phi = DGAMorphism(
        a, b, {"w": b.zero(), "q": b.zero(), "v": b.gen("u")}
    )
    return a, b, phi


def test_morphism_composition_and_identity():
    a, b, phi = _resolved_pair()
    check_morphism(phi)
    ida, idb = identity_morphism(a), identity_morphism(b)
    comp = compose_morphisms(idb, phi)
    for g in a.names():
        assert comp.apply(a.gen(g)) == phi.apply(a.gen(g))
    comp2 = compose_morphisms(phi, ida)
    for g in a.names():
        assert comp2.apply(a.gen(g)) == phi.apply(a.gen(g))


def test_weak_equivalence_detects_acyclic_collapse():
    a, b, phi = _resolved_pair()
    # the pair (w, q) with dw = q is contractible: phi kills it and is a
    # quasi-isomorphism onto the constants in every truncation
    assert is_weak_equivalence_dga(phi, 3)
    # the identity of the CCR algebra is a weak equivalence as well
    assert is_weak_equivalence_dga(identity_morphism(ALG), 2)


def test_algebra_json_round_trip():
    obj = algebra_to_json(ALG)
    back = algebra_from_json(obj)
    assert back.names() == ALG.names()
    assert back.word_cutoff == ALG.word_cutoff
    for a in NAMES:
        assert back.degree(a) == ALG.degree(a)
        for b in NAMES:
            assert back.tau(a, b) == ALG.tau(a, b)
        assert back.star_table[a] == ALG.star_table[a]
    assert algebra_to_json(back) == obj


@given(words, words)
def test_multiplication_matches_concatenation(w1, w2):
    if len(w1) + len(w2) > 6:
        return
    x = NCElement(ALG, dict(ALG.normal_form({w1: 1}).terms))
    y = NCElement(ALG, dict(ALG.normal_form({w2: 1}).terms))
    assert x * y == ALG.normal_form({w1 + w2: 1})
