import random

import pytest
from hypothesis import given, settings, strategies as st

from legendrid.groups import (
    Budget, Endomorphism, GroupPresentation, abelianization, check_class_preserved,
    check_endo, check_homology_fixed, check_involution_mod_inner, cyclic_reduce, fox_alexander,
    free_reduce, inverse, normal_closure_certificate, parse_presentation, replay, replay_endo,
    serialize_presentation, wirtinger,
)
from legendrid.invariants import _TABLE_KNOTS, _reference_grid, alexander
from legendrid.laurent import LaurentPolynomial as L

from conftest import random_knot

words = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=12).map(tuple)


def naive_reduce(w):
    w = list(w)
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i] == -w[i + 1]:
                del w[i: i + 2]
                changed = True
                break
    return tuple(w)


@given(words)
def test_free_reduce_matches_naive(w):
    assert free_reduce(w) == naive_reduce(w)
    assert free_reduce(w + inverse(w)) == ()


@given(words)
def test_cyclic_reduce_is_reduced(w):
    c = cyclic_reduce(w)
    assert free_reduce(c) == c
    assert not c or c[0] != -c[-1]


def test_trefoil_presentation():
    p = parse_presentation("gens a b\na b a b^ a^ b^\n")
    assert abelianization(p) == (1, ())
    assert fox_alexander(p).normalized() == L({-1: 1, 0: -1, 1: 1})
    assert parse_presentation(serialize_presentation(p)) == p


def test_torsion_abelianization():
    assert abelianization(parse_presentation("gens a\na a")) == (0, (2,))
    assert abelianization(parse_presentation("gens a b\na a\nb b b")) == (0, (6,))
    assert abelianization(parse_presentation("gens a b\na b a^ b^")) == (2, ())


@pytest.mark.parametrize("name", [k for k in _TABLE_KNOTS if k != "unknot"])
def test_wirtinger_alexander_matches_grid_determinant(name):
    g = _reference_grid(name)
    p = wirtinger(g)
    assert abelianization(p) == (1, ())
    assert fox_alexander(p).normalized() == alexander(g).normalized()


def test_wirtinger_random_knots():
    rng = random.Random(5)
    for _ in range(40):
        g = random_knot(rng, rng.randint(3, 7))
        assert fox_alexander(wirtinger(g)).normalized() == alexander(g).normalized()


def test_identity_endomorphism_verified_and_replayable():
    p = parse_presentation("gens a b\na b a b^ a^ b^\n")
    e = Endomorphism.identity(2)
    v = check_endo(p, e)
    assert v.verified and replay_endo(p, e, v)
    assert check_involution_mod_inner(p, e).certificates["conjugator"] == ()
    assert all(check_homology_fixed(p, e, i) for i in range(2))


def test_non_endomorphism_is_unknown_not_verified():
    # a -> a a does not respect the trefoil relation
    p = parse_presentation("gens a b\na b a b^ a^ b^\n")
    e = Endomorphism.parse({"a": "a a"}, p.gens)
    v = check_endo(p, e, Budget(max_length=20, max_depth=4, max_nodes=5000))
    assert not v.verified
    assert not check_homology_fixed(p, e, 0)


def test_non_involution_is_unknown():
    p = GroupPresentation(("a", "b"), ())
    e = Endomorphism.parse({"a": "a b"}, p.gens)
    assert not check_involution_mod_inner(p, e, Budget(max_nodes=2000)).verified


def test_conjugation_automorphism_is_inner_involution():
    # the square of conjugation by a is inner
    p = parse_presentation("gens a b\na b a b^ a^ b^\n")
    e = Endomorphism.parse({"a": "a", "b": "a b a^"}, p.gens)
    v = check_involution_mod_inner(p, e, Budget(max_nodes=3000))
    assert v.verified
    assert check_endo(p, e).verified


def test_class_preserved_by_conjugation():
    p = parse_presentation("gens a b\na b a b^ a^ b^\n")
    e = Endomorphism.parse({"a": "b a b^"}, p.gens)
    w = p.word("a b")
    v = check_class_preserved(p, e, w)
    assert v.verified and v.certificates["abelian"]
    # a -> a a changes the abelian class of a b
    sq = Endomorphism.parse({"a": "a a"}, p.gens)
    small = Budget(max_length=16, max_depth=3, max_nodes=2000)
    assert not check_class_preserved(p, sq, w, small, conj_length=1).certificates["abelian"]


def test_certificate_replay_rejects_tampering():
    rels = (parse_presentation("gens a b\na b a b^ a^ b^").relators)
    word = (1, 2, 1, -2, -1, -2, 1, 2, 1, -2, -1, -2)
    steps = normal_closure_certificate(word, rels)
    assert steps and replay(word, rels, steps)
    assert not replay(word, rels, steps[:-1])
    with pytest.raises(ValueError):
        replay((1, 1), rels, steps)


@pytest.mark.parametrize("pres,endo,word", [("u", "sigma_u", "boundary_u"), ("v", "sigma_v", None)])
def test_packaged_presentations(reg, pres, endo, word):
    p = reg.presentation(pres)
    e = reg.endomorphism(endo, pres)
    assert abelianization(p) == (1, ())
    v = check_endo(p, e)
    assert v.verified and replay_endo(p, e, v)
    assert check_involution_mod_inner(p, e).verified
    assert all(check_homology_fixed(p, e, i) for i in range(p.ngens))
    if word:
        c = check_class_preserved(p, e, reg.word(word, pres))
        assert c.verified and c.certificates["abelian"]


def test_presentations_agree_with_R1(reg):
    target = fox_alexander(wirtinger(reg.diagram("R1"))).normalized()
    assert str(target) == "-t^2 + 5*t - 7 + 5*t^-1 - t^-2"
    for name in ("u", "v"):
        assert fox_alexander(reg.presentation(name)).normalized() == target


@settings(max_examples=30)
@given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=6).map(tuple))
def test_conjugates_of_relator_have_certificates(c):
    rels = parse_presentation("gens a b\na b a b^ a^ b^").relators
    word = free_reduce(c + rels[0] + inverse(c))
    steps = normal_closure_certificate(word, rels)
    assert steps is not None and replay(word, rels, steps)
