import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import knot_diagrams, random_knot
from legendrid.grid import (
    GridDiagram, canonical_key, count_components, equivalent, parse, unknot, validate,
)
from legendrid.invariants import (
    alexander, census_signature, rotation_minus, rotation_plus, tb_minus, tb_plus,
)
from legendrid.moves import (
    STAB_TYPES, IllegalMove, IncompatibleSite, Move, applicable_exchanges, apply_exchange,
    apply_move, destabilizations, exchange_neighbors, is_trivial_exchange, stabilize,
)

# (d tb+, d tb-, d rot+, d rot-) for each oriented type
STAB_LAW = {
    "I>": (0, -1, 0, 1),
    "I<": (0, -1, 0, -1),
    "II>": (-1, 0, -1, 0),
    "II<": (-1, 0, 1, 0),
}


def key(g):
    return canonical_key(g.xs, g.os)


@settings(max_examples=300, deadline=None)
@given(knot_diagrams(min_n=3))
def test_exchanges_preserve_contact_data(g):
    sig = census_signature(g)
    for m in applicable_exchanges(g):
        h = apply_exchange(g, m)
        validate(h.n, h.xs, h.os)
        assert census_signature(h) == sig


@settings(max_examples=60, deadline=None)
@given(knot_diagrams(min_n=3, max_n=7))
def test_exchanges_preserve_alexander(g):
    p = alexander(g).normalized()
    for m in applicable_exchanges(g)[:4]:
        assert alexander(apply_exchange(g, m)).normalized() == p


@settings(max_examples=200, deadline=None)
@given(knot_diagrams(min_n=3))
def test_raw_neighbors_agree_with_move_objects(g):
    raw = {(nx, no) for _, nx, no in exchange_neighbors(g.xs, g.os)}
    objs = {(h.xs, h.os) for h in (apply_exchange(g, m) for m in applicable_exchanges(g))}
    assert raw == objs


@settings(max_examples=300, deadline=None)
@given(knot_diagrams(), st.sampled_from(STAB_TYPES), st.integers(0, 7), st.sampled_from("XO"))
def test_stabilization_law(g, t, col, role):
    h = stabilize(g, t, col, role)
    assert h.n == g.n + 1
    assert count_components(h.xs, h.os) == 1
    before = (tb_plus(g), tb_minus(g), rotation_plus(g), rotation_minus(g))
    after = (tb_plus(h), tb_minus(h), rotation_plus(h), rotation_minus(h))
    assert tuple(a - b for a, b in zip(after, before)) == STAB_LAW[t]


@settings(max_examples=40, deadline=None)
@given(knot_diagrams(max_n=6), st.sampled_from(STAB_TYPES), st.integers(0, 5))
def test_stabilization_preserves_alexander(g, t, col):
    h = stabilize(g, t, col, "X")
    assert alexander(h).normalized() == alexander(g).normalized()


@settings(max_examples=300, deadline=None)
@given(knot_diagrams(), st.sampled_from(STAB_TYPES), st.integers(0, 7), st.sampled_from("XO"))
def test_destabilization_undoes_stabilization(g, t, col, role):
    h = stabilize(g, t, col, role)
    back = [d for d in destabilizations(h) if key(d.result) == key(g)]
    assert back, "no destabilization returns to the original diagram"
    assert t in {d.stab_type for d in back}


@settings(max_examples=200, deadline=None)
@given(knot_diagrams(min_n=3))
def test_destabilization_types_follow_the_law(g):
    for d in destabilizations(g):
        low = d.result
        delta = tuple(a - b for a, b in zip(
            (tb_plus(g), tb_minus(g), rotation_plus(g), rotation_minus(g)),
            (tb_plus(low), tb_minus(low), rotation_plus(low), rotation_minus(low))))
        assert delta == STAB_LAW[d.stab_type]
        assert apply_move(g, d.move) == d.result


def test_move_strings_round_trip():
    g = parse("n=5\nX=0,1,2,3,4\nO=3,4,0,1,2\norient=XtoO\n")
    h = stabilize(g, "II<", 2, "O")
    moves = applicable_exchanges(h) + [d.move for d in destabilizations(h)]
    moves.append(Move("stab", 1, "X", "NE"))
    for m in moves:
        assert Move.parse(str(m)) == m


def test_trivial_exchange_detection():
    # in a 3x3 diagram every exchange is a translation
    g = validate(3, (0, 1, 2), (1, 2, 0))
    ms = applicable_exchanges(g)
    assert all(is_trivial_exchange(g, m) for m in ms)


def test_unknot_has_no_exchanges():
    assert applicable_exchanges(unknot()) == []


def test_bad_moves_raise():
    g = unknot()
    with pytest.raises(IncompatibleSite):
        stabilize(g, "III", 0, "X")
    with pytest.raises(IncompatibleSite):
        stabilize(g, "I>", 0, "Z")
    with pytest.raises(IllegalMove):
        apply_move(g, Move("destab", 0, "X", "NE", 0))
    with pytest.raises(IllegalMove):
        apply_move(g, Move("twist", 0))


def test_random_stabilization_sweep():
    rng = random.Random(7)
    for _ in range(2000):
        g = random_knot(rng, rng.randint(2, 8))
        t = rng.choice(STAB_TYPES)
        h = stabilize(g, t, rng.randrange(g.n), rng.choice("XO"))
        d = (tb_plus(h) - tb_plus(g), tb_minus(h) - tb_minus(g))
        assert d == STAB_LAW[t][:2]


def test_nested_columns_give_an_exchange_site():
    g = GridDiagram(4, (0, 1, 2, 3), (3, 2, 0, 1))
    sites = [str(m) for m in applicable_exchanges(g)]
    assert "xch-col:0" in sites
    h = apply_exchange(g, Move("xch-col", 0))
    assert alexander(h).normalized() == alexander(g).normalized()


def test_interleaved_columns_are_not_a_site():
    g = GridDiagram(4, (0, 1, 2, 3), (2, 3, 1, 0))
    assert "xch-col:0" not in [str(m) for m in applicable_exchanges(g)]


def test_two_nested_pairs_give_a_nontrivial_exchange():
    g = GridDiagram(6, (0, 2, 3, 4, 5, 1), (4, 3, 1, 2, 0, 5))
    sites = applicable_exchanges(g)
    assert {"xch-col:0", "xch-col:3"} <= {str(m) for m in sites}
    assert not is_trivial_exchange(g, Move("xch-col", 0))
    assert not equivalent(apply_exchange(g, Move("xch-col", 0)), g)
