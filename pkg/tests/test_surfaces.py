import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from legendrid.grid import count_components, equivalent, unknot
from legendrid.surfaces import (
    CodeSyntaxError, Disconnected, DividingCode, RectanglePatch, SurfaceDiagram, LabelCoverageError, NonSurfaceIncidence,
    SurfaceError, SurfaceSyntaxError, TripleSideSharing, boundary, boundary_components,
    codes_isomorphic, euler_characteristic, genus, orientable, parse_code, parse_surface,
    serialize_code, serialize_surface, single_rectangle, validate_surface, _level_fans,
)

# -- surface diagrams -----------------------------------------------------------------

def test_single_rectangle_is_a_disc():
    s = single_rectangle()
    assert euler_characteristic(s) == 1
    assert orientable(s) and genus(s) == 0
    assert equivalent(boundary(s), unknot())


def test_identical_rectangles_are_rejected():
    with pytest.raises(NonSurfaceIncidence):
        validate_surface(3, 3, [(0, 1, 0, 1), (0, 1, 0, 1)])


def test_three_rectangles_on_one_corner_are_rejected():
    with pytest.raises(TripleSideSharing):
        validate_surface(4, 4, [(0, 1, 0, 1), (1, 2, 1, 2), (1, 3, 1, 3)])


def test_corner_inside_another_rectangle_is_rejected():
    with pytest.raises(NonSurfaceIncidence):
        validate_surface(4, 4, [(0, 2, 0, 2), (1, 3, 1, 3)])


def test_two_fans_on_one_level_are_rejected():
    patches = [(0, 1, 0, 1), (3, 0, 2, 3)]
    raw = SurfaceDiagram(4, 4, tuple(RectanglePatch(*p) for p in patches))
    assert _level_fans(raw)[(0, 0)] == 2
    with pytest.raises(NonSurfaceIncidence):
        validate_surface(4, 4, patches)


def test_chain_of_three_discs_is_a_disc():
    s = validate_surface(4, 4, [(0, 1, 0, 1), (2, 3, 2, 3), (1, 2, 3, 0)])
    assert euler_characteristic(s) == 1 and genus(s) == 0
    assert all(k == 1 for k in _level_fans(s).values())


def test_diagonal_pair_is_a_disc():
    s = validate_surface(3, 3, [(0, 1, 0, 1), (1, 2, 1, 2)])
    assert euler_characteristic(s) == 1
    assert orientable(s) and genus(s) == 0
    b = boundary(s)
    assert b.n == 3 and count_components(b.xs, b.os) == 1
    assert equivalent(b, unknot()) or b.n == 3


def test_disjoint_discs_are_disconnected():
    s = validate_surface(4, 4, [(0, 1, 0, 1), (2, 3, 2, 3)])
    assert euler_characteristic(s) == 2
    assert boundary_components(s) == 2
    with pytest.raises(Disconnected):
        genus(s)


def test_mobius_band():
    s = validate_surface(3, 3, [(0, 1, 0, 1), (1, 2, 1, 2), (2, 0, 2, 0)])
    assert not orientable(s)
    assert euler_characteristic(s) == 0
    assert boundary_components(s) == 1
    with pytest.raises(SurfaceError):
        genus(s)


def test_reversed_orientation_reverses_boundary():
    s = validate_surface(3, 3, [(0, 1, 0, 1), (1, 2, 1, 2)])
    b, r = boundary(s), boundary(s, orientation=-1)
    assert (b.xs, b.os) == (r.os, r.xs)


def test_surface_text_round_trip():
    s = validate_surface(3, 3, [(0, 1, 0, 1), (1, 2, 1, 2)])
    assert parse_surface("# two discs\n" + serialize_surface(s)) == s
    with pytest.raises(SurfaceSyntaxError):
        parse_surface("levels 3 3\nrect 0 1 0\n")
    with pytest.raises(SurfaceSyntaxError):
        parse_surface("rect 0 1 0 1\n")


@pytest.mark.parametrize("name,bnd", [("Pi1", "R1"), ("Pi2", "R7")])
def test_packaged_surfaces(reg, name, bnd):
    s = reg.surface(name)
    assert euler_characteristic(s) == -3
    assert orientable(s)
    assert boundary_components(s) == 1
    assert genus(s) == 2
    assert equivalent(boundary(s), reg.diagram(bnd))


# -- dividing codes ---------------------------------------------------------------------

def perm_cycles(perm):
    seen, out = set(), []
    for x in sorted(perm):
        if x in seen:
            continue
        cyc = [x]
        seen.add(x)
        while perm[cyc[-1]] not in seen:
            cyc.append(perm[cyc[-1]])
            seen.add(cyc[-1])
        out.append(tuple(cyc))
    return tuple(out)


def code_from_perms(a, b):
    return DividingCode(perm_cycles(a), perm_cycles(b))


def brute_isomorphic(c1, c2, reflection=False):
    a1, b1 = c1.permutations()
    a2, b2 = c2.permutations()
    if len(a1) != len(a2):
        return False
    targets = [(a2, b2)]
    if reflection:
        targets.append(({v: k for k, v in a2.items()}, {v: k for k, v in b2.items()}))
    labels = sorted(a1)
    for image in itertools.permutations(sorted(a2)):
        f = dict(zip(labels, image))
        for ta, tb in targets:
            if all(f[a1[x]] == ta[f[x]] and f[b1[x]] == tb[f[x]] for x in labels):
                return True
    return False


@st.composite
def small_codes(draw, n=None):
    n = n or draw(st.integers(1, 6))
    a = draw(st.permutations(range(1, n + 1)))
    b = draw(st.permutations(range(1, n + 1)))
    return code_from_perms(dict(zip(range(1, n + 1), a)), dict(zip(range(1, n + 1), b)))


@settings(max_examples=150)
@given(small_codes(), small_codes())
def test_isomorphism_matches_brute_force(c1, c2):
    assert codes_isomorphic(c1, c2) == brute_isomorphic(c1, c2)
    assert codes_isomorphic(c1, c2, True) == brute_isomorphic(c1, c2, True)


@settings(max_examples=60)
@given(st.integers(2, 6).flatmap(lambda n: st.tuples(small_codes(n), small_codes(n))))
def test_isomorphism_matches_brute_force_same_size(pair):
    c1, c2 = pair
    assert codes_isomorphic(c1, c2) == brute_isomorphic(c1, c2)


def relabel(code, rng):
    n = code.n_labels
    image = list(range(1, n + 1))
    rng.shuffle(image)
    f = dict(zip(range(1, n + 1), image))
    return DividingCode(tuple(tuple(f[x] for x in t) for t in code.family_a),
                        tuple(tuple(f[x] for x in t) for t in code.family_b))


@pytest.mark.parametrize("name", ["dc1", "dc2", "fig5"])
def test_relabelled_code_is_isomorphic(reg, name):
    c = reg.code(name)
    rng = random.Random(name)
    for _ in range(5):
        assert codes_isomorphic(c, relabel(c, rng))


@pytest.mark.parametrize("name", ["dc1", "dc2", "fig5"])
def test_reversed_cycles_need_the_reflection_flag(reg, name):
    c = reg.code(name)
    rev = DividingCode(tuple(t[::-1] for t in c.family_a), tuple(t[::-1] for t in c.family_b))
    assert codes_isomorphic(c, rev, allow_reflection=True)
    assert codes_isomorphic(c, rev) == brute_isomorphic(c, rev) if c.n_labels <= 8 else True


def test_reversal_is_not_an_isomorphism_for_dc1(reg):
    c = reg.code("dc1")
    rev = DividingCode(tuple(t[::-1] for t in c.family_a), tuple(t[::-1] for t in c.family_b))
    assert not codes_isomorphic(c, rev)


@settings(max_examples=40)
@given(small_codes(4), small_codes(4), small_codes(4))
def test_isomorphism_is_an_equivalence(a, b, c):
    assert codes_isomorphic(a, a)
    assert codes_isomorphic(a, b) == codes_isomorphic(b, a)
    if codes_isomorphic(a, b) and codes_isomorphic(b, c):
        assert codes_isomorphic(a, c)


@pytest.mark.parametrize("name", ["dc1", "dc2", "fig5"])
def test_printed_codes_round_trip(reg, name):
    text = reg.code_text(name)
    c = parse_code(text)
    assert serialize_code(c) == text
    assert parse_code(", \n".join(text.split(","))) == c


def test_dc1_shape(reg):
    c = reg.code("dc1")
    assert c.n_labels == 23
    assert len(c.family_a) == 8 and len(c.family_b) == 3


def test_printed_codes_differ(reg):
    assert not codes_isomorphic(reg.code("dc1"), reg.code("dc2"))
    assert not codes_isomorphic(reg.code("dc1"), reg.code("dc2"), allow_reflection=True)


@pytest.mark.parametrize("text,err", [
    ("{(1,2)},{(1)}", LabelCoverageError),
    ("{(1,2)},{(1,2),(2)}", LabelCoverageError),
    ("{(1,3)},{(1,3)}", LabelCoverageError),
    ("{(1,2)}{(1,2)}", CodeSyntaxError),
    ("{(1,2)},{(1,x)}", CodeSyntaxError),
    ("{(1,2)},{(1,2)", CodeSyntaxError),
    ("{(1,2) junk},{(1,2)}", CodeSyntaxError),
])
def test_bad_codes(text, err):
    with pytest.raises(err):
        parse_code(text)
