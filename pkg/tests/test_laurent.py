import sympy
from hypothesis import given, strategies as st

from legendrid.laurent import LaurentPolynomial as L, laurent_gcd

t = sympy.symbols("t")

polys = st.dictionaries(st.integers(-4, 4), st.integers(-5, 5), max_size=5).map(L)


def to_sympy(p: L):
    return sum((c * t**e for e, c in p.terms), sympy.Integer(0))


def is_unit(expr) -> bool:
    """Is ``expr`` of the form +-t^k?"""
    num, den = sympy.fraction(sympy.cancel(expr))
    pn, pd = sympy.Poly(num, t), sympy.Poly(den, t)
    return pn.is_monomial and pd.is_monomial and abs(pn.LC()) == abs(pd.LC())


@given(polys, polys)
def test_ring_operations_match_sympy(a, b):
    assert sympy.expand(to_sympy(a + b) - (to_sympy(a) + to_sympy(b))) == 0
    assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
    assert sympy.expand(to_sympy(a - b) - (to_sympy(a) - to_sympy(b))) == 0


@given(polys)
def test_normalized_is_an_associate(p):
    n = p.normalized()
    if p.is_zero():
        assert n.is_zero()
        return
    assert is_unit(to_sympy(n) / to_sympy(p))
    assert n.normalized() == n


def test_zero_terms_dropped():
    assert L({0: 0, 3: 0}).is_zero()
    assert L({1: 2, -1: 0}).terms == ((1, 2),)


def test_trefoil_normal_form_and_string():
    p = L.from_coeffs([1, -1, 1], low=5)
    n = p.normalized()
    assert n == L({-1: 1, 0: -1, 1: 1})
    assert n.is_symmetric()
    assert str(n) == "t - 1 + t^-1"
    assert n(1) == 1


def test_normalized_flips_sign_to_unit_value():
    p = -L({-2: -1, -1: 5, 0: -7, 1: 5, 2: -1})
    n = p.normalized()
    assert n(1) == 1
    assert str(n) == "-t^2 + 5*t - 7 + 5*t^-1 - t^-2"


def test_power_and_evaluation():
    p = L({0: 1, 1: 1})
    assert p**3 == L.from_coeffs([1, 3, 3, 1])
    assert p(2) == 3


@given(polys, polys, polys)
def test_gcd_divides_and_matches_sympy(a, b, c):
    a, b = a * c, b * c
    g = laurent_gcd(a, b)
    if a.is_zero() and b.is_zero():
        assert g.is_zero()
        return
    expected = sympy.gcd(sympy.Poly(sympy.expand(to_sympy(a) * t**20), t),
                         sympy.Poly(sympy.expand(to_sympy(b) * t**20), t))
    assert is_unit(to_sympy(g) / expected.as_expr())
