from hypothesis import given, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from legendrid.snf import in_row_space, mat_mul, smith_normal_form


def matrices(max_dim=5):
    return st.integers(1, max_dim).flatmap(
        lambda m: st.integers(1, max_dim).flatmap(
            lambda k: st.lists(st.lists(st.integers(-6, 6), min_size=k, max_size=k),
                               min_size=m, max_size=m)))


def det(m):
    return int(Matrix(m).det())


@given(matrices())
def test_transforms_and_diagonal(a):
    d, u, v = smith_normal_form(a)
    assert abs(det(u)) == 1 and abs(det(v)) == 1
    s = mat_mul(mat_mul(u, a), v)
    for i, row in enumerate(s):
        for j, x in enumerate(row):
            assert x == (d[i] if i == j else 0)
    assert all(x >= 0 for x in d)
    for x, y in zip(d, d[1:]):
        assert (y == 0) if x == 0 else (y % x == 0)


@given(matrices())
def test_invariant_factors_match_sympy(a):
    d, _, _ = smith_normal_form(a)
    oracle = sympy_snf(Matrix(a), domain=ZZ)
    expected = [abs(int(oracle[i, i])) for i in range(min(oracle.shape))]
    assert d == expected


@given(matrices(4), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_row_space_membership(rows, coeffs):
    k = len(rows[0])
    vec = [sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(k)]
    assert in_row_space(vec, rows)


def test_row_space_rejects_torsion_multiple():
    assert not in_row_space([1, 0], [[2, 0]])
    assert in_row_space([4, 0], [[2, 0]])
    assert not in_row_space([0, 1], [[2, 0]])
    assert in_row_space([0, 0], [])
