from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from powerlog.exact import (
    QQ, Poly, RatFunc, format_poly, format_scalar, gauss, integer_roots, parse_scalar, poly_gcd,
    rational_roots, solve_linear_system, solve_sparse, squarefree_part,
)
from powerlog.frontend import parse_poly, parse_ratfunc

rats = st.fractions(min_value=-20, max_value=20, max_denominator=12).map(lambda f: QQ(f.numerator, f.denominator))
polys = st.lists(rats, max_size=5).map(Poly)
nonzero_polys = polys.filter(bool)


def test_poly_basics():
    t = Poly.t()
    p = (t - 1) * (t + 2)
    assert p == Poly([-2, 1, 1])
    assert p.degree == 2 and p(1) == 0
    assert format_poly(p) == "-2 + t + t^2"
    assert parse_poly(format_poly(p)) == p


def test_divmod_and_gcd():
    t = Poly.t()
    a = (t - 1) ** 2 * (t + 3)
    b = (t - 1) * (t - 5)
    assert poly_gcd(a, b) == t - 1
    q, r = a.divmod(b)
    assert q * b + r == a and r.degree < b.degree
    assert squarefree_part(a) == ((t - 1) * (t + 3)).monic()


def test_roots():
    t = Poly.t()
    p = t * (t - 3) * (2 * t + 1) * (t ** 2 + 1)
    assert integer_roots(p) == {0, 3}
    assert rational_roots(p) == [QQ(-1, 2), QQ(0), QQ(3)]


def test_ratfunc_normal_form():
    f = parse_ratfunc("(t^2 - 1)/(2*t - 2)")
    assert f.den == Poly([1]) and f.num == Poly([QQ(1, 2), QQ(1, 2)])
    g = parse_ratfunc("1/t")
    assert str(g * g) == "1/t^2"
    assert (g.derivative()) == parse_ratfunc("-1/t^2")


def test_gaussian_scalars():
    z = gauss(1, 2)
    assert z * z == gauss(-3, 4)
    assert parse_scalar(format_scalar(z)) == z
    assert gauss(3, 0) == 3


def test_linear_solvers():
    A = [[1, 2], [2, 4]]
    s = solve_linear_system(A, [1, 2])
    assert s.consistent and not s.unique and len(s.kernel) == 1
    assert not solve_linear_system(A, [1, 3]).consistent
    s = solve_sparse([{0: 2}, {0: 1, 1: 1}], [4, 5], 2)
    assert s.unique and list(s.solution) == [2, 3]


@given(polys, polys, polys)
def test_poly_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


@given(polys, nonzero_polys)
def test_division_identity(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert not r or r.degree < b.degree


@given(nonzero_polys, nonzero_polys)
def test_gcd_divides(a, b):
    g = poly_gcd(a, b)
    assert g.divides(a) and g.divides(b)


@given(polys, nonzero_polys, polys, nonzero_polys)
def test_ratfunc_field(n1, d1, n2, d2):
    f, g = RatFunc(n1, d1), RatFunc(n2, d2)
    assert (f + g) - g == f
    if g:
        assert (f * g) / g == f
    assert (f * g).derivative() == f.derivative() * g + f * g.derivative()


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50))
def test_scalar_roundtrip(re, im):
    z = gauss(QQ(re.numerator, re.denominator), QQ(im.numerator, im.denominator))
    assert parse_scalar(format_scalar(z)) == z


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=1, max_size=4),
       st.lists(st.integers(-5, 5), min_size=3, max_size=3))
def test_solution_satisfies_system(A, x):
    b = [sum(a * v for a, v in zip(row, x)) for row in A]
    s = solve_linear_system(A, b)
    assert s.consistent
    for row, bi in zip(A, b):
        assert sum(a * v for a, v in zip(row, s.solution)) == bi
    for k in s.kernel:
        for row in A:
            assert sum(a * v for a, v in zip(row, k)) == 0


def test_parse_scalar_rejects_garbage():
    with pytest.raises(ZeroDivisionError):
        parse_scalar("1/0")
    with pytest.raises(ValueError):
        parse_scalar("1 +")
    assert parse_scalar("3/6") == Fraction(1, 2)
