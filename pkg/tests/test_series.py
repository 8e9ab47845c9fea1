import pytest
from hypothesis import given, strategies as st

from powerlog.exact import QQ, Poly, RatFunc
from powerlog.frontend import parse_delta_poly, parse_ratfunc
from powerlog.series import AllZero, PowerLogSeries, delta, jet, partial_series, substitute, valuation

N = 5
small = st.integers(-3, 3)
ratfuncs = st.tuples(st.lists(small, max_size=3), st.sampled_from(["1", "t", "t^2", "t + 1"])).map(
    lambda p: RatFunc(Poly(p[0]), parse_ratfunc(p[1]).num))
series = st.dictionaries(st.integers(0, N), ratfuncs, max_size=4).map(lambda d: PowerLogSeries(d, N))


def test_delta_on_a_term():
    s = PowerLogSeries({2: parse_ratfunc("t")}, 4)
    assert delta(s)[2] == parse_ratfunc("2*t + 1")
    assert delta(s, 3)[2] == parse_ratfunc("5*t + 1")


def test_dulac_seed_jets():
    s = PowerLogSeries({0: parse_ratfunc("t")}, 3)
    y0, y1 = jet(s, 1)
    assert y1[0] == RatFunc.const(1)
    F = parse_delta_poly("y1^2 - 4*x^2*y0^3 - 1", 1)
    r = substitute(F, jet(s, 1))
    assert valuation(r) == 2 and r[2] == parse_ratfunc("-4*t^3")


def test_valuation_of_zero():
    v = valuation(PowerLogSeries.zero(7))
    assert isinstance(v, AllZero) and str(v) == "all-zero up to 7"


def test_truncation_is_respected():
    s = PowerLogSeries({0: RatFunc.const(1), 1: RatFunc.const(1)}, 3)
    assert (s ** 5).trunc == 3
    assert (s ** 5)[3] == RatFunc.const(10)
    with pytest.raises(ValueError):
        PowerLogSeries({-1: RatFunc.const(1)}, 2)


@given(series, series, st.integers(-3, 3))
def test_delta_linear(a, b, c):
    assert delta(a + b.scale(c)) == delta(a) + delta(b).scale(c)


@given(series, series)
def test_delta_leibniz(a, b):
    assert delta(a * b) == delta(a) * b + a * delta(b)


@given(series, st.integers(0, 3))
def test_shifted_delta(a, ell):
    # (delta + l) a = x**(-l) delta(x**l a), checked on the surviving window
    lhs = delta(a, ell).shift_x(ell).with_trunc(N)
    rhs = delta(a.shift_x(ell))
    assert lhs == rhs


@given(series, series)
def test_valuation_additive(a, b):
    va, vb = valuation(a), valuation(b)
    if isinstance(va, int) and isinstance(vb, int) and va + vb <= N:
        assert valuation(a * b) == va + vb


@given(series, series)
def test_substitute_is_a_ring_map(a, b):
    F = parse_delta_poly("y0*y1 + x*y0^2", 1)
    G = parse_delta_poly("y1 - 3", 1)
    j = jet(a, 1)
    assert substitute(F + G, j) == substitute(F, j) + substitute(G, j)
    assert substitute(F * G, j) == substitute(F, j) * substitute(G, j)


@given(series)
def test_partial_in_y0(a):
    F = parse_delta_poly("y0^3 + x*y1^2", 1)
    # derivative of F along y0 equals 3 y0^2
    assert partial_series(F, 0, jet(a, 1)) == (a * a).scale(3)
