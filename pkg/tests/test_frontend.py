import json

import pytest
from hypothesis import given, strategies as st

from powerlog.exact import QQ, gauss
from powerlog.frontend import (
    DeltaPolynomial, ParseError, ProblemError, format_delta_poly, load_problem, parse_delta_poly, parse_ode,
    parse_ratfunc, problem_from_dict,
)


def test_parse_dulac():
    F = parse_ode("y1^2 - 4*x^2*y0^3 - 1", 1)
    assert F.n == 1
    assert F.terms == {(0, (0, 2)): 1, (2, (3, 0)): -4, (0, (0, 0)): -1}
    assert format_delta_poly(F) == "-1 + y1^2 - 4*x^2*y0^3"


def test_partials():
    F = parse_ode("y1^2 - 4*x^2*y0^3 - 1", 1)
    assert F.partial(1) == parse_delta_poly("2*y1", 1)
    assert F.partial(0) == parse_delta_poly("-12*x^2*y0^2", 1)


def test_gaussian_coefficients():
    F = parse_delta_poly("(1+2*i)*x*y0 + i", 0)
    assert F.terms[(1, (1,))] == gauss(1, 2)
    assert parse_delta_poly(format_delta_poly(F), 0) == F


@pytest.mark.parametrize("text, col, fragment", [
    ("y0 + (", 7, "unexpected end of input"),
    ("2 y0", None, "implicit multiplication"),
    ("y0^-1", None, "nonnegative integer"),
    ("y0^2^2", None, "chained"),
    ("(y0 + 1", None, "expected ')'"),
])
def test_parse_errors_are_located(text, col, fragment):
    with pytest.raises(ParseError) as info:
        parse_delta_poly(text, 1)
    assert fragment in str(info.value)
    if col is not None:
        assert info.value.column == col


def test_order_violation():
    with pytest.raises(ValueError, match="exceeds the declared order"):
        parse_delta_poly("y3", 1)


def test_ode_must_involve_y():
    with pytest.raises(ValueError):
        parse_ode("x^2 + 1", 1)


def test_ratfunc_parsing():
    assert str(parse_ratfunc("1/t")) == "1/t"
    assert parse_ratfunc("(t^2-1)/(t-1)") == parse_ratfunc("t + 1")


def _problem(**kw):
    d = {"order": 1, "equation": "y1 - y0", "seed": [{"k": 1, "value": "1"}], "expand_to": 3}
    d.update(kw)
    return d


def test_problem_defaults():
    p = problem_from_dict(_problem())
    assert p.check_depth == 6 and p.precision_bits == 128 and p.sector is None


@pytest.mark.parametrize("change, fragment", [
    ({"bogus": 1}, "unknown fields"),
    ({"seed": [{"k": 1, "value": "1"}, {"k": 1, "value": "2"}]}, "duplicate"),
    ({"order": "1"}, "integer"),
    ({"precision_bits": 8}, "at least 16"),
    ({"seed": [{"k": 0, "value": "1/("}]}, "seed[0].value"),
    ({"sector": {"radius": 0.1, "opening_deg": 400}}, "sector"),
])
def test_problem_validation(change, fragment):
    with pytest.raises(ProblemError, match=fragment.replace("[", r"\[").replace("]", r"\]")):
        problem_from_dict(_problem(**change))


def test_load_problem_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{ nope")
    with pytest.raises(ProblemError, match="invalid JSON"):
        load_problem(bad)
    with pytest.raises(ProblemError, match="cannot read"):
        load_problem(tmp_path / "missing.json")
    good = tmp_path / "good.json"
    good.write_text(json.dumps(_problem()))
    assert load_problem(good).name == "good"


coef = st.one_of(
    st.integers(-9, 9).filter(bool),
    st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(bool).map(lambda f: QQ(f.numerator, f.denominator)),
    st.tuples(st.integers(-3, 3), st.integers(-3, 3).filter(bool)).map(lambda p: gauss(*p)),
)
monomial = st.tuples(st.integers(0, 4), st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2)))


@given(st.dictionaries(monomial, coef, min_size=1, max_size=6))
def test_print_parse_roundtrip(terms):
    F = DeltaPolynomial(2, terms)
    assert parse_delta_poly(format_delta_poly(F), 2) == F


@given(st.text(alphabet="xy0123t+-*/^() i.", max_size=20))
def test_fuzz_only_parse_errors(text):
    try:
        parse_delta_poly(text, 3)
    except (ParseError, ValueError, ZeroDivisionError):
        pass
