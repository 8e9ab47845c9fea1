import pytest

from powerlog.exact import Poly, RatFunc
from powerlog.frontend import parse_ratfunc, problem_from_dict
from powerlog.reduce import (
    IndeterminateError, ReductionError, check_condition, choose_ell, compose_shifted, reduce_equation,
)
from powerlog.recurse import extend_seed
from conftest import load_fixture, solved


def mk(eq, n, seed, N=4):
    return problem_from_dict({"order": n, "equation": eq, "seed": [{"k": k, "value": v} for k, v in seed],
                              "expand_to": N})


def strs(fs):
    return [str(f) for f in fs]


def test_check_rational():
    r = check_condition(load_fixture("example2_rational"))
    assert r.holds and r.stable and r.m == 0
    assert strs(r.a) == ["-4/t^3", "-2/t^2"]


def test_check_dulac_and_example3():
    r = check_condition(load_fixture("example2_dulac"))
    assert (r.m, strs(r.a)) == (0, ["0", "2"])
    r = check_condition(load_fixture("example3_transseries"))
    assert r.holds and r.m == 0 and str(r.a[2]) == "-8/t^3"
    # only dF/dy2 fixes m; dF/dy0 starts later, so only the weak reading holds
    assert not r.holds_strict


def test_check_linear_seed_constant():
    r = check_condition(mk("y1 - y0", 1, [(0, "1")]))
    assert r.holds and r.m == 0 and strs(r.a) == ["-1", "1"]


def test_counterexample_fails():
    r = check_condition(load_fixture("counterexample_mixed_m"))
    assert not r.holds and r.m == 1
    assert "dF/dy0" in r.reason


def test_indeterminate_when_top_partial_vanishes():
    with pytest.raises(IndeterminateError):
        check_condition(mk("y0*y1 + x", 1, [(0, "0")]))


def test_painleve_m_and_ell():
    p = load_fixture("example1_painleve6")
    r = check_condition(p)
    assert r.holds and r.m == 2
    assert all(f.is_poly() for f in r.a)
    ell, pinf, roots = choose_ell(r)
    assert ell == 3 and roots == [1]


def test_choose_ell_rational():
    r = check_condition(load_fixture("example2_rational"))
    ell, pinf, roots = choose_ell(r)
    assert ell == 1 and roots == [0]


@pytest.mark.parametrize("name", ["example2_rational", "example2_dulac", "example3_transseries",
                                  "example1_painleve6", "linear_exact"])
def test_expand_back_recovers_composition(name):
    exp = solved(name)
    red = exp.reduced
    G = compose_shifted(exp.problem.ode, red.prefix, red.ell)
    assert red.expand_back() == G
    assert red.a[-1] == RatFunc.const(1)
    v = red.u_free_valuation(exp.problem)
    assert not isinstance(v, int) or v >= red.m + red.ell + 1


def test_q_den_is_squarefree_common_denominator():
    red = solved("example2_rational").reduced
    assert red.q_den == Poly.t()
    red = solved("example1_painleve6").reduced
    assert red.q_den.degree >= 1


def test_reduction_needs_a_solution_prefix():
    # y = 1 does not solve delta y = y, so the u-free part starts too early
    p = mk("y1 - y0", 1, [(0, "1")])
    r = check_condition(p)
    with pytest.raises(ReductionError, match="u-free"):
        reduce_equation(p, r, 1)


def test_seed_extension_fills_the_gap():
    p = load_fixture("example1_painleve6")
    r = check_condition(p)
    seed = extend_seed(p, r, 3)
    assert seed[1] == parse_ratfunc("(1/4)*t^2")
    assert set(seed) <= {1, 2, 3} and 2 in seed
