import pytest

from powerlog.exact import Poly, RatFunc
from powerlog.frontend import parse_poly, parse_ratfunc
from powerlog.oracles import (
    OracleError, oracle_bruteforce_majorant, oracle_invert, oracle_undetermined, run_oracle_cases,
)
from powerlog.series import PowerLogSeries


def test_undetermined_examples():
    assert oracle_undetermined(["0", "2"], 2, "4*t^3", 6) == parse_poly("t^3 - (3/2)*t^2 + (3/2)*t - 3/4")
    assert oracle_undetermined([0, 1], 0, "1", 3) == parse_poly("t")
    assert oracle_undetermined([0, 1], 0, "1", 0) is None


def test_invert():
    s = PowerLogSeries({0: parse_ratfunc("t"), 2: parse_ratfunc("1")}, 4)
    inv = oracle_invert(s, 4)
    assert inv[0] == parse_ratfunc("1/t") and inv[2] == parse_ratfunc("-1/t^2") and inv[4] == parse_ratfunc("1/t^3")
    with pytest.raises(OracleError, match="not invertible as power-log series"):
        oracle_invert(PowerLogSeries({1: RatFunc.const(1)}, 3), 3)


def test_bruteforce_catalan():
    got = oracle_bruteforce_majorant([(1, 0, 0, 0), (1, 0, 0, 2)], 1, 7)
    assert [p[0] if p else 0 for p in got] == [1, 0, 1, 0, 2, 0, 5]


def test_case_file():
    results = run_oracle_cases()
    assert len(results) >= 5
    assert all(r["pass"] for r in results), results
