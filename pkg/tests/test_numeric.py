import cmath
import math

import mpmath
import pytest

from powerlog.evalcli.numeric import NumericError, eval_truncated, radius_estimate, residual
from powerlog.evalcli.sector import SectorSpec, parse_sector
from powerlog.frontend import parse_ratfunc
from powerlog.series import PowerLogSeries
from conftest import solved


def test_eval_simple_terms():
    s = PowerLogSeries({0: parse_ratfunc("t"), 1: parse_ratfunc("2")}, 2)
    x = 0.25
    assert complex(eval_truncated(s, 2, x)) == pytest.approx(math.log(x) + 2 * x, rel=1e-15)
    z = 0.1j
    assert complex(eval_truncated(s, 0, z)) == pytest.approx(cmath.log(z), rel=1e-15)


def test_eval_errors():
    s = PowerLogSeries({0: parse_ratfunc("1/t")}, 1)
    with pytest.raises(NumericError, match="x = 0"):
        eval_truncated(s, 1, 0)
    with pytest.raises(NumericError, match="log-pole proximity"):
        eval_truncated(s, 1, 1.0)


def test_linear_residual_vanishes():
    exp = solved("linear_exact")
    assert residual(exp.problem.ode, exp.series(), 6, 0.3) == 0.0


def test_residuals_decrease_and_are_stable():
    exp = solved("example2_rational")
    F, s = exp.problem.ode, exp.series(10)
    res = [residual(F, s, N, 0.05) for N in (2, 4, 6, 8)]
    assert all(b < a for a, b in zip(res, res[1:]))
    a, b = eval_truncated(s, 8, 0.05, 128), eval_truncated(s, 8, 0.05, 256)
    assert abs(a - b) / abs(b) < mpmath.mpf(2) ** -64


def test_radius_estimate():
    val, how = radius_estimate([3 * 0.5 ** k for k in range(1, 11)])
    assert how == "heuristic" and val == pytest.approx(2.0)
    assert radius_estimate([1, 1, 0, 0, 0, 0, 0, 0, 0, 0])[0] == math.inf
    with pytest.raises(ValueError):
        radius_estimate([1, 2, 3, 4])


def test_sector():
    s = parse_sector("0.1,90,0")
    pts = s.grid()
    assert len(pts) == 8 and all(abs(cmath.phase(p)) < math.radians(45) for p in pts)
    with pytest.raises(ValueError, match="branch cut"):
        SectorSpec(0.1, 90, 170)
    with pytest.raises(ValueError):
        parse_sector("0.1,90")
