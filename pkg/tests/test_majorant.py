import random

import pytest
from hypothesis import given, strategies as st

from powerlog.exact import QQ, Poly, RatFunc, gauss
from powerlog.frontend import parse_ratfunc
from powerlog.majorant import (
    MajorantRun, NormError, build_majorant, certify, certify_expansion, choose_r, compute_constants,
    majorant_recursion, norm, rebase_operator,
)
from powerlog.majorant.context import NormContext
from powerlog.oracles import oracle_bruteforce_majorant
from conftest import solved
from normcases import check_case, random_case, nonneg_identities

t = Poly.t()
R = parse_ratfunc
rats = st.fractions(min_value=-6, max_value=6, max_denominator=5).map(lambda f: QQ(f.numerator, f.denominator))
polys = st.lists(rats, max_size=4).map(Poly)
dens = st.sampled_from([Poly.const(1), t, t - 1, t ** 2 + 1, t * (t + 2)])
ratfuncs = st.tuples(polys, dens).map(lambda p: RatFunc(p[0], p[1]))


def test_norm_examples():
    assert norm(R("t^2 + 2*t"), 8).lo == 64 + 16
    iv = norm(R("1/(t - 3)"), 8)
    assert iv.lo <= QQ(1, 5) <= iv.hi and iv.width <= QQ(1, 2 ** 64)
    assert norm(RatFunc.const(0), 8).hi == 0
    assert norm(R("(t+1)/t^2"), 4).exact


def test_norm_radius_too_small():
    with pytest.raises(NormError, match="r too small for operand"):
        norm(R("1/(t - 10)"), 8)


@given(ratfuncs, ratfuncs)
def test_norm_algebra(f, g):
    r = 16
    assert norm(f + g, r).lo <= norm(f, r).hi + norm(g, r).hi
    assert norm(f * g, r).lo <= norm(f, r).hi * norm(g, r).hi


@given(st.integers(0, 10 ** 6))
def test_nonneg_norm_identities(seed):
    assert nonneg_identities(random.Random(seed), 16)


@given(st.integers(0, 10 ** 6))
def test_norm_estimates(seed):
    assert all(check_case(*random_case(random.Random(seed))).values())


def test_choose_r_examples():
    assert choose_r(t, 1, 3).r == 16
    assert choose_r(Poly.const(1), 1, 3).r == 16
    assert choose_r(t - 10, 1, 0).r == 32


def test_constants_examples():
    ctx = compute_constants(choose_r(Poly.const(1), 2, 1), (RatFunc.const(0), RatFunc.const(0), RatFunc.const(1)))
    assert (ctx.c2, ctx.c3, ctx.c3t) == (1, 4, 16)
    ctx = compute_constants(choose_r(t, 1, 3), (R("1/t"), RatFunc.const(1)))
    assert (ctx.r, ctx.c2, ctx.c3, ctx.c3t) == (16, 16, QQ(1, 4), 1)
    assert ctx.sigma == 1 / (ctx.c3t * ctx.A) and ctx.k0 >= 1


def test_rebase_operator():
    # (delta + 2)**2 + (1/t)(delta + 2) = delta**2 + (4 + 1/t) delta + (4 + 2/t)
    a = rebase_operator((RatFunc.const(0), R("1/t"), RatFunc.const(1)), 2)
    assert a == (R("4 + 2/t"), R("4 + 1/t"), RatFunc.const(1))


def test_build_majorant_moduli():
    ctx = NormContext(r=QQ(16), Q=Poly.const(1), n=1, c1=0, sigma=QQ(1))
    run = build_majorant({(0, (0, 0)): R("-4*t^3"), (2, (2, 0)): RatFunc.const(gauss(3, 4)),
                          (1, (0, 1)): RatFunc.const(gauss(0, 1))}, ctx)
    assert set(run.monomials) == {(4, 0, 3, 0), (5, 2, 0, 2), (1, 1, 0, 1)}


def test_majorant_first_coefficient():
    ctx = NormContext(r=QQ(16), Q=Poly.const(1), n=1, c1=0, sigma=QQ(1, 2))
    run = MajorantRun(((QQ(1), 0, 3, 0),))
    assert majorant_recursion(run, ctx, 3) == (Poly.monomial(3, 2), Poly(), Poly())


mono = st.tuples(st.integers(1, 3).map(QQ), st.integers(0, 2), st.integers(0, 2), st.integers(0, 3))


@given(st.lists(mono, min_size=1, max_size=4), st.sampled_from([QQ(1), QQ(1, 2), QQ(3)]), st.integers(1, 6))
def test_recursion_matches_bruteforce(mons, sigma, N):
    ctx = NormContext(r=QQ(16), Q=Poly.const(1), n=1, c1=0, sigma=sigma)
    got = majorant_recursion(MajorantRun(tuple(mons)), ctx, N)
    assert list(got) == oracle_bruteforce_majorant(mons, sigma, N)
    assert all(QQ(c) >= 0 for p in got for c in p.coeffs)
    assert majorant_recursion(MajorantRun(tuple(mons)), ctx, N) == got


@pytest.mark.parametrize("name, N", [("example2_rational", 9), ("example2_dulac", 9),
                                     ("example1_painleve6", 5), ("example3_transseries", 3)])
def test_certification(name, N):
    cert = certify_expansion(solved(name), N)
    assert cert.passed, cert.summary
    assert cert.summary == f"majorant inequality verified to order {N}"
    assert cert.ctx.ctilde >= 1 and cert.ctx.sigma > 0


def test_certify_flags_a_violation():
    exp = solved("example2_rational")
    cert = certify_expansion(exp, 3)
    fake = [c.scale(10 ** 30) for c in exp.state.coeffs[:3]]
    verdicts = certify(fake, cert.run, cert.ctx)
    assert not all(v.passed for v in verdicts)
