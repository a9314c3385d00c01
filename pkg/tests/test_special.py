import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special as sp

from wentropy.special import (
    DomainError,
    digamma,
    log_beta,
    log_gamma,
    reg_inc_beta,
    reg_inc_beta_upper,
    reg_inc_gamma,
    reg_inc_gamma_upper,
)

EULER = 0.5772156649015329


def test_log_gamma_factorials():
    assert log_gamma(1.0) == 0.0
    assert log_gamma(5.0) == pytest.approx(math.log(24), rel=1e-14)


def test_digamma_values():
    assert digamma(1.0) == pytest.approx(-EULER, abs=1e-10)
    assert digamma(3.0) == pytest.approx(1.5 - EULER, abs=1e-10)


def test_digamma_is_derivative_of_high_precision_log_gamma():
    mpmath.mp.dps = 40
    for x in (0.3, 1.0, 2.5, 11.0):
        ref = float(mpmath.diff(mpmath.loggamma, x))
        assert digamma(x) == pytest.approx(ref, abs=1e-12)


@pytest.mark.parametrize("x", [0.5, 1.0, 2.0, 7.0])
def test_digamma_recurrence(x):
    assert digamma(x + 1) - digamma(x) == pytest.approx(1 / x, abs=1e-10)


@settings(max_examples=80, deadline=None)
@given(st.floats(1e-3, 200))
def test_log_gamma_against_scipy(x):
    assert log_gamma(x) == pytest.approx(sp.gammaln(x), rel=1e-12, abs=1e-12)
    assert digamma(x) == pytest.approx(sp.digamma(x), rel=1e-11, abs=1e-11)


def test_log_beta():
    assert log_beta(2.0, 3.0) == pytest.approx(math.log(1 / 12), rel=1e-13)


@pytest.mark.parametrize("fn,args", [(log_gamma, (0.0,)), (digamma, (-1.0,)),
                                     (reg_inc_gamma, (0.0, 1.0)), (reg_inc_beta, (1.0, 1.0, 1.5))])
def test_domain_errors(fn, args):
    with pytest.raises(DomainError):
        fn(*args)


def test_inc_gamma_closed_forms():
    for x in (0.0, 0.1, 1.0, 5.0, 40.0):
        assert reg_inc_gamma(1.0, x) == pytest.approx(-math.expm1(-x), abs=1e-14)
    assert reg_inc_gamma(2.0, 1.0) == pytest.approx(1 - 2 / math.e, abs=1e-10)


def test_inc_beta_uniform():
    assert reg_inc_beta(1.0, 1.0, 0.3) == pytest.approx(0.3, abs=1e-14)


@settings(max_examples=80, deadline=None)
@given(st.floats(0.05, 30), st.floats(0, 80))
def test_inc_gamma_against_scipy(a, x):
    assert reg_inc_gamma(a, x) == pytest.approx(sp.gammainc(a, x), abs=1e-12)
    assert reg_inc_gamma_upper(a, x) == pytest.approx(sp.gammaincc(a, x), abs=1e-12)


@settings(max_examples=80, deadline=None)
@given(st.floats(0.05, 30), st.floats(0.05, 30), st.floats(0, 1))
def test_inc_beta_against_scipy(a, b, x):
    assert reg_inc_beta(a, b, x) == pytest.approx(sp.betainc(a, b, x), abs=1e-12)
    assert reg_inc_beta_upper(a, b, x) == pytest.approx(1 - sp.betainc(a, b, x), abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(0.1, 10), st.floats(0, 20), st.floats(0, 20))
def test_inc_gamma_monotone(a, x, y):
    lo, hi = sorted((x, y))
    assert reg_inc_gamma(a, lo) <= reg_inc_gamma(a, hi) + 1e-15
