import math

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp

from lucaspf.errors import Degenerate, DomainError, NotCoprime, ZeroDiscriminant
from lucaspf.interval import log_int
from lucaspf.lucas import (
    SeqKind,
    alpha_log,
    stirling_log_factorial_lower,
    stirling_log_factorial_sqrt,
    u_at,
    u_naive,
    v_at,
    v_naive,
    validate_params,
)


def valid_pairs():
    def ok(rs):
        try:
            validate_params(*rs)
            return True
        except Exception:
            return False

    return st.tuples(
        st.integers(-20, 20).filter(bool), st.integers(-20, 20).filter(bool)
    ).filter(ok)


@settings(max_examples=60, deadline=None)
@given(valid_pairs(), st.integers(0, 200))
def test_fast_doubling_matches_recurrence(rs, n):
    p = validate_params(*rs)
    assert u_at(p, n).value == u_naive(p, n)
    assert v_at(p, n).value == v_naive(p, n)


@settings(max_examples=60, deadline=None)
@given(valid_pairs(), st.integers(0, 120))
def test_pell_like_identity(rs, n):
    # V_n^2 - Delta U_n^2 = 4 (-s)^n
    p = validate_params(*rs)
    u, v = u_at(p, n).value, v_at(p, n).value
    assert v * v - p.delta * u * u == 4 * (-p.s) ** n


@settings(max_examples=60, deadline=None)
@given(valid_pairs(), st.integers(0, 100))
def test_doubling_identity(rs, n):
    p = validate_params(*rs)
    assert u_at(p, 2 * n).value == u_at(p, n).value * v_at(p, n).value


def test_validation_errors():
    with pytest.raises(Degenerate):
        validate_params(0, 5)
    with pytest.raises(Degenerate):
        validate_params(5, 0)
    with pytest.raises(NotCoprime):
        validate_params(2, 4)
    with pytest.raises(ZeroDiscriminant):
        validate_params(2, -1)
    with pytest.raises(Degenerate):
        validate_params(1, -1)  # sixth root of unity ratio


def test_term_kinds_and_values():
    p = validate_params(1, 1)
    t = u_at(p, 12)
    assert (t.index, t.value, t.kind) == (12, 144, SeqKind.U)
    assert v_at(p, 12).value == 322
    assert u_at(p, 0).value == 0 and v_at(p, 0).value == 2


def test_negative_index_rejected():
    p = validate_params(1, 1)
    with pytest.raises(DomainError):
        u_at(p, -1)


def test_fibonacci_alpha_log_is_golden_ratio():
    p = validate_params(1, 1)
    with mp.workprec(200):
        golden = mp.log((1 + mp.sqrt(5)) / 2)
        assert p.alpha_abs_log.lo <= golden <= p.alpha_abs_log.hi


def test_complex_case_alpha_log():
    # delta = 1 + 4*(-3) < 0, |alpha| = sqrt(3)
    p = validate_params(1, -3)
    assert not p.roots_real
    with mp.workprec(200):
        expected = mp.log(3) / 2
        assert p.alpha_abs_log.lo <= expected <= p.alpha_abs_log.hi


def test_alpha_log_refinement_is_nested():
    p = validate_params(2, 3)
    coarse = alpha_log(p, 64)
    fine = alpha_log(p, 512)
    assert coarse.lo <= fine.lo <= fine.hi <= coarse.hi
    assert fine.width() < coarse.width()


def test_binet_rounding_oracle():
    # independent growth oracle: F_n = round(alpha^n / sqrt 5)
    p = validate_params(1, 1)
    with mp.workprec(300):
        alpha = (1 + mp.sqrt(5)) / 2
        for n in range(1, 90):
            assert int(mp.nint(alpha**n / mp.sqrt(5))) == u_at(p, n).value


def test_stirling_bounds_are_lower_bounds():
    for m in list(range(2, 60)) + [150, 500, 2000]:
        exact = log_int(math.factorial(m), 128)
        assert stirling_log_factorial_lower(m, 128).hi <= exact.lo
        assert stirling_log_factorial_sqrt(m, 128).hi <= exact.lo
    # the sqrt form is the sharper of the two
    assert (
        stirling_log_factorial_sqrt(100).lo > stirling_log_factorial_lower(100).hi
    )
