import math

import pytest
from hypothesis import given, settings, strategies as st

from lucaspf.errors import DomainError, NotPrime, ZeroInput
from lucaspf.factorials import (
    FactorialTable,
    PFWitness,
    clear_member_cache,
    legendre_valuation,
    pf_decompose,
    pf_fast_reject,
    pf_member,
)


def dp_member_table(limit):
    # independent dynamic-programming oracle over [0, limit]
    facts = []
    f, m = 2, 2
    while f <= limit:
        facts.append(f)
        m += 1
        f *= m
    table = bytearray(limit + 1)
    if limit >= 1:
        table[1] = 1
    for n in range(2, limit + 1):
        for f in facts:
            if f > n:
                break
            if n % f == 0 and table[n // f]:
                table[n] = 1
                break
    return table


def test_member_agrees_with_dp_oracle_small_range():
    limit = 300_000
    oracle = dp_member_table(limit)
    clear_member_cache()
    for n in range(1, limit + 1):
        assert pf_member(n) == bool(oracle[n]), n


def test_members_above_one_are_even():
    for n in range(2, 50_000):
        if n % 2 and pf_member(n):
            pytest.fail(f"odd member {n}")


def test_signs_and_trivial_member():
    assert pf_member(1) and pf_member(-1)
    assert pf_member(-12)  # |−12| = 2!·3!
    assert pf_decompose(1) == [PFWitness(sign=1, args=())]
    assert pf_decompose(-1)[0].sign == -1
    with pytest.raises(ZeroInput):
        pf_member(0)
    with pytest.raises(ZeroInput):
        pf_decompose(0)


def test_decompose_witnesses_remultiply_and_are_ordered():
    ws = pf_decompose(144)
    assert [w.args for w in ws] == [(2, 2, 3, 3), (3, 4)]
    for w in ws:
        assert w.product() == 144
    ws = pf_decompose(-3456)  # 3456 = 2!^2 · 24 · 36? let the witnesses speak
    for w in ws:
        assert w.product() == -3456
        assert list(w.args) == sorted(w.args)


def test_witness_validation():
    with pytest.raises(DomainError):
        PFWitness(sign=2, args=(2,))
    with pytest.raises(DomainError):
        PFWitness(sign=1, args=(1, 2))
    with pytest.raises(DomainError):
        PFWitness(sign=1, args=(3, 2))


def test_eleven_factorial():
    n = math.factorial(11)
    assert pf_member(n)
    assert (11,) in [w.args for w in pf_decompose(n)]


@settings(max_examples=100, deadline=None)
@given(
    st.sampled_from([2, 3, 5, 7, 11, 13, 101]),
    st.integers(0, 10**6),
)
def test_legendre_matches_repeated_division(p, k):
    # oracle: sum of floor(k / p^i)
    expect = 0
    q = p
    while q <= k:
        expect += k // q
        q *= p
    assert legendre_valuation(p, k) == expect


def test_legendre_validation():
    with pytest.raises(NotPrime):
        legendre_valuation(4, 10)
    with pytest.raises(DomainError):
        legendre_valuation(3, -1)


def test_factorial_table_consistency():
    table = FactorialTable.build(12)
    for m in range(2, 13):
        assert table.factorial(m) == math.factorial(m)
    for p, vals in table.per_prime_valuations.items():
        for m in range(13):
            assert vals[m] == legendre_valuation(p, m)


def test_fast_reject_never_rejects_members():
    for n in range(2, 30_000):
        if pf_fast_reject(n) is not None:
            assert not pf_member(n), n


def test_fast_reject_reasons():
    assert pf_fast_reject(3) == "odd"
    assert pf_fast_reject(2) is None
    # 2 * huge odd: nu_2 = 1 so any witness is a power of 2! = 2; reject by size
    assert pf_fast_reject(2 * (3**40)) == "size"


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 10**9))
def test_fast_reject_soundness_random(n):
    if pf_fast_reject(n) is not None:
        assert not pf_member(n)
