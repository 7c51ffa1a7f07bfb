"""Membership and witnesses for integers that are products of factorials > 1.

An integer N != 0 belongs to the target set when |N| = m_1! m_2! ... m_k!
with 1 < m_1 <= ... <= m_k (k = 0, the empty product, certifies |N| = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import DomainError, NotPrime, ZeroInput
from .primes import is_prime, primes_upto

MEMO_CUTOFF = 1 << 64

_member_memo: dict[int, bool] = {}


@dataclass(frozen=True)
class PFWitness:
    sign: int
    args: tuple[int, ...]

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        if any(a < 2 for a in self.args):
            raise DomainError("factorial arguments must be >= 2")
        if list(self.args) != sorted(self.args):
            raise DomainError("factorial arguments must be nondecreasing")

    def product(self) -> int:
        out = self.sign
        for a in self.args:
            out *= math.factorial(a)
        return out


@dataclass(frozen=True)
class FactorialTable:
    max_arg: int
    factorials: tuple[int, ...] = field(repr=False)
    per_prime_valuations: dict[int, tuple[int, ...]] = field(repr=False)

    @classmethod
    def build(cls, max_arg: int) -> "FactorialTable":
        if max_arg < 2:
            raise DomainError("max_arg must be >= 2")
        facts = [1, 1]
        for m in range(2, max_arg + 1):
            facts.append(facts[-1] * m)
        vals = {}
        for p in primes_upto(max_arg):
            vals[p] = tuple(legendre_valuation(p, m) for m in range(max_arg + 1))
        return cls(max_arg=max_arg, factorials=tuple(facts), per_prime_valuations=vals)

    def factorial(self, m: int) -> int:
        return self.factorials[m]


def legendre_valuation(p: int, k: int) -> int:
    """nu_p(k!) = (k - sigma_p(k)) / (p - 1), sigma_p the base-p digit sum."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if k < 0:
        raise DomainError("k must be nonnegative")
    digit_sum = 0
    t = k
    while t:
        digit_sum += t % p
        t //= p
    return (k - digit_sum) // (p - 1)


def _factorials_upto(n: int) -> list[tuple[int, int]]:
    """(m, m!) pairs with 2 <= m and m! <= n."""
    out = []
    f, m = 2, 2
    while f <= n:
        out.append((m, f))
        m += 1
        f *= m
    return out


def _is_member(n: int) -> bool:
    # n >= 1, sign already stripped
    if n == 1:
        return True
    if n % 2:
        return False
    cached = _member_memo.get(n)
    if cached is not None:
        return cached
    result = False
    for _, f in _factorials_upto(n):
        if n % f == 0 and _is_member(n // f):
            result = True
            break
    if n < MEMO_CUTOFF:
        _member_memo[n] = result
    return result


def pf_member(n: int) -> bool:
    """True iff |n| is a product of factorials each > 1 (|n| = 1 included)."""
    if n == 0:
        raise ZeroInput("0 is not eligible")
    return _is_member(abs(n))


def pf_decompose(n: int, limit: int = 16) -> list[PFWitness]:
    """Distinct witnesses in lexicographic order of args, up to ``limit``."""
    if n == 0:
        raise ZeroInput("0 is not eligible")
    if limit < 1:
        raise DomainError("limit must be positive")
    sign = 1 if n > 0 else -1
    target = abs(n)
    out: list[PFWitness] = []

    def dfs(rem: int, min_m: int, prefix: list[int]):
        if len(out) >= limit:
            return
        if rem == 1:
            out.append(PFWitness(sign=sign, args=tuple(prefix)))
            return
        for m, f in _factorials_upto(rem):
            if m < min_m:
                continue
            if rem % f == 0 and _is_member(rem // f):
                prefix.append(m)
                dfs(rem // f, m, prefix)
                prefix.pop()
                if len(out) >= limit:
                    return

    if target == 1:
        return [PFWitness(sign=sign, args=())]
    dfs(target, 2, [])
    return out


def pf_fast_reject(n: int):
    """Cheap certificate that |n| cannot be a factorial product, or None.

    Any witness for N with v = nu_2(N) has at most v factors (each m! with
    m >= 2 is even) and every argument m satisfies nu_2(m!) >= (m - 1) / 2,
    hence m <= 2v + 1; so N > ((2v+1)!)^v is impossible.
    """
    m = abs(n)
    if m <= 1:
        raise DomainError("fast reject expects |n| > 1")
    if m % 2:
        return "odd"
    v = (m & -m).bit_length() - 1
    cap = math.factorial(2 * v + 1)
    # sufficient bit-length test: bl(m) >= v * bl(cap) + 1 implies m > cap**v
    if m.bit_length() >= v * cap.bit_length() + 1:
        return "size"
    if v * cap.bit_length() <= 4 * m.bit_length() + 64:
        # exact comparison is affordable here
        if m > cap**v:
            return "size"
    return None


def clear_member_cache():
    _member_memo.clear()
