"""Small prime utilities: deterministic Miller-Rabin and segmented sieves."""

from __future__ import annotations

from .errors import DomainError

SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Deterministic Miller-Rabin witness set, valid for n < 3.3 * 10**24
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sieve_upto(limit: int) -> bytearray:
    """Byte table t with t[k] = 1 iff k is prime, 0 <= k <= limit."""
    if limit < 1:
        return bytearray(limit + 1)
    t = bytearray([1]) * (limit + 1)
    t[0:2] = b"\x00\x00"
    p = 2
    while p * p <= limit:
        if t[p]:
            t[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
        p += 1
    return t


def primes_upto(limit: int) -> list[int]:
    t = sieve_upto(limit)
    return [i for i in range(2, limit + 1) if t[i]]


def segmented_primes(lo: int, hi: int, segment: int = 1 << 20):
    """Yield primes in [lo, hi] using a segmented sieve."""
    if hi < 2 or hi < lo:
        return
    lo = max(lo, 2)
    base = primes_upto(int(hi**0.5) + 1)
    start = lo
    while start <= hi:
        end = min(start + segment - 1, hi)
        seg = bytearray([1]) * (end - start + 1)
        for p in base:
            first = max(p * p, ((start + p - 1) // p) * p)
            if first > end:
                continue
            seg[first - start :: p] = bytearray(len(range(first, end + 1, p)))
        for i, flag in enumerate(seg):
            if flag and start + i >= 2:
                yield start + i
        start = end + 1


def nth_primes(k: int, skip_two: bool = False) -> list[int]:
    """First k primes, optionally excluding 2."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    out = []
    n = 3 if skip_two else 2
    while len(out) < k:
        if is_prime(n):
            out.append(n)
        n += 1 if n == 2 else 2
    return out


def primorial(k: int, skip_two: bool = False) -> int:
    """Product of the first k primes (of the allowed set)."""
    out = 1
    for p in nth_primes(k, skip_two):
        out *= p
    return out
