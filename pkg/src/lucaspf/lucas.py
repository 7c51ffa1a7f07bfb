"""Validated Lucas-sequence parameters and exact term evaluation.

For coprime nonzero integers (r, s) with nonzero discriminant and
non-degenerate root ratio, the sequences are

    U_0 = 0, U_1 = 1, U_{n+2} = r U_{n+1} + s U_n
    V_0 = 2, V_1 = r, V_{n+2} = r V_{n+1} + s V_n

with characteristic roots alpha, beta of x^2 - r x - s, ordered so that
|alpha| >= |beta|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import Degenerate, DomainError, NotCoprime, ZeroDiscriminant
from .interval import DEFAULT_PREC, Interval, log2, pi


class SeqKind(str, Enum):
    U = "U"
    V = "V"


@dataclass(frozen=True)
class SeqTerm:
    index: int
    value: int
    kind: SeqKind


@dataclass(frozen=True)
class LucasParams:
    r: int
    s: int
    delta: int
    roots_real: bool
    alpha_abs_log: Interval
    unit_norm: bool


def _alpha_log_raw(r: int, s: int, delta: int, prec: int) -> Interval:
    if delta > 0:
        # |alpha| = (|r| + sqrt(delta)) / 2
        root = Interval.from_int(delta, prec).sqrt()
        return ((Interval.from_int(abs(r), prec) + root) / 2).log()
    # complex conjugate roots: |alpha|^2 = |s|
    return Interval.from_int(abs(s), prec).log() / 2


def validate_params(r: int, s: int) -> LucasParams:
    """Check the standing hypotheses on (r, s) and build a LucasParams."""
    if r == 0 or s == 0:
        raise Degenerate(f"(r, s) = ({r}, {s}): both parameters must be nonzero")
    if math.gcd(abs(r), abs(s)) != 1:
        raise NotCoprime(f"gcd(|{r}|, |{s}|) = {math.gcd(abs(r), abs(s))} != 1")
    delta = r * r + 4 * s
    if delta == 0:
        raise ZeroDiscriminant(f"r^2 + 4s = 0 for (r, s) = ({r}, {s})")
    # alpha/beta is a root of unity iff r^2 / (-s) = 2 + 2 cos(theta) is in
    # {0, 1, 2, 3, 4}; exact integer test, no floating point.
    if any(r * r == k * (-s) for k in (0, 1, 2, 3, 4)):
        raise Degenerate(
            f"r^2 = {r * r} lies in {{0, -s, -2s, -3s, -4s}}: "
            "alpha/beta is a root of unity"
        )
    log_a = _alpha_log_raw(r, s, delta, DEFAULT_PREC)
    if log_a.lo <= 0:
        # cannot happen for integral non-degenerate (r, s); guards rigor
        raise Degenerate(f"|alpha| <= 1 for (r, s) = ({r}, {s})")
    return LucasParams(
        r=r,
        s=s,
        delta=delta,
        roots_real=delta > 0,
        alpha_abs_log=log_a,
        unit_norm=abs(s) == 1,
    )


def alpha_log(p: LucasParams, precision_bits: int) -> Interval:
    """Enclosure of log|alpha| at the requested precision."""
    if precision_bits <= 0:
        raise DomainError("precision_bits must be positive")
    return _alpha_log_raw(p.r, p.s, p.delta, precision_bits)


def _uv_pair(p: LucasParams, n: int) -> tuple[int, int]:
    """(U_n, V_n) by fast doubling on the pair, with Q = -s, D = delta."""
    if n < 0:
        raise DomainError("index must be nonnegative")
    r, q, d = p.r, -p.s, p.delta
    u, v, qk = 0, 2, 1  # U_0, V_0, Q^0
    for bit in bin(n)[2:]:
        # k -> 2k
        u, v = u * v, v * v - 2 * qk
        qk = qk * qk
        if bit == "1":
            # 2k -> 2k+1; both sums are even
            u, v = (r * u + v) // 2, (d * u + r * v) // 2
            qk *= q
    return u, v


def u_at(p: LucasParams, n: int) -> SeqTerm:
    u, _ = _uv_pair(p, n)
    return SeqTerm(index=n, value=u, kind=SeqKind.U)


def v_at(p: LucasParams, n: int) -> SeqTerm:
    _, v = _uv_pair(p, n)
    return SeqTerm(index=n, value=v, kind=SeqKind.V)


def u_naive(p: LucasParams, n: int) -> int:
    """Three-term recurrence; independent oracle for tests."""
    a, b = 0, 1
    for _ in range(n):
        a, b = b, p.r * b + p.s * a
    return a


def v_naive(p: LucasParams, n: int) -> int:
    a, b = 2, p.r
    if n == 0:
        return a
    for _ in range(n - 1):
        a, b = b, p.r * b + p.s * a
    return b


def stirling_log_factorial_lower(m: int, prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of log 2 + m (log m - 1), a certified lower bound of log m!.

    Comes from m! >= sqrt(2 pi) (m/e)^m > 2 (m/e)^m.
    """
    if m < 2:
        raise DomainError("m must be at least 2")
    mi = Interval.from_int(m, prec)
    return log2(prec) + mi * (mi.log() - 1)


def stirling_log_factorial_sqrt(m, prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of 0.5 log(2 pi m) + m (log m - 1) <= log m! (Robbins)."""
    mi = m if isinstance(m, Interval) else Interval.from_int(m, prec)
    if mi.lo < 1:
        raise DomainError("m must be at least 1")
    return (2 * pi(prec) * mi).log() / 2 + mi * (mi.log() - 1)
