"""Rigorous interval evaluation of the explicit inequalities behind the cascade.

Everything here returns Interval enclosures; inequality decisions are made by
the pipeline on interval endpoints, never on floats.  Totient and
prime-counting estimates are the classical explicit ones (Rosser-Schoenfeld
style); the cyclotomic lower bounds come in several variants selected by
MnBoundVariant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

from mpmath import mpf

from .errors import DomainError
from .interval import DEFAULT_PREC, Interval, euler_gamma, log2, log_int
from .primes import nth_primes, primorial


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"


class MnBoundVariant(str, Enum):
    REAL_EQ5 = "real_eq5"
    UNIT_EQ55 = "unit_eq55"
    COMPLEX_TRIVIAL_F = "complex_trivial_f"
    COMPLEX_VOUTIER128 = "complex_voutier128"
    COMPLEX_VOUTIER64 = "complex_voutier64"
    LEMMA_GW = "lemma_gw"
    LEMMA_HW = "lemma_hw"


def _as_interval(n, prec: int) -> Interval:
    """Accept either an integer index or an enclosure of a range of indices."""
    if isinstance(n, Interval):
        return n
    return Interval.from_int(n, prec)


@dataclass(frozen=True)
class BoundContext:
    n: int
    logn: Interval
    loglogn: Interval
    omega_assumed: int
    parity: Parity
    log_alpha_lower: Interval
    phi_lower: Interval
    # log of the divisor applied to |Phi_n| when bounding M_n from below;
    # log n is the conservative default, log max(3, P(n)) when justified.
    primitive_divisor_log: Interval
    prec: int = DEFAULT_PREC
    # when set, every n-dependent term is evaluated over this whole range so a
    # single context certifies all integer indices it contains
    n_range: Optional[Interval] = None

    def n_enclosure(self) -> Interval:
        if self.n_range is not None:
            return self.n_range
        return Interval.from_int(self.n, self.prec)

    @classmethod
    def build(
        cls,
        n: int,
        omega_assumed: int,
        parity: Parity,
        log_alpha_lower: Interval,
        phi_lower: Interval,
        primitive_divisor_log: Optional[Interval] = None,
        prec: int = DEFAULT_PREC,
        n_hi: Optional[int] = None,
    ) -> "BoundContext":
        if n < 150:
            raise DomainError("the cascade's standing assumption is n >= 150")
        n_range = None
        if n_hi is not None and n_hi > n:
            n_range = Interval(
                Interval.from_int(n, prec).lo, Interval.from_int(n_hi, prec).hi, prec
            )
        logn = n_range.log() if n_range is not None else log_int(n, prec)
        if primitive_divisor_log is None:
            primitive_divisor_log = logn
        return cls(
            n=n,
            logn=logn,
            loglogn=logn.log(),
            omega_assumed=omega_assumed,
            parity=parity,
            log_alpha_lower=log_alpha_lower,
            phi_lower=phi_lower,
            primitive_divisor_log=primitive_divisor_log,
            prec=prec,
            n_range=n_range,
        )


# -- explicit prime-theory estimates ----------------------------------------


def phi_lower_rs(n, prec: int = DEFAULT_PREC) -> Interval:
    """n / (e^gamma loglog n + 2.50637 / loglog n), a lower bound of phi(n)."""
    ni = _as_interval(n, prec)
    if ni.lo < 3:
        raise DomainError("n must be >= 3")
    ll = ni.log().log()
    denom = euler_gamma(prec).exp() * ll + Interval.from_str("2.50637", prec) / ll
    return ni / denom


def phi_lower_omega(n, omega: int, parity: Parity, prec: int = DEFAULT_PREC) -> Interval:
    """n * prod (1 - 1/p_k) over the first omega primes of the allowed set.

    The product starts at 2 for even n and at 3 for odd n.
    """
    if omega < 1:
        raise DomainError("omega must be >= 1")
    frac = Fraction(1)
    for p in nth_primes(omega, skip_two=parity is Parity.ODD):
        frac *= Fraction(p - 1, p)
    if isinstance(n, Interval):
        return n * Interval.from_fraction(frac.numerator, frac.denominator, prec)
    frac *= n
    return Interval.from_fraction(frac.numerator, frac.denominator, prec)


def omega_upper(n, prec: int = DEFAULT_PREC) -> int:
    """Certified upper bound for omega(n) via 1.3841 log n / loglog n."""
    ni = _as_interval(n, prec)
    if ni.lo < 26:
        raise DomainError("the explicit omega bound needs n >= 26")
    logn = ni.log()
    val = Interval.from_str("1.3841", prec) * logn / logn.log()
    return math.floor(val.hi)


def pi_ap_upper(x: int, n: int, prec: int = DEFAULT_PREC) -> Interval:
    """Brun-Titchmarsh: pi(x; n, +-1) <= 2x / (phi(n) log(x/n)) for x > n."""
    if x <= n:
        raise DomainError("Brun-Titchmarsh needs x > n")
    from .cyclotomic import arithmetic_profile

    phi_exact = arithmetic_profile(n).phi
    logq = (Interval.from_int(x, prec) / n).log()
    return Interval.from_int(2 * x, prec) / (Interval.from_int(phi_exact, prec) * logq)


def logp_sum_upper(
    m: int, n: int, parity: Parity, prec: int = DEFAULT_PREC
) -> Interval:
    """Certified upper bound for sum_{p <= m, p = +-1 mod n} log p / (p - 1).

    Tail over p > 3n via the Abel-summation bound: 4 (log m - 1) / phi(n)
    times (1 + loglog n) for m < n^2 and (1 + loglog n / 2) for m >= n^2;
    primes below 3n contribute at most 10.1 log(3n) / 3n for even n and
    3.1 log(3n) / 3n for odd n, plus log(3n)/3n from the 1/(p-1) -> 1/p shift.
    """
    if n < 150:
        raise DomainError("valid for n >= 150")
    if m < n - 1:
        raise DomainError("m must be >= n - 1")
    from .cyclotomic import arithmetic_profile

    phi_exact = Interval.from_int(arithmetic_profile(n).phi, prec)
    logm = log_int(m, prec)
    loglogn = log_int(n, prec).log()
    base = 4 * (logm - 1) / phi_exact
    tail = base * (1 + loglogn)
    if m >= n * n:
        alt = base * (1 + loglogn / 2)
        if alt.hi < tail.hi:
            tail = alt
    small_coeff = "11.1" if parity is Parity.EVEN else "4.1"
    small = Interval.from_str(small_coeff, prec) * log_int(3 * n, prec) / (3 * n)
    return tail + small


def voutier_pair_lower(
    log_alpha: Interval, m: int, prec: int = DEFAULT_PREC
) -> Interval:
    """Lower bound for log|alpha^m - beta^m| in the complex-conjugate case.

    Max of the two explicit linear-forms-in-logarithms bounds:
      m log|a| - (m/gcd(m,2) + log2/4 + 0.02) log|a|
      m log|a| - 73 log|a| (log(m/gcd(m,2)))^2
    The first is better for m <= 5358.
    """
    if m < 3:
        raise DomainError("valid for m >= 3")
    half = m // math.gcd(m, 2)
    b1 = m * log_alpha - (half + log2(prec) / 4 + Interval.from_str("0.02", prec)) * log_alpha
    b2 = m * log_alpha - 73 * log_alpha * log_int(half, prec) ** 2
    return Interval(max(b1.lo, b2.lo), max(b1.hi, b2.hi), prec)


# -- lemma coefficient tables -------------------------------------------------


def _poly(logx: Interval, a: str, b: str, c: str, prec: int) -> Interval:
    return (
        Interval.from_str(a, prec) * logx**2
        - Interval.from_str(b, prec) * logx
        + Interval.from_str(c, prec)
    )


def g_omega(n, omega: int, prec: int = DEFAULT_PREC) -> Interval:
    """Table of g_w coefficients for odd n (w <= 6)."""
    if omega > 6 or omega < 1:
        raise DomainError("odd n has omega <= 6 in the cascade's regime")
    ni = _as_interval(n, prec)
    ln = ni.log()
    if omega == 6:
        return 73 * _poly(ln, "11", "87.5", "194.1", prec) + Interval.from_str(
            "0.0027", prec
        ) * ni + Interval.from_str("3.1", prec)
    if omega == 5:
        return 73 * _poly(ln, "7", "49.1", "101.6", prec) + ni / 1155 + Interval.from_str(
            "0.2", prec
        )
    if omega == 4:
        return 73 * _poly(ln, "4", "22.6", "43.1", prec)
    if omega == 3:
        return 73 * _poly(ln, "2", "6.8", "11.6", prec)
    return 73 * ln**2


def h_omega(n, omega: int, prec: int = DEFAULT_PREC) -> Interval:
    """Table of h_w coefficients for even n (w <= 7), arguments in log(n/2)."""
    if omega > 7 or omega < 1:
        raise DomainError("even n has omega <= 7 in the cascade's regime")
    ni = _as_interval(n, prec)
    lh = ni.log() - log2(prec)
    if omega == 7:
        return 73 * _poly(lh, "16", "139", "327", prec) + Interval.from_str(
            "0.0032", prec
        ) * ni + Interval.from_str("3.1", prec)
    if omega == 6:
        return 73 * _poly(lh, "11", "87.5", "194.1", prec) + Interval.from_str(
            "0.002", prec
        ) * ni + Interval.from_str("0.97", prec)
    if omega == 5:
        return 73 * _poly(lh, "7", "49.1", "101.6", prec) + Interval.from_str(
            "0.0005", prec
        ) * ni + Interval.from_str("0.2", prec)
    if omega == 4:
        return 73 * _poly(lh, "4", "22.6", "43.1", prec)
    if omega == 3:
        return 73 * _poly(lh, "2", "6.8", "11.6", prec)
    return 73 * lh**2


# -- certified lower bounds for log M_n ---------------------------------------


def _f_bound(tag: MnBoundVariant, ctx: BoundContext) -> Interval:
    ln = ctx.logn
    p = ctx.prec
    if tag is MnBoundVariant.COMPLEX_VOUTIER128:
        return _poly(ln, "128", "1886", "7913", p)
    if tag is MnBoundVariant.COMPLEX_VOUTIER64:
        return _poly(ln, "64", "775", "2718", p)
    raise DomainError(f"no f(n) bound for {tag}")


def mn_lower_affine(
    variant: MnBoundVariant, ctx: BoundContext
) -> tuple[Interval, Interval]:
    """(A, B) with mn_lower = A * log|alpha| + B; used for slope certification."""
    ln = ctx.logn
    phi = ctx.phi_lower
    w = ctx.omega_assumed
    p = ctx.prec
    two = 2 ** (w - 1)
    if variant is MnBoundVariant.REAL_EQ5:
        return phi - two, -(two * log2(p)) - ctx.primitive_divisor_log
    if variant is MnBoundVariant.UNIT_EQ55:
        return phi, -Interval.from_str("1.28", p) - ctx.primitive_divisor_log
    if variant is MnBoundVariant.COMPLEX_TRIVIAL_F:
        return (
            phi - 1 - two * 73 * ln**2,
            -(two * log2(p)) - ctx.primitive_divisor_log,
        )
    if variant in (MnBoundVariant.COMPLEX_VOUTIER128, MnBoundVariant.COMPLEX_VOUTIER64):
        return (
            phi - 1 - 73 * _f_bound(variant, ctx),
            -(two * log2(p)) - ctx.primitive_divisor_log,
        )
    if variant is MnBoundVariant.LEMMA_GW:
        if ctx.parity is not Parity.ODD:
            raise DomainError("lemma_gw applies to odd n")
        quarter = Interval.from_fraction(2**w, 4 * w, p)
        return (
            phi - 1 - g_omega(ctx.n_enclosure(), w, p),
            -(1 + quarter) * ln - 2 ** (w - 2) * log2(p),
        )
    if variant is MnBoundVariant.LEMMA_HW:
        if ctx.parity is not Parity.EVEN:
            raise DomainError("lemma_hw applies to even n")
        return (
            phi - 1 - h_omega(ctx.n_enclosure(), w, p),
            -ln - 2 ** (w - 2) * log2(p),
        )
    raise DomainError(f"unknown variant {variant}")


def mn_lower(variant: MnBoundVariant, ctx: BoundContext) -> Interval:
    """Certified lower bound for log M_n under the variant's hypotheses."""
    a, b = mn_lower_affine(variant, ctx)
    return a * ctx.log_alpha_lower + b


def mn_lower_lemma(ctx: BoundContext) -> Interval:
    """The lemma's lower bound for log M_n, odd (g_w) or even (h_w) form."""
    variant = (
        MnBoundVariant.LEMMA_GW if ctx.parity is Parity.ODD else MnBoundVariant.LEMMA_HW
    )
    return mn_lower(variant, ctx)


def mn_upper_sieve_affine(
    ctx: BoundContext, refined: bool = False
) -> tuple[Interval, Interval]:
    """(C, D) with mn_upper_sieve = C * log|alpha| + D."""
    ni = ctx.n_enclosure()
    front = 4 * (1 + ctx.loglogn) / ctx.phi_lower
    c = front * ni
    if refined:
        return c, -front * ((ni - 1).log() - 1)
    return c, Interval.from_int(0, ctx.prec)


def mn_upper_sieve(ctx: BoundContext, refined: bool = False) -> Interval:
    """Sieve upper bound (4 (1 + loglog n) / phi(n)) n log|alpha| for log M_n.

    With ``refined`` the single guaranteed factorial argument >= n - 1 is
    accounted for, replacing n log|alpha| by n log|alpha| - (log(n-1) - 1).
    """
    c, d = mn_upper_sieve_affine(ctx, refined)
    return c * ctx.log_alpha_lower + d


# -- worst-case growth bounds for log|alpha| ----------------------------------


def growth_log_alpha_lower(
    n, parity: Parity, prec: int = DEFAULT_PREC, sharp: bool = False
) -> Interval:
    """Minimum permitted log|alpha| when U_n is a factorial product.

    The largest factorial argument is at least rn - 1 (r = 1 even, r = 2 odd)
    so 2 |alpha|^n >= (rn - 1)!.  Default is the cascade's 0.5 log n; with
    ``sharp`` the direct Stirling form (and the parity-aware 0.75/1.75
    constants as a floor) is used.
    """
    ni = _as_interval(n, prec)
    logn = ni.log()
    if not sharp:
        return logn / 2
    from .lucas import stirling_log_factorial_sqrt

    r = 1 if parity is Parity.EVEN else 2
    direct = (stirling_log_factorial_sqrt(r * ni - 1, prec) - log2(prec)) / ni
    coeff = Interval.from_fraction(3 if parity is Parity.EVEN else 7, 4, prec)
    floor = coeff * logn
    if direct.lo >= floor.lo:
        return direct
    return floor


def unit_product_constant(prec: int = 256) -> Interval:
    """Enclosure of prod_{d>=1} (1 - g^-2d)(1 + g^-2d)^-1, g the golden ratio.

    The finite part is evaluated in intervals; the tail is bounded by
    prod_{d>D} (1 - q^d)^2 >= 1 - 2 q^(D+1) / (1 - q).
    """
    sqrt5 = Interval.from_int(5, prec).sqrt()
    golden = (1 + sqrt5) / 2
    q = 1 / golden**2
    depth = max(8, prec // 2)
    prod = Interval.from_int(1, prec)
    qd = q
    for _ in range(depth):
        prod = prod * (1 - qd) / (1 + qd)
        qd = qd * q
    tail_lo = 1 - 2 * qd / (1 - q)
    if tail_lo.lo <= 0:
        raise DomainError("tail bound not contractive; raise depth")
    tail = Interval(tail_lo.lo, mpf(1), prec)
    return prod * tail


def primitive_divisor_log_bound(
    n_floor: int, omega: int, parity: Parity, prec: int = DEFAULT_PREC
):
    """Callable giving log max(3, n / primorial(omega - 1)) at a concrete n.

    For n with omega distinct prime factors, P(n) is at most n divided by the
    product of the omega - 1 smallest admissible primes, and the primitive
    part of U_n is at least |Phi_n| / max(3, P(n)).
    """
    denom = primorial(omega - 1, skip_two=parity is Parity.ODD)

    def point(n: int) -> Interval:
        if n >= 3 * denom:
            return log_int(n, prec) - log_int(denom, prec)
        return log_int(3, prec)

    def at(n) -> Interval:
        if isinstance(n, Interval):
            lo = point(math.floor(n.lo)).lo
            hi = point(math.ceil(n.hi)).hi
            return Interval(lo, hi, prec)
        return point(n)

    return at
