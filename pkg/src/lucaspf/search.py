"""Desk-scale exhaustive searches of concrete Lucas sequences for factorial
products, plus the small empirical helpers used to sanity-check the analytic
bounds against honest sieving."""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from multiprocessing import get_context

from .errors import DomainError
from .factorials import PFWitness, pf_decompose, pf_fast_reject, pf_member
from .lucas import SeqKind, validate_params, u_at, v_at
from .primes import segmented_primes

_BLOCK = 64
DEFAULT_MAX_N = 5000


@dataclass(frozen=True)
class SearchHit:
    index: int
    kind: SeqKind
    value_digits: int
    witness: PFWitness
    trivial: bool  # |value| = 1, the empty-product member


@dataclass(frozen=True)
class SearchConfig:
    r: int
    s: int
    kind: SeqKind = SeqKind.U
    n_min: int = 1
    n_max: int = DEFAULT_MAX_N
    workers: int = 1
    reject_log: bool = False

    def __post_init__(self):
        if self.n_min < 1:
            raise DomainError("n_min must be >= 1 (U_0 = 0 is excluded)")
        if self.n_min > self.n_max:
            raise DomainError("n_min must not exceed n_max")
        if self.workers < 1:
            raise DomainError("workers must be positive")
        validate_params(self.r, self.s)


def _digit_count(n: int) -> int:
    n = abs(n)
    try:
        return len(str(n))
    except ValueError:
        # very large int; lift the conversion guard for this one value
        sys.set_int_max_str_digits(n.bit_length() // 3 + 10)
        return len(str(n))


def _search_block(args):
    r, s, kind_value, lo, hi = args
    p = validate_params(r, s)
    kind = SeqKind(kind_value)
    term = u_at if kind is SeqKind.U else v_at
    hits = []
    rejects = {"odd": 0, "size": 0}
    for n in range(lo, hi + 1):
        value = term(p, n).value
        if value == 0:
            continue  # cannot occur for nondegenerate parameters; belt and braces
        if abs(value) == 1:
            hits.append((n, 1, (1, ())))
            continue
        reason = pf_fast_reject(value)
        if reason is not None:
            rejects[reason] += 1
            continue
        if not pf_member(value):
            continue
        w = pf_decompose(value, limit=1)[0]
        hits.append((n, _digit_count(value), (w.sign, w.args)))
    return hits, rejects


def search_pf_terms(cfg: SearchConfig) -> list[SearchHit]:
    """All indices n in [n_min, n_max] whose term is a product of factorials.

    Work is split into fixed index blocks; the merge is an ordered reduction,
    so the result is identical for any worker count.
    """
    blocks = []
    lo = cfg.n_min
    while lo <= cfg.n_max:
        hi = min(cfg.n_max, lo + _BLOCK - 1)
        blocks.append((cfg.r, cfg.s, cfg.kind.value, lo, hi))
        lo = hi + 1
    if cfg.workers > 1 and len(blocks) > 1:
        with get_context("fork").Pool(cfg.workers) as pool:
            raw = pool.map(_search_block, blocks)
    else:
        raw = [_search_block(b) for b in blocks]
    hits: list[SearchHit] = []
    rejects = {"odd": 0, "size": 0}
    for block_hits, block_rejects in raw:
        for n, digits, (sign, args) in block_hits:
            hits.append(
                SearchHit(
                    index=n,
                    kind=cfg.kind,
                    value_digits=digits,
                    witness=PFWitness(sign=sign, args=tuple(args)),
                    trivial=not args,
                )
            )
        for k, v in block_rejects.items():
            rejects[k] += v
    if cfg.reject_log:
        print(
            f"fast-reject: odd={rejects['odd']} size={rejects['size']}",
            file=sys.stderr,
        )
    return hits


_FIBONACCI_FACTORIAL_INDICES = (1, 2, 3, 4, 5, 6, 8, 10, 12)


def verify_fibonacci_identity(indices=_FIBONACCI_FACTORIAL_INDICES) -> bool:
    """Exact check of F_1 F_2 F_3 F_4 F_5 F_6 F_8 F_10 F_12 = 11!."""
    p = validate_params(1, 1)
    prod = 1
    for i in indices:
        prod *= u_at(p, i).value
    eleven_fact = 1
    for k in range(2, 12):
        eleven_fact *= k
    return prod == eleven_fact


def sieve_primes_in_classes(n: int, x: int) -> list[int]:
    """All primes p <= x with p congruent to +-1 mod n, by segmented sieve."""
    if n < 3 or x < n:
        raise DomainError("need x >= n >= 3")
    residues = {1 % n, (n - 1) % n}
    return [p for p in segmented_primes(2, x) if p % n in residues]
