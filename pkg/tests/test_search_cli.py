import json
import random
import subprocess
import sys

import pytest

from lucaspf.errors import DomainError, NotCoprime
from lucaspf.factorials import pf_fast_reject, pf_member
from lucaspf.lucas import SeqKind, u_naive, v_naive, validate_params
from lucaspf.primes import is_prime
from lucaspf.search import (
    SearchConfig,
    search_pf_terms,
    sieve_primes_in_classes,
    verify_fibonacci_identity,
)


def brute_force_hits(r, s, kind, n_max):
    # independent oracle: naive recurrence + naive factorial-product check
    p = validate_params(r, s)
    term = u_naive if kind is SeqKind.U else v_naive

    def member(n):
        if n == 1:
            return True
        stack = [n]
        seen = set()
        while stack:
            m = stack.pop()
            if m == 1:
                return True
            if m in seen:
                continue
            seen.add(m)
            f, k = 2, 2
            while f <= m:
                if m % f == 0:
                    stack.append(m // f)
                k += 1
                f *= k
        return False

    out = []
    for n in range(1, n_max + 1):
        v = term(p, n)
        if v != 0 and member(abs(v)):
            out.append(n)
    return out


def test_fibonacci_search_matches_oracle():
    hits = search_pf_terms(SearchConfig(1, 1, SeqKind.U, 1, 150))
    assert [h.index for h in hits] == brute_force_hits(1, 1, SeqKind.U, 150)
    assert [h.index for h in hits] == [1, 2, 3, 6, 12]


def test_lucas_companion_search_matches_oracle():
    hits = search_pf_terms(SearchConfig(1, 1, SeqKind.V, 1, 150))
    assert [h.index for h in hits] == brute_force_hits(1, 1, SeqKind.V, 150)
    assert [h.index for h in hits] == [1, 3]


def test_mersenne_like_search():
    # (3,-2): U_n = 2^n - 1, always odd, so only the trivial n = 1 hits
    hits = search_pf_terms(SearchConfig(3, -2, SeqKind.U, 1, 60))
    assert [h.index for h in hits] == brute_force_hits(3, -2, SeqKind.U, 60) == [1]
    assert hits[0].trivial


def test_witnesses_remultiply_to_terms():
    for r, s, kind in ((1, 1, SeqKind.U), (1, 1, SeqKind.V), (2, 1, SeqKind.U)):
        p = validate_params(r, s)
        for h in search_pf_terms(SearchConfig(r, s, kind, 1, 120)):
            term = (u_naive if kind is SeqKind.U else v_naive)(p, h.index)
            assert h.witness.product() == term
            assert h.trivial == (abs(term) == 1)


def test_worker_count_does_not_change_results():
    base = search_pf_terms(SearchConfig(1, 1, SeqKind.U, 1, 200, workers=1))
    for w in (2, 8):
        again = search_pf_terms(SearchConfig(1, 1, SeqKind.U, 1, 200, workers=w))
        assert again == base


def test_fast_reject_differential_over_random_params():
    rng = random.Random(5)
    pairs = []
    while len(pairs) < 10:
        r, s = rng.randint(-10, 10), rng.randint(-10, 10)
        try:
            validate_params(r, s)
            pairs.append((r, s))
        except Exception:
            continue
    for r, s in pairs:
        p = validate_params(r, s)
        for n in range(1, 301):
            v = u_naive(p, n)
            if abs(v) > 1 and pf_fast_reject(v) is not None:
                assert not pf_member(v), (r, s, n)


def test_search_config_validation():
    with pytest.raises(DomainError):
        SearchConfig(1, 1, SeqKind.U, 0, 10)
    with pytest.raises(DomainError):
        SearchConfig(1, 1, SeqKind.U, 10, 5)
    with pytest.raises(NotCoprime):
        SearchConfig(2, 4, SeqKind.U, 1, 10)


def test_fibonacci_identity():
    assert verify_fibonacci_identity()
    assert not verify_fibonacci_identity((1, 2, 3, 4, 5, 6, 8, 10, 11))


def test_sieve_primes_in_classes_against_enumeration():
    def oracle(n, x):
        return [p for p in range(2, x + 1) if is_prime(p) and p % n in (1, n - 1)]

    assert sieve_primes_in_classes(11, 100) == oracle(11, 100) == [23, 43, 67, 89]
    assert sieve_primes_in_classes(3, 10) == oracle(3, 10) == [2, 5, 7]
    assert sieve_primes_in_classes(150, 1000) == oracle(150, 1000)
    with pytest.raises(DomainError):
        sieve_primes_in_classes(2, 100)
    with pytest.raises(DomainError):
        sieve_primes_in_classes(10, 5)


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "lucaspf.cli", *args],
        capture_output=True,
        timeout=600,
    )


def test_cli_search_deterministic_bytes():
    first = run_cli("search", "--r", "1", "--s", "1", "--max-n", "150")
    second = run_cli("search", "--r", "1", "--s", "1", "--max-n", "150")
    assert first.returncode == second.returncode == 0
    assert first.stdout == second.stdout
    for w in ("2", "8"):
        again = run_cli(
            "search", "--r", "1", "--s", "1", "--max-n", "150", "--workers", w
        )
        assert again.stdout == first.stdout
    assert b"exhaustive" in first.stdout
    for n in (b" 1 ", b"12"):
        assert n in first.stdout


def test_cli_search_partial_label():
    out = run_cli("search", "--r", "2", "--s", "3", "--max-n", "40")
    assert out.returncode == 0
    assert b"partial up to nMax=40" in out.stdout


def test_cli_exit_codes():
    assert run_cli("search", "--r", "2", "--s", "4", "--max-n", "10").returncode == 2
    assert run_cli("pf", "0").returncode == 2
    assert run_cli("cyclotomic", "--r", "1", "--s", "-1", "--n", "5").returncode == 2
    assert run_cli("bogus").returncode == 2


def test_cli_pf_and_cyclotomic():
    out = run_cli("pf", "39916800", "--decompose")
    assert out.returncode == 0 and b"11!" in out.stdout
    out = run_cli("pf", "7")
    assert out.returncode == 0 and b"not a member" in out.stdout
    out = run_cli("cyclotomic", "--r", "1", "--s", "1", "--n", "12")
    assert out.returncode == 0 and b"= 6 " in out.stdout


def test_cli_verify_identities():
    out = run_cli("verify", "--suite", "identities")
    assert out.returncode == 0
    assert out.stdout.count(b"PASS") == 2


def test_cli_json_and_csv_outputs(tmp_path):
    jpath = tmp_path / "hits.json"
    cpath = tmp_path / "hits.csv"
    out = run_cli(
        "search", "--r", "1", "--s", "1", "--max-n", "150",
        "--json", str(jpath), "--csv", str(cpath),
    )
    assert out.returncode == 0
    payload = json.loads(jpath.read_text())
    assert [h["index"] for h in payload["search"]["hits"]] == [1, 2, 3, 6, 12]
    rows = cpath.read_text().strip().splitlines()
    assert rows[0] == "index,kind,digits,witness,trivial"
    assert len(rows) == 6


def test_cli_bounds_unit_json(tmp_path):
    jpath = tmp_path / "unit.json"
    out = run_cli(
        "bounds", "--case", "unit", "--r", "1", "--s", "1", "--json", str(jpath)
    )
    assert out.returncode == 0
    report = json.loads(jpath.read_text())
    assert report["finalBound"] == 150
    assert report["decisive"]
