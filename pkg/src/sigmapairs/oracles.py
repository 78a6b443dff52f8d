"""Brute-force verifiers for the small-case divisibility lemmas.

Each oracle enumerates its solution set directly from the defining
divisibility relations, with loops written here from scratch (no shared
chain machinery), and compares against the frozen expected set.  A
report with ``agrees=False`` means the enumeration found something the
expected set does not predict, or vice versa; reports never hide
counterexamples.

Known honest failure: :func:`oracle_gcd` checks the claim that
gcd(p^2+p+1, q^2+q+1) divides 3 along the chain.  That claim is false:
the gcd also takes the values 7 and 21 (first at chain index 8, and 21
at the large prime pair itself), because 7 divides x^2+x+1 whenever a
term is congruent to 2 mod 7.  The oracle reports these witnesses.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterable

from .chains import generate_s, generate_u

__all__ = [
    "ORACLES",
    "OracleReport",
    "oracle_gcd",
    "oracle_linked",
    "oracle_no_square_pair",
    "oracle_p1q1",
    "oracle_p_div_q1",
    "oracle_pqr",
    "oracle_s_classification",
    "oracle_sigma33_breakdown",
    "oracle_sigma41",
    "oracle_u_classification",
]


@dataclass(frozen=True)
class OracleReport:
    lemma_id: str
    bound: int
    witnesses: tuple
    expected: tuple
    agrees: bool
    elapsed: float


def _report(lemma_id: str, bound: int, witnesses: Iterable, expected: Iterable,
            started: float, extra_ok: bool = True) -> OracleReport:
    wit = tuple(sorted(set(witnesses)))
    exp = tuple(sorted(set(expected)))
    return OracleReport(
        lemma_id=lemma_id,
        bound=bound,
        witnesses=wit,
        expected=exp,
        agrees=(wit == exp) and extra_ok,
        elapsed=time.perf_counter() - started,
    )


def _primes_up_to(bound: int) -> list[int]:
    if bound < 2:
        return []
    flags = bytearray(b"\x01") * (bound + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, isqrt(bound) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * len(flags[p * p :: p])
    return [i for i, f in enumerate(flags) if f]


def oracle_p_div_q1(bound: int) -> OracleReport:
    """Odd positive p, q <= bound with q | p^2+p+1 and p | q+1; the
    complete solution set is {(1,1), (1,3)}."""
    started = time.perf_counter()
    witnesses = []
    for p in range(1, bound + 1, 2):
        value = p * p + p + 1
        # p | q+1 means q = kp - 1; q odd forces k even (p odd)
        for k in range(2, (bound + 1) // p + 2, 2):
            q = k * p - 1
            if q > bound:
                break
            if q >= 1 and value % q == 0:
                witnesses.append((p, q))
    expected = [(p, q) for p, q in ((1, 1), (1, 3)) if p <= bound and q <= bound]
    return _report("p_div_q1", bound, witnesses, expected, started)


def oracle_no_square_pair(bound: int) -> OracleReport:
    """Primes p, q <= bound with p^2 | q^2+q+1 and q | p^2+p+1; no
    solutions exist."""
    started = time.perf_counter()
    primes = _primes_up_to(bound)
    witnesses = []
    for q in primes:
        value = q * q + q + 1
        for p in primes:
            if p * p > value:
                break
            if value % (p * p) == 0 and (p * p + p + 1) % q == 0:
                witnesses.append((p, q))
    return _report("no_square_pair", bound, witnesses, [], started)


def _prime_factorization(n: int) -> dict[int, int]:
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def oracle_pqr(bound: int) -> OracleReport:
    """Primes p, q <= bound and any prime r with pr | q^2+q+1,
    q | p^2+p+1, p | r+1 and r = 1 (mod 4); no solutions exist."""
    started = time.perf_counter()
    primes = _primes_up_to(bound)
    witnesses = []
    for p in primes:
        value = p * p + p + 1
        for q in primes:
            if value % q:
                continue
            m = q * q + q + 1
            if m % p:
                continue
            for r in _prime_factorization(m):
                if r % 4 == 1 and (r + 1) % p == 0 and m % (p * r) == 0:
                    witnesses.append((p, q, r))
    return _report("pqr", bound, witnesses, [], started)


def _sigma22_prime_pairs(bound: int) -> set[tuple[int, int]]:
    primes = _primes_up_to(bound)
    pairs = set()
    for q in primes:
        value = q * q + q + 1
        for p in primes:
            if p >= q:
                break
            if value % p == 0 and (p * p + p + 1) % q == 0:
                pairs.add((p, q))
    return pairs


def oracle_linked(bound: int) -> OracleReport:
    """Triples of distinct odd primes where (p, q) and (q, r) are both
    sigma_{2,2} pairs; only {3, 13, 61} qualifies."""
    started = time.perf_counter()
    pairs = _sigma22_prime_pairs(bound)
    witnesses = []
    for p, q in pairs:
        for a, b in pairs:
            shared = {p, q} & {a, b}
            if len(shared) == 1 and {p, q} != {a, b}:
                triple = tuple(sorted({p, q, a, b}))
                if len(triple) == 3:
                    witnesses.append(triple)
    expected = [(3, 13, 61)] if bound >= 61 else []
    return _report("linked", bound, witnesses, expected, started)


def _chain(count: int) -> list[int]:
    # local recurrence on purpose: reports must not depend on the chain
    # module they cross-check
    terms = [1, 1]
    while len(terms) < count:
        terms.append((terms[-1] * terms[-1] + terms[-1] + 1) // terms[-2])
    return terms


def oracle_gcd(chain_terms: int) -> OracleReport:
    """Check gcd(t_n^2+t_n+1, t_{n+1}^2+t_{n+1}+1) | 3 along the chain,
    with gcd 1 at (3, 13) and 3 at (13, 61).

    The divides-3 claim fails (see module docstring); witnesses list the
    offending (index, gcd) pairs."""
    if chain_terms < 4:
        raise ValueError(f"need at least 4 chain terms, got {chain_terms}")
    started = time.perf_counter()
    terms = _chain(chain_terms)
    witnesses = []
    for n in range(2, chain_terms):
        p, q = terms[n - 1], terms[n]
        g = gcd(p * p + p + 1, q * q + q + 1)
        if 3 % g != 0:
            witnesses.append((n, g))
        if (p, q) == (3, 13) and g != 1:
            witnesses.append((n, g))
        if (p, q) == (13, 61) and g != 3:
            witnesses.append((n, g))
    return _report("gcd", chain_terms, witnesses, [], started)


def oracle_sigma41(bound: int) -> OracleReport:
    """Odd primes p, q <= bound with p | q+1 and q | sigma(p^4) never
    have p^2 | q+1; witnesses are violations."""
    started = time.perf_counter()
    primes = _primes_up_to(bound)
    prime_set = set(primes)
    witnesses = []
    for p in primes:
        if p == 2:
            continue
        sigma4 = p**4 + p**3 + p**2 + p + 1
        # q = kp - 1 is odd exactly when k is even
        for k in range(2, (bound + 1) // p + 2, 2):
            q = k * p - 1
            if q > bound:
                break
            if q in prime_set and sigma4 % q == 0 and (q + 1) % (p * p) == 0:
                witnesses.append((p, q))
    return _report("sigma41", bound, witnesses, [], started)


def oracle_p1q1(bound: int) -> OracleReport:
    """Positive p, q <= bound with p | q+1 and q | p+1; exactly
    {(1,1), (1,2), (2,1), (2,3), (3,2)}."""
    started = time.perf_counter()
    witnesses = []
    for p in range(1, bound + 1):
        for k in range(1, (bound + 1) // p + 2):
            q = k * p - 1
            if q > bound:
                break
            if q >= 1 and (p + 1) % q == 0:
                witnesses.append((p, q))
    expected = [
        (p, q)
        for p, q in ((1, 1), (1, 2), (2, 1), (2, 3), (3, 2))
        if p <= bound and q <= bound
    ]
    return _report("p1q1", bound, witnesses, expected, started)


def oracle_s_classification(bound: int) -> OracleReport:
    """Pairs x <= y <= bound with x | y^2+1 and y | x^2+1 are exactly
    the consecutive pairs of the s sequence (odd-index Fibonaccis)."""
    started = time.perf_counter()
    witnesses = []
    for x in range(1, bound + 1):
        value = x * x + 1
        # y = value // d runs over divisors >= x while staying <= bound
        low = max(1, (value + bound - 1) // bound)
        high = value // x
        for d in range(low, high + 1):
            if value % d == 0:
                y = value // d
                if x <= y <= bound and (y * y + 1) % x == 0:
                    witnesses.append((x, y))
    s_terms = generate_s(60)
    expected = [
        (s_terms[i], s_terms[i + 1])
        for i in range(len(s_terms) - 1)
        if s_terms[i + 1] <= bound
    ]
    return _report("s_classification", bound, witnesses, expected, started)


_U_SOLUTIONS = ((1, 1), (1, 2), (2, 1), (2, 5), (3, 2), (3, 5))


def oracle_u_classification(bound: int) -> OracleReport:
    """Pairs (a, b) <= bound with b | a^2+1 and a | b+1 all come from
    adjacent terms of the periodic u cycle 1,1,2,3,5,2 (read in either
    direction)."""
    started = time.perf_counter()
    witnesses = []
    for a in range(1, bound + 1):
        value = a * a + 1
        for k in range(1, (bound + 1) // a + 2):
            b = k * a - 1
            if b > bound:
                break
            if b >= 1 and value % b == 0:
                witnesses.append((a, b))
    expected = [(a, b) for a, b in _U_SOLUTIONS if a <= bound and b <= bound]

    cycle = generate_u(8)[0:6]
    adjacent = set()
    for i in range(6):
        pair = (cycle[i], cycle[(i + 1) % 6])
        adjacent.add(pair)
        adjacent.add(pair[::-1])
    all_adjacent = all(pair in adjacent for pair in witnesses)
    return _report("u_classification", bound, witnesses, expected, started,
                   extra_ok=all_adjacent)


def oracle_sigma33_breakdown(bound: int) -> OracleReport:
    """Every sigma_{3,3} prime pair (p, q) <= bound falls into one of
    four cases given by sigma(x^3) = (x+1)(x^2+1): a sigma_{1,1} pair,
    mutual x^2+1 divisibility, or the two mixed orientations.
    Witnesses are pairs escaping all four cases."""
    started = time.perf_counter()
    primes = _primes_up_to(bound)
    witnesses = []
    for p in primes:
        sp = p**3 + p**2 + p + 1
        for q in primes:
            if sp % q:
                continue
            if (q**3 + q**2 + q + 1) % p:
                continue
            case1 = (q + 1) % p == 0 and (p + 1) % q == 0
            case2 = (q * q + 1) % p == 0 and (p * p + 1) % q == 0
            case3 = (q + 1) % p == 0 and (p * p + 1) % q == 0
            case4 = (q * q + 1) % p == 0 and (p + 1) % q == 0
            if not (case1 or case2 or case3 or case4):
                witnesses.append((p, q))
    return _report("sigma33", bound, witnesses, [], started)


ORACLES = {
    "p_div_q1": (oracle_p_div_q1, 10**4),
    "no_square_pair": (oracle_no_square_pair, 10**4),
    "pqr": (oracle_pqr, 10**3),
    "linked": (oracle_linked, 10**4),
    "gcd": (oracle_gcd, 100),
    "sigma41": (oracle_sigma41, 10**4),
    "p1q1": (oracle_p1q1, 10**4),
    "s_classification": (oracle_s_classification, 10**4),
    "u_classification": (oracle_u_classification, 10**4),
    "sigma33": (oracle_sigma33_breakdown, 10**3),
}
