"""Arbitrary-precision integer primitives shared by the whole toolkit.

Plain Python ints are the universal nonnegative-integer scalar here; the
decimal round trip is ``int(str(x)) == x`` by construction.  This module
adds the divisor sum of a prime power, a reproducible primality test, a
re-export of ``math.gcd`` and bounded square-part extraction.

Primality policy
----------------
* ``x < 10**10`` is settled by complete trial division (deterministic).
* ``10**10 <= x < 2**64`` uses a fixed Miller-Rabin witness set known to
  be deterministic for the whole 64-bit range.
* Larger ``x`` is prefiltered by trial division with primes below 10**5,
  then subjected to ``rounds`` strong-probable-prime rounds whose bases
  are derived by hashing ``(x, round)``.  The error probability is at
  most ``4**-rounds`` and results are bit-reproducible regardless of
  thread scheduling, which keeps long searches resumable.
"""

from __future__ import annotations

import hashlib
import sys
from dataclasses import dataclass
from enum import Enum
from math import gcd, isqrt

__all__ = [
    "DEFAULT_ROUNDS",
    "DETERMINISTIC_LIMIT",
    "TRIAL_DIVISION_BOUND",
    "Primality",
    "PrimalityVerdict",
    "bounded_square_part",
    "decimal_digits",
    "gcd",
    "is_prime",
    "sigma_power",
    "small_primes",
]

# Decimal round trips at any size are part of this package's contract
# (multi-thousand-digit chain terms in checkpoints and JSON), so the
# interpreter's int/str conversion guard must not apply.
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

TRIAL_DIVISION_BOUND = 10**5
DETERMINISTIC_LIMIT = 2**64
DEFAULT_ROUNDS = 40

# Complete trial division is cheaper than Miller-Rabin below this cutoff
# and is exact because TRIAL_DIVISION_BOUND**2 == 10**10.
_TRIAL_ONLY_LIMIT = TRIAL_DIVISION_BOUND**2

# Strong-probable-prime witnesses covering every x < 2**64.
_DETERMINISTIC_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)


def _sieve(limit: int) -> tuple[int, ...]:
    flags = bytearray(b"\x01") * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = b"\x00" * len(flags[p * p :: p])
    return tuple(i for i, f in enumerate(flags) if f)


_SMALL_PRIMES = _sieve(TRIAL_DIVISION_BOUND)


def small_primes(bound: int = TRIAL_DIVISION_BOUND) -> tuple[int, ...]:
    """Primes up to ``bound`` (cached for the default trial-division bound)."""
    if bound >= TRIAL_DIVISION_BOUND:
        if bound == TRIAL_DIVISION_BOUND:
            return _SMALL_PRIMES
        return _sieve(bound)
    cut = 0
    while cut < len(_SMALL_PRIMES) and _SMALL_PRIMES[cut] <= bound:
        cut += 1
    return _SMALL_PRIMES[:cut]


class Primality(Enum):
    PRIME = "prime"
    PROBABLE_PRIME = "probable-prime"
    COMPOSITE = "composite"


@dataclass(frozen=True)
class PrimalityVerdict:
    """Outcome of a primality test.

    ``witness`` is a compositeness certificate when one exists: a prime
    factor found by trial division, or the Miller-Rabin base that
    exposed the number.
    """

    status: Primality
    rounds: int = 0
    witness: int | None = None

    @property
    def is_probable_prime(self) -> bool:
        return self.status is not Primality.COMPOSITE


_LOG10_2 = 0.30102999566398114


def decimal_digits(x: int) -> int:
    """Number of decimal digits of a nonnegative integer, without
    building the decimal string (linear instead of quadratic in size)."""
    if x < 0:
        raise ValueError(f"expected a nonnegative integer, got a negative one")
    if x == 0:
        return 1
    digits = max(1, int((x.bit_length() - 1) * _LOG10_2) + 1)
    while 10**digits <= x:
        digits += 1
    while digits > 1 and 10 ** (digits - 1) > x:
        digits -= 1
    return digits


def sigma_power(p: int, m: int) -> int:
    """Divisor sum of the prime power p**m, i.e. 1 + p + ... + p**m.

    Defined for any base p >= 1; degenerate base 1 gives m + 1.
    """
    if p < 1:
        raise ValueError(f"base must be >= 1, got {p}")
    if m < 1:
        raise ValueError(f"exponent must be >= 1, got {m}")
    if p == 1:
        return m + 1
    return (p ** (m + 1) - 1) // (p - 1)


def _strong_probable_prime(x: int, base: int, d: int, r: int) -> bool:
    # x - 1 == d * 2**r with d odd
    y = pow(base, d, x)
    if y == 1 or y == x - 1:
        return True
    for _ in range(r - 1):
        y = y * y % x
        if y == x - 1:
            return True
    return False


def _derived_base(x: int, index: int) -> int:
    digest = hashlib.sha256(f"{x}:{index}".encode("ascii")).digest()
    return 2 + int.from_bytes(digest, "big") % (x - 3)


def is_prime(x: int, rounds: int = DEFAULT_ROUNDS) -> PrimalityVerdict:
    """Classify ``x`` as prime, composite, or probable prime.

    Deterministic for x < 2**64; above that a composite verdict is
    certain while a probable-prime verdict errs with probability at
    most 4**-rounds.
    """
    if x < 0:
        raise ValueError(f"expected a nonnegative integer, got {x}")
    if rounds < 1:
        raise ValueError(f"rounds must be >= 1, got {rounds}")
    if x < 2:
        return PrimalityVerdict(Primality.COMPOSITE)

    complete = x < _TRIAL_ONLY_LIMIT
    for p in _SMALL_PRIMES:
        if complete and p * p > x:
            return PrimalityVerdict(Primality.PRIME)
        if x % p == 0:
            if x == p:
                return PrimalityVerdict(Primality.PRIME)
            return PrimalityVerdict(Primality.COMPOSITE, witness=p)

    d, r = x - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1

    if x < DETERMINISTIC_LIMIT:
        for i, base in enumerate(_DETERMINISTIC_WITNESSES):
            if not _strong_probable_prime(x, base, d, r):
                return PrimalityVerdict(Primality.COMPOSITE, rounds=i + 1, witness=base)
        return PrimalityVerdict(Primality.PRIME, rounds=len(_DETERMINISTIC_WITNESSES))

    for i in range(rounds):
        base = _derived_base(x, i)
        if not _strong_probable_prime(x, base, d, r):
            return PrimalityVerdict(Primality.COMPOSITE, rounds=i + 1, witness=base)
    return PrimalityVerdict(Primality.PROBABLE_PRIME, rounds=rounds)


def bounded_square_part(x: int, trial_bound: int) -> int:
    """Largest square s*s dividing x whose root s has all prime factors
    <= trial_bound.

    This is a lower bound for the true largest square divisor of x:
    square factors supported on primes above ``trial_bound`` are not
    seen.
    """
    if x < 1:
        raise ValueError(f"expected a positive integer, got {x}")
    if trial_bound < 2:
        raise ValueError(f"trial bound must be >= 2, got {trial_bound}")
    square = 1
    rest = x
    for p in small_primes(trial_bound):
        if p * p > rest:
            break
        exponent = 0
        while rest % p == 0:
            rest //= p
            exponent += 1
        square *= p ** (2 * (exponent // 2))
    return square
