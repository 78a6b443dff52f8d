"""Quasichain sequences and the Vieta-style steps between their terms.

A *quasisolution* for exponent m is a pair of positive integers (p, q),
not necessarily prime, with p | sigma(q^m) and q | sigma(p^m).  For
m = 2 this is equivalent to the quadratic identity

    5pq = p^2 + q^2 + p + q + 1,

and every such pair consists of consecutive terms of the chain
t_1 = t_2 = 1, t_{n+2} = (t_{n+1}^2 + t_{n+1} + 1) / t_n, which starts
1, 1, 3, 13, 61, 291, ...  The general-m chain advances by
t_{n+1} = sigma(t_n ^ m) / t_{n-1}.

Also provided: the rational chain invariant (p^2+q^2+p+q+1)/(pq), the
auxiliary sequences s_n (consecutive solutions of x | y^2+1, y | x^2+1,
equal to the odd-index Fibonacci numbers) and the periodic sequence u_n
classifying solutions of b | a^2+1, a | b+1.

Indexing follows the subscripts used throughout: t is 1-based with
t_1 = t_2 = 1, while s and u are 0-based with s_0 = s_1 = u_0 = u_1 = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import sigma_power

__all__ = [
    "BelowChainStart",
    "ChainState",
    "NonIntegralStep",
    "chain_invariant",
    "chain_next",
    "chain_prev",
    "chain_terms",
    "generate_s",
    "generate_u",
    "is_quasisolution",
    "quadratic_identity_holds",
    "start_state",
]


class NonIntegralStep(Exception):
    """A chain step required a division that left a remainder, so the
    input was not a valid quasisolution state."""


class BelowChainStart(Exception):
    """Descending further would need a term before index 1."""


@dataclass(frozen=True)
class ChainState:
    """Position on a quasichain: ``curr`` is the term at index ``n``
    and ``prev`` the term at index ``n - 1``."""

    m: int
    n: int
    prev: int
    curr: int


def start_state(m: int, seed: tuple[int, int] = (1, 1)) -> ChainState:
    """State holding the two seed terms, at indices 1 and 2."""
    if m < 1:
        raise ValueError(f"exponent must be >= 1, got {m}")
    a, b = seed
    if a < 1 or b < 1:
        raise ValueError(f"seed terms must be positive, got {seed}")
    return ChainState(m=m, n=2, prev=a, curr=b)


def chain_next(state: ChainState) -> ChainState:
    """Advance one step: the new term is sigma(curr^m) / prev."""
    numerator = sigma_power(state.curr, state.m)
    nxt, remainder = divmod(numerator, state.prev)
    if remainder:
        raise NonIntegralStep(
            f"{state.prev} does not divide sigma({state.curr}^{state.m})"
        )
    return ChainState(m=state.m, n=state.n + 1, prev=state.curr, curr=nxt)


def chain_prev(state: ChainState) -> ChainState:
    """Step back one index; inverse of :func:`chain_next` on chain states."""
    if state.n < 2:
        raise ValueError(f"state index must be >= 2, got {state.n}")
    if state.n == 2:
        raise BelowChainStart("descent would pass index 1")
    numerator = sigma_power(state.prev, state.m)
    before, remainder = divmod(numerator, state.curr)
    if remainder:
        raise NonIntegralStep(
            f"{state.curr} does not divide sigma({state.prev}^{state.m})"
        )
    return ChainState(m=state.m, n=state.n - 1, prev=before, curr=state.prev)


def chain_terms(m: int, count: int, seed: tuple[int, int] = (1, 1)) -> list[int]:
    """First ``count`` terms t_{m,1} .. t_{m,count} of the chain."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    state = start_state(m, seed)
    terms = [state.prev, state.curr][:count]
    while len(terms) < count:
        state = chain_next(state)
        terms.append(state.curr)
    return terms


def is_quasisolution(p: int, q: int, m: int = 2) -> bool:
    """True iff p | sigma(q^m) and q | sigma(p^m)."""
    if p < 1 or q < 1:
        raise ValueError(f"terms must be positive, got ({p}, {q})")
    return sigma_power(q, m) % p == 0 and sigma_power(p, m) % q == 0


def quadratic_identity_holds(p: int, q: int) -> bool:
    """True iff 5pq = p^2 + q^2 + p + q + 1 exactly."""
    if p < 1 or q < 1:
        raise ValueError(f"terms must be positive, got ({p}, {q})")
    return 5 * p * q == p * p + q * q + p + q + 1


def chain_invariant(p: int, q: int) -> Fraction:
    """The exact rational (p^2 + q^2 + p + q + 1) / (pq), constant along
    a quasichain; equals 5 on the principal m = 2 chain."""
    if p < 1 or q < 1:
        raise ValueError(f"terms must be positive, got ({p}, {q})")
    return Fraction(p * p + q * q + p + q + 1, p * q)


def generate_s(limit: int) -> list[int]:
    """s_0 .. s_{limit-1} where s_0 = s_1 = 1 and
    s_{n+2} = (s_{n+1}^2 + 1) / s_n.  Adjacent terms (x, y) satisfy
    x | y^2 + 1 and y | x^2 + 1."""
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    seq = [1, 1]
    while len(seq) < limit:
        seq.append((seq[-1] * seq[-1] + 1) // seq[-2])
    return seq


def generate_u(limit: int) -> list[int]:
    """u_0 .. u_{limit-1} from the alternating rules
    u_{2k+2} = (u_{2k+1}^2 + 1) / u_{2k} and
    u_{2k+3} = (u_{2k+2} + 1) / u_{2k+1}; the result is periodic with
    cycle 1, 1, 2, 3, 5, 2."""
    if limit < 2:
        raise ValueError(f"limit must be >= 2, got {limit}")
    seq = [1, 1]
    while len(seq) < limit:
        k = len(seq)
        if k % 2 == 0:
            seq.append((seq[-1] * seq[-1] + 1) // seq[-2])
        else:
            seq.append((seq[-1] + 1) // seq[-2])
    return seq
