"""Chain walks hunting for sigma_{m,m} prime pairs, with resumable
checkpoints, minimal-seed enumeration, the convergent tail heuristic and
bounded square-divisor probes.

The m = 2 search walks the single chain 1, 1, 3, 13, ... testing
consecutive terms for primality and emitting a record whenever both are
(probably) prime; the only hits below 10**500 are (3, 13), (13, 61) and
(22419767768701, 107419560853453).  Checkpoints are plain ASCII files
written atomically so that interrupting and resuming reproduces the
uninterrupted output byte for byte.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

from .arith import (
    DEFAULT_ROUNDS,
    Primality,
    PrimalityVerdict,
    bounded_square_part,
    decimal_digits,
    is_prime,
    sigma_power,
)
from .chains import NonIntegralStep, chain_terms, is_quasisolution

__all__ = [
    "CHECKPOINT_VERSION",
    "CheckpointFormatError",
    "CheckpointMismatch",
    "NotOnKnownChain",
    "PairRecord",
    "SearchCheckpoint",
    "SquareProbeRow",
    "enumerate_seeds",
    "heuristic_tail",
    "heuristic_tail_parts",
    "load_checkpoint",
    "locate_pair_index",
    "search_pairs",
    "square_divisor_probe",
    "write_checkpoint",
]

CHECKPOINT_VERSION = "sigma-chain-checkpoint v1"


class CheckpointFormatError(Exception):
    """Checkpoint file is corrupt or has an unknown version."""


class CheckpointMismatch(Exception):
    """Checkpoint parsed but violates the chain invariants."""


class NotOnKnownChain(Exception):
    """Descent did not reach a minimal seed within the step budget."""


@dataclass(frozen=True)
class PairRecord:
    """A found sigma_{m,m} prime pair (p, q) = (t_index, t_{index+1})."""

    m: int
    index: int
    p: int
    q: int
    p_verdict: PrimalityVerdict
    q_verdict: PrimalityVerdict
    digits_q: int


@dataclass(frozen=True)
class SearchCheckpoint:
    """Walk position: ``curr`` is the term at index ``n``, ``prev`` the
    one before, and ``found`` the pairs emitted so far.  The digits
    limit is carried in memory only; the file format stores just the
    position and the found pairs."""

    m: int
    n: int
    prev: int
    curr: int
    found: tuple[PairRecord, ...]
    digits_limit: int | None = None


def write_checkpoint(path: str, checkpoint: SearchCheckpoint) -> None:
    """Serialize atomically (temp file then rename)."""
    lines = [
        CHECKPOINT_VERSION,
        f"m={checkpoint.m}",
        f"n={checkpoint.n}",
        f"prev={checkpoint.prev}",
        f"curr={checkpoint.curr}",
    ]
    for record in checkpoint.found:
        lines.append(f"pair {record.index} {record.p} {record.q}")
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="ascii") as handle:
        handle.write("\n".join(lines) + "\n")
    os.replace(tmp, path)


def load_checkpoint(path: str, rounds: int = DEFAULT_ROUNDS) -> SearchCheckpoint:
    """Parse and validate a checkpoint file.

    Verdicts are not stored on disk; they are recomputed here, which is
    exact because the test is deterministic in (value, rounds).
    """
    try:
        with open(path, encoding="ascii") as handle:
            lines = handle.read().splitlines()
    except OSError as exc:
        raise CheckpointFormatError(f"cannot read checkpoint: {exc}") from exc
    if not lines or lines[0] != CHECKPOINT_VERSION:
        raise CheckpointFormatError(
            f"unknown checkpoint version: {lines[0]!r}" if lines else "empty checkpoint"
        )

    def _field(line_no: int, key: str) -> int:
        if line_no >= len(lines) or not lines[line_no].startswith(f"{key}="):
            raise CheckpointFormatError(f"line {line_no + 1} must be '{key}=<int>'")
        try:
            return int(lines[line_no][len(key) + 1 :])
        except ValueError as exc:
            raise CheckpointFormatError(f"bad integer on line {line_no + 1}") from exc

    m = _field(1, "m")
    n = _field(2, "n")
    prev = _field(3, "prev")
    curr = _field(4, "curr")

    found = []
    for line_no, line in enumerate(lines[5:], start=6):
        parts = line.split()
        if len(parts) != 4 or parts[0] != "pair":
            raise CheckpointFormatError(f"line {line_no} must be 'pair <index> <p> <q>'")
        try:
            index, p, q = int(parts[1]), int(parts[2]), int(parts[3])
        except ValueError as exc:
            raise CheckpointFormatError(f"bad integer on line {line_no}") from exc
        found.append(
            PairRecord(
                m=m,
                index=index,
                p=p,
                q=q,
                p_verdict=is_prime(p, rounds),
                q_verdict=is_prime(q, rounds),
                digits_q=decimal_digits(q),
            )
        )

    checkpoint = SearchCheckpoint(m=m, n=n, prev=prev, curr=curr, found=tuple(found))
    _validate_checkpoint(checkpoint)
    return checkpoint


def _validate_checkpoint(checkpoint: SearchCheckpoint) -> None:
    if checkpoint.m < 1 or checkpoint.n < 2:
        raise CheckpointMismatch(
            f"invalid position m={checkpoint.m}, n={checkpoint.n}"
        )
    if checkpoint.prev < 1 or checkpoint.curr < 1:
        raise CheckpointMismatch("chain terms must be positive")
    if not is_quasisolution(checkpoint.prev, checkpoint.curr, checkpoint.m):
        raise CheckpointMismatch(
            f"({checkpoint.prev}, {checkpoint.curr}) is not a valid chain state"
        )
    for record in checkpoint.found:
        if not is_quasisolution(record.p, record.q, checkpoint.m):
            raise CheckpointMismatch(
                f"recorded pair at index {record.index} is not a quasisolution"
            )
        if not (record.p_verdict.is_probable_prime and record.q_verdict.is_probable_prime):
            raise CheckpointMismatch(
                f"recorded pair at index {record.index} has a composite member"
            )


def _classify(term: int, rounds: int) -> PrimalityVerdict:
    # Every third chain term is divisible by 3; reject those before the
    # full trial division.
    if term > 3 and term % 3 == 0:
        return PrimalityVerdict(Primality.COMPOSITE, witness=3)
    return is_prime(term, rounds)


class _VerdictSource:
    """Primality verdicts by chain index, optionally prefetched on a
    thread pool.  Verdicts depend only on (term, rounds), so any
    schedule yields identical results."""

    def __init__(self, rounds: int, threads: int):
        self.rounds = rounds
        self.threads = max(1, threads)
        self._futures: dict[int, object] = {}
        self._executor = None
        if self.threads > 1:
            from concurrent.futures import ThreadPoolExecutor

            self._executor = ThreadPoolExecutor(max_workers=self.threads)

    def prefetch(self, index: int, term: int) -> None:
        if self._executor is not None and index not in self._futures:
            self._futures[index] = self._executor.submit(_classify, term, self.rounds)

    def get(self, index: int, term: int) -> PrimalityVerdict:
        future = self._futures.get(index)
        if future is not None:
            return future.result()
        return _classify(term, self.rounds)

    def evict_below(self, index: int) -> None:
        for stale in [i for i in self._futures if i < index]:
            del self._futures[stale]

    def close(self) -> None:
        if self._executor is not None:
            self._executor.shutdown(wait=False, cancel_futures=True)


def search_pairs(
    m: int,
    seed: tuple[int, int] = (1, 1),
    digits_limit: int = 20,
    checkpoint: SearchCheckpoint | None = None,
    *,
    rounds: int = DEFAULT_ROUNDS,
    checkpoint_path: str | None = None,
    checkpoint_every: int = 25,
    threads: int = 1,
    max_steps: int | None = None,
) -> list[PairRecord]:
    """Walk the chain from ``seed`` (or resume from ``checkpoint``),
    emitting a :class:`PairRecord` whenever two consecutive terms are
    both (probably) prime.

    The walk stops once the larger term of the pair under examination
    exceeds ``digits_limit`` decimal digits, or after ``max_steps``
    pairs when given (the checkpoint then allows resuming).  Checkpoints
    are written every ``checkpoint_every`` steps when ``checkpoint_path``
    is set, and once more at the end.
    """
    if digits_limit < 1:
        raise ValueError(f"digits limit must be >= 1, got {digits_limit}")
    if checkpoint_every < 1:
        raise ValueError(f"checkpoint cadence must be >= 1, got {checkpoint_every}")

    if checkpoint is not None:
        if checkpoint.m != m:
            raise CheckpointMismatch(
                f"checkpoint is for m={checkpoint.m}, search asked for m={m}"
            )
        _validate_checkpoint(checkpoint)
        n, prev, curr = checkpoint.n, checkpoint.prev, checkpoint.curr
        found = list(checkpoint.found)
    else:
        a, b = seed
        if not is_quasisolution(a, b, m):
            raise NonIntegralStep(f"seed {seed} is not a quasisolution for m={m}")
        n, prev, curr = 2, a, b
        found = []

    source = _VerdictSource(rounds, threads)
    prev_verdict: PrimalityVerdict | None = None
    steps = 0
    overflow = 10**digits_limit  # curr >= overflow means too many digits
    try:
        while True:
            if curr >= overflow:
                break
            if max_steps is not None and steps >= max_steps:
                break
            source.prefetch(n - 1, prev)
            source.prefetch(n, curr)
            if prev_verdict is None:
                prev_verdict = source.get(n - 1, prev)
            curr_verdict: PrimalityVerdict | None = None
            if prev_verdict.is_probable_prime:
                curr_verdict = source.get(n, curr)
                if curr_verdict.is_probable_prime:
                    found.append(
                        PairRecord(
                            m=m,
                            index=n - 1,
                            p=prev,
                            q=curr,
                            p_verdict=prev_verdict,
                            q_verdict=curr_verdict,
                            digits_q=decimal_digits(curr),
                        )
                    )
            # advance to the state holding (t_n, t_{n+1})
            numerator = sigma_power(curr, m)
            nxt, remainder = divmod(numerator, prev)
            if remainder:
                raise NonIntegralStep(
                    f"{prev} does not divide sigma({curr}^{m}) at index {n - 1}"
                )
            prev, curr, n = curr, nxt, n + 1
            prev_verdict = curr_verdict
            source.evict_below(n - 1)
            steps += 1
            if checkpoint_path is not None and steps % checkpoint_every == 0:
                write_checkpoint(
                    checkpoint_path,
                    SearchCheckpoint(
                        m=m, n=n, prev=prev, curr=curr,
                        found=tuple(found), digits_limit=digits_limit,
                    ),
                )
    finally:
        source.close()

    if checkpoint_path is not None:
        write_checkpoint(
            checkpoint_path,
            SearchCheckpoint(
                m=m, n=n, prev=prev, curr=curr,
                found=tuple(found), digits_limit=digits_limit,
            ),
        )
    return found


def _descend_once(p: int, q: int, m: int) -> tuple[int, int] | None:
    """One Vieta step towards the chain's minimum: (p, q) -> (x, p) with
    x = sigma(p^m)/q, reordered; None when already minimal."""
    x, remainder = divmod(sigma_power(p, m), q)
    if remainder:
        return None
    np, nq = (x, p) if x <= p else (p, x)
    if (nq, np) >= (q, p):
        return None
    return np, nq


def locate_pair_index(p: int, q: int, m: int = 2, max_steps: int = 100_000) -> int:
    """Chain index of ``p`` when (p, q) are consecutive chain terms,
    counted from the chain's minimal seed at indices (1, 2)."""
    if not is_quasisolution(p, q, m):
        raise ValueError(f"({p}, {q}) is not a quasisolution for m={m}")
    a, b = (p, q) if p <= q else (q, p)
    steps = 0
    while True:
        lower = _descend_once(a, b, m)
        if lower is None:
            return steps + 1
        a, b = lower
        steps += 1
        if steps > max_steps:
            raise NotOnKnownChain(
                f"descent from ({p}, {q}) exceeded {max_steps} steps"
            )


def enumerate_seeds(m: int, bound: int) -> list[tuple[int, int]]:
    """All minimal quasisolution pairs (p, q), p <= q <= bound, after
    reducing every quasisolution below the bound by descent.

    For m = 4 and bound 1000 this yields (1, 1), (5, 11), (61, 131) and
    (101, 491), each starting its own chain; for m = 2 only (1, 1)
    remains.
    """
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    minimal = set()
    for q in range(1, bound + 1):
        sq = sigma_power(q, m)
        for p in range(1, q + 1):
            if sq % p == 0 and sigma_power(p, m) % q == 0:
                a, b = p, q
                while True:
                    lower = _descend_once(a, b, m)
                    if lower is None:
                        break
                    a, b = lower
                minimal.add((a, b))
    return sorted(minimal)


_HEURISTIC_EXACT_TERMS = 200
_LN4 = math.log(4)


def heuristic_tail_parts(
    start_index: int,
    horizon: int | None = None,
    exact_terms: int = _HEURISTIC_EXACT_TERMS,
) -> tuple[float, float, float]:
    """(exact_sum, tail_bound, growth_offset) behind :func:`heuristic_tail`.

    The exact part sums 1 / (ln t_n * ln t_{n+1}) over computed terms;
    beyond ``exact_terms`` the bound ln t_n >= (n - c) ln 4 turns the
    remainder into the telescoping sum of 1 / ((n-c)(n+1-c) ln^2 4).
    The growth offset c = max_k (k - log_4 t_k) is calibrated on the
    computed terms and stays valid for all later indices because each
    step multiplies the term by more than 4.
    """
    if start_index < 3:
        raise ValueError(f"start index must be >= 3, got {start_index}")
    if horizon is not None and horizon < start_index:
        return 0.0, 0.0, 0.0
    cap = exact_terms if horizon is None else min(horizon, exact_terms)

    terms = chain_terms(2, max(cap + 1, 5))
    logs = [math.log(t) if t > 1 else 0.0 for t in terms]
    offset = max(k - logs[k - 1] / _LN4 for k in range(4, len(terms) + 1))

    exact_sum = 0.0
    for n in range(start_index, cap + 1):
        exact_sum += 1.0 / (logs[n - 1] * logs[n])

    tail = 0.0
    if horizon is None or horizon > cap:
        first = max(start_index, cap + 1)
        tail = 1.0 / (first - offset)
        if horizon is not None:
            tail -= 1.0 / (horizon + 1 - offset)
        tail /= _LN4 * _LN4
    return exact_sum, tail, offset


def heuristic_tail(
    start_index: int,
    horizon: int | None = None,
    exact_terms: int = _HEURISTIC_EXACT_TERMS,
) -> float:
    """Upper estimate of the expected number of prime pairs at chain
    indices >= start_index: sum of 1 / (ln t_n * ln t_{n+1}) up to
    ``horizon`` (unbounded when None).  Always finite because the terms
    grow at least geometrically with ratio 4."""
    exact_sum, tail, _ = heuristic_tail_parts(start_index, horizon, exact_terms)
    return exact_sum + tail


@dataclass(frozen=True)
class SquareProbeRow:
    """Bounded square parts of sigma(t_n^2) and of the product
    sigma(t_n^2) sigma(t_{n+1}^2); lower bounds for the true largest
    square divisors."""

    n: int
    l_lower: int
    s_lower: int


def square_divisor_probe(n_terms: int, trial_bound: int) -> list[SquareProbeRow]:
    """For n = 1 .. n_terms, probe t_n^2 + t_n + 1 and
    (t_n^2 + t_n + 1)(t_{n+1}^2 + t_{n+1} + 1) for square divisors
    supported on primes <= trial_bound."""
    if n_terms < 3:
        raise ValueError(f"need at least 3 terms, got {n_terms}")
    terms = chain_terms(2, n_terms + 1)
    rows = []
    for n in range(1, n_terms + 1):
        value = terms[n - 1] ** 2 + terms[n - 1] + 1
        partner = terms[n] ** 2 + terms[n] + 1
        rows.append(
            SquareProbeRow(
                n=n,
                l_lower=bounded_square_part(value, trial_bound),
                s_lower=bounded_square_part(value * partner, trial_bound),
            )
        )
    return rows
