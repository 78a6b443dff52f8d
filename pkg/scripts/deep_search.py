#!/usr/bin/env python3
"""Long-horizon prime-pair search with checkpointing.

The desk-scale acceptance run stops at 500 digits; this script pushes
the same walk to 4000 digits (or any --digits), writing a resumable
checkpoint as it goes.  Interrupt freely; rerunning with the same
--checkpoint continues where it left off and the final output is
identical to an uninterrupted run.

    python scripts/deep_search.py --digits 4000 --checkpoint deep.ck
"""

import argparse
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from sigmapairs.arith import decimal_digits  # noqa: E402
from sigmapairs.search import load_checkpoint, search_pairs  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--digits", type=int, default=4000)
    parser.add_argument("--checkpoint", default="deep_search.ck")
    parser.add_argument("--mr-rounds", type=int, default=40)
    parser.add_argument("--slice-steps", type=int, default=500,
                        help="chain steps per progress report")
    args = parser.parse_args()

    checkpoint = None
    if os.path.exists(args.checkpoint):
        checkpoint = load_checkpoint(args.checkpoint, rounds=args.mr_rounds)
        print(f"resuming at index {checkpoint.n} "
              f"({decimal_digits(checkpoint.curr)} digits, "
              f"{len(checkpoint.found)} pair(s) so far)")

    started = time.perf_counter()
    while True:
        records = search_pairs(
            2,
            digits_limit=args.digits,
            checkpoint=checkpoint,
            rounds=args.mr_rounds,
            checkpoint_path=args.checkpoint,
            checkpoint_every=25,
            max_steps=args.slice_steps,
        )
        checkpoint = load_checkpoint(args.checkpoint, rounds=args.mr_rounds)
        digits = decimal_digits(checkpoint.curr)
        elapsed = time.perf_counter() - started
        print(f"index {checkpoint.n}: {digits} digits, "
              f"{len(records)} pair(s), {elapsed:.0f}s elapsed", flush=True)
        if digits > args.digits:
            break

    print("done; pairs found:")
    for record in records:
        print(f"  index {record.index}: {record.p} {record.q}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
