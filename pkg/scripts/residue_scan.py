#!/usr/bin/env python3
"""Survey chain residue cycles across small moduli.

Prints period, palindrome flag and the cycle for every modulus up to
--max-mod that the modular recurrence supports (no prime divisor that is
1 mod 3, not divisible by 3), and notes why the others are skipped.

    python scripts/residue_scan.py --max-mod 50
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from sigmapairs.residues import (  # noqa: E402
    NonUnitResidue,
    PreconditionViolation,
    residue_profile,
)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-mod", type=int, default=50)
    parser.add_argument("--show-cycles", action="store_true")
    args = parser.parse_args()

    for w in range(2, args.max_mod + 1):
        try:
            profile = residue_profile(w)
        except PreconditionViolation:
            print(f"w={w:3d}  skipped: prime divisor 1 (mod 3)")
            continue
        except NonUnitResidue:
            print(f"w={w:3d}  skipped: divisible by 3, recurrence hits 0")
            continue
        line = (f"w={w:3d}  period {profile.period:4d}  "
                f"palindromic {str(profile.palindromic):5s}")
        if args.show_cycles:
            line += "  cycle " + ",".join(str(r) for r in profile.cycle)
        print(line)
    return 0


if __name__ == "__main__":
    sys.exit(main())
