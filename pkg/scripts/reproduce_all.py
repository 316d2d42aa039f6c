"""Run every worked-example demo and print its diff summary.

Exit status is the number of demos that did not match.
"""

import sys

from seqcomp.cli import DEMOS, main


def run():
    failed = 0
    for name in DEMOS:
        print(f"== {name}")
        code = main(["demo", name])
        failed += code != 0
        print()
    print(f"{len(DEMOS) - failed}/{len(DEMOS)} demos matched")
    return failed


if __name__ == "__main__":
    sys.exit(run())
