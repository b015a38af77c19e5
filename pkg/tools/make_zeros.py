"""Regenerate the bundled table of zeta-zero ordinates.

Usage: python3 tools/make_zeros.py 1000 > src/sflab/data/zeta_zeros_1000.txt

Needs mpmath. The library itself never computes zeros; it only reads files
in this format.
"""
import sys

import mpmath


def main(count: int) -> None:
    mpmath.mp.dps = 25
    print(f"# imaginary parts of the first {count} nontrivial zeros of zeta")
    print("# computed with mpmath.zetazero, 15 decimals, one per line, ascending")
    for n in range(1, count + 1):
        gamma = mpmath.zetazero(n).imag
        digits = len(str(int(gamma))) + 15
        print(mpmath.nstr(gamma, digits, min_fixed=0, max_fixed=100, strip_zeros=False))
        sys.stdout.flush()


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 1000)
