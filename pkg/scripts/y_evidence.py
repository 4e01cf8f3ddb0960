"""Expand Y(q) and report how far its even coefficients are observed to vanish.

usage: python scripts/y_evidence.py [PREC]

This is numerical evidence only.  Nothing here proves Y(q) is odd.
"""

import sys

from qpw.congruences import Y_LISTED, y_oddness_evidence


def main(argv):
    prec = int(argv[0]) if argv else 400
    rep = y_oddness_evidence(prec)
    odd = rep.data["odd_coefficients"]
    print(rep.line())
    print("listed coefficients:", ", ".join(f"q^{e}: {odd[e]}" for e in sorted(Y_LISTED) if e < prec))
    print("first odd coefficients:", [odd[e] for e in range(1, min(prec, 41), 2)])
    return 0 if rep.verdict == "PASS" else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
