"""Search every sequence for progressions A n + B vanishing modulo small M.

usage: python scripts/mine_congruences.py [N_MAX] [A_MAX]

Candidates already among the stated congruences are marked; the rest are
computational observations only.
"""

import sys

from qpw.congruences import STATED_CLAIMS, mine

SEQUENCES = ("pbar_omega", "sptbar_omega", "sptbar", "sptbar2")


def implied(c, others) -> bool:
    """Some other candidate on a coarser progression already gives a multiple of this modulus."""
    return any(o is not c and c.A % o.A == 0 and c.B % o.A == o.B and o.M % c.M == 0
               and (o.A, o.M) != (c.A, c.M) for o in others)


def main(argv):
    n_max = int(argv[0]) if argv else 1000
    a_max = int(argv[1]) if len(argv) > 1 else 10
    stated = {(s, A, B, M) for s, A, B, M, _ in STATED_CLAIMS}
    for sid in SEQUENCES:
        found = mine(sid, a_max, (2, 3, 4, 5, 6, 7, 8), n_max)
        primitive = [c for c in found if not implied(c, found)]
        print(f"{sid}: {len(found)} candidates up to n = {n_max}, {len(primitive)} not implied by coarser ones")
        for c in primitive:
            tag = "stated" if (sid, c.A, c.B, c.M) in stated else "new"
            print(f"  {c.A}n+{c.B} mod {c.M}  [{tag}]")


if __name__ == "__main__":
    main(sys.argv[1:])
