"""Verify every registered identity at its default order and print a table.

usage: python scripts/run_registry.py [GROUP] [--known-false]
"""

import sys
import time

from qpw.identities import KNOWN_FALSE, REGISTRY, verify


def main(argv):
    group = next((a for a in argv if not a.startswith("-")), None)
    ids = sorted(REGISTRY)
    if "--known-false" in argv:
        ids += sorted(KNOWN_FALSE)
    start = time.perf_counter()
    failed = 0
    for id_ in ids:
        rec = REGISTRY.get(id_) or KNOWN_FALSE[id_]
        if group and rec.group != group:
            continue
        r = verify(id_)
        failed += not r.passed
        print(f"{rec.group:12s} {r.line()}  [{r.elapsed_ms:.0f} ms]")
    print(f"{failed} failures, {time.perf_counter() - start:.1f}s")
    return 1 if failed and "--known-false" not in argv else 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
