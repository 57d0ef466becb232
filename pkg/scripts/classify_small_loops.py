#!/usr/bin/env python3
"""Classify every loop reachable from the small exhaustive cocycle spaces.

Builds all extensions with |A| * |F| <= 6, dedupes them up to isomorphism
by canonical fingerprint, and prints one classification row per type.

Usage: python3 scripts/classify_small_loops.py
"""

import sys

sys.path.insert(0, "src")

from loopkit import fingerprint, hierarchy_report
from loopkit.pools import exhaustive_small_extensions, group_pool
from loopkit.util import fmt_class


def main():
    seen = {}
    for entry in group_pool() + exhaustive_small_extensions():
        if entry.table.order > 6:
            continue
        fp = fingerprint(entry.table)
        seen.setdefault(fp, (entry.tag, entry.table))
    print(f"{len(seen)} isomorphism types of order <= 6 in the pool\n")
    header = ("fingerprint", "order", "assoc", "comm", "nilp", "cong", "class", "super")
    print("  ".join(f"{h:>12}" for h in header))
    rows = []
    for fp, (tag, table) in seen.items():
        rep = hierarchy_report(table)
        rows.append(
            (
                f"{fp:012x}"[:12],
                rep.order,
                rep.associative,
                rep.commutative,
                fmt_class(rep.nilpotency_class),
                fmt_class(rep.congruence_solvability_class),
                fmt_class(rep.classical_solvability_class),
                rep.supernilpotent,
            )
        )
    for row in sorted(rows, key=lambda r: (r[1], r[0])):
        print("  ".join(f"{str(v):>12}" for v in row))


if __name__ == "__main__":
    main()
