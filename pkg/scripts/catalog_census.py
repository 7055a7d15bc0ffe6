#!/usr/bin/env python3
"""Census of the small-algebra catalogs: counts, simplicity, projectivity, levels.

Usage: python scripts/catalog_census.py [--max-size N] [--classes ws5,hri,hdp:1,...]
"""

import argparse
import time

from finheyt.algebra import VarietyClass, element_profile, inferred_level
from finheyt.catalog import build_catalog
from finheyt.decision import decide_projective_finite

DEFAULT_CLASSES = "ws5,hri,hdp:1,dht:1,hdp:2,dht:2"


def census(cls: VarietyClass, max_size: int) -> None:
    t0 = time.perf_counter()
    cat = build_catalog(cls, max_size)
    built = time.perf_counter() - t0
    rows = []
    for n in range(1, max_size + 1):
        algs = cat.of_size(n)
        simple = projective = 0
        for a in algs:
            if not a.nontrivial:
                continue
            prof = element_profile(a)
            simple += prof.simple
            projective += decide_projective_finite(a).projective
        rows.append((n, len(algs), simple, projective))
    print(f"\n{cls}  (built in {built:.2f}s)")
    print("  size  algebras  simple  projective")
    for n, total, simple, projective in rows:
        print(f"  {n:4d}  {total:8d}  {simple:6d}  {projective:10d}")
    if cls.kind in ("hdp", "dht"):
        levels = {}
        for a in cat.algebras:
            levels[inferred_level(a)] = levels.get(inferred_level(a), 0) + 1
        print(f"  inferred boxdot levels: {dict(sorted(levels.items()))}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-size", type=int, default=8)
    parser.add_argument("--classes", default=DEFAULT_CLASSES)
    args = parser.parse_args()
    for name in args.classes.split(","):
        census(VarietyClass.parse(name.strip()), args.max_size)


if __name__ == "__main__":
    main()
