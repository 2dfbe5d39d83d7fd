#!/usr/bin/env python3
"""Probe order-like laws of the preference relations on real values.

The pruning code guards against dominance cycles because the strict
relations are not proven transitive or acyclic.  This script collects
every distinct raw value of the 1xn boards up to a length, then checks
on all pairs/triples (or a random sample when that is too many):

  irreflexivity   not (x < x)
  asymmetry       not (x < y and y < x)
  transitivity    x < y and y < z  implies  x < z

for the selfish strict order and the prudent strict order, from each
perspective.  Violations print with their witnesses.

Usage:
    python3 scripts/transitivity_probe.py --max-n 6 --sample 200000
"""

from __future__ import annotations

import argparse
import itertools
import random
import sys

from nclobber.enumeration import enumerate_values
from nclobber.preferences import leq, prudent_less
from nclobber.values import parse_value


def _strict_selfish(x, y, p):
    return leq(x, y, p) and not leq(y, x, p)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=6, help="largest board length")
    parser.add_argument(
        "--sample", type=int, default=200_000,
        help="max random triples per relation/perspective",
    )
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    texts: set[str] = set()
    for n in range(2, args.max_n + 1):
        report = enumerate_values(n, ("unsimplified",), collect_inventory=True)
        texts.update(report.value_inventory["unsimplified"])
    values = [parse_value(t) for t in sorted(texts)]
    print(f"{len(values)} distinct raw values from lengths 2..{args.max_n}")

    rng = random.Random(args.seed)
    total = len(values) ** 3
    exhaustive = total <= args.sample
    print("triples:", "exhaustive" if exhaustive else f"sampling {args.sample} of {total}")

    violations = 0
    for name, strict in (("selfish", _strict_selfish), ("prudent", prudent_less)):
        for p in (1, 2, 3):
            for x in values:
                if strict(x, x, p):
                    violations += 1
                    print(f"irreflexivity broken ({name}, p={p}): {x}")
            for x, y in itertools.combinations(values, 2):
                if strict(x, y, p) and strict(y, x, p):
                    violations += 1
                    print(f"asymmetry broken ({name}, p={p}): {x} / {y}")
            if exhaustive:
                triples = itertools.product(values, repeat=3)
            else:
                triples = (
                    (rng.choice(values), rng.choice(values), rng.choice(values))
                    for _ in range(args.sample)
                )
            for x, y, z in triples:
                if strict(x, y, p) and strict(y, z, p) and not strict(x, z, p):
                    violations += 1
                    print(f"transitivity broken ({name}, p={p}):")
                    print(f"  x = {x}\n  y = {y}\n  z = {z}")
            print(f"{name} p={p}: done")

    print(f"\n{violations} violation(s) found")
    return 0 if violations == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
