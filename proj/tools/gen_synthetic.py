#!/usr/bin/env python3
"""Writes the bundled synthetic multigraph with heavy multiedges.

Eight hubs are joined to each other by bundles of 2-6 parallel edges and each
of 72 peripheral vertices attaches to 1-3 hubs, plus a sparse set of
peripheral-peripheral edges. No self-loops, so the graph lies in both the
loopy-multi and the loopless multigraph spaces.
"""

import argparse
import random


def build(seed: int):
    rng = random.Random(seed)
    hubs = list(range(8))
    periphery = list(range(8, 80))
    weights = {}

    def add(u, v, w=1):
        key = (min(u, v), max(u, v))
        weights[key] = weights.get(key, 0) + w

    for i in hubs:
        for j in hubs:
            if i < j and rng.random() < 0.6:
                add(i, j, rng.randint(2, 6))
    for v in periphery:
        for h in rng.sample(hubs, rng.randint(1, 3)):
            add(v, h)
    for _ in range(20):
        u, v = rng.sample(periphery, 2)
        add(u, v)
    return weights


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=2026)
    parser.add_argument("--out", default="tests/data/synthetic_multigraph.edges")
    args = parser.parse_args()
    weights = build(args.seed)
    with open(args.out, "w") as f:
        f.write(f"# synthetic heavy-multiedge multigraph, gen_synthetic.py --seed {args.seed}\n")
        for (u, v), w in sorted(weights.items()):
            f.write(f"{u} {v} {w}\n")


if __name__ == "__main__":
    main()
