"""Face counts of the cube subdivision of the permutahedron, and where random points land.

    python3 scripts/cube_subdivision.py --max-n 5 --points 2000 --seed 1
"""

import argparse
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from qschub.gz import hhmp_locate
from qschub.rtword import enumerate_rtseq


@dataclass(frozen=True)
class SubdivisionConfig:
    max_n: int = 5
    points: int = 2000
    seed: int = 1


def face_counts(n: int) -> Counter:
    """Number of faces of each dimension (dimension = number of t letters)."""
    return Counter(sum(1 for l in w if l.kind == "t") for w in enumerate_rtseq(n))


def random_point(rng: random.Random, lam):
    n = len(lam)
    weights = [rng.randint(0, 3) for _ in range(n + 1)]
    weights[0] += 1
    perms = [rng.sample(lam, n) for _ in weights]
    total = sum(weights)
    return tuple(sum(Fraction(c) * p[k] for c, p in zip(weights, perms)) / total for k in range(n))


def landing_dimensions(n: int, cfg: SubdivisionConfig) -> Counter:
    rng = random.Random(cfg.seed)
    lam = tuple(range(n, 0, -1))
    out = Counter()
    for _ in range(cfg.points):
        word = hhmp_locate(random_point(rng, lam), lam)
        out[sum(1 for l in word if l.kind == "t")] += 1
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--points", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    cfg = SubdivisionConfig(args.max_n, args.points, args.seed)
    for n in range(1, cfg.max_n + 1):
        counts = face_counts(n)
        faces = " ".join(f"{counts[d]}" for d in range(n))
        landed = landing_dimensions(n, cfg)
        hits = " ".join(f"{landed[d]}" for d in range(n))
        print(f"n={n}  faces by dim: {faces:<24} random points by face dim: {hits}")


if __name__ == "__main__":
    main()
