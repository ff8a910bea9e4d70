#!/usr/bin/env python3
"""Empirical check of the solid-angle bound for high-multiplicity cone roots.

Samples product-form polynomials with a forced repeated factor, runs the
discriminant converse, and reports the best cone-root solid angle next to
the guaranteed lower bound delta * mu(M).
"""

import argparse
import random
import sys
from fractions import Fraction as F
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from psr.discriminants import delta_mu_bound, find_high_multiplicity_cone_root
from psr.polyhedra import Polyhedron
from psr.polynomials import product_expand


def random_polytope(rng, n, npts):
    pts = [tuple(F(rng.randint(-4, 4)) for _ in range(n)) for _ in range(npts)]
    return Polyhedron.from_generators(pts)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--instances", type=int, default=20)
    ap.add_argument("--dim", type=int, default=2, choices=(1, 2, 3))
    ap.add_argument("--samples", type=int, default=20000)
    args = ap.parse_args()
    rng = random.Random(args.seed)

    print(f"{'inst':>4} {'factors':>7} {'roots':>5} {'best angle':>11} "
          f"{'bound':>9} {'margin':>9}")
    for k in range(args.instances):
        f = random_polytope(rng, args.dim, 2)
        factors = [f, f]
        if rng.random() < 0.5:
            factors.append(random_polytope(rng, args.dim, 2))
        phi = product_expand(random_polytope(rng, args.dim, 1), factors)
        out = find_high_multiplicity_cone_root(phi, samples=args.samples,
                                               seed=args.seed)
        delta, mu = delta_mu_bound(phi, samples=args.samples, seed=args.seed)
        best = max(cr.angle.value for cr in out)
        bound = float(delta) * mu.value
        print(f"{k:>4} {len(factors):>7} {len(out):>5} {best:>11.4f} "
              f"{bound:>9.4f} {best - bound:>9.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
