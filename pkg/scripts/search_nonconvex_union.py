#!/usr/bin/env python3
"""Search for adjacent polytope vertices with a non-convex normal-cone union.

For 3-polytopes with enough vertices, two adjacent vertices usually have
inner normal cones whose union is not convex; this script samples random
rational 3-polytopes and prints the first few witnesses.  It also checks
the contrasting situation that motivates it: the two cells of the local
fan of the cube-edge cubic partition a convex cone, so their union is
always convex, no matter the instance data (see the acceptance suite).
"""

import argparse
import itertools
import random
import sys
from fractions import Fraction as F
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from psr.cones import intersect_cones, union_is_convex
from psr.polyhedra import Polyhedron, inner_normal_cone
from psr.polynomials import PolyPolynomial
from psr.localfan import build_local_fan


def random_polytope(rng, npts):
    pts = [tuple(F(rng.randint(-5, 5)) for _ in range(3)) for _ in range(npts)]
    return Polyhedron.from_generators(pts)


def adjacent_pairs(p):
    for u, v in itertools.combinations(p.vertices, 2):
        c = intersect_cones(inner_normal_cone(p, u), inner_normal_cone(p, v))
        if c.dim() == 2:
            yield u, v


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=3, help="witnesses to print")
    args = ap.parse_args()
    rng = random.Random(args.seed)

    found = 0
    tries = 0
    while found < args.count and tries < 2000:
        tries += 1
        p = random_polytope(rng, rng.randint(5, 8))
        if len(p.vertices) < 5:
            continue
        for u, v in adjacent_pairs(p):
            cu, cv = inner_normal_cone(p, u), inner_normal_cone(p, v)
            if not union_is_convex([cu, cv]):
                found += 1
                print(f"witness {found}: polytope vertices {p.vertices}")
                print(f"  adjacent pair {u}, {v}: union of normal cones not convex")
                break

    # contrast: the cube-edge cubic's fan cells always partition a convex cone
    q0 = Polyhedron.from_generators([(F(0), F(0), F(0)), (F(1), F(0), F(0))])
    q1 = Polyhedron.from_generators([(F(0), F(0), F(0)), (F(0), F(1), F(0))])
    q2 = Polyhedron.from_generators([(F(0), F(0), F(0)), (F(0), F(0), F(1))])
    q3 = Polyhedron.point((F(-1), F(1), F(1)))
    phi = PolyPolynomial.make({0: q0, 1: q1, 2: q2, 3: q3})
    fan = build_local_fan(phi, (F(0), F(2), F(2)))
    print(f"cube-edge cubic: {len(fan.cells)} fan cells, union convex ="
          f" {union_is_convex([c.cone for c in fan.cells])}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
