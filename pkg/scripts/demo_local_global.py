#!/usr/bin/env python3
"""End-to-end walkthrough of the local-to-global pipeline.

Builds two one-dimensional polynomials over the polyhedral semiring,
enumerates complete local solutions at every vertex of the coefficient
sum, glues them into a global solution where possible, and prints each
step as JSON.
"""

import sys
from fractions import Fraction as F
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from psr import jsonio
from psr.globalglue import extract_local, glue_global, is_global_solution
from psr.localfan import build_local_fan, enumerate_lcs
from psr.polyhedra import Polyhedron
from psr.polynomials import PolyPolynomial, coefficient_msum
from psr.vcc import enumerate_mw_minimal_local_solutions


def seg(a, b):
    return Polyhedron.from_generators([(F(a),), (F(b),)])


def show(title, obj):
    print(f"== {title}")
    print(jsonio.dumps(obj))


def main() -> int:
    # [-1,1] * Y + [-2,2]: a linear polynomial with a global solution
    phi = PolyPolynomial.make({1: seg(-1, 1), 0: seg(-2, 2)})
    m = coefficient_msum(phi).value
    show("coefficient sum M", jsonio.polyhedron_to_json(m))

    locals_map = {}
    for v in m.vertices:
        fan = build_local_fan(phi, v)
        systems = enumerate_lcs(fan)
        sols = enumerate_mw_minimal_local_solutions(phi, v)
        show(f"local solutions at vertex {v}",
             [jsonio.polyhedron_to_json(s) for s in sols])
        assert len(systems) == 1
        locals_map[v] = sols[0]

    p0 = glue_global(phi, locals_map)
    show("glued global solution", jsonio.polyhedron_to_json(p0))
    assert is_global_solution(phi, p0)
    for v in m.vertices:
        show(f"re-extracted local at {v}",
             jsonio.polyhedron_to_json(extract_local(phi, p0, v)))

    # [-1,1] * Y + {0}: complete locals exist but cannot be glued
    phi0 = PolyPolynomial.make({1: seg(-1, 1), 0: Polyhedron.point((F(0),))})
    bad = {
        (F(-1),): Polyhedron.from_generators([(F(1),)], [(F(1),)]),
        (F(1),): Polyhedron.from_generators([(F(-1),)], [(F(-1),)]),
    }
    out = glue_global(phi0, bad)
    show("gluing obstruction (vertex of M, vertex of candidate)",
         [jsonio.vec_to_json(x) for x in out])
    return 0


if __name__ == "__main__":
    sys.exit(main())
