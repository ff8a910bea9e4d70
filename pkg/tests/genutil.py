"""Shared builders, random generators, and independent oracles for the tests."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from psr.cones import Cone
from psr.linalg import Vec, as_vec
from psr.polyhedra import Polyhedron
from psr.polynomials import PolyPolynomial, coefficient_msum, is_generic

F = Fraction


def pt(*coords) -> Polyhedron:
    return Polyhedron.point(as_vec(coords))


def seg(a, b) -> Polyhedron:
    return Polyhedron.from_generators([(F(a),), (F(b),)])


def poly(*points) -> Polyhedron:
    return Polyhedron.from_generators([as_vec(p) for p in points])


def ray1(anchor, direction) -> Polyhedron:
    return Polyhedron.from_generators([(F(anchor),)], [(F(direction),)])


def cone2(*rays) -> Cone:
    return Cone.from_rays([as_vec(r) for r in rays], dim=2)


def random_polytope(rng: random.Random, n: int, max_pts: int, lo: int = -6, hi: int = 6) -> Polyhedron:
    k = rng.randint(1, max_pts)
    pts = [tuple(F(rng.randint(lo, hi)) for _ in range(n)) for _ in range(k)]
    return Polyhedron.from_generators(pts)


def random_point_or_segment(rng: random.Random, n: int, lo: int = -6, hi: int = 6) -> Polyhedron:
    return random_polytope(rng, n, 2, lo, hi)


def random_generic_poly(
    rng: random.Random,
    n: int,
    support: tuple[int, ...],
    max_pts: int = 2,
    tries: int = 200,
) -> PolyPolynomial:
    """A polynomial whose displacement points are pairwise distinct everywhere."""
    for _ in range(tries):
        phi = PolyPolynomial.make(
            {i: random_polytope(rng, n, max_pts) for i in support}
        )
        if is_generic(phi)[0]:
            return phi
    raise RuntimeError("could not sample a generic polynomial")


# ---------------------------------------------------------------------------
# Independent one-dimensional root oracle (pure interval arithmetic)


def _interval_of(p: Polyhedron) -> tuple[Fraction | None, Fraction | None]:
    """(lo, hi) with None for unbounded ends; ambient dimension one."""
    xs = [v[0] for v in p.vertices]
    lo, hi = min(xs), max(xs)
    lo_inf = any(r[0] < 0 for r in p.rec_rays)
    hi_inf = any(r[0] > 0 for r in p.rec_rays)
    return (None if lo_inf else lo, None if hi_inf else hi)


def interval_is_root_oracle(phi: PolyPolynomial, p: Polyhedron) -> bool:
    """Root test over ambient dimension one via plain interval arithmetic.

    Shares no code with the evaluation pipeline: summand intervals are
    added coordinate-wise, the value is the min/max envelope, and an end
    of the value must be attained by two summand intervals.
    """
    plo, phi_ = _interval_of(p)
    ends = []
    for i, q in phi.terms:
        qlo, qhi = _interval_of(q)
        if i == 0:
            ends.append((qlo, qhi))
        else:
            ends.append((
                None if (qlo is None or plo is None) else qlo + i * plo,
                None if (qhi is None or phi_ is None) else qhi + i * phi_,
            ))
    los = [e[0] for e in ends]
    his = [e[1] for e in ends]
    tlo = None if any(x is None for x in los) else min(los)
    thi = None if any(x is None for x in his) else max(his)
    verts = {v for v in (tlo, thi) if v is not None}
    return all(
        sum(1 for lo, hi in ends if v == lo or v == hi) >= 2 for v in verts
    )


def vertices_of_m(phi: PolyPolynomial) -> list[Vec]:
    return sorted(coefficient_msum(phi).value.vertices)
