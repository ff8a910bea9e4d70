import random
from fractions import Fraction as F
from functools import reduce

import pytest

from genutil import interval_is_root_oracle, poly, pt, random_polytope, seg, vertices_of_m
from psr.errors import BadSupport, IncompleteLocal
from psr.globalglue import (
    classify_quadratic_local,
    classify_reduced_cubic_local,
    extract_local,
    glue_global,
    is_complete_local,
    is_global_solution,
    minkowski_summand_certificate,
    shephard_weak_summand,
)
from psr.linalg import as_vec
from psr.polyhedra import Polyhedron, minkowski_sum
from psr.polynomials import PolyPolynomial, is_root

LIN = PolyPolynomial.make({1: seg(-1, 1), 0: seg(-2, 2)})
QUAD = PolyPolynomial.make({0: pt(3), 1: pt(1), 2: pt(0)})
# distinct Delta signs at the two vertices of M = [2, 4]
QUAD2 = PolyPolynomial.make({0: seg(2, 3), 1: seg(0, 1), 2: pt(0)})


def ray(at, d):
    return Polyhedron.from_generators([(F(at),)], [(F(d),)])


def test_is_complete_local_linear():
    assert is_complete_local(LIN, (F(-3),), ray(-1, 1))
    assert is_complete_local(LIN, (F(3),), ray(1, -1))
    assert not is_complete_local(LIN, (F(3),), ray(-1, 1))
    # a root whose fan support is the full line is not complete at either end
    assert is_root(LIN, seg(-1, 1))[0]
    assert not is_complete_local(LIN, (F(-3),), seg(-1, 1))


def test_glue_linear_segment():
    p0 = glue_global(LIN, {(F(-3),): ray(-1, 1), (F(3),): ray(1, -1)})
    assert isinstance(p0, Polyhedron)
    assert p0 == seg(-1, 1)
    assert is_global_solution(LIN, p0)


def test_glue_quadratic_two_vertices():
    p0 = glue_global(QUAD2, {(F(2),): ray(0, 1), (F(4),): ray(F(3, 2), -1)})
    assert p0 == seg(0, F(3, 2))
    assert is_global_solution(QUAD2, p0)


def test_glue_failure_reports_pair():
    # both legs are complete local solutions but their vertex sets clash
    out = glue_global(QUAD2, {(F(2),): ray(2, 1), (F(4),): ray(F(3, 2), -1)})
    assert out == ((F(2),), (F(3, 2),))


def test_glue_missing_or_incomplete_raises():
    with pytest.raises(IncompleteLocal):
        glue_global(LIN, {(F(-3),): ray(-1, 1)})
    with pytest.raises(IncompleteLocal):
        glue_global(LIN, {(F(-3),): seg(-1, 1), (F(3),): ray(1, -1)})


def test_glue_single_vertex_full_line():
    # M is a single point, so the one local solution is already global
    p0 = glue_global(QUAD, {(F(4),): seg(1, F(3, 2))})
    assert p0 == seg(1, F(3, 2))
    assert is_global_solution(QUAD, p0)


def test_extract_local_roundtrip():
    p0 = seg(0, F(3, 2))
    assert extract_local(QUAD2, p0, (F(2),)) == ray(0, 1)
    assert extract_local(QUAD2, p0, (F(4),)) == ray(F(3, 2), -1)
    reglued = glue_global(
        QUAD2,
        {as_vec(v): extract_local(QUAD2, p0, v) for v in vertices_of_m(QUAD2)},
    )
    assert reglued == p0


def test_summand_certificate_examples():
    ok, r = minkowski_summand_certificate(seg(0, 1), seg(0, 3))
    assert ok and r == seg(0, 2)
    ok, r = minkowski_summand_certificate(seg(0, 3), seg(0, 1))
    assert not ok and r is None
    sq = poly((0, 0), (1, 0), (0, 1), (1, 1))
    tri = poly((0, 0), (1, 0), (0, 1))
    ok, r = minkowski_summand_certificate(tri, minkowski_sum(tri, sq))
    assert ok and r == sq
    ok, _ = minkowski_summand_certificate(sq, tri)
    assert not ok
    with pytest.raises(BadSupport):
        minkowski_summand_certificate(ray(0, 1), seg(0, 1))


def test_summand_certificate_random_sound_and_complete():
    rng = random.Random(11)
    for _ in range(30):
        n = rng.choice([1, 2])
        q1 = random_polytope(rng, n, 3)
        r = random_polytope(rng, n, 3)
        ok, got = minkowski_summand_certificate(q1, minkowski_sum(q1, r))
        assert ok and minkowski_sum(q1, got) == minkowski_sum(q1, r)


def test_shephard_identity_and_dilation():
    sq = poly((0, 0), (2, 0), (0, 2), (2, 2))
    res = shephard_weak_summand(sq, sq)
    assert res.ok and all(lam == 1 for lam in res.edge_lambdas.values())
    half = poly((0, 0), (1, 0), (0, 1), (1, 1))
    res = shephard_weak_summand(sq, half)
    assert res.ok and all(lam == 2 for lam in res.edge_lambdas.values())


def test_shephard_segment_into_square():
    sq = poly((0, 0), (1, 0), (0, 1), (1, 1))
    e1 = poly((0, 0), (1, 0))
    res = shephard_weak_summand(e1, sq)
    assert res.ok
    # horizontal edges dilate, vertical edges collapse
    assert sorted(res.edge_lambdas.values()) == [F(0), F(0), F(1), F(1)]


def test_shephard_failure():
    tri = poly((0, 0), (1, 0), (0, 1))
    e1 = poly((0, 0), (1, 0))
    res = shephard_weak_summand(tri, e1)
    assert not res.ok
    assert res.failure == ((F(0), F(0)),)
    with pytest.raises(BadSupport):
        shephard_weak_summand(ray(0, 1), seg(0, 1))


def test_shephard_accepts_true_summands():
    rng = random.Random(13)
    for _ in range(20):
        q1 = random_polytope(rng, 2, 4)
        r = random_polytope(rng, 2, 3)
        k = rng.randint(1, 3)
        q0 = reduce(minkowski_sum, [q1] * k + [r])
        res = shephard_weak_summand(q1, q0)
        assert res.ok
        assert all(lam >= 0 for lam in res.edge_lambdas.values())


def test_classify_quadratic_split():
    rep = classify_quadratic_local(QUAD, (F(4),))
    assert rep.case == "Split" and rep.delta == (F(-1),)
    assert rep.solutions == (seg(1, F(3, 2)),)
    assert is_complete_local(QUAD, (F(4),), rep.solutions[0])


def test_classify_quadratic_degenerate():
    phi = PolyPolynomial.make({0: pt(2), 1: pt(1), 2: pt(0)})
    rep = classify_quadratic_local(phi, (F(3),))
    assert rep.case == "Degenerate" and rep.delta == (F(0),)
    assert rep.solutions == (pt(1),)
    assert is_complete_local(phi, (F(3),), pt(1))


def test_classify_quadratic_minus():
    rep = classify_quadratic_local(QUAD2, (F(2),))
    assert rep.case == "Minus" and rep.delta == (F(-2),)
    assert set(rep.solutions) == {ray(2, 1), ray(0, 1)}
    for s in rep.solutions:
        assert is_complete_local(QUAD2, (F(2),), s)


def test_classify_quadratic_plus():
    rep = classify_quadratic_local(QUAD2, (F(4),))
    assert rep.case == "Plus"
    assert rep.solutions == (ray(F(3, 2), -1),)
    assert is_complete_local(QUAD2, (F(4),), rep.solutions[0])


def test_classify_cubic():
    phi = PolyPolynomial.make({0: pt(3), 1: pt(1), 3: pt(0)})
    rep = classify_reduced_cubic_local(phi, (F(4),))
    assert rep.case == "Split" and rep.delta == (F(-3),)
    assert rep.solutions == (seg(F(1, 2), 1),)
    assert is_complete_local(phi, (F(4),), rep.solutions[0])
    with pytest.raises(BadSupport):
        classify_reduced_cubic_local(QUAD, (F(4),))
    with pytest.raises(BadSupport):
        classify_quadratic_local(phi, (F(4),))


def _brute_complete_ray_locals_1d(phi, v, other):
    """Oracle: scan anchored rays over a small rational grid.

    Over ambient dimension one, a complete v-local solution with half-line
    fan support is a ray pointing away from the other vertex of M; a grid
    scan of anchors finds all of them, since anchors are averages of
    coefficient vertex differences.
    """
    grid = sorted({F(n, d) for d in (1, 2, 3, 4, 6) for n in range(-40, 41)})
    direction = 1 if v[0] < other[0] else -1
    return [
        cand
        for a in grid
        for cand in [Polyhedron.from_generators([(a,)], [(F(direction),)])]
        if is_complete_local(phi, v, cand)
    ]


def test_classify_quadratic_matches_brute_force():
    rng = random.Random(17)
    checked = 0
    while checked < 25:
        coeffs = {i: random_polytope(rng, 1, 2, lo=-3, hi=3) for i in (0, 1, 2)}
        phi = PolyPolynomial.make(coeffs)
        verts = vertices_of_m(phi)
        if len(verts) != 2:
            continue
        for v, other in (verts[0], verts[1]), (verts[1], verts[0]):
            rep = classify_quadratic_local(phi, tuple(v))
            for s in rep.solutions:
                assert is_complete_local(phi, tuple(v), s)
                assert interval_is_root_oracle(phi, s)
            brute = _brute_complete_ray_locals_1d(phi, tuple(v), tuple(other))
            rays = [s for s in rep.solutions if s.rec_rays]
            for cand in brute:
                assert cand in rays
        checked += 1
