"""Rational polyhedral cones via the double description method.

A cone is stored in canonical double description: a lineality basis in
reduced row echelon form, extreme rays reduced modulo the lineality space
and scaled to primitive integer vectors, and the facet inequalities
obtained by running the same canonicalisation on the dual.  Two cones are
equal iff their canonical forms coincide, so structural equality is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import SizeLimit
from .linalg import (
    Vec,
    ZERO,
    as_vec,
    dot,
    in_span,
    is_zero,
    lex_positive,
    neg,
    primitive,
    rank,
    reduce_mod,
    rref,
    scale,
    sub,
    zero,
)


def _int_primitive(v: Sequence) -> tuple[int, ...]:
    """Primitive integer representative of a nonzero rational direction."""
    den = 1
    for x in v:
        d = x.denominator if isinstance(x, Fraction) else 1
        den = den * d // gcd(den, d)
    ints = [int(x * den) if isinstance(x, Fraction) else x * den for x in v]
    g = 0
    for t in ints:
        g = gcd(g, t)
    if g > 1:
        ints = [t // g for t in ints]
    return tuple(ints)


def _idot(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _dd_from_ineqs(dim: int, ineqs: list[Vec]) -> tuple[list[Vec], list[Vec]]:
    """Double description of {x : a.x >= 0 for a in ineqs}.

    Returns (lineality basis, extreme rays).  Starts from all of R^dim and
    cuts one halfspace at a time; while lineality is present, a violated
    line is rotated into the ray set, after which the usual adjacency
    splitting applies in the pointed quotient.  All arithmetic is
    fraction-free on primitive integer vectors: generators are
    scale-invariant, so every update may be rescaled.
    """
    lines: list[tuple[int, ...]] = [
        tuple(int(i == j) for j in range(dim)) for i in range(dim)
    ]
    rays: list[tuple[int, ...]] = []
    processed: list[tuple[int, ...]] = []
    for a_frac in ineqs:
        if is_zero(a_frac):
            continue
        a = _int_primitive(a_frac)
        # try to clear the inequality with a lineality generator
        pivot_obj = next((l for l in lines if _idot(a, l) != 0), None)
        if pivot_obj is not None:
            pa = _idot(a, pivot_obj)
            pivot = pivot_obj if pa > 0 else tuple(-x for x in pivot_obj)
            pa = abs(pa)
            new_lines = []
            for l in lines:
                if l is pivot_obj:
                    continue
                al = _idot(a, l)
                if al == 0:
                    new_lines.append(l)
                    continue
                nl = tuple(pa * x - al * y for x, y in zip(l, pivot))
                if any(x != 0 for x in nl):
                    new_lines.append(_int_primitive(nl))
            lines = new_lines
            new_rays = []
            for r in rays:
                ar = _idot(a, r)
                nr = r if ar == 0 else _int_primitive(
                    tuple(pa * x - ar * y for x, y in zip(r, pivot)))
                new_rays.append(nr)
            rays = new_rays
            rays.append(pivot)
            processed.append(a)
            continue
        vals = [_idot(a, r) for r in rays]
        pos = [r for r, v in zip(rays, vals) if v > 0]
        nul = [r for r, v in zip(rays, vals) if v == 0]
        negs = [r for r, v in zip(rays, vals) if v < 0]
        if not negs:
            processed.append(a)
            continue
        new_rays = pos + nul
        for rp, rn in itertools.product(pos, negs):
            if not _adjacent(rp, rn, rays, processed):
                continue
            # combination on the hyperplane a.x = 0
            ap, an = _idot(a, rp), _idot(a, rn)
            cand = tuple(ap * x - an * y for x, y in zip(rn, rp))
            if any(x != 0 for x in cand):
                new_rays.append(_int_primitive(cand))
        rays = new_rays
        processed.append(a)
    to_frac = lambda v: tuple(Fraction(x) for x in v)  # noqa: E731
    return [to_frac(l) for l in lines], [to_frac(r) for r in rays]


def _adjacent(
    r1: tuple[int, ...], r2: tuple[int, ...],
    rays: list[tuple[int, ...]], ineqs: list[tuple[int, ...]],
) -> bool:
    """Combinatorial adjacency test for two extreme rays of the current cone.

    Valid whenever the ray list is exactly the extreme rays modulo the
    lineality space, which the double description loop maintains.
    """
    z = [a for a in ineqs if _idot(a, r1) == 0 and _idot(a, r2) == 0]
    for r in rays:
        if r is r1 or r is r2:
            continue
        if all(_idot(a, r) == 0 for a in z):
            return False
    return True


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone in R^n, canonical double description."""

    dim_ambient: int
    lines: tuple[Vec, ...]
    extreme_rays: tuple[Vec, ...]
    facets: tuple[Vec, ...]  # inequalities a with a.x >= 0 on the cone
    span_eqs: tuple[Vec, ...]  # equalities cutting out the linear span

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rays(rays: Iterable[Sequence], dim: int | None = None) -> "Cone":
        rs = [as_vec(r) for r in rays]
        if dim is None:
            if not rs:
                raise ValueError("dimension required for a cone with no generators")
            dim = len(rs[0])
        rs = [r for r in rs if not is_zero(r)]
        # facets of the cone = rays of the dual = {a : a.r >= 0 for all r}
        lines_d, rays_d = _dd_from_ineqs(dim, rs)
        facet_ineqs = rays_d + [l for l in lines_d] + [neg(l) for l in lines_d]
        return Cone._canonical(dim, facet_ineqs, dual_hint=(lines_d, rays_d))

    @staticmethod
    def from_ineqs(ineqs: Iterable[Sequence], dim: int | None = None) -> "Cone":
        a_list = [as_vec(a) for a in ineqs]
        if dim is None:
            if not a_list:
                raise ValueError("dimension required for a cone with no inequalities")
            dim = len(a_list[0])
        return Cone._canonical(dim, a_list)

    @staticmethod
    def full_space(dim: int) -> "Cone":
        return Cone.from_ineqs([], dim=dim)

    @staticmethod
    def origin(dim: int) -> "Cone":
        return Cone.from_rays([], dim=dim)

    @staticmethod
    def _canonical(
        dim: int,
        ineqs: list[Vec],
        dual_hint: tuple[list[Vec], list[Vec]] | None = None,
    ) -> "Cone":
        lines, rays = _dd_from_ineqs(dim, ineqs)
        lin = rref(lines)
        red = {primitive(reduce_mod(r, lin)) for r in rays}
        red.discard(zero(dim))
        # drop any ray that became a lineality representative duplicate
        ext = tuple(sorted(red))
        lin_t = tuple(lin)
        # facet description: canonicalise the dual cone's generators
        if dual_hint is not None:
            d_lines, d_rays = dual_hint
        else:
            gens = list(ext) + list(lin_t) + [neg(l) for l in lin_t]
            d_lines, d_rays = _dd_from_ineqs(dim, gens)
        d_lin = rref(d_lines)
        d_red = {primitive(reduce_mod(r, d_lin)) for r in d_rays}
        d_red.discard(zero(dim))
        facets = tuple(sorted(d_red))
        span_eqs = tuple(d_lin)
        return Cone(dim, lin_t, ext, facets, span_eqs)

    # -- basic queries -------------------------------------------------

    @property
    def rays(self) -> tuple[Vec, ...]:
        """Generators: extreme rays plus both signs of each lineality vector."""
        both = tuple(primitive(l) for l in self.lines) + tuple(
            primitive(neg(l)) for l in self.lines
        )
        return self.extreme_rays + both

    @property
    def ineqs(self) -> tuple[Vec, ...]:
        """Full inequality description (facets plus span equalities, both signs)."""
        return self.facets + self.span_eqs + tuple(neg(e) for e in self.span_eqs)

    def dim(self) -> int:
        return rank(list(self.extreme_rays) + list(self.lines))

    def is_full_dim(self) -> bool:
        return self.dim() == self.dim_ambient

    def is_pointed(self) -> bool:
        return not self.lines

    def contains(self, x: Sequence) -> bool:
        v = as_vec(x)
        return all(dot(a, v) >= 0 for a in self.ineqs)

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(r) for r in other.rays)

    def interior_point(self) -> Vec:
        """A point in the relative interior."""
        if not self.extreme_rays and not self.lines:
            return zero(self.dim_ambient)
        total = zero(self.dim_ambient)
        for r in self.extreme_rays:
            total = tuple(a + b for a, b in zip(total, r))
        if is_zero(total) and self.lines:
            # pure linear space: the origin is interior
            return zero(self.dim_ambient)
        return total

    def relint_contains(self, x: Sequence) -> bool:
        v = as_vec(x)
        if not all(dot(e, v) == 0 for e in self.span_eqs):
            return False
        return all(dot(a, v) > 0 for a in self.facets)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cone):
            return NotImplemented
        return (
            self.dim_ambient == other.dim_ambient
            and self.lines == other.lines
            and self.extreme_rays == other.extreme_rays
        )

    def __hash__(self) -> int:
        return hash((self.dim_ambient, self.lines, self.extreme_rays))


# ---------------------------------------------------------------------------
# operations


def dual_cone(c: Cone) -> Cone:
    """Polar dual {a : a.x >= 0 for all x in c}; swaps the two descriptions."""
    return Cone.from_ineqs(c.rays, dim=c.dim_ambient)


def intersect_cones(c1: Cone, c2: Cone) -> Cone:
    if c1.dim_ambient != c2.dim_ambient:
        raise ValueError("ambient dimensions differ")
    return Cone.from_ineqs(list(c1.ineqs) + list(c2.ineqs), dim=c1.dim_ambient)


def conic_sum(c1: Cone, c2: Cone) -> Cone:
    """Smallest cone containing both: generated by the union of the rays."""
    if c1.dim_ambient != c2.dim_ambient:
        raise ValueError("ambient dimensions differ")
    return Cone.from_rays(list(c1.rays) + list(c2.rays), dim=c1.dim_ambient)


def restrict_arrangement(support: Cone, normals: Iterable[Sequence]) -> list[Cone]:
    """Full-dimensional (within support) cells of a hyperplane arrangement.

    Each hyperplane {x : a.x = 0} splits every current cell into the two
    closed halves, keeping the pieces whose dimension matches the support.
    """
    sdim = support.dim()
    cells = [support]
    for raw in normals:
        a = as_vec(raw)
        if is_zero(a):
            continue
        nxt: list[Cone] = []
        for cell in cells:
            vals = [dot(a, r) for r in cell.rays]
            has_pos = any(v > 0 for v in vals)
            has_neg = any(v < 0 for v in vals)
            if not (has_pos and has_neg):
                nxt.append(cell)
                continue
            plus = Cone.from_ineqs(list(cell.ineqs) + [a], dim=cell.dim_ambient)
            minus = Cone.from_ineqs(list(cell.ineqs) + [neg(a)], dim=cell.dim_ambient)
            for half in (plus, minus):
                if half.dim() == sdim:
                    nxt.append(half)
        cells = nxt
    return _dedupe(cells)


def _dedupe(cones: list[Cone]) -> list[Cone]:
    seen = set()
    out = []
    for c in cones:
        key = (c.lines, c.extreme_rays)
        if key not in seen:
            seen.add(key)
            out.append(c)
    return out


def covers(region: Cone, pieces: list[Cone]) -> bool:
    """Does the union of pieces contain region?  Exact, by refinement.

    Refines region by every facet hyperplane of every piece and checks that
    each resulting cell (via an interior point) lies in some piece.
    """
    normals = [a for p in pieces for a in p.facets]
    for cell in restrict_arrangement(region, normals):
        w = cell.interior_point()
        if not any(p.contains(w) for p in pieces):
            return False
    return True


def union_is_convex(cones: list[Cone]) -> bool:
    """Is the union of the cones itself a convex cone?

    The union is convex iff it equals the conic sum of its members.
    """
    if not cones:
        return True
    hull = cones[0]
    for c in cones[1:]:
        hull = conic_sum(hull, c)
    return covers(hull, cones)


def maximal_convex_subfamilies(cones: list[Cone], cap: int = 20) -> list[list[int]]:
    """Index sets of maximal subfamilies whose union is convex.

    Exponential by nature; refuses inputs larger than the cap.
    """
    n = len(cones)
    if n > cap:
        raise SizeLimit(f"{n} cones exceeds cap {cap}")
    accepted: list[set[int]] = []
    for size in range(n, 0, -1):
        for combo in itertools.combinations(range(n), size):
            s = set(combo)
            if any(s <= big for big in accepted):
                continue
            if union_is_convex([cones[i] for i in combo]):
                accepted.append(s)
    return [sorted(s) for s in accepted]
