"""Polynomials with polyhedral coefficients over the convex-hull / Minkowski
semiring, and their tropical shadows.

A univariate polynomial is a finite map exponent -> coefficient polyhedron
with nonempty support; the zero of the semiring is a sentinel that is never
stored as a coefficient.  Evaluation substitutes a polyhedron for the
variable; a root is an argument at which every vertex of the value is a
vertex of at least two summands.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .cones import Cone, dual_cone
from .errors import BadIndex, NotARoot, Unbounded
from .linalg import Vec, as_vec, dot, sub, zero
from .polyhedra import (
    OmegaOrder,
    Polyhedron,
    convex_hull,
    inner_normal_cone,
    minkowski_sum,
    normal_fan_support,
    omega_min_vertex,
)


@dataclass(frozen=True)
class PolyPolynomial:
    """sum_i Q_i * Y^i with polyhedral coefficients, nonempty support."""

    terms: tuple[tuple[int, Polyhedron], ...]  # sorted by exponent

    @staticmethod
    def make(terms: Mapping[int, Polyhedron]) -> "PolyPolynomial":
        if not terms:
            raise ValueError("empty support: the zero polynomial is not a value")
        items = tuple(sorted(terms.items()))
        if any(i < 0 for i, _ in items):
            raise ValueError("negative exponent")
        dims = {q.dim_ambient for _, q in items}
        if len(dims) != 1:
            raise ValueError("coefficients live in different ambient dimensions")
        return PolyPolynomial(items)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.terms)

    @property
    def dim_ambient(self) -> int:
        return self.terms[0][1].dim_ambient

    def coefficient(self, i: int) -> Polyhedron:
        for j, q in self.terms:
            if j == i:
                return q
        raise BadIndex(f"{i} not in support {self.support}")

    def degree(self) -> int:
        return self.terms[-1][0]

    def shift(self, k: int) -> "PolyPolynomial":
        """Multiply by Y^k (exponent shift)."""
        return PolyPolynomial(tuple((i + k, q) for i, q in self.terms))


@dataclass(frozen=True)
class MultiPolyPolynomial:
    """Multivariate version; exponents are tuples of fixed length nvars."""

    nvars: int
    terms: tuple[tuple[tuple[int, ...], Polyhedron], ...]

    @staticmethod
    def make(nvars: int, terms: Mapping[tuple[int, ...], Polyhedron]) -> "MultiPolyPolynomial":
        if not terms:
            raise ValueError("empty support")
        items = tuple(sorted(terms.items()))
        for e, _ in items:
            if len(e) != nvars or any(k < 0 for k in e):
                raise ValueError(f"bad exponent vector {e}")
        return MultiPolyPolynomial(nvars, items)

    @property
    def support(self) -> tuple[tuple[int, ...], ...]:
        return tuple(e for e, _ in self.terms)


@dataclass(frozen=True)
class TropPolynomial:
    """min_i (m_i + i*y): finite map exponent -> rational value."""

    terms: tuple[tuple[int, Fraction], ...]

    @staticmethod
    def make(terms: Mapping[int, Fraction]) -> "TropPolynomial":
        if not terms:
            raise ValueError("empty support")
        return TropPolynomial(tuple(sorted((i, Fraction(v)) for i, v in terms.items())))

    def value(self, y: Fraction) -> Fraction:
        return min(m + i * y for i, m in self.terms)


def power(p: Polyhedron, k: int) -> Polyhedron:
    """k-fold Minkowski power; the 0-th power is the origin."""
    out = Polyhedron.point(zero(p.dim_ambient))
    for _ in range(k):
        out = minkowski_sum(out, p)
    return out


def evaluate(phi: PolyPolynomial, p: Polyhedron) -> tuple[Polyhedron, dict[int, Polyhedron]]:
    """phi(p) and the individual summands Q_i * p^i."""
    summands = {i: minkowski_sum(q, power(p, i)) for i, q in phi.terms}
    total = None
    for s in summands.values():
        total = s if total is None else convex_hull(total, s)
    return total, summands


def evaluate_multi(
    phi: MultiPolyPolynomial, ps: Sequence[Polyhedron]
) -> tuple[Polyhedron, dict[tuple[int, ...], Polyhedron]]:
    if len(ps) != phi.nvars:
        raise BadIndex(f"expected {phi.nvars} arguments, got {len(ps)}")
    summands = {}
    for e, q in phi.terms:
        s = q
        for k, p in zip(e, ps):
            s = minkowski_sum(s, power(p, k))
        summands[e] = s
    total = None
    for s in summands.values():
        total = s if total is None else convex_hull(total, s)
    return total, summands


def root_witness(total: Polyhedron, summands: Mapping) -> dict[Vec, list]:
    """Map each vertex of the value to the summands having it as a vertex."""
    return {
        v: sorted(i for i, s in summands.items() if v in s.vertices)
        for v in total.vertices
    }


def is_root(phi, p) -> tuple[bool, dict[Vec, list]]:
    """Vertex-sharing root test with per-vertex witness.

    Accepts a univariate polynomial with a polyhedron, or a multivariate
    one with a tuple of polyhedra.
    """
    if isinstance(phi, MultiPolyPolynomial):
        total, summands = evaluate_multi(phi, p)
    else:
        total, summands = evaluate(phi, p)
    witness = root_witness(total, summands)
    return all(len(ix) >= 2 for ix in witness.values()), witness


def sharing_count(phi, p) -> int:
    """min over vertices of phi(p) of the number of summands sharing it."""
    ok, witness = is_root(phi, p)
    if not ok:
        raise NotARoot("sharing_count requires a root")
    return min(len(ix) for ix in witness.values())


# ---------------------------------------------------------------------------
# Minkowski decomposition of the coefficient sum


@dataclass(frozen=True)
class MSum:
    """M = Minkowski sum of all coefficients, with per-vertex decompositions."""

    value: Polyhedron
    support: tuple[int, ...]
    decomposition: dict[Vec, tuple[Vec, ...]]  # vertex of M -> (nu_i) by support order


@lru_cache(maxsize=256)
def coefficient_msum(phi: PolyPolynomial) -> MSum:
    m = None
    for _, q in phi.terms:
        m = q if m is None else minkowski_sum(m, q)
    decomp: dict[Vec, tuple[Vec, ...]] = {}
    for nu in m.vertices:
        ell = inner_normal_cone(m, nu).interior_point()
        parts = []
        for _, q in phi.terms:
            mins = q.argmin_vertices(ell)
            assert len(mins) == 1, "interior functional must expose a unique vertex"
            parts.append(mins[0])
        assert tuple(sum(c) for c in zip(*parts)) == nu
        decomp[nu] = tuple(parts)
    return MSum(m, phi.support, decomp)


def rho(phi: PolyPolynomial, nu: Sequence, i: int, j: int, msum: MSum | None = None) -> Vec:
    """Displacement point -(nu_i - nu_j)/(i - j) at a vertex nu of M."""
    if i == j:
        raise BadIndex("rho needs two distinct exponents")
    if msum is None:
        msum = coefficient_msum(phi)
    key = as_vec(nu)
    if key not in msum.decomposition:
        raise BadIndex(f"{nu} is not a vertex of the coefficient sum")
    sup = msum.support
    if i not in sup or j not in sup:
        raise BadIndex(f"exponents {i},{j} not both in support {sup}")
    parts = msum.decomposition[key]
    nu_i = parts[sup.index(i)]
    nu_j = parts[sup.index(j)]
    return tuple(-(a - b) / (i - j) for a, b in zip(nu_i, nu_j))


def rho_points(phi: PolyPolynomial, nu: Sequence, msum: MSum | None = None) -> dict[tuple[int, int], Vec]:
    """All rho points at a vertex, indexed by unordered support pairs i < j."""
    if msum is None:
        msum = coefficient_msum(phi)
    return {
        (i, j): rho(phi, nu, i, j, msum)
        for i, j in itertools.combinations(msum.support, 2)
    }


def is_generic(phi: PolyPolynomial) -> tuple[bool, tuple | None]:
    """True iff at every vertex of M the rho points are pairwise distinct.

    On failure returns (False, (vertex, pair1, pair2)) for one coincidence.
    """
    msum = coefficient_msum(phi)
    for nu in msum.value.vertices:
        pts = rho_points(phi, nu, msum)
        seen: dict[Vec, tuple[int, int]] = {}
        for pair, pt in pts.items():
            if pt in seen:
                return False, (nu, seen[pt], pair)
            seen[pt] = pair
    return True, None


def displacement_hyperplanes(
    phi: PolyPolynomial, nu: Sequence, msum: MSum | None = None
) -> list[Vec]:
    """Normals of the two hyperplane families refining N_M(nu).

    Family one compares a coefficient vertex against the displacement line
    of a pair: (nu_k - nu_i) + (k - i) * rho_{i,j}; family two compares two
    displacement points: rho_{i,j} - rho_{~i,~j}.  Degenerate zero normals
    are dropped.
    """
    if msum is None:
        msum = coefficient_msum(phi)
    key = as_vec(nu)
    sup = msum.support
    parts = msum.decomposition[key]
    pts = rho_points(phi, nu, msum)
    normals: list[Vec] = []
    for (i, j), r in pts.items():
        vi = parts[sup.index(i)]
        for k in sup:
            vk = parts[sup.index(k)]
            h = tuple(a - b + (k - i) * c for a, b, c in zip(vk, vi, r))
            if any(x != 0 for x in h):
                normals.append(h)
    for (p1, r1), (p2, r2) in itertools.combinations(pts.items(), 2):
        h = sub(r1, r2)
        if any(x != 0 for x in h):
            normals.append(h)
    return normals


def affine_cone_root(phi: PolyPolynomial, omega: OmegaOrder) -> Polyhedron:
    """The affine-cone solution rho-hat + C* at the omega-min vertex of M.

    C is the cell of the refined normal cone fan at v that contains the
    omega direction (each arrangement hyperplane is crossed on the side its
    normal's lexicographic omega sign dictates).
    """
    msum = coefficient_msum(phi)
    v = omega_min_vertex(msum.value, omega)
    pts = rho_points(phi, v, msum)
    rho_hat = min(pts.values(), key=omega.key)
    ineqs = list(inner_normal_cone(msum.value, v).ineqs)
    for h in displacement_hyperplanes(phi, v, msum):
        ineqs.append(h if omega.is_positive(h) else tuple(-x for x in h))
    cell = Cone.from_ineqs(ineqs, dim=phi.dim_ambient)
    cone = dual_cone(cell)
    return Polyhedron.from_generators([rho_hat], cone.rays, dim=phi.dim_ambient)


# ---------------------------------------------------------------------------
# tropicalization


def tropicalize(phi: PolyPolynomial, ell: Sequence) -> TropPolynomial:
    """Coefficientwise support minimum in direction ell."""
    l = as_vec(ell)
    try:
        return TropPolynomial.make({i: q.support_value(l) for i, q in phi.terms})
    except Unbounded as exc:
        raise Unbounded(f"functional {ell} unbounded on a coefficient") from exc


def tropical_roots(psi: TropPolynomial) -> list[tuple[Fraction, int]]:
    """Breakpoints of min_i(m_i + i*y) with slope-change multiplicities.

    Computed from the legs of the lower convex hull of {(i, m_i)}.
    """
    pts = list(psi.terms)
    hull = _lower_hull(pts)
    out = []
    for (a, ma), (b, mb) in zip(hull, hull[1:]):
        out.append((Fraction(-(mb - ma), b - a), b - a))
    return out


def _lower_hull(pts: list[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    """Lower convex hull, strictly convex (collinear middle points dropped)."""
    hull: list[tuple[int, Fraction]] = []
    for p in pts:  # already sorted by exponent
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it is on or above segment hull[-2] -> p
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def tropical_envelope_signature(psi: TropPolynomial) -> tuple:
    """Canonical form of the function y -> min_i(m_i + i*y)."""
    return tuple(_lower_hull(list(psi.terms)))


# ---------------------------------------------------------------------------
# same-function decision


def _argmin_vertex_on_cell(q: Polyhedron, ell: Vec) -> Vec:
    mins = q.argmin_vertices(ell)
    assert len(mins) == 1, "cell refinement should force a unique minimiser"
    return mins[0]


def _facet_active_terms(
    cell: Cone, terms: list[tuple[int, Vec]]
) -> frozenset[tuple[int, Vec]]:
    """Terms (i, q) whose affine piece l(q) + i*y attains the lower envelope
    on a full-dimensional subset of cell x R."""
    n = cell.dim_ambient
    lifted_cell = [a + (Fraction(0),) for a in cell.ineqs]
    active = set()
    for i, q in terms:
        ineqs = list(lifted_cell)
        for j, w in terms:
            if (j, w) == (i, q):
                continue
            # l(q) + i y <= l(w) + j y  <=>  l(w - q) + (j - i) y >= 0
            ineqs.append(sub(w, q) + (Fraction(j - i),))
        region = Cone.from_ineqs(ineqs, dim=n + 1)
        if region.dim() == n + 1:
            active.add((i, q))
    return frozenset(active)


def same_function(phi1: PolyPolynomial, phi2: PolyPolynomial) -> bool:
    """Do the two polynomials induce the same tropical function for every
    functional in the common normal-fan support?

    Decided exactly: refine the support by all coefficient vertex-difference
    hyperplanes (making every tropical coefficient linear per cell), then
    compare the affine pieces active on full-dimensional regions of
    cell x R; two lower envelopes agree iff those piece sets agree.
    """
    m1 = coefficient_msum(phi1).value
    m2 = coefficient_msum(phi2).value
    if m1.recession_cone() != m2.recession_cone():
        return False
    support = normal_fan_support(m1)
    normals: list[Vec] = []
    for phi in (phi1, phi2):
        for _, q in phi.terms:
            for u, w in itertools.combinations(q.vertices, 2):
                normals.append(sub(u, w))
    from .cones import restrict_arrangement

    for cell in restrict_arrangement(support, normals):
        ell = cell.interior_point()
        t1 = [(i, _argmin_vertex_on_cell(q, ell)) for i, q in phi1.terms]
        t2 = [(i, _argmin_vertex_on_cell(q, ell)) for i, q in phi2.terms]
        if _facet_active_terms(cell, t1) != _facet_active_terms(cell, t2):
            return False
    return True


# ---------------------------------------------------------------------------
# product form and polyhedralisation


def product_expand(q: Polyhedron, factors: Sequence[Polyhedron]) -> PolyPolynomial:
    """Expand q * prod_i (Y + P_i) in the semiring, merging exponents with
    convex hulls."""
    terms: dict[int, Polyhedron] = {0: q}
    for p in factors:
        nxt: dict[int, Polyhedron] = {}
        for e, c in terms.items():
            # c * Y^(e+1)
            if e + 1 in nxt:
                nxt[e + 1] = convex_hull(nxt[e + 1], c)
            else:
                nxt[e + 1] = c
            # c * P_i * Y^e
            cp = minkowski_sum(c, p)
            if e in nxt:
                nxt[e] = convex_hull(nxt[e], cp)
            else:
                nxt[e] = cp
        terms = nxt
    return PolyPolynomial.make(terms)


def polyhedralise(nvars: int, coeffs: Mapping[tuple[int, ...], Polyhedron]) -> MultiPolyPolynomial:
    """Constructor: multivariate polynomial from exponent -> polyhedron data."""
    return MultiPolyPolynomial.make(nvars, coeffs)
