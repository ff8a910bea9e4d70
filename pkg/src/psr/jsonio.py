"""JSON interchange for the geometric value types.

All rational numbers travel as strings in ``p/q`` (or plain integer)
form; vectors are lists of such strings.  Serialisation uses a fixed key
order so identical inputs produce byte-identical outputs.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Mapping, Sequence

from .cones import Cone
from .errors import PsrError
from .linalg import Vec, as_vec
from .localfan import LCS
from .polyhedra import Polyhedron
from .polynomials import MultiPolyPolynomial, PolyPolynomial, TropPolynomial
from .vcc import VCC


class ParseError(PsrError):
    """Malformed JSON input."""


def frac_to_str(x: Fraction) -> str:
    return str(x)


def frac_from_str(s: Any) -> Fraction:
    try:
        return Fraction(str(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"not a rational number: {s!r}") from exc


def vec_to_json(v: Sequence[Fraction]) -> list[str]:
    return [frac_to_str(x) for x in v]


def vec_from_json(obj: Any) -> Vec:
    if not isinstance(obj, (list, tuple)):
        raise ParseError(f"expected a coordinate list, got {obj!r}")
    return as_vec(frac_from_str(x) for x in obj)


# -- polyhedra ---------------------------------------------------------------


def polyhedron_to_json(p: Polyhedron) -> dict:
    return {
        "vertices": [vec_to_json(v) for v in p.vertices],
        "rays": [vec_to_json(r) for r in p.rec_rays],
    }


def polyhedron_from_json(obj: Any) -> Polyhedron:
    if not isinstance(obj, Mapping) or "vertices" not in obj:
        raise ParseError("a polyhedron needs a 'vertices' list")
    vertices = [vec_from_json(v) for v in obj["vertices"]]
    rays = [vec_from_json(r) for r in obj.get("rays", [])]
    if not vertices:
        raise ParseError("a polyhedron needs at least one vertex")
    return Polyhedron.from_generators(vertices, rays)


# -- cones -------------------------------------------------------------------


def cone_to_json(c: Cone) -> dict:
    return {
        "rays": [vec_to_json(r) for r in c.extreme_rays],
        "lines": [vec_to_json(l) for l in c.lines],
        "facets": [vec_to_json(f) for f in c.facets],
        "span_eqs": [vec_to_json(e) for e in c.span_eqs],
    }


def cone_from_json(obj: Any, dim: int | None = None) -> Cone:
    if not isinstance(obj, Mapping):
        raise ParseError("a cone must be an object")
    if "rays" in obj or "lines" in obj:
        rays = [vec_from_json(r) for r in obj.get("rays", [])]
        lines = [vec_from_json(l) for l in obj.get("lines", [])]
        gens = rays + lines + [tuple(-x for x in l) for l in lines]
        if not gens and dim is None:
            raise ParseError("an origin cone needs an explicit dimension")
        return Cone.from_rays(gens, dim)
    if "facets" in obj:
        facets = [vec_from_json(f) for f in obj["facets"]]
        eqs = [vec_from_json(e) for e in obj.get("span_eqs", [])]
        ineqs = facets + eqs + [tuple(-x for x in e) for e in eqs]
        if not ineqs and dim is None:
            raise ParseError("a full cone needs an explicit dimension")
        return Cone.from_ineqs(ineqs, dim)
    raise ParseError("a cone needs 'rays' or 'facets'")


# -- polynomials -------------------------------------------------------------


def polynomial_to_json(phi: PolyPolynomial | MultiPolyPolynomial) -> dict:
    if isinstance(phi, MultiPolyPolynomial):
        return {
            "vars": phi.nvars,
            "terms": [
                {"exp": list(e), "coeff": polyhedron_to_json(q)} for e, q in phi.terms
            ],
        }
    return {
        "vars": 1,
        "terms": [
            {"exp": [i], "coeff": polyhedron_to_json(q)} for i, q in phi.terms
        ],
    }


def polynomial_from_json(obj: Any) -> PolyPolynomial | MultiPolyPolynomial:
    if not isinstance(obj, Mapping) or "terms" not in obj:
        raise ParseError("a polynomial needs a 'terms' list")
    nvars = int(obj.get("vars", 1))
    terms = {}
    for t in obj["terms"]:
        exp = t["exp"]
        if not isinstance(exp, list) or len(exp) != nvars:
            raise ParseError(f"exponent {exp!r} does not have {nvars} entries")
        key = tuple(int(k) for k in exp)
        coeff = polyhedron_from_json(t["coeff"])
        if key in terms:
            raise ParseError(f"duplicate exponent {exp!r}")
        terms[key] = coeff
    if nvars == 1:
        return PolyPolynomial.make({e[0]: q for e, q in terms.items()})
    return MultiPolyPolynomial.make(nvars, terms)


def tropical_to_json(psi: TropPolynomial) -> dict:
    return {
        "terms": [{"exp": i, "coeff": frac_to_str(c)} for i, c in psi.terms]
    }


def tropical_from_json(obj: Any) -> TropPolynomial:
    if not isinstance(obj, Mapping) or "terms" not in obj:
        raise ParseError("a tropical polynomial needs a 'terms' list")
    return TropPolynomial.make(
        {int(t["exp"]): frac_from_str(t["coeff"]) for t in obj["terms"]}
    )


# -- compound objects --------------------------------------------------------


def lcs_to_json(vertex_index: int, lcs: LCS) -> dict:
    return {
        "vertex_index": vertex_index,
        "cells": list(lcs.cells),
        "pairs": [list(p) for p in lcs.pairs],
    }


def lcs_from_json(obj: Any) -> tuple[int, LCS]:
    if not isinstance(obj, Mapping):
        raise ParseError("a local compatible system must be an object")
    try:
        cells = tuple(int(c) for c in obj["cells"])
        pairs = tuple((int(p[0]), int(p[1])) for p in obj["pairs"])
        return int(obj.get("vertex_index", 0)), LCS(cells, pairs)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed local compatible system: {exc}") from exc


def vcc_to_json(g: VCC) -> dict:
    return {
        "pairs": [
            {"vertex": vec_to_json(v), "cone": cone_to_json(c)} for v, c in g.pairs
        ]
    }


def vcc_from_json(obj: Any) -> VCC:
    if not isinstance(obj, Mapping) or "pairs" not in obj:
        raise ParseError("a vertex-cone collection needs a 'pairs' list")
    return VCC.make(
        [(vec_from_json(t["vertex"]), cone_from_json(t["cone"])) for t in obj["pairs"]]
    )


def locals_to_json(locals_map: Mapping[Vec, Polyhedron]) -> list:
    return [
        {"vertex": vec_to_json(v), "solution": polyhedron_to_json(s)}
        for v, s in sorted(locals_map.items())
    ]


def locals_from_json(obj: Any) -> dict[Vec, Polyhedron]:
    if not isinstance(obj, list):
        raise ParseError("a local-solution map must be a list")
    out: dict[Vec, Polyhedron] = {}
    for t in obj:
        out[vec_from_json(t["vertex"])] = polyhedron_from_json(t["solution"])
    return out


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def load_file(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read JSON from {path}: {exc}") from exc
