"""Complexes of simplicial maps, restricted by a precoloring and a projection."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .boxes import box_points, maximal_boxes
from .complex import Complex, label_key
from .csp import Mode, solve, solve_projected
from .identities.witness import InternalInconsistency, WitnessTable, verify_witness
from .structures import hom_label, precolored_to_relational, realization


class Variant(Enum):
    HOM = "hom"
    HOM_SC = "hom_sc"


@dataclass(frozen=True)
class HomComplexResult:
    complex: Complex
    variant: Variant
    alpha: tuple
    rho: dict
    assignments: dict  # vertex label -> {alpha vertex: value}

    def to_json(self) -> dict:
        return {
            "variant": self.variant.value,
            "alpha": list(self.alpha),
            "rho": dict(self.rho),
            "complex": self.complex.to_json(),
            "assignments": {k: dict(v) for k, v in self.assignments.items()},
        }


def _normalize(a: Complex, alpha, rho, b: Complex):
    alpha = tuple(sorted({str(x) for x in alpha}, key=label_key))
    rho = {str(k): str(v) for k, v in (rho or {}).items()}
    for v in alpha:
        if v not in a.index:
            raise ValueError(f"{v} is not a vertex of the source")
    for k, v in rho.items():
        if k not in a.index:
            raise ValueError(f"{k} is not a vertex of the source")
        if v not in b.index:
            raise ValueError(f"{v} is not a vertex of the target")
    return alpha, rho


def enumerate_homomorphisms(a: Complex, b: Complex, rho: Mapping | None = None, jobs: int = 1) -> list:
    """All simplicial maps a -> b extending ``rho``, as value tuples in the
    vertex order of ``a``, sorted lexicographically."""
    _, rho = _normalize(a, (), rho, b)
    inst = precolored_to_relational(a, rho.keys(), rho, b)
    sols = solve(inst, realization(b), None, Mode.ALL, jobs=jobs)
    return [tuple(s[v] for v in a.vertices) for s in sols]


def hom_restricted(a: Complex, alpha: Iterable, rho: Mapping | None, b: Complex, variant=Variant.HOM) -> HomComplexResult:
    """Vertices are the maps alpha -> b that extend (with rho) to simplicial
    maps a -> b.

    HOM: a set of such maps is a face when, at every alpha vertex, their
    values form a face of b.  HOM_SC: a set is a face when every pointwise
    mixture of its members is again a vertex.
    """
    variant = Variant(variant)
    alpha, rho = _normalize(a, alpha, rho, b)
    inst = precolored_to_relational(a, rho.keys(), rho, b)
    points = solve_projected(inst, realization(b), None, alpha)
    labels = {p: hom_label(alpha, p) for p in points}
    if variant is Variant.HOM:
        faces = _hom_faces(points, alpha, b)
    else:
        faces = [box_points(bx) for bx in maximal_boxes(points)]
    c = Complex.from_faces([[labels[p] for p in f] for f in faces], labels.values())
    asg = {labels[p]: dict(zip(alpha, p)) for p in points}
    return HomComplexResult(c, variant, alpha, rho, asg)


def _hom_faces(points, alpha, b: Complex):
    if not points:
        return []
    if not alpha:
        return [points]
    pointset = set(points)
    idx = b.index
    pmask = [[1 << idx[x] for x in p] for p in points]
    faces = set()
    # every face sits inside {f : f(v) in M_v} for some choice of maximal faces M_v
    per_coord = []
    for i in range(len(alpha)):
        used = {p[i] for p in pointset}
        per_coord.append([m for m in b.face_masks if any(m >> idx[x] & 1 for x in used)])
    for choice in itertools.product(*per_coord):
        members = frozenset(
            j for j, pm in enumerate(pmask) if all(bit & m for bit, m in zip(pm, choice))
        )
        if members:
            faces.add(members)
    return [[points[j] for j in sorted(f)] for f in faces]


def hom_complex(a: Complex, b: Complex) -> HomComplexResult:
    return hom_restricted(a, a.vertices, {}, b, Variant.HOM)


def hom_sc_complex(a: Complex, b: Complex) -> HomComplexResult:
    return hom_restricted(a, a.vertices, {}, b, Variant.HOM_SC)


def hom_sc_restricted(a: Complex, alpha, rho, b: Complex) -> HomComplexResult:
    return hom_restricted(a, alpha, rho, b, Variant.HOM_SC)


def lift_polymorphism(p: WitnessTable, h: HomComplexResult) -> WitnessTable:
    """Apply ``p`` pointwise to maps: P(f1,...,fn)(v) = p(f1(v),...,fn(v))."""
    by_values = {tuple(asg[v] for v in h.alpha): lab for lab, asg in h.assignments.items()}
    n = p.arity
    table = {}
    for fs in itertools.product(h.complex.vertices, repeat=n):
        vals = tuple(p(*(h.assignments[f][v] for f in fs)) for v in h.alpha)
        lab = by_values.get(vals)
        if lab is None:
            raise InternalInconsistency(f"pointwise image {vals} is not a vertex of the Hom complex")
        table[fs] = lab
    w = WitnessTable(h.complex, n, table)
    v = verify_witness(w)
    if not v.ok:
        raise InternalInconsistency("lifted operation is not simplicial: " + "; ".join(v.violations[:3]))
    return w
