"""Relational realizations of complexes and the reductions between the two worlds."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping

from .boxes import box_points, maximal_boxes
from .complex import Complex, label_key
from .csp import FaceRelation, RelStructure, TableRelation, solve_projected


def face_rel_name(n: int) -> str:
    return f"F{n}"


def vertex_rel_name(x: str) -> str:
    return f"R_{x}"


@dataclass(frozen=True)
class RealizationMeta:
    dimension: int
    face_relations: tuple  # names F0..F(d+1)
    vertex_relations: dict  # vertex label -> relation name


def idempotent_realization(b: Complex):
    """The structure on the vertices of ``b`` with one relation per face size
    (tuples whose entries form a face) and one singleton relation per vertex."""
    d = b.dimension
    rels = {}
    names = []
    for n in range(0, max(d + 1, 0) + 1):
        rels[face_rel_name(n)] = FaceRelation.of(n + 1, b.maximal_faces)
        names.append(face_rel_name(n))
    vnames = {}
    for x in b.vertices:
        rels[vertex_rel_name(x)] = TableRelation(1, frozenset({(x,)}))
        vnames[x] = vertex_rel_name(x)
    return RelStructure.make(b.vertices, rels), RealizationMeta(d, tuple(names), vnames)


def realization(b: Complex) -> RelStructure:
    return idempotent_realization(b)[0]


def dsat() -> RelStructure:
    """Boolean structure with both constants, negation and 3-clause disjunction."""
    return RelStructure.make(
        ["0", "1"],
        {
            "0": TableRelation(1, frozenset({("0",)})),
            "1": TableRelation(1, frozenset({("1",)})),
            "NOT": TableRelation(2, frozenset({("0", "1"), ("1", "0")})),
            "3OR": TableRelation(3, frozenset(t for t in itertools.product("01", repeat=3) if t != ("0", "0", "0"))),
        },
    )


def precolored_to_relational(a: Complex, alpha_prime: Iterable, rho: Mapping, b: Complex) -> RelStructure:
    """Encode "simplicial map a -> b extending rho on alpha'" as an instance
    over the realization signature of ``b``."""
    alpha_prime = {str(x) for x in alpha_prime}
    rho = {str(k): str(v) for k, v in rho.items()}
    if set(rho) != alpha_prime:
        raise ValueError("rho must be defined exactly on alpha'")
    if not alpha_prime <= set(a.vertices):
        raise ValueError("alpha' must be a set of vertices of a")
    for v in rho.values():
        if v not in b.index:
            raise ValueError(f"{v} is not a vertex of the target")
    rels = {}
    for n in range(0, max(b.dimension + 1, 0) + 1):
        rels[face_rel_name(n)] = FaceRelation.of(n + 1, a.maximal_faces)
    for x in b.vertices:
        rels[vertex_rel_name(x)] = TableRelation(1, frozenset((y,) for y, fx in rho.items() if fx == x))
    return RelStructure.make(a.vertices, rels)


class _Shortcut:
    """Marker returned when two unary constraints collide on one element."""

    def __repr__(self):
        return "UNSAT_SHORTCUT"


UNSAT_SHORTCUT = _Shortcut()


@dataclass(frozen=True)
class PrecoloredInstance:
    complex: Complex
    alpha_prime: tuple
    rho: dict


def relational_to_precolored(inst: RelStructure, b: Complex):
    """Read an instance over the realization signature of ``b`` as a precolored
    complex, or return UNSAT_SHORTCUT when some element is forced to two vertices."""
    tmpl, meta = idempotent_realization(b)
    if inst.signature != tmpl.signature:
        raise ValueError("instance is not over the realization signature")
    rho = {}
    for x, name in meta.vertex_relations.items():
        for (y,) in inst.rel[name]:
            if y in rho and rho[y] != x:
                return UNSAT_SHORTCUT
            rho[y] = x
    faces = set()
    for name in meta.face_relations:
        faces |= inst.rel[name].underlying_sets()
    c = Complex.from_faces(faces, inst.domain)
    ap = tuple(sorted(rho, key=label_key))
    return PrecoloredInstance(c, ap, {k: rho[k] for k in ap})


def hom_label(alpha, values) -> str:
    if not alpha:
        return "{}"
    return ";".join(f"f({a})={x}" for a, x in zip(alpha, values))


def hom_sc_structures(a: RelStructure, alpha: Iterable, b: RelStructure):
    """Complex of maps alpha -> B that extend to homomorphisms; a set is a
    face when every mixture of its members extends.

    Returns the complex and a map from vertex labels to value tuples.
    """
    alpha = tuple(sorted({str(x) for x in alpha}, key=a.domain.index))
    points = solve_projected(a, b, {}, alpha)
    labels = {p: hom_label(alpha, p) for p in points}
    faces = [[labels[p] for p in box_points(bx)] for bx in maximal_boxes(points)]
    c = Complex.from_faces(faces, labels.values())
    return c, {labels[p]: p for p in points}


def _is_projection(table, n, k):
    for i in range(k):
        if all(table[code] == digits[i] for code, digits in enumerate(itertools.product(range(n), repeat=k))):
            return True
    return False


def projections_only_check(b: RelStructure, max_arity: int, limit: int = 20_000_000) -> bool:
    """Exhaustively test every operation table of arity 1..max_arity and
    report whether only projections preserve all relations of ``b``."""
    n = len(b.domain)
    idx = {x: i for i, x in enumerate(b.domain)}
    rels = [(r.arity, {tuple(idx[x] for x in t) for t in r}) for _, r in b.relations]
    for k in range(1, max_arity + 1):
        size = n**k
        if n**size > limit:
            raise ValueError(f"too large for exhaustive check: {n}^{size} candidate operations at arity {k}")
        codes = list(itertools.product(range(n), repeat=k))
        code_of = {c: i for i, c in enumerate(codes)}
        checks = []
        for ar, ts in rels:
            tl = list(ts)
            for combo in itertools.product(tl, repeat=k):
                checks.append((tuple(code_of[col] for col in zip(*combo)), ts))
        for table in itertools.product(range(n), repeat=size):
            if all(tuple(table[c] for c in cols) in ts for cols, ts in checks):
                if not _is_projection(table, n, k):
                    return False
    return True
