"""Finite abstract simplicial complexes stored by their maximal faces."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

Face = tuple  # sorted tuple of vertex labels


def label_key(label: str):
    """Total order on labels: shorter first, then lexicographic."""
    return (len(label), label)


def sort_labels(labels: Iterable) -> tuple:
    return tuple(sorted({str(x) for x in labels}, key=label_key))


def face_key(face: Sequence[str]):
    return tuple(label_key(x) for x in face)


def _maximal_sets(sets: Iterable[frozenset]) -> list[frozenset]:
    """Drop duplicates and every set contained in another."""
    kept: list[frozenset] = []
    for s in sorted(set(sets), key=len, reverse=True):
        if not any(s <= k for k in kept):
            kept.append(s)
    return kept


@dataclass(frozen=True)
class Complex:
    """A complex given by its vertex set and its inclusion-maximal faces.

    The raw constructor stores what it is given; use ``from_faces`` to build a
    normalized complex from an arbitrary generating family of faces.
    """

    vertices: tuple
    maximal_faces: tuple

    @classmethod
    def from_faces(cls, faces: Iterable[Iterable], vertices: Iterable = ()) -> "Complex":
        fs = [frozenset(str(v) for v in f) for f in faces]
        fs = [f for f in fs if f]
        verts = set(str(v) for v in vertices)
        for f in fs:
            verts |= f
        # isolated vertices are maximal faces of size one
        covered = set().union(*fs) if fs else set()
        fs += [frozenset([v]) for v in verts - covered]
        maxi = _maximal_sets(fs)
        mf = sorted((tuple(sorted(f, key=label_key)) for f in maxi), key=face_key)
        return cls(sort_labels(verts), tuple(mf))

    # -- indexing -------------------------------------------------------

    @cached_property
    def index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def face_masks(self) -> tuple:
        idx = self.index
        return tuple(sum(1 << idx[v] for v in f) for f in self.maximal_faces)

    def mask(self, vs: Iterable[str]) -> int:
        idx = self.index
        return sum(1 << idx[v] for v in set(vs))

    @property
    def dimension(self) -> int:
        if not self.maximal_faces:
            return -1
        return max(len(f) for f in self.maximal_faces) - 1

    def __len__(self):
        return len(self.vertices)

    def is_face(self, vs: Iterable) -> bool:
        vs = set(str(v) for v in vs)
        if not vs:
            return True
        if not vs <= set(self.index):
            return False
        m = self.mask(vs)
        return any(m & fm == m for fm in self.face_masks)

    def faces(self, dim: int | None = None) -> list:
        """All nonempty faces (optionally of one dimension), sorted."""
        out = set()
        for f in self.maximal_faces:
            sizes = range(1, len(f) + 1) if dim is None else [dim + 1]
            for k in sizes:
                if k <= len(f):
                    out.update(itertools.combinations(f, k))
        return sorted(out, key=lambda f: (len(f), face_key(f)))

    def f_vector(self) -> list:
        counts = [0] * (self.dimension + 1)
        for f in self.faces():
            counts[len(f) - 1] += 1
        return counts

    def relabel(self, mapping: Mapping) -> "Complex":
        """Rename vertices by an injective mapping."""
        vals = [str(mapping[v]) for v in self.vertices]
        if len(set(vals)) != len(vals):
            raise ValueError("relabelling is not injective")
        m = {v: str(mapping[v]) for v in self.vertices}
        return Complex.from_faces([[m[v] for v in f] for f in self.maximal_faces], vals)

    def induced(self, vs: Iterable) -> "Complex":
        """Full subcomplex on a vertex subset."""
        vs = set(str(v) for v in vs)
        return Complex.from_faces([set(f) & vs for f in self.maximal_faces], vs & set(self.vertices))

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "maximal_faces": [list(f) for f in self.maximal_faces]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Complex":
        if not isinstance(data, Mapping) or "vertices" not in data or "maximal_faces" not in data:
            raise ValueError("complex JSON needs 'vertices' and 'maximal_faces'")
        raw_vs = [str(v) for v in data["vertices"]]
        raw_fs = [[str(v) for v in f] for f in data["maximal_faces"]]
        for f in raw_fs:
            if len(set(f)) != len(f):
                raise ValueError(f"face {f} repeats a vertex")
        c = cls(
            tuple(sorted(raw_vs, key=label_key)),
            tuple(sorted((tuple(sorted(f, key=label_key)) for f in raw_fs), key=face_key)),
        )
        problems = validate(c)
        if problems:
            raise ValueError("invalid complex: " + "; ".join(problems))
        return c

    def __repr__(self):
        return f"Complex(vertices={list(self.vertices)}, maximal_faces={[list(f) for f in self.maximal_faces]})"


def validate(c: Complex) -> list:
    """Return a list of invariant violations (empty when valid)."""
    problems = []
    vs = list(c.vertices)
    if len(set(vs)) != len(vs):
        problems.append("duplicate vertex labels")
    if tuple(sorted(vs, key=label_key)) != tuple(vs):
        problems.append("vertices not sorted")
    vset = set(vs)
    seen = set()
    sets = []
    for f in c.maximal_faces:
        if not f:
            problems.append("empty maximal face")
            continue
        if len(set(f)) != len(f):
            problems.append(f"face {list(f)} repeats a vertex")
        if tuple(sorted(set(f), key=label_key)) != tuple(f):
            problems.append(f"face {list(f)} not sorted")
        unknown = set(f) - vset
        if unknown:
            problems.append(f"face {list(f)} uses unknown vertices {sorted(unknown)}")
        fs = frozenset(f)
        if fs in seen:
            problems.append(f"face {list(f)} listed twice")
        seen.add(fs)
        sets.append(fs)
    for a in sets:
        for b in sets:
            if a < b:
                problems.append(f"face {sorted(a, key=label_key)} is a subset of {sorted(b, key=label_key)}")
    covered = set().union(*sets) if sets else set()
    for v in vs:
        if v not in covered:
            problems.append(f"vertex {v} lies in no maximal face")
    return problems


# -- constructors ---------------------------------------------------------


def full_simplex(k: int) -> Complex:
    if k < -1:
        raise ValueError("simplex dimension must be >= -1")
    vs = [str(i) for i in range(k + 1)]
    return Complex.from_faces([vs] if vs else [], vs)


def path(n: int) -> Complex:
    """Path with n edges on vertices 0..n."""
    if n < 0:
        raise ValueError("path length must be >= 0")
    vs = [str(i) for i in range(n + 1)]
    return Complex.from_faces([[str(i), str(i + 1)] for i in range(n)], vs)


def cycle(n: int) -> Complex:
    """Cycle graph on vertices 1..n."""
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    vs = [str(i) for i in range(1, n + 1)]
    return Complex.from_faces([[vs[i], vs[(i + 1) % n]] for i in range(n)], vs)


def empty_complex() -> Complex:
    return Complex((), ())


def pair_label(a: str, b: str) -> str:
    return f"({a},{b})"


def product(a: Complex, b: Complex) -> Complex:
    """Categorical product: a set is a face iff both projections are faces."""
    faces = [[pair_label(x, y) for x in f for y in g] for f in a.maximal_faces for g in b.maximal_faces]
    vs = [pair_label(x, y) for x in a.vertices for y in b.vertices]
    return Complex.from_faces(faces, vs)


def disjoint_union(a: Complex, b: Complex, tags=("0", "1")) -> Complex:
    ma = {v: f"{tags[0]}:{v}" for v in a.vertices}
    mb = {v: f"{tags[1]}:{v}" for v in b.vertices}
    faces = [[ma[v] for v in f] for f in a.maximal_faces] + [[mb[v] for v in f] for f in b.maximal_faces]
    return Complex.from_faces(faces, list(ma.values()) + list(mb.values()))


def skeleton(c: Complex, n: int) -> Complex:
    faces = []
    for f in c.maximal_faces:
        if len(f) <= n + 1:
            faces.append(f)
        else:
            faces.extend(itertools.combinations(f, n + 1))
    return Complex.from_faces(faces, c.vertices if n >= 0 else ())


def set_label(face: Iterable[str]) -> str:
    return "{" + ",".join(sorted(face, key=label_key)) + "}"


def subdivision(c: Complex) -> Complex:
    """Barycentric subdivision: vertices are faces, faces are chains."""
    faces = []
    for f in c.maximal_faces:
        for order in itertools.permutations(f):
            faces.append([set_label(order[: i + 1]) for i in range(len(order))])
    return Complex.from_faces(faces, [set_label(f) for f in c.faces()])


def class_label(members: Iterable[str]) -> str:
    ms = sorted(members, key=label_key)
    return ms[0] if len(ms) == 1 else "[" + ",".join(ms) + "]"


def quotient(c: Complex, classes: Iterable[Iterable], labels: Sequence[str] | None = None, partial: bool = False) -> Complex:
    """Identify the vertices in each class.

    ``classes`` must partition the vertex set unless ``partial`` is set, in
    which case unmentioned vertices stay alone.
    """
    classes = [[str(v) for v in cl] for cl in classes]
    seen = set()
    for cl in classes:
        if not cl:
            raise ValueError("empty class")
        for v in cl:
            if v not in c.index:
                raise ValueError(f"unknown vertex {v}")
            if v in seen:
                raise ValueError(f"vertex {v} occurs in two classes")
            seen.add(v)
    if not partial and len(seen) != len(c.vertices):
        missing = [v for v in c.vertices if v not in seen]
        raise ValueError(f"classes do not cover vertices {missing}")
    if labels is not None and len(labels) != len(classes):
        raise ValueError("one label per class is required")
    m = {}
    for i, cl in enumerate(classes):
        lab = labels[i] if labels is not None else class_label(cl)
        for v in cl:
            m[v] = lab
    for v in c.vertices:
        m.setdefault(v, v)
    if len(set(m.values())) != len(classes) + len(c.vertices) - len(seen):
        raise ValueError("class labels collide")
    return Complex.from_faces([[m[v] for v in f] for f in c.maximal_faces], m.values())


@dataclass(frozen=True)
class SimplicialMap:
    source: Complex
    target: Complex
    assignment: Mapping


def is_simplicial_map(m: SimplicialMap, truncated: bool = False) -> bool:
    """Check that every face of the source maps onto a face of the target.

    With ``truncated`` only source faces of size at most dim(target)+2 are
    inspected, which is enough for complexes.
    """
    asg = {str(k): str(v) for k, v in m.assignment.items()}
    if set(asg) != set(m.source.vertices):
        raise ValueError("assignment must be defined exactly on the source vertices")
    tidx = m.target.index
    for v in asg.values():
        if v not in tidx:
            raise ValueError(f"{v} is not a target vertex")
    if not truncated:
        return all(m.target.is_face({asg[v] for v in f}) for f in m.source.maximal_faces)
    bound = m.target.dimension + 2
    for f in m.source.maximal_faces:
        for k in range(1, min(bound, len(f)) + 1):
            for sub in itertools.combinations(f, k):
                if not m.target.is_face({asg[v] for v in sub}):
                    return False
    return True


def incidence_graph(c: Complex):
    import networkx as nx

    g = nx.Graph()
    for v in c.vertices:
        g.add_node(("v", v), kind="v")
    for i, f in enumerate(c.maximal_faces):
        g.add_node(("f", i), kind="f")
        for v in f:
            g.add_edge(("v", v), ("f", i))
    return g


def isomorphic(a: Complex, b: Complex) -> bool:
    """Isomorphism test via the vertex/maximal-face incidence graph."""
    import networkx as nx
    from networkx.algorithms.isomorphism import categorical_node_match

    if len(a.vertices) != len(b.vertices) or len(a.maximal_faces) != len(b.maximal_faces):
        return False
    if sorted(map(len, a.maximal_faces)) != sorted(map(len, b.maximal_faces)):
        return False
    return nx.is_isomorphic(incidence_graph(a), incidence_graph(b), node_match=categorical_node_match("kind", None))
