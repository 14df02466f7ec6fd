"""Homotopy-invariant checks: components, integral homology, Euler
characteristic and elementary collapses."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .complex import Complex, face_key, label_key


def connected_components(c: Complex) -> list:
    parent = {v: v for v in c.vertices}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for f in c.maximal_faces:
        r = find(f[0])
        for v in f[1:]:
            s = find(v)
            if s != r:
                parent[s] = r
    groups = {}
    for v in c.vertices:
        groups.setdefault(find(v), []).append(v)
    comps = [tuple(sorted(g, key=label_key)) for g in groups.values()]
    return sorted(comps, key=lambda g: label_key(g[0]))


@dataclass(frozen=True)
class ChainComplexData:
    bases: dict  # k -> list of k-faces (sorted tuples)
    boundaries: dict  # k -> matrix (rows: (k-1)-faces, cols: k-faces)


def boundary_matrices(c: Complex) -> ChainComplexData:
    faces = c.faces()
    bases = {}
    for f in faces:
        bases.setdefault(len(f) - 1, []).append(f)
    for k in bases:
        bases[k].sort(key=face_key)
    mats = {}
    for k in range(1, c.dimension + 1):
        rows = {f: i for i, f in enumerate(bases[k - 1])}
        m = [[0] * len(bases[k]) for _ in bases[k - 1]]
        for j, f in enumerate(bases[k]):
            for i in range(len(f)):
                m[rows[f[:i] + f[i + 1:]]][j] = -1 if i % 2 else 1
        mats[k] = m
    return ChainComplexData(bases, mats)


@dataclass(frozen=True)
class SNF:
    diagonal: tuple  # nonzero invariant factors d1 | d2 | ...
    U: list  # U @ A @ V = D
    V: list


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(a, transforms: bool = True) -> SNF:
    """Exact Smith normal form over the integers.

    Returns invertible integer matrices U, V with U A V diagonal and each
    diagonal entry dividing the next.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    A = [list(map(int, row)) for row in a]
    U = _identity(m) if transforms else None
    V = _identity(n) if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row dst -= q * row src
        if q:
            rs, rd = A[src], A[dst]
            for k in range(n):
                if rs[k]:
                    rd[k] -= q * rs[k]
            if U is not None:
                us, ud = U[src], U[dst]
                for k in range(m):
                    if us[k]:
                        ud[k] -= q * us[k]

    def add_col(src, dst, q):  # col dst -= q * col src
        if q:
            for row in A:
                if row[src]:
                    row[dst] -= q * row[src]
            if V is not None:
                for row in V:
                    if row[src]:
                        row[dst] -= q * row[src]

    diag = []
    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, A[i][t] // p)
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, A[t][j] // p)
                    if A[t][j]:
                        done = False
            if not done:
                # a smaller remainder appeared; move it to the pivot
                best = None
                for i in range(t, m):
                    if A[i][t] and (best is None or abs(A[i][t]) < best[0]):
                        best = (abs(A[i][t]), i, t)
                for j in range(t, n):
                    if A[t][j] and (best is None or abs(A[t][j]) < best[0]):
                        best = (abs(A[t][j]), t, j)
                swap_rows(t, best[1])
                swap_cols(t, best[2])
                continue
            # divisibility: the pivot must divide the rest of the block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        diag.append(A[t][t])
        t += 1
    return SNF(tuple(diag), U, V)


@dataclass(frozen=True)
class HomologyGroups:
    betti: tuple
    torsion: tuple  # per degree, tuple of invariant factors > 1

    def to_json(self) -> dict:
        return {"betti": list(self.betti), "torsion": [list(t) for t in self.torsion]}

    def is_zero(self) -> bool:
        return not any(self.betti) and not any(self.torsion)


def integral_homology(c: Complex, reduced: bool = False) -> HomologyGroups:
    d = c.dimension
    if d < 0:
        return HomologyGroups((), ())
    data = boundary_matrices(c)
    ranks = {}
    tors = {}
    for k, mat in data.boundaries.items():
        s = smith_normal_form(mat, transforms=False)
        ranks[k] = len(s.diagonal)
        tors[k - 1] = tuple(x for x in s.diagonal if x > 1)
    betti = []
    torsion = []
    for k in range(d + 1):
        nk = len(data.bases[k])
        betti.append(nk - ranks.get(k, 0) - ranks.get(k + 1, 0))
        torsion.append(tors.get(k, ()))
    if reduced:
        betti[0] -= 1
    return HomologyGroups(tuple(betti), tuple(torsion))


def euler_characteristic(c: Complex) -> int:
    return sum((-1) ** i * x for i, x in enumerate(c.f_vector()))


def collapse(c: Complex):
    """Greedy elementary collapses.

    A face is free when it lies in exactly one other face; that face is then
    maximal and one dimension higher, and the pair is removed.  Pairs are
    taken highest dimension first, in label order.  Returns the reduced
    complex and whether every component shrank to a single vertex.
    """
    faces = set(frozenset(f) for f in c.faces())
    cofaces = {f: set() for f in faces}
    for f in faces:
        if len(f) > 1:
            for v in f:
                cofaces[f - {v}].add(f)

    def order(f):
        return (-len(f), face_key(sorted(f, key=label_key)))

    changed = True
    while changed:
        changed = False
        for sigma in sorted(faces, key=order):
            if sigma not in faces:
                continue
            cf = cofaces[sigma]
            if len(cf) != 1:
                continue
            (tau,) = cf
            if cofaces[tau]:
                continue
            for f in (tau, sigma):
                faces.discard(f)
                if len(f) > 1:
                    for v in f:
                        cofaces[f - {v}].discard(f)
                del cofaces[f]
            changed = True
    reduced = Complex.from_faces(faces)
    done = reduced.dimension <= 0 and len(reduced.vertices) == len(connected_components(c))
    return reduced, done


class Contractibility(Enum):
    COLLAPSIBLE = "collapsible"
    NOT_CONTRACTIBLE = "not_contractible"
    INCONCLUSIVE = "inconclusive"


def component_status(c: Complex) -> list:
    """Per component: collapsible, refuted by homology, or undecided."""
    out = []
    for comp in connected_components(c):
        sub = c.induced(comp)
        if not integral_homology(sub, reduced=True).is_zero():
            out.append((comp, Contractibility.NOT_CONTRACTIBLE))
        elif collapse(sub)[1]:
            out.append((comp, Contractibility.COLLAPSIBLE))
        else:
            out.append((comp, Contractibility.INCONCLUSIVE))
    return out
