"""Backtracking homomorphism search with arc consistency.

Domains are bitmasks over template elements.  Three constraint kinds exist:
explicit tables (generalized arc consistency), "image lies in one face" for
pairs of face relations, and a forward-checking variant over minimal
non-faces when the relation arity is too small for the first.
"""

from __future__ import annotations

import itertools
import sys
from collections import deque
from enum import Enum
from typing import Iterable, Mapping

from .structure import FaceRelation, RelStructure, TableRelation, check_same_signature

MAX_MATERIALIZE = 2_000_000


class Mode(Enum):
    FIRST = "first"
    ALL = "all"
    COUNT = "count"


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


def _single(m: int) -> bool:
    return m & (m - 1) == 0


class _Table:
    __slots__ = ("scope", "rows")

    def __init__(self, scope, rows):
        self.scope = scope
        self.rows = rows  # tuples of single-bit masks, one per scope position

    def revise(self, dom):
        sc = self.scope
        n = len(sc)
        ds = [dom[v] for v in sc]
        sup = [0] * n
        rng = range(n)
        for row in self.rows:
            for i in rng:
                if not ds[i] & row[i]:
                    break
            else:
                for i in rng:
                    sup[i] |= row[i]
        changed = []
        for i in rng:
            nd = ds[i] & sup[i]
            if nd != ds[i]:
                if not nd:
                    return None
                dom[sc[i]] = nd
                changed.append(sc[i])
        return changed


class _CommonFace:
    """The images of all scope variables lie inside one template face."""

    __slots__ = ("scope", "faces")

    def __init__(self, scope, faces):
        self.scope = scope
        self.faces = faces

    def revise(self, dom):
        ds = {dom[v] for v in self.scope}
        union = 0
        for f in self.faces:
            for d in ds:
                if not d & f:
                    break
            else:
                union |= f
        if not union:
            return None
        every = 0
        for d in ds:
            every |= d
        if not every & ~union:
            return []
        changed = []
        for v in self.scope:
            d = dom[v]
            nd = d & union
            if nd != d:
                if not nd:
                    return None
                dom[v] = nd
                changed.append(v)
        return changed


class _NoNonFace:
    """No minimal non-face (of bounded size) may appear among the fixed images."""

    __slots__ = ("scope", "forbidden")

    def __init__(self, scope, forbidden):
        self.scope = scope
        self.forbidden = forbidden

    def revise(self, dom):
        changed = []
        while True:
            fixed = 0
            for v in self.scope:
                if _single(dom[v]):
                    fixed |= dom[v]
            progress = False
            for n in self.forbidden:
                rest = n & ~fixed
                if not rest:
                    return None
                if _single(rest):
                    for v in self.scope:
                        d = dom[v]
                        if not _single(d) and d & rest:
                            nd = d & ~rest
                            dom[v] = nd
                            changed.append(v)
                            if _single(nd):
                                progress = True
            if not progress:
                return changed


class Problem:
    """A compiled instance/template pair."""

    def __init__(self, instance: RelStructure, template: RelStructure, pre: Mapping | None = None):
        check_same_signature(instance, template)
        self.var_labels = instance.domain
        self.val_labels = template.domain
        self.var_index = {v: i for i, v in enumerate(self.var_labels)}
        self.val_index = {v: i for i, v in enumerate(self.val_labels)}
        full = (1 << len(self.val_labels)) - 1
        self.domains = [full] * len(self.var_labels)
        self.constraints = []
        self.unsat = False
        self._seen = set()
        self._proj_cache = {}
        self._intern = {}
        for k, x in (pre or {}).items():
            k, x = str(k), str(x)
            if k not in self.var_index:
                raise KeyError(f"precolored element {k} is not in the instance")
            if x not in self.val_index:
                raise KeyError(f"precolor value {x} is not in the template")
            self.domains[self.var_index[k]] &= 1 << self.val_index[x]
        face_pairs = []
        for name, irel in instance.relations:
            trel = template.rel[name]
            if isinstance(irel, FaceRelation) and isinstance(trel, FaceRelation):
                if irel.arity != trel.arity:
                    raise ValueError(f"arity mismatch for {name}")
                face_pairs.append((irel, trel))
            else:
                self._compile(name, irel, trel)
        self._compile_faces(face_pairs)
        if any(d == 0 for d in self.domains):
            self.unsat = True
        self.watch = [[] for _ in self.var_labels]
        for ci, c in enumerate(self.constraints):
            for v in c.scope:
                self.watch[v].append(ci)
        # failure counts drive the dom/wdeg branching heuristic
        self.wdeg = [len(w) + 1 for w in self.watch]
        del self._seen, self._proj_cache, self._intern

    # -- compilation ------------------------------------------------------

    def _compile_faces(self, pairs):
        """Face-relation pairs grouped by (instance generators, template generators);
        on one scope only the largest arity matters."""
        vi = self.var_index
        best = {}
        for irel, trel in pairs:
            key = (irel.generators, trel.generators)
            best[key] = max(best.get(key, 0), trel.arity)
        for (igens, tgens_lab), r in best.items():
            tgens = [sum(1 << self.val_index[x] for x in g) for g in tgens_lab]
            tdim = max((len(g) for g in tgens_lab), default=0)
            forbidden = None
            for g in igens:
                scope = tuple(sorted({vi[x] for x in g}))
                if len(scope) <= r or r >= tdim + 1:
                    key = ("F", scope, tgens_lab)
                    if key not in self._seen:
                        self._seen.add(key)
                        self._add_face(scope, tgens)
                else:
                    if forbidden is None:
                        forbidden = _minimal_nonfaces(tgens, len(self.val_labels), r)
                    key = ("N", scope, tgens_lab, r)
                    if key not in self._seen:
                        self._seen.add(key)
                        self.constraints.append(_NoNonFace(scope, forbidden))

    def _compile(self, name, irel, trel):
        vi = self.var_index
        if isinstance(irel, FaceRelation):
            if len(irel) > MAX_MATERIALIZE:
                raise ValueError(f"relation {name} too large to materialize")
        allowed = [tuple(self.val_index[x] for x in t) for t in trel]
        for t in irel:
            self._add_table(name, tuple(vi[x] for x in t), allowed)

    def _add_face(self, scope, tgens):
        if len(scope) == 1:
            v = scope[0]
            self.domains[v] &= _or(tgens)
            return
        self.constraints.append(_CommonFace(scope, tgens))

    def _add_table(self, name, tvars, allowed):
        distinct = sorted(set(tvars))
        pos = tuple(distinct.index(v) for v in tvars)
        key = (name, pos)
        entry = self._proj_cache.get(key)
        if entry is None:
            rows = set()
            w = len(distinct)
            for a in allowed:
                vals = [None] * w
                for p, x in zip(pos, a):
                    if vals[p] is None:
                        vals[p] = x
                    elif vals[p] != x:
                        break
                else:
                    rows.add(tuple(vals))
            rows = frozenset(rows)
            entry = self._intern.setdefault(rows, (len(self._intern), rows))
            self._proj_cache[key] = entry
        rid, rows = entry
        scope = tuple(distinct)
        if not rows:
            self.unsat = True
            return
        if len(scope) == 1:
            self.domains[scope[0]] &= _or(1 << r[0] for r in rows)
            return
        ckey = ("T", scope, rid)
        if ckey in self._seen:
            return
        self._seen.add(ckey)
        self.constraints.append(_Table(scope, [tuple(1 << x for x in r) for r in sorted(rows)]))

    # -- propagation and search -------------------------------------------

    def propagate(self, dom, queue) -> bool:
        cons = self.constraints
        watch = self.watch
        queue = deque(queue)
        inq = set(queue)
        while queue:
            ci = queue.popleft()
            inq.discard(ci)
            ch = cons[ci].revise(dom)
            if ch is None:
                wdeg = self.wdeg
                for v in cons[ci].scope:
                    wdeg[v] += 1
                return False
            for v in ch:
                for cj in watch[v]:
                    if cj != ci and cj not in inq:
                        inq.add(cj)
                        queue.append(cj)
        return True

    def root(self):
        """Propagated root domains, or None when inconsistent."""
        if self.unsat:
            return None
        dom = list(self.domains)
        if not self.propagate(dom, range(len(self.constraints))):
            return None
        return dom

    def _pick(self, dom, among=None):
        """Smallest domain size per failure weight; ties go to the lowest index."""
        best, score = -1, None
        wdeg = self.wdeg
        for v in among if among is not None else range(len(dom)):
            d = dom[v]
            if d & (d - 1):
                s = bin(d).count("1") / wdeg[v]
                if score is None or s < score:
                    best, score = v, s
        return best

    def solutions(self, dom, among=None):
        """Yield fully (or, with ``among``, partially) fixed domain lists."""
        v = self._pick(dom, among)
        if v < 0:
            yield dom
            return
        for b in _bits(dom[v]):
            nd = list(dom)
            nd[v] = 1 << b
            if self.propagate(nd, self.watch[v]):
                yield from self.solutions(nd, among)

    def decode(self, dom) -> dict:
        return {self.var_labels[i]: self.val_labels[d.bit_length() - 1] for i, d in enumerate(dom)}


def _or(ms) -> int:
    out = 0
    for m in ms:
        out |= m
    return out


def _minimal_nonfaces(gens, n, r):
    """Minimal non-faces of size at most r of the complex generated by ``gens``."""

    def is_face(m):
        return any(m & g == m for g in gens)

    out = []
    for k in range(1, r + 1):
        for combo in itertools.combinations(range(n), k):
            m = _or(1 << i for i in combo)
            if is_face(m):
                continue
            if any(m & o == o for o in out):
                continue
            out.append(m)
    return out


def _ensure_recursion(n):
    need = 4 * n + 200
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def _worker(args):
    problem, dom, mode = args
    if mode is Mode.COUNT:
        return sum(1 for _ in problem.solutions(dom))
    return [tuple(d.bit_length() - 1 for d in s) for s in problem.solutions(dom)]


def solve(instance: RelStructure, template: RelStructure, pre: Mapping | None = None, mode=Mode.FIRST, jobs: int = 1):
    """Search homomorphisms instance -> template extending ``pre``.

    FIRST returns one assignment or None, ALL the sorted list of assignments,
    COUNT their number.  ``jobs`` > 1 splits the root branching over worker
    processes; results do not depend on it.
    """
    mode = Mode(mode)
    p = Problem(instance, template, pre)
    _ensure_recursion(len(p.var_labels))
    dom = p.root()
    if mode is Mode.FIRST:
        if dom is None:
            return None
        for s in p.solutions(dom):
            return p.decode(s)
        return None
    if dom is None:
        return 0 if mode is Mode.COUNT else []
    if jobs > 1:
        results = _split(p, dom, mode, jobs)
    elif mode is Mode.COUNT:
        return sum(1 for _ in p.solutions(dom))
    else:
        results = [tuple(d.bit_length() - 1 for d in s) for s in p.solutions(dom)]
    if mode is Mode.COUNT:
        return results
    results.sort()
    return [{p.var_labels[i]: p.val_labels[x] for i, x in enumerate(r)} for r in results]


def _split(p: Problem, dom, mode, jobs):
    from concurrent.futures import ProcessPoolExecutor

    v = p._pick(dom)
    if v < 0:
        return 1 if mode is Mode.COUNT else [tuple(d.bit_length() - 1 for d in dom)]
    tasks = []
    for b in _bits(dom[v]):
        nd = list(dom)
        nd[v] = 1 << b
        if p.propagate(nd, p.watch[v]):
            tasks.append((p, nd, mode))
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        parts = list(ex.map(_worker, tasks))
    if mode is Mode.COUNT:
        return sum(parts)
    return [r for part in parts for r in part]


def solve_projected(instance: RelStructure, template: RelStructure, pre: Mapping | None, onto: Iterable) -> list:
    """Distinct restrictions to ``onto`` of homomorphisms extending ``pre``.

    Returns sorted tuples of template labels in the order of ``onto``.
    """
    p = Problem(instance, template, pre)
    _ensure_recursion(len(p.var_labels))
    onto = [p.var_index[str(x)] for x in onto]
    dom = p.root()
    if dom is None:
        return []
    out = set()
    for partial in p.solutions(dom, among=onto):
        for _ in p.solutions(partial):
            out.add(tuple(partial[v].bit_length() - 1 for v in onto))
            break
    return [tuple(p.val_labels[x] for x in t) for t in sorted(out)]


__all__ = ["Mode", "solve", "solve_projected", "Problem", "FaceRelation", "TableRelation"]
