"""Indicator instances: polymorphisms satisfying identities as homomorphisms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .structure import FaceRelation, RelStructure, TableRelation

MAX_PRODUCT = 5_000_000


def tuple_label(t) -> str:
    return "(" + ",".join(t) + ")"


@dataclass
class IndicatorInstance:
    """The quotient of template^k by the identities.

    ``instance`` has one element per class of k-tuples; ``pre`` pins the class
    of each constant tuple when the system is idempotent.  ``conflict`` is set
    when idempotence would pin one class to two values, so no witness exists.
    """

    instance: RelStructure
    pre: dict
    class_of: dict  # k-tuple of labels -> element label
    conflict: bool = False


class _UF:
    def __init__(self, n):
        self.p = list(range(n))

    def find(self, x):
        p = self.p
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            if a < b:
                self.p[b] = a
            else:
                self.p[a] = b


def indicator_instance(template: RelStructure, system) -> IndicatorInstance:
    dom = template.domain
    n = len(dom)
    k = system.arity
    size = n**k
    if size > MAX_PRODUCT:
        raise ValueError(f"template power too large ({n}^{k})")
    uf = _UF(size)
    weights = [n ** (k - 1 - i) for i in range(k)]
    for idn in system.identities:
        vs = idn.variables()
        for vals in itertools.product(range(n), repeat=len(vs)):
            a = dict(zip(vs, vals))
            ca = sum(a[v] * w for v, w in zip(idn.lhs, weights))
            cb = sum(a[v] * w for v, w in zip(idn.rhs, weights))
            uf.union(ca, cb)
    # the smallest code in each class is its representative
    label = {}
    cls = [0] * size
    for code in range(size):
        r = uf.find(code)
        cls[code] = r
        if r not in label:
            digits = []
            c = r
            for w in weights:
                digits.append(dom[c // w])
                c %= w
            label[r] = tuple_label(digits)
    index = {x: i for i, x in enumerate(dom)}

    def enc(t):
        return sum(index[x] * w for x, w in zip(t, weights))

    rels = {}
    for name, rel in template.relations:
        if isinstance(rel, FaceRelation):
            gens = set()
            for combo in itertools.product(rel.generators, repeat=k):
                idx = [[index[x] * w for x in g] for g, w in zip(combo, weights)]
                gens.add(frozenset(label[cls[sum(p)]] for p in itertools.product(*idx)))
            rels[name] = FaceRelation.of(rel.arity, gens)
        else:
            tuples = list(rel.tuples)
            if len(tuples) ** k > MAX_PRODUCT:
                raise ValueError(f"relation {name} power too large")
            out = set()
            for combo in itertools.product(tuples, repeat=k):
                out.add(tuple(label[cls[enc(col)]] for col in zip(*combo)))
            rels[name] = TableRelation(rel.arity, frozenset(out))
    pre = {}
    conflict = False
    if system.idempotent:
        for x in dom:
            e = label[cls[enc((x,) * k)]]
            if pre.get(e, x) != x:
                conflict = True
            pre[e] = x
    class_of = {}
    for code in range(size):
        digits = []
        c = code
        for w in weights:
            digits.append(dom[c // w])
            c %= w
        class_of[tuple(digits)] = label[cls[code]]
    inst = RelStructure.make(set(label.values()), rels)
    return IndicatorInstance(inst, pre, class_of, conflict)
