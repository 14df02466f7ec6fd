"""Operation tables, their verification, and searching for them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from ..complex import Complex
from ..csp import FaceRelation, Mode, indicator_instance, solve
from .system import IdentitySystem, cyclic, siggers6


class InternalInconsistency(RuntimeError):
    """Two independent routes disagree; this indicates a bug."""


@dataclass
class WitnessTable:
    """A k-ary operation on the carrier, given as a dict or a callable."""

    carrier: object  # Complex or RelStructure
    arity: int
    table: object  # dict[tuple, str] or callable
    _verified: dict = field(default_factory=dict, repr=False, compare=False)

    def __call__(self, *args):
        if callable(self.table):
            return self.table(*args)
        return self.table[tuple(args)]

    @property
    def domain(self) -> tuple:
        return self.carrier.vertices if isinstance(self.carrier, Complex) else self.carrier.domain

    def as_dict(self) -> dict:
        return {t: self(*t) for t in itertools.product(self.domain, repeat=self.arity)}

    def to_json(self) -> dict:
        return {"arity": self.arity, "table": [list(t) + [v] for t, v in self.as_dict().items()]}

    @classmethod
    def from_json(cls, carrier, data) -> "WitnessTable":
        k = int(data["arity"])
        if "rule" in data:
            rule = data["rule"]
            order = list(carrier.vertices if isinstance(carrier, Complex) else carrier.domain)
            pos = {x: i for i, x in enumerate(order)}
            if rule == "min":
                return cls(carrier, k, lambda *xs: min(xs, key=pos.__getitem__))
            if rule == "max":
                return cls(carrier, k, lambda *xs: max(xs, key=pos.__getitem__))
            if rule.startswith("proj"):
                i = int(rule[4:])
                return cls(carrier, k, lambda *xs: xs[i])
            raise ValueError(f"unknown rule {rule!r}")
        table = {}
        for row in data["table"]:
            row = [str(x) for x in row]
            if len(row) != k + 1:
                raise ValueError("table rows need arity + 1 entries")
            table[tuple(row[:k])] = row[k]
        return cls(carrier, k, table)


@dataclass(frozen=True)
class Verification:
    ok: bool
    violations: tuple = ()

    def __bool__(self):
        return self.ok


_MAX_REPORT = 25


def polymorphism_violations(w: WitnessTable, limit=_MAX_REPORT) -> list:
    """Where ``w`` fails to preserve faces or relations of its carrier."""
    out = []
    c = w.carrier
    k = w.arity
    dom = set(w.domain)
    for t in itertools.product(w.domain, repeat=k):
        try:
            v = w(*t)
        except KeyError:
            out.append(f"undefined at {t}")
            if len(out) >= limit:
                return out
            continue
        if v not in dom:
            out.append(f"value {v} at {t} outside the carrier")
            if len(out) >= limit:
                return out
    if out:
        return out
    if isinstance(c, Complex):
        checks = [("face", c.maximal_faces, c.dimension + 2)]
    else:
        checks = []
        for name, rel in c.relations:
            if isinstance(rel, FaceRelation):
                checks.append((name, rel.generators, rel.arity))
            else:
                checks.append((name, rel, None))
    for name, gens, r in checks:
        if r is not None:
            gsets = [frozenset(g) for g in gens]
            for combo in itertools.product(gens, repeat=k):
                img = frozenset(w(*p) for p in itertools.product(*combo))
                if any(img <= g for g in gsets):
                    continue
                # a face relation of arity r only constrains subsets of size <= r
                bad = None
                for s in range(1, min(r, len(img)) + 1):
                    for sub in itertools.combinations(sorted(img), s):
                        if not any(set(sub) <= g for g in gsets):
                            bad = sub
                            break
                    if bad:
                        break
                if bad:
                    out.append(f"{name}: image of {[list(g) for g in combo]} contains non-face {list(bad)}")
                    if len(out) >= limit:
                        return out
        else:
            rel = gens
            for combo in itertools.product(list(rel), repeat=k):
                img = tuple(w(*col) for col in zip(*combo))
                if img not in rel:
                    out.append(f"{name}: {combo} maps to {img}")
                    if len(out) >= limit:
                        return out
    return out


def identity_violations(w: WitnessTable, system: IdentitySystem, limit=_MAX_REPORT) -> list:
    out = []
    dom = w.domain
    if system.arity != w.arity:
        return [f"arity {w.arity} does not match the system arity {system.arity}"]
    if system.idempotent:
        for x in dom:
            if w(*(x,) * w.arity) != x:
                out.append(f"not idempotent at {x}")
                if len(out) >= limit:
                    return out
    for idn in system.identities:
        vs = idn.variables()
        for vals in itertools.product(dom, repeat=len(vs)):
            a = dict(zip(vs, vals))
            l = w(*(a[v] for v in idn.lhs))
            r = w(*(a[v] for v in idn.rhs))
            if l != r:
                out.append(f"{idn.lhs}={idn.rhs} fails at {a}: {l} != {r}")
                if len(out) >= limit:
                    return out
    return out


def verify_witness(w: WitnessTable, system: IdentitySystem | None = None) -> Verification:
    """Check by direct evaluation that ``w`` is a polymorphism and, if a
    system is given, that it satisfies the identities."""
    key = system
    if key in w._verified:
        return w._verified[key]
    bad = polymorphism_violations(w)
    if not bad and system is not None:
        bad = identity_violations(w, system)
    res = Verification(not bad, tuple(bad))
    w._verified[key] = res
    return res


@dataclass(frozen=True)
class SearchResult:
    witness: WitnessTable | None
    exhausted: bool

    @property
    def found(self) -> bool:
        return self.witness is not None


def search_witness(carrier, system: IdentitySystem) -> SearchResult:
    """Find a polymorphism of ``carrier`` satisfying ``system``, or prove none exists."""
    from ..structures import realization

    if isinstance(carrier, Complex):
        if not system.idempotent:
            raise ValueError("complex searches use Polidem only (the system must be idempotent)")
        template = realization(carrier)
    else:
        template = carrier
    ind = indicator_instance(template, system)
    if ind.conflict:
        return SearchResult(None, True)
    sol = solve(ind.instance, template, ind.pre, Mode.FIRST)
    if sol is None:
        return SearchResult(None, True)
    table = {t: sol[e] for t, e in ind.class_of.items()}
    w = WitnessTable(carrier, system.arity, table)
    v = verify_witness(w, system)
    if not v.ok:
        raise InternalInconsistency("solver produced a table that fails verification: " + "; ".join(v.violations[:3]))
    return SearchResult(w, False)


def siggers_from_cyclic(c: WitnessTable) -> WitnessTable:
    """Build a 6-ary Siggers operation from a cyclic one of any arity."""
    n = c.arity
    if not verify_witness(c, cyclic(n)).ok:
        raise ValueError("the given operation is not a cyclic polymorphism")
    if n == 2:
        f: Callable = lambda x1, x2, x3, x4, x5, x6: c(x2, x3)
    elif n % 2 == 1:
        k = (n - 3) // 2
        f = lambda x1, x2, x3, x4, x5, x6: c(x1, *([x2] * k), x5, *([x3] * (k + 1)))
    else:
        # c(x, y, x, y, ...) is a binary cyclic operation
        f = lambda x1, x2, x3, x4, x5, x6: c(*([x2, x3] * (n // 2)))
    w = WitnessTable(c.carrier, 6, f)
    if not verify_witness(w, siggers6()).ok:
        raise InternalInconsistency("cyclic-to-Siggers construction failed verification")
    return w
