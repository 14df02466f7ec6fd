"""Primitive-positive formulas: syntax, evaluation and substitution."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Mapping

from .solver import solve_projected
from .structure import RelStructure, TableRelation


@dataclass(frozen=True)
class Atom:
    rel: str
    args: tuple


@dataclass(frozen=True)
class Eq:
    left: str
    right: str


@dataclass(frozen=True)
class And:
    parts: tuple


@dataclass(frozen=True)
class Exists:
    vars: tuple
    body: object


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class PPFormula:
    """A formula together with the ordered list of its free variables."""

    body: object
    free_vars: tuple

    @classmethod
    def parse(cls, text: str, free_vars=None) -> "PPFormula":
        body = parse_sexpr(text)
        fv = free_vars_of(body)
        if free_vars is None:
            free_vars = fv
        else:
            free_vars = tuple(free_vars)
            extra = set(fv) - set(free_vars)
            if extra:
                raise ValueError(f"free variables {sorted(extra)} not listed")
        return cls(body, tuple(free_vars))

    def __str__(self):
        return to_sexpr(self.body)


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")


def _tokens(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        if m.group(1):
            out.append((m.group(1), m.start(1)))
        pos = m.end()
    return out


def parse_sexpr(text: str):
    toks = _tokens(text)
    if not toks:
        raise ValueError("empty formula")
    i = 0

    def read():
        nonlocal i
        if i >= len(toks):
            raise ValueError("unexpected end of formula")
        tok, at = toks[i]
        i += 1
        if tok == ")":
            raise ValueError(f"unexpected ')' at {at}")
        if tok != "(":
            return tok
        items = []
        while True:
            if i >= len(toks):
                raise ValueError("missing ')'")
            if toks[i][0] == ")":
                i += 1
                return items
            items.append(read())

    tree = read()
    if i != len(toks):
        raise ValueError(f"trailing input at {toks[i][1]}")
    return _build(tree)


def _build(tree):
    if isinstance(tree, str):
        if tree == "true":
            return Top()
        if tree == "false":
            return Bottom()
        raise ValueError(f"bare symbol {tree!r}")
    if not tree or not isinstance(tree[0], str):
        raise ValueError("malformed formula")
    head, rest = tree[0], tree[1:]
    if head == "atom":
        if not rest or any(not isinstance(x, str) for x in rest):
            raise ValueError("atom needs a relation name and variables")
        return Atom(rest[0], tuple(rest[1:]))
    if head in ("eq", "="):
        if len(rest) != 2 or any(not isinstance(x, str) for x in rest):
            raise ValueError("eq needs two variables")
        return Eq(rest[0], rest[1])
    if head == "and":
        return And(tuple(_build(x) for x in rest))
    if head == "exists":
        if len(rest) != 2:
            raise ValueError("exists needs variables and a body")
        vs = rest[0]
        vs = (vs,) if isinstance(vs, str) else tuple(vs)
        if any(not isinstance(x, str) for x in vs):
            raise ValueError("bad variable list")
        return Exists(vs, _build(rest[1]))
    if head in ("true", "false") and not rest:
        return Top() if head == "true" else Bottom()
    raise ValueError(f"unknown connective {head!r}")


def to_sexpr(f) -> str:
    if isinstance(f, Atom):
        return "(atom " + " ".join((f.rel,) + f.args) + ")"
    if isinstance(f, Eq):
        return f"(eq {f.left} {f.right})"
    if isinstance(f, And):
        return "(and " + " ".join(to_sexpr(p) for p in f.parts) + ")" if f.parts else "true"
    if isinstance(f, Exists):
        vs = f.vars[0] if len(f.vars) == 1 else "(" + " ".join(f.vars) + ")"
        return f"(exists {vs} {to_sexpr(f.body)})"
    if isinstance(f, Top):
        return "true"
    return "false"


def free_vars_of(f) -> tuple:
    """Free variables in order of first occurrence."""
    out = []

    def walk(g, bound):
        if isinstance(g, Atom):
            vs = g.args
        elif isinstance(g, Eq):
            vs = (g.left, g.right)
        elif isinstance(g, And):
            for p in g.parts:
                walk(p, bound)
            return
        elif isinstance(g, Exists):
            walk(g.body, bound | set(g.vars))
            return
        else:
            return
        for v in vs:
            if v not in bound and v not in out:
                out.append(v)

    walk(f, frozenset())
    return tuple(out)


def all_vars(f) -> set:
    if isinstance(f, Atom):
        return set(f.args)
    if isinstance(f, Eq):
        return {f.left, f.right}
    if isinstance(f, And):
        return set().union(*(all_vars(p) for p in f.parts)) if f.parts else set()
    if isinstance(f, Exists):
        return set(f.vars) | all_vars(f.body)
    return set()


# -- evaluation -------------------------------------------------------------


def _flatten(f, fresh, ren, atoms, eqs):
    """Collect atoms and equalities with all bound variables made distinct."""
    if isinstance(f, Atom):
        atoms.append((f.rel, tuple(ren.get(v, v) for v in f.args)))
        return True
    if isinstance(f, Eq):
        eqs.append((ren.get(f.left, f.left), ren.get(f.right, f.right)))
        return True
    if isinstance(f, And):
        return all(_flatten(p, fresh, ren, atoms, eqs) for p in f.parts)
    if isinstance(f, Exists):
        inner = dict(ren)
        for v in f.vars:
            inner[v] = fresh(v)
        return _flatten(f.body, fresh, inner, atoms, eqs)
    if isinstance(f, Top):
        return True
    return False


def eval_pp(phi: PPFormula, struct: RelStructure) -> list:
    """The relation defined by ``phi`` in ``struct``, as sorted label tuples."""
    counter = itertools.count()

    def fresh(v):
        return f"\x00{v}#{next(counter)}"

    atoms, eqs = [], []
    if not _flatten(phi.body, fresh, {}, atoms, eqs):
        return []
    sig = struct.signature
    for rel, args in atoms:
        if rel not in sig:
            raise KeyError(f"unknown relation symbol {rel}")
        if sig[rel] != len(args):
            raise ValueError(f"{rel} has arity {sig[rel]}, used with {len(args)} arguments")
    variables = list(phi.free_vars)
    for _, args in atoms:
        variables += args
    for a, b in eqs:
        variables += [a, b]
    variables = list(dict.fromkeys(variables))
    # equalities are resolved by merging variables
    parent = {v: v for v in variables}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for a, b in eqs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
    reps = list(dict.fromkeys(find(v) for v in variables))
    names = {r: f"v{i}" for i, r in enumerate(reps)}
    rels = {name: set() for name in sig}
    for rel, args in atoms:
        rels[rel].add(tuple(names[find(v)] for v in args))
    inst = RelStructure.make(
        names.values(), {n: TableRelation(sig[n], frozenset(ts)) for n, ts in rels.items()}
    )
    onto = [names[find(v)] for v in phi.free_vars]
    uniq = list(dict.fromkeys(onto))
    rows = solve_projected(inst, struct, {}, uniq)
    pos = [uniq.index(v) for v in onto]
    return sorted({tuple(r[i] for i in pos) for r in rows}, key=lambda t: [struct.domain.index(x) for x in t])


# -- substitution ----------------------------------------------------------


def pp_substitute(theta: PPFormula, defs: Mapping) -> PPFormula:
    """Replace each atom R(args) of ``theta`` by the definition of R.

    Bound variables of inserted definitions are renamed apart so that no
    variable of ``theta`` is captured.
    """
    used = set(all_vars(theta.body)) | set(theta.free_vars)
    for d in defs.values():
        used |= all_vars(d.body)
    counter = itertools.count()

    def fresh(v):
        while True:
            name = f"{v}_{next(counter)}"
            if name not in used:
                used.add(name)
                return name

    def inst(d: PPFormula, args):
        if len(d.free_vars) != len(args):
            raise ValueError(f"definition expects {len(d.free_vars)} arguments, got {len(args)}")
        return _rename(d.body, dict(zip(d.free_vars, args)), fresh)

    def walk(g):
        if isinstance(g, Atom):
            if g.rel not in defs:
                raise KeyError(f"no definition for relation {g.rel}")
            return inst(defs[g.rel], g.args)
        if isinstance(g, And):
            return And(tuple(walk(p) for p in g.parts))
        if isinstance(g, Exists):
            return Exists(g.vars, walk(g.body))
        return g

    return PPFormula(walk(theta.body), theta.free_vars)


def _rename(f, ren, fresh):
    if isinstance(f, Atom):
        return Atom(f.rel, tuple(ren.get(v, v) for v in f.args))
    if isinstance(f, Eq):
        return Eq(ren.get(f.left, f.left), ren.get(f.right, f.right))
    if isinstance(f, And):
        return And(tuple(_rename(p, ren, fresh) for p in f.parts))
    if isinstance(f, Exists):
        inner = dict(ren)
        new = []
        for v in f.vars:
            nv = fresh(v)
            inner[v] = nv
            new.append(nv)
        return Exists(tuple(new), _rename(f.body, inner, fresh))
    return f


eval_pp_formula = eval_pp
