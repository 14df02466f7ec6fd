"""Brute-force reference implementations used as test oracles.

None of these call into the solver, the face-mask machinery or the SNF code;
they work on explicitly listed sets so that agreement is meaningful.
"""

import itertools
import random

from simpdich.complex import Complex


def all_faces(c: Complex) -> set:
    out = {frozenset()}
    for f in c.maximal_faces:
        for k in range(1, len(f) + 1):
            out.update(frozenset(s) for s in itertools.combinations(f, k))
    return out


def is_hom(a: Complex, b_faces: set, f: dict) -> bool:
    return all(frozenset(f[v] for v in face) in b_faces for face in a.maximal_faces)


def homs(a: Complex, b: Complex, rho=None) -> list:
    rho = rho or {}
    bf = all_faces(b)
    out = []
    for vals in itertools.product(b.vertices, repeat=len(a.vertices)):
        f = dict(zip(a.vertices, vals))
        if all(f[k] == v for k, v in rho.items()) and is_hom(a, bf, f):
            out.append(vals)
    return sorted(out)


def explicit(rel) -> set:
    """Materialize any relation object as a set of tuples without using its
    membership test."""
    if hasattr(rel, "tuples"):
        return set(rel.tuples)
    out = set()
    for g in rel.generators:
        out.update(itertools.product(g, repeat=rel.arity))
    return out


def structure_homs(inst, tmpl, pre=None) -> list:
    """All homomorphisms inst -> tmpl extending pre, in domain order."""
    pre = pre or {}
    trels = {name: explicit(r) for name, r in tmpl.relations}
    irels = {name: explicit(r) for name, r in inst.relations}
    out = []
    for vals in itertools.product(tmpl.domain, repeat=len(inst.domain)):
        h = dict(zip(inst.domain, vals))
        if any(h[k] != v for k, v in pre.items()):
            continue
        if all(tuple(h[x] for x in t) in trels[name] for name, ts in irels.items() for t in ts):
            out.append(h)
    return out


def polymorphism_tables(struct, k: int):
    """Every k-ary polymorphism of a structure, as dicts."""
    dom = struct.domain
    rels = [explicit(r) for _, r in struct.relations]
    keys = list(itertools.product(dom, repeat=k))
    for vals in itertools.product(dom, repeat=len(keys)):
        t = dict(zip(keys, vals))
        ok = True
        for rel in rels:
            for rows in itertools.product(rel, repeat=k):
                img = tuple(t[col] for col in zip(*rows))
                if img not in rel:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield t


def is_simplicial_table(c: Complex, table: dict, k: int) -> bool:
    faces = all_faces(c)
    for fs in itertools.product(c.maximal_faces, repeat=k):
        if frozenset(table[t] for t in itertools.product(*fs)) not in faces:
            return False
    return True


def satisfies(table: dict, system) -> bool:
    for ident in system.identities:
        vs = sorted(set(ident.lhs) | set(ident.rhs))
        dom = {x for key in table for x in key}
        for vals in itertools.product(sorted(dom), repeat=len(vs)):
            env = dict(zip(vs, vals))
            lhs = table[tuple(env[v] for v in ident.lhs)]
            if lhs != table[tuple(env[v] for v in ident.rhs)]:
                return False
    if system.idempotent:
        return all(v == key[0] for key, v in table.items() if len(set(key)) == 1)
    return True


def random_complex(rng: random.Random, n: int, max_faces: int = 4, max_size: int = 3) -> Complex:
    vs = [str(i) for i in range(n)]
    faces = [rng.sample(vs, rng.randint(1, min(max_size, n))) for _ in range(rng.randint(1, max_faces))]
    return Complex.from_faces(faces, vertices=vs)


# -- pp-formulas -------------------------------------------------------------------


def random_pp(rng: random.Random, struct, n_free: int = 2, n_bound: int = 1, n_atoms: int = 3, symbols=None):
    """A random pp-formula over the signature of ``struct``."""
    from simpdich.csp import And, Atom, Eq, Exists, PPFormula

    free = [f"x{i}" for i in range(n_free)]
    bound = [f"y{i}" for i in range(n_bound)]
    pool = free + bound
    names = symbols or [name for name, _ in struct.relations]
    parts = []
    for _ in range(n_atoms):
        name = rng.choice(names)
        parts.append(Atom(name, tuple(rng.choice(pool) for _ in range(struct.rel[name].arity))))
    if rng.random() < 0.3 and len(pool) > 1:
        parts.append(Eq(*rng.sample(pool, 2)))
    # every free variable must occur
    for v in free:
        if not any(v in (p.args if isinstance(p, Atom) else (p.left, p.right)) for p in parts):
            parts.append(Eq(v, v))
    body = And(tuple(parts))
    if bound:
        body = Exists(tuple(bound), body)
    return PPFormula(body, tuple(free))


def _holds(f, env, struct, rels):
    from simpdich.csp import And, Atom, Bottom, Eq, Exists, Top

    if isinstance(f, Top):
        return True
    if isinstance(f, Bottom):
        return False
    if isinstance(f, Atom):
        return tuple(env[a] for a in f.args) in rels[f.rel]
    if isinstance(f, Eq):
        return env[f.left] == env[f.right]
    if isinstance(f, And):
        return all(_holds(p, env, struct, rels) for p in f.parts)
    if isinstance(f, Exists):
        for vals in itertools.product(struct.domain, repeat=len(f.vars)):
            if _holds(f.body, {**env, **dict(zip(f.vars, vals))}, struct, rels):
                return True
        return False
    raise TypeError(f)


def naive_pp(phi, struct) -> list:
    """Solution tuples of phi by direct evaluation of the syntax tree."""
    rels = {name: explicit(r) for name, r in struct.relations}
    out = []
    for vals in itertools.product(struct.domain, repeat=len(phi.free_vars)):
        if _holds(phi.body, dict(zip(phi.free_vars, vals)), struct, rels):
            out.append(vals)
    return sorted(out)


# -- polymorphism tables -----------------------------------------------------------


def identity_classes(vertices, k, system=None) -> dict:
    """Map each k-tuple to a representative of its class under the identities."""
    parent = {t: t for t in itertools.product(vertices, repeat=k)}

    def find(t):
        while parent[t] != t:
            parent[t] = parent[parent[t]]
            t = parent[t]
        return t

    for ident in (system.identities if system else ()):
        vs = sorted(set(ident.lhs) | set(ident.rhs))
        for vals in itertools.product(vertices, repeat=len(vs)):
            env = dict(zip(vs, vals))
            a, b = find(tuple(env[v] for v in ident.lhs)), find(tuple(env[v] for v in ident.rhs))
            if a != b:
                parent[a] = b
    return {t: find(t) for t in parent}


def simplicial_tables(c: Complex, k: int, system=None, idempotent=True, first_only=False):
    """Enumerate k-ary tables on c that are simplicial, respect the identity
    classes of ``system`` and (optionally) fix the diagonal.

    Plain depth-first search: after each assignment the already assigned part
    of every touched face constraint must land in a face; nothing is propagated.
    """
    cls = identity_classes(c.vertices, k, system)
    reps = sorted(set(cls.values()))
    pinned = {}
    if idempotent or (system is not None and system.idempotent):
        for x in c.vertices:
            r = cls[(x,) * k]
            if pinned.get(r, x) != x:
                return
            pinned[r] = x
    maxfaces = [frozenset(f) for f in c.maximal_faces]
    checks = {r: [] for r in reps}
    for fs in itertools.product(c.maximal_faces, repeat=k):
        members = {cls[t] for t in itertools.product(*fs)}
        for m in members:
            checks[m].append(members)
    value = {}

    def ok(r):
        for members in checks[r]:
            img = {value[m] for m in members if m in value}
            if not any(img <= f for f in maxfaces):
                return False
        return True

    def dfs(i):
        if i == len(reps):
            yield {t: value[r] for t, r in cls.items()}
            return
        r = reps[i]
        for x in ([pinned[r]] if r in pinned else c.vertices):
            value[r] = x
            if ok(r):
                yield from dfs(i + 1)
        value.pop(r, None)

    for table in dfs(0):
        yield table
        if first_only:
            return
