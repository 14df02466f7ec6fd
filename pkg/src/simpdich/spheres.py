"""Cubical sphere models, their subdivision approximation, and contraction
certificates for loops in complexes with a cyclic polymorphism."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .complex import Complex, SimplicialMap, cycle, pair_label, path, product, quotient, set_label, subdivision
from .identities import WitnessTable, cyclic, verify_witness


@dataclass(frozen=True)
class HypercubeMeta:
    d: int
    n: int
    m: int
    coords: dict  # vertex label -> representative coordinates
    vertex_at: dict  # canonical coordinates -> vertex label


def canonical_coords(coords, m: int) -> tuple:
    """Representative of a coordinate tuple after the pole gluings."""
    c = list(coords)
    for j in range(len(c) - 1, 0, -1):
        if c[j] in (0, m):
            for i in range(j):
                c[i] = 0
            break
    return tuple(c)


def hypercube_complex(d: int, n: int, m: int):
    """H^1 is cycle(n); H^d is H^(d-1) x path(m) with the bottom layer and
    the top layer each glued to one point."""
    if d < 1 or n < 3 or m < 3:
        raise ValueError("need d >= 1, n >= 3, m >= 3")
    c = cycle(n)
    coords = {v: (int(v) - 1,) for v in c.vertices}
    for j in range(2, d + 1):
        prod = product(c, path(m))
        south = [pair_label(v, "0") for v in c.vertices]
        north = [pair_label(v, str(m)) for v in c.vertices]
        c = quotient(prod, [south, north], labels=[f"S{j}", f"N{j}"], partial=True)
        new = {}
        for v, cv in coords.items():
            for t in range(1, m):
                new[pair_label(v, str(t))] = cv + (t,)
        new[f"S{j}"] = (0,) * (j - 1) + (0,)
        new[f"N{j}"] = (0,) * (j - 1) + (m,)
        coords = new
    meta = HypercubeMeta(d, n, m, coords, {cv: v for v, cv in coords.items()})
    return c, meta


def round_vertex(d: int, coords) -> frozenset:
    """Round a point of {0..2d}^d to a face of the unit cube.

    The smallest t with at most t coordinates within distance t of the centre
    d decides: those coordinates stay undecided, the others round down or up.
    """
    coords = tuple(coords)
    if len(coords) != d or any(not 0 <= x <= 2 * d for x in coords):
        raise ValueError("coordinates must lie in [0, 2d]")
    t = 0
    while sum(1 for x in coords if d - t <= x <= d + t) > t:
        t += 1
    choices = []
    for x in coords:
        if d - t <= x <= d + t:
            choices.append((0, 1))
        else:
            choices.append((0,) if x < d else (1,))
    return frozenset(itertools.product(*choices))


def subdivision_approx_map(d: int, n: int, m: int) -> SimplicialMap:
    """Blockwise rounding map from H^d_{2dn,2dm} to the subdivision of H^d_{n,m}."""
    src, smeta = hypercube_complex(d, 2 * d * n, 2 * d * m)
    tgt, tmeta = hypercube_complex(d, n, m)
    sd = subdivision(tgt)
    w = 2 * d
    asg = {}
    for v, cv in smeta.coords.items():
        b = [cv[0] // w] + [min(x // w, m - 1) for x in cv[1:]]
        r = [x - w * bi for x, bi in zip(cv, b)]
        image = set()
        for eps in round_vertex(d, r):
            t = [(b[0] + eps[0]) % n] + [bi + e for bi, e in zip(b[1:], eps[1:])]
            image.add(tmeta.vertex_at[canonical_coords(t, m)])
        asg[v] = set_label(image)
    return SimplicialMap(src, sd, asg)


# -- loop contraction ------------------------------------------------------------


@dataclass
class ContractionCertificate:
    carrier: Complex
    witness: WitnessTable
    loop: tuple  # original loop values
    padded: tuple  # loop of length n = witness arity
    stages: list  # h^0 .. h^{2n}, each a tuple of length n
    meta: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "arity": self.witness.arity,
            "loop": list(self.loop),
            "padded": list(self.padded),
            "stages": [list(s) for s in self.stages],
        }


def pad_loop(loop, n: int) -> tuple:
    """Repeat each loop vertex a balanced number of times (at least 3)."""
    k = len(loop)
    if k == 0:
        raise ValueError("empty loop")
    if n < 3 * k:
        raise ValueError("insufficient arity for padding")
    q, r = divmod(n, k)
    out = []
    for i, v in enumerate(loop):
        out += [v] * (q + (1 if i < r else 0))
    return tuple(out)


def _check_loop(a: Complex, loop):
    k = len(loop)
    for i in range(k):
        if not a.is_face({loop[i], loop[(i + 1) % k]}):
            raise ValueError(f"loop is not simplicial at position {i}")


def contract_loop(a: Complex, c: WitnessTable, loop) -> ContractionCertificate:
    """Null-homotopy of ``loop`` through loops x -> c(f(x+j1), ..., f(x+jn))."""
    loop = tuple(str(v) for v in loop)
    n = c.arity
    if not verify_witness(c, cyclic(n)).ok:
        raise ValueError("witness is not an idempotent cyclic polymorphism")
    _check_loop(a, loop)
    f = pad_loop(loop, n)
    eq = [f[x] == f[x - 1] for x in range(n)]

    def even(i):
        # coordinate j (1..n) reads f at x + min(j, i)
        return [[f[(x + min(j, i)) % n] for j in range(1, n + 1)] for x in range(n)]

    def apply(g):
        return tuple(c(*row) for row in g)

    stages = []
    for i in range(n):
        lo, hi = even(i), even(i + 1)
        stages.append(apply(lo))
        stages.append(apply([hi[x] if eq[x] else lo[x] for x in range(n)]))
    stages.append(apply(even(n)))
    return ContractionCertificate(a, c, loop, f, stages)


def verify_contraction(cert: ContractionCertificate):
    """Independent check of a certificate; returns (ok, first violation)."""
    a = cert.carrier
    n = len(cert.padded)
    st = cert.stages
    try:
        expected = pad_loop(cert.loop, n)
    except ValueError as e:
        return False, f"padding: {e}"
    if tuple(cert.padded) != expected:
        return False, "padded loop is not the balanced padding of the loop"
    if len(st) != 2 * n + 1 or any(len(s) != n for s in st):
        return False, "wrong number or length of stages"
    if tuple(st[0]) != tuple(cert.padded):
        return False, "(iii) first stage differs from the padded loop"
    for i, h in enumerate(st):
        for x in range(n):
            if h[x] not in a.index:
                return False, f"stage {i} takes non-vertex value {h[x]}"
            if not a.is_face({h[x], h[(x + 1) % n]}):
                return False, f"(i) stage {i} not simplicial on edge ({x},{(x + 1) % n})"
    for i in range(2 * n):
        h, g = st[i], st[i + 1]
        for x in range(n):
            y = (x + 1) % n
            if not a.is_face({h[x], h[y], g[x], g[y]}):
                return False, f"(ii) step {i}->{i + 1} fails on edge ({x},{y})"
    if len(set(st[-1])) != 1:
        return False, "(iv) last stage is not constant"
    return True, None
