"""Named complexes and structures used as examples and test inputs."""

from __future__ import annotations

import itertools

from .complex import Complex, cycle, full_simplex, path
from .csp import RelStructure, TableRelation
from .structures import dsat


def rp2() -> Complex:
    """Six-vertex triangulation of the real projective plane."""
    faces = "123 134 145 156 162 235 346 452 563 624".split()
    return Complex.from_faces([list(f) for f in faces])


def flap() -> Complex:
    """A triangulated disk whose bottom vertex has a hollow-triangle link closure:
    contractible, yet without Taylor polymorphisms."""
    return Complex.from_faces([list(f) for f in "BPR BPL PQR PQL QRL".split()])


def three_tetrahedra() -> Complex:
    """Three tetrahedra glued cyclically along edges; homotopic to a circle."""
    return Complex.from_faces(
        [["a1", "a2", "b1", "b2"], ["b1", "b2", "c1", "c2"], ["a1", "a2", "c1", "c2"]]
    )


def two_edges() -> Complex:
    """Two edges xy and yz."""
    return Complex.from_faces([["x", "y"], ["y", "z"]])


def _table(arity, tuples):
    return TableRelation(arity, frozenset(tuple(str(x) for x in t) for t in tuples))


def wide_not_or() -> RelStructure:
    """Four-element structure interpreting dSAT with {1,2} as false and {3,4} as true."""
    dom = ["1", "2", "3", "4"]
    low = {"1", "2"}
    rels = {f"R{x}": _table(1, [(x,)]) for x in dom}
    rels["wideNOT"] = _table(2, [(x, y) for x in dom for y in dom if (x in low) == (y not in low)])
    rels["wideOR"] = _table(3, [t for t in itertools.product(dom, repeat=3) if not set(t) <= low])
    return RelStructure.make(dom, rels)


def nae() -> RelStructure:
    return RelStructure.make(["0", "1"], {"NAE": _table(3, [t for t in itertools.product("01", repeat=3) if len(set(t)) > 1])})


def controlled_3sat() -> RelStructure:
    """The empty relation, N = {010, 001, 111} and 3-clause disjunction."""
    return RelStructure.make(
        ["0", "1"],
        {
            "EMPTY": _table(1, []),
            "N": _table(3, [("0", "1", "0"), ("0", "0", "1"), ("1", "1", "1")]),
            "3OR": _table(3, [t for t in itertools.product("01", repeat=3) if t != ("0", "0", "0")]),
        },
    )


def one_in_three() -> RelStructure:
    return RelStructure.make(["0", "1"], {"1IN3": _table(3, [("0", "0", "1"), ("0", "1", "0"), ("1", "0", "0")])})


def complexes() -> dict:
    out = {}
    for n in range(0, 5):
        out[f"path{n}"] = path(n)
    for n in (3, 4, 5):
        out[f"cycle{n}"] = cycle(n)
    for k in range(0, 4):
        out[f"simplex{k}"] = full_simplex(k)
    out["rp2"] = rp2()
    out["flap"] = flap()
    out["three_tetrahedra"] = three_tetrahedra()
    out["two_edges"] = two_edges()
    return out


def structures() -> dict:
    return {
        "dsat": dsat(),
        "wide_not_or": wide_not_or(),
        "nae": nae(),
        "controlled_3sat": controlled_3sat(),
        "one_in_three": one_in_three(),
    }
