"""Regenerate the reference outputs for the worked examples and rounding tables."""

from __future__ import annotations

import difflib
import json
from importlib import resources
from pathlib import Path

from .complex import cycle, path
from .fixtures import two_edges, rp2
from .homcomplex import Variant, enumerate_homomorphisms, hom_restricted
from .spheres import round_vertex
from .structures import dsat
from .topology import integral_homology


def _short(h, f):
    return "".join(h.assignments[f][v] for v in h.alpha)


def _faces(h):
    faces = [sorted(_short(h, f) for f in face) for face in h.complex.maximal_faces]
    return sorted(faces)


def hom_edge_into_two_edges() -> dict:
    a, b = path(1), two_edges()
    return {
        "hom": _faces(hom_restricted(a, a.vertices, {}, b, Variant.HOM)),
        "hom_sc": _faces(hom_restricted(a, a.vertices, {}, b, Variant.HOM_SC)),
    }


def hom_path_into_pentagon() -> dict:
    a, b, rho = path(2), cycle(5), {"0": "1"}
    out = {"homomorphisms": ["".join(t) for t in enumerate_homomorphisms(a, b, rho)]}
    for variant in Variant:
        out[f"{variant.value}_alpha"] = _faces(hom_restricted(a, ["2"], rho, b, variant))
        out[f"{variant.value}_full"] = _faces(hom_restricted(a, a.vertices, rho, b, variant))
    return out


def _cube_label(s):
    return sorted("".join(map(str, e)) for e in s)


def rounding_square() -> dict:
    return {"rows": [[_cube_label(round_vertex(2, (i, j))) for j in range(5)] for i in range(5)]}


def rounding_cube() -> dict:
    layers = []
    for x3 in range(7):
        layers.append([[len(round_vertex(3, (x1, x2, x3))) for x2 in range(7)] for x1 in range(7)])
    return {"sizes_by_layer": layers, "centre": _cube_label(round_vertex(3, (3, 3, 3)))}


def dsat_tables() -> dict:
    return dsat().to_json()


def rp2_homology() -> dict:
    return integral_homology(rp2()).to_json()


GOLDENS = {
    "hom_edge_into_two_edges": hom_edge_into_two_edges,
    "hom_path_into_pentagon": hom_path_into_pentagon,
    "rounding_square": rounding_square,
    "rounding_cube": rounding_cube,
    "dsat": dsat_tables,
    "rp2_homology": rp2_homology,
}


def render(doc) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def golden_dir() -> Path:
    return Path(str(resources.files("simpdich") / "goldens"))


def write_goldens(directory: Path | None = None):
    d = Path(directory) if directory else golden_dir()
    d.mkdir(parents=True, exist_ok=True)
    for name, fn in GOLDENS.items():
        (d / f"{name}.json").write_text(render(fn()))


def diff_goldens(directory: Path | None = None) -> dict:
    """name -> unified diff text (empty when identical)."""
    d = Path(directory) if directory else golden_dir()
    out = {}
    for name, fn in GOLDENS.items():
        path_ = d / f"{name}.json"
        new = render(fn())
        old = path_.read_text() if path_.exists() else ""
        out[name] = "".join(difflib.unified_diff(old.splitlines(True), new.splitlines(True), str(path_), "regenerated"))
    return out
