"""Command line interface.

Exit codes: 0 success, 1 negative answer, 2 usage or input error,
3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .classify import DEFAULT_MAX_VERTICES, classify
from .complex import Complex
from .csp import RelStructure
from .goldens import diff_goldens, write_goldens
from .homcomplex import Variant, enumerate_homomorphisms, hom_restricted
from .identities import (
    IdentityParseError, InternalInconsistency, WitnessTable, builtin, parse_identity_system, search_witness,
)
from .spheres import contract_loop, hypercube_complex, verify_contraction
from .structures import UNSAT_SHORTCUT, precolored_to_relational, relational_to_precolored
from .topology import integral_homology


class UsageError(Exception):
    pass


def _read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e}")


def load_carrier(path):
    data = _read_json(path)
    if isinstance(data, dict) and "maximal_faces" in data:
        return Complex.from_json(data)
    if isinstance(data, dict) and "relations" in data:
        return RelStructure.from_json(data)
    raise UsageError(f"{path} is neither a complex nor a structure")


def load_complex(path) -> Complex:
    c = load_carrier(path)
    if not isinstance(c, Complex):
        raise UsageError(f"{path} is not a complex")
    return c


def _pairs(text):
    out = {}
    if not text:
        return out
    for item in text.split(","):
        if "=" not in item:
            raise UsageError(f"expected key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _list(text):
    return [x.strip() for x in text.split(",") if x.strip()] if text else []


def _emit(doc):
    print(json.dumps(doc, indent=2))


# -- subcommands ----------------------------------------------------------------------


def cmd_classify(args):
    b = load_complex(args.file)
    rep = classify(b, force_search=args.force_search, max_vertices=args.max_vertices)
    _emit(rep.to_json())
    return 0


def _hom(args, variant):
    a, b = load_complex(args.source), load_complex(args.target)
    alpha = _list(args.alpha) if args.alpha is not None else list(a.vertices)
    res = hom_restricted(a, alpha, _pairs(args.rho), b, variant)
    doc = res.to_json()
    if args.list_maps:
        maps = enumerate_homomorphisms(a, b, _pairs(args.rho), jobs=args.jobs)
        doc["homomorphisms"] = [dict(zip(a.vertices, m)) for m in maps]
    _emit(doc)
    return 0


def cmd_homology(args):
    c = load_complex(args.file)
    _emit(integral_homology(c, reduced=args.reduced).to_json())
    return 0


def _system(args):
    if args.system:
        return builtin(args.system)
    text = args.identities
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    return parse_identity_system(text)


def cmd_search(args):
    carrier = load_carrier(args.file)
    res = search_witness(carrier, _system(args))
    if not res.found:
        print("no witness (exhausted)")
        return 1
    _emit(res.witness.to_json())
    return 0


def cmd_reduce(args):
    b = load_complex(args.target)
    if args.direction == "to-relational":
        a = load_complex(args.source)
        rho = _pairs(args.rho)
        _emit(precolored_to_relational(a, rho.keys(), rho, b).to_json())
        return 0
    inst = load_carrier(args.source)
    if not isinstance(inst, RelStructure):
        raise UsageError("to-precolored expects a structure")
    res = relational_to_precolored(inst, b)
    if res is UNSAT_SHORTCUT:
        print("UNSAT_SHORTCUT")
        return 1
    _emit({"complex": res.complex.to_json(), "alpha_prime": list(res.alpha_prime), "rho": res.rho})
    return 0


def cmd_contract(args):
    a = load_complex(args.carrier)
    w = WitnessTable.from_json(a, _read_json(args.witness))
    loop = _read_json(args.loop)
    if isinstance(loop, dict):
        loop = loop["loop"]
    cert = contract_loop(a, w, loop)
    ok, why = verify_contraction(cert)
    if not ok:
        raise InternalInconsistency(f"generated certificate fails verification: {why}")
    _emit(cert.to_json())
    return 0


def cmd_hypercube(args):
    c, meta = hypercube_complex(args.d, args.n, args.m)
    doc = c.to_json()
    doc["coordinates"] = {v: list(meta.coords[v]) for v in c.vertices}
    _emit(doc)
    return 0


def cmd_examples(args):
    if args.update:
        write_goldens(args.dir)
        print("goldens written")
        return 0
    diffs = diff_goldens(args.dir)
    bad = 0
    for name, d in diffs.items():
        if d:
            bad += 1
            sys.stdout.write(d)
        print(f"{name}: {'DIFF' if d else 'ok'}")
    return 1 if bad else 0


def build_parser():
    p = argparse.ArgumentParser(prog="simpdich", description=__doc__.splitlines()[0])
    p.add_argument("--jobs", type=int, default=int(os.environ.get("SD_JOBS", "1")),
                   help="worker processes for exhaustive enumeration (default: $SD_JOBS or 1)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", help="decide the dichotomy side of a complex")
    s.add_argument("file")
    s.add_argument("--force-search", action="store_true", help="run the Siggers search even when homology decides")
    s.add_argument("--max-vertices", type=int, default=DEFAULT_MAX_VERTICES)
    s.set_defaults(fn=cmd_classify)

    for name, variant in (("hom", Variant.HOM), ("homsc", Variant.HOM_SC)):
        s = sub.add_parser(name, help=f"{variant.value} complex of maps source -> target")
        s.add_argument("source")
        s.add_argument("target")
        s.add_argument("--alpha", help="comma separated source vertices (default: all)")
        s.add_argument("--rho", help="precoloring as v=x,w=y")
        s.add_argument("--list-maps", action="store_true", help="also list all homomorphisms")
        s.set_defaults(fn=lambda a, v=variant: _hom(a, v))

    s = sub.add_parser("homology", help="integral homology of a complex")
    s.add_argument("file")
    s.add_argument("--reduced", action="store_true")
    s.set_defaults(fn=cmd_homology)

    s = sub.add_parser("search", help="search a polymorphism satisfying identities")
    s.add_argument("file")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--system", help="builtin name, e.g. majority, siggers4, cyclic3, fs2, nu4")
    g.add_argument("--identities", help="identity text, or @file")
    s.set_defaults(fn=cmd_search)

    s = sub.add_parser("reduce", help="translate between precolored complexes and structures")
    s.add_argument("direction", choices=["to-relational", "to-precolored"])
    s.add_argument("source", help="complex (to-relational) or structure (to-precolored)")
    s.add_argument("target", help="target complex b")
    s.add_argument("--rho", help="precoloring as v=x,w=y (to-relational)")
    s.set_defaults(fn=cmd_reduce)

    s = sub.add_parser("contract-loop", help="contraction certificate for a loop")
    s.add_argument("carrier")
    s.add_argument("witness", help='table JSON, or {"arity": k, "rule": "min"}')
    s.add_argument("loop", help="JSON list of vertices")
    s.set_defaults(fn=cmd_contract)

    s = sub.add_parser("hypercube", help="cubical sphere complex H^d_{n,m}")
    s.add_argument("d", type=int)
    s.add_argument("n", type=int)
    s.add_argument("m", type=int)
    s.set_defaults(fn=cmd_hypercube)

    s = sub.add_parser("examples", help="regenerate the worked examples and diff against goldens")
    s.add_argument("--dir", type=Path, default=None)
    s.add_argument("--update", action="store_true", help="rewrite the golden files")
    s.set_defaults(fn=cmd_examples)
    return p


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args)
    except InternalInconsistency as e:
        print(f"internal inconsistency: {e}", file=sys.stderr)
        return 3
    except (UsageError, IdentityParseError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
