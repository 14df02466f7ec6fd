"""Decide on which side of the dichotomy a complex lies."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum

from .complex import Complex
from .identities import (
    Identity, IdentitySystem, InternalInconsistency, WitnessTable, cyclic, fully_symmetric, majority,
    near_unanimity, search_witness, siggers4, verify_witness,
)
from .topology import connected_components, integral_homology

DEFAULT_MAX_VERTICES = 6


class Verdict(Enum):
    CONTRACTIBLE_SIDE = "CONTRACTIBLE_SIDE"
    UNIVERSAL_SIDE = "UNIVERSAL_SIDE"


@dataclass(frozen=True)
class HomologyObstruction:
    component: tuple
    dimension: int
    group: str

    def to_json(self):
        return {"kind": "homology", "component": list(self.component), "dimension": self.dimension, "group": self.group}


@dataclass(frozen=True)
class Exhaustion:
    system: str
    arity: int

    def to_json(self):
        return {"kind": "exhausted", "system": self.system, "arity": self.arity}


@dataclass
class ClassificationReport:
    verdict: Verdict
    witness: WitnessTable | None = None
    witness_system: str | None = None
    refutation: object = None
    cross_checks: list = field(default_factory=list)

    def to_json(self) -> dict:
        out = {"verdict": self.verdict.value}
        if self.witness is not None:
            out["witness"] = {"system": self.witness_system, **self.witness.to_json()}
        if self.refutation is not None:
            out["refutation"] = self.refutation.to_json()
        out["cross_checks"] = [{"name": n, "pass": ok} for n, ok in self.cross_checks]
        return out


def _group_name(free: int, torsion) -> str:
    parts = ["Z"] * free + [f"Z/{t}" for t in torsion]
    return " + ".join(parts) if parts else "0"


def homology_obstructions(b: Complex) -> list:
    """Nonzero reduced homology groups, per connected component."""
    out = []
    for comp in connected_components(b):
        h = integral_homology(b.induced(comp), reduced=True)
        for k, (free, tors) in enumerate(zip(h.betti, h.torsion)):
            if free or tors:
                out.append(HomologyObstruction(comp, k, _group_name(free, tors)))
    return out


def classify(b: Complex, force_search: bool = False, max_vertices: int = DEFAULT_MAX_VERTICES) -> ClassificationReport:
    """Homology obstruction, then quick witness probes, then the 4-ary Siggers search.

    With ``force_search`` the search runs even when homology already decides,
    and the two answers are cross-checked.
    """
    if len(b.vertices) > max_vertices:
        raise ValueError(f"complex has {len(b.vertices)} vertices, above the bound of {max_vertices}")
    checks = []
    obstructions = homology_obstructions(b)
    checks.append(("homology", not obstructions))
    if obstructions and not force_search:
        return ClassificationReport(Verdict.UNIVERSAL_SIDE, refutation=obstructions[0], cross_checks=checks)

    found = None
    for name, system in (("majority", majority()), ("cyclic2", cyclic(2)), ("cyclic3", cyclic(3))):
        res = search_witness(b, system)
        checks.append((f"probe:{name}", res.found))
        if res.found and found is None:
            found = (name, system, res.witness)
            break
    sig = search_witness(b, siggers4())
    checks.append(("siggers4", sig.found))
    if found is not None and not sig.found:
        raise InternalInconsistency(f"{found[0]} witness exists but the 4-ary Siggers search is exhausted")
    if sig.found and found is None:
        found = ("siggers4", siggers4(), sig.witness)
    if found is not None:
        if obstructions:
            raise InternalInconsistency(
                f"{found[0]} witness found although homology is nonzero: {obstructions[0]}"
            )
        name, system, w = found
        if not verify_witness(w, system).ok:
            raise InternalInconsistency("witness failed re-verification")
        checks.append(("witness re-verified", True))
        return ClassificationReport(Verdict.CONTRACTIBLE_SIDE, w, name, None, checks)
    refutation = obstructions[0] if obstructions else Exhaustion("siggers4", 4)
    return ClassificationReport(Verdict.UNIVERSAL_SIDE, refutation=refutation, cross_checks=checks)


# -- choice functions --------------------------------------------------------------


def majority_rule(k: int) -> IdentitySystem:
    """f returns x whenever strictly more than half of the k agents propose x."""
    if k < 3:
        raise ValueError("majority needs at least 3 agents")
    ids = []
    for size in range(k // 2 + 1, k):
        for s in itertools.combinations(range(k), size):
            lhs = tuple("x" if i in s else "y" for i in range(k))
            ids.append(Identity(lhs, ("x",) * k))
    return IdentitySystem(k, tuple(ids), True, "f", f"majority_rule({k})")


CHOICE_CONDITIONS = {
    "anonymity": fully_symmetric,
    "majority": majority_rule,
    "near_unanimity": near_unanimity,
}


def choice_function(a: Complex, agents: int, condition: str):
    """Search a unanimous choice function with the homomorphism property for
    ``agents`` proposals that also satisfies ``condition``."""
    if condition not in CHOICE_CONDITIONS:
        raise KeyError(f"unknown condition {condition!r}; choose from {sorted(CHOICE_CONDITIONS)}")
    return search_witness(a, CHOICE_CONDITIONS[condition](agents))
