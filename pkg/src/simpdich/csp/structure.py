"""Relational structures over string-labelled domains."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from ..complex import label_key, sort_labels


class SignatureMismatch(ValueError):
    pass


@dataclass(frozen=True)
class FaceRelation:
    """All tuples of a given arity whose entries lie together in some generator.

    This is the implicit form of "the underlying set is a face" relations; it
    never materializes its tuples unless iterated.
    """

    arity: int
    generators: tuple

    @classmethod
    def of(cls, arity: int, generators: Iterable[Iterable]) -> "FaceRelation":
        gens = {tuple(sorted({str(x) for x in g}, key=label_key)) for g in generators}
        gens.discard(())
        return cls(arity, tuple(sorted(gens, key=lambda g: (len(g), [label_key(x) for x in g]))))

    @cached_property
    def _gensets(self):
        return [frozenset(g) for g in self.generators]

    def __contains__(self, t) -> bool:
        if len(t) != self.arity:
            return False
        s = set(t)
        return any(s <= g for g in self._gensets)

    @cached_property
    def _tuples(self) -> frozenset:
        out = set()
        for g in self.generators:
            out.update(itertools.product(g, repeat=self.arity))
        return frozenset(out)

    def __iter__(self):
        return iter(sorted(self._tuples, key=lambda t: [label_key(x) for x in t]))

    def __len__(self):
        return len(self._tuples)

    def underlying_sets(self) -> set:
        """The sets of entries of member tuples."""
        out = set()
        for g in self.generators:
            for k in range(1, min(self.arity, len(g)) + 1):
                out.update(frozenset(c) for c in itertools.combinations(g, k))
        return out


def tuple_set(arity: int, tuples: Iterable[Iterable]) -> "TableRelation":
    return TableRelation(arity, frozenset(tuple(str(x) for x in t) for t in tuples))


@dataclass(frozen=True)
class TableRelation:
    """An explicitly listed relation."""

    arity: int
    tuples: frozenset

    def __contains__(self, t) -> bool:
        return tuple(t) in self.tuples

    def __iter__(self):
        return iter(sorted(self.tuples, key=lambda t: [label_key(x) for x in t]))

    def __len__(self):
        return len(self.tuples)

    def underlying_sets(self) -> set:
        return {frozenset(t) for t in self.tuples}


Relation = "TableRelation | FaceRelation"


@dataclass(frozen=True)
class RelStructure:
    """A finite structure: a domain plus named relations of fixed arities."""

    domain: tuple
    relations: tuple  # sorted (name, relation) pairs

    @classmethod
    def make(cls, domain: Iterable, relations: Mapping) -> "RelStructure":
        dom = sort_labels(domain)
        rels = []
        for name, rel in relations.items():
            if not isinstance(rel, (TableRelation, FaceRelation)):
                raise TypeError(f"relation {name} must be a TableRelation or FaceRelation")
            rels.append((str(name), rel))
        rels.sort(key=lambda p: p[0])
        s = cls(dom, tuple(rels))
        problems = s.validate()
        if problems:
            raise ValueError("invalid structure: " + "; ".join(problems))
        return s

    @cached_property
    def rel(self) -> dict:
        return dict(self.relations)

    @property
    def signature(self) -> dict:
        return {n: r.arity for n, r in self.relations}

    def validate(self) -> list:
        problems = []
        dom = set(self.domain)
        if len(dom) != len(self.domain):
            problems.append("duplicate domain elements")
        names = [n for n, _ in self.relations]
        if len(set(names)) != len(names):
            problems.append("duplicate relation names")
        for n, r in self.relations:
            if r.arity < 1:
                problems.append(f"relation {n} has arity {r.arity}")
            if isinstance(r, TableRelation):
                for t in r.tuples:
                    if len(t) != r.arity:
                        problems.append(f"tuple {t} of {n} has wrong arity")
                    elif not set(t) <= dom:
                        problems.append(f"tuple {t} of {n} leaves the domain")
            else:
                for g in r.generators:
                    if not set(g) <= dom:
                        problems.append(f"generator {g} of {n} leaves the domain")
        return problems

    def to_json(self) -> dict:
        return {
            "domain": list(self.domain),
            "relations": {n: {"arity": r.arity, "tuples": [list(t) for t in r]} for n, r in self.relations},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "RelStructure":
        if not isinstance(data, Mapping) or "domain" not in data or "relations" not in data:
            raise ValueError("structure JSON needs 'domain' and 'relations'")
        rels = {}
        for name, spec in data["relations"].items():
            arity = int(spec["arity"])
            if "faces" in spec:
                rels[name] = FaceRelation.of(arity, spec["faces"])
            else:
                ts = [tuple(str(x) for x in t) for t in spec.get("tuples", [])]
                for t in ts:
                    if len(t) != arity:
                        raise ValueError(f"tuple {list(t)} of {name} does not have arity {arity}")
                rels[name] = TableRelation(arity, frozenset(ts))
        return cls.make([str(x) for x in data["domain"]], rels)


def check_same_signature(a: RelStructure, b: RelStructure):
    if a.signature != b.signature:
        raise SignatureMismatch(f"signatures differ: {a.signature} vs {b.signature}")
