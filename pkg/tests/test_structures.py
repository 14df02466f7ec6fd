import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from simpdich.complex import cycle, empty_complex, full_simplex, path
from simpdich.csp import Mode, RelStructure, TableRelation, indicator_instance, solve, tuple_set
from simpdich.fixtures import complexes
from simpdich.homcomplex import enumerate_homomorphisms, hom_sc_restricted
from simpdich.identities import IdentitySystem
from simpdich.structures import (
    UNSAT_SHORTCUT, dsat, hom_sc_structures, idempotent_realization, precolored_to_relational,
    projections_only_check, realization, relational_to_precolored,
)

from oracles import homs, polymorphism_tables, random_complex, simplicial_tables, structure_homs


def instance_over(template, domain, given):
    rels = {name: TableRelation(r.arity, frozenset()) for name, r in template.relations}
    rels.update(given)
    return RelStructure.make(domain, rels)


# -- realization -------------------------------------------------------------------


def test_realization_of_edge():
    r, meta = idempotent_realization(path(1))
    assert meta.face_relations == ("F0", "F1", "F2")
    assert set(r.rel["F0"]) == {("0",), ("1",)}
    assert set(r.rel["F1"]) == {("0", "0"), ("1", "1"), ("0", "1"), ("1", "0")}
    assert len(r.rel["F2"]) == 8
    assert set(r.rel["R_0"]) == {("0",)} and set(r.rel["R_1"]) == {("1",)}


def test_realization_tuple_counts():
    assert len(realization(cycle(3)).rel["F1"]) == 9


def test_realization_of_empty_complex():
    r = realization(empty_complex())
    assert r.domain == ()
    assert all(len(rel) == 0 for _, rel in r.relations)


def test_realization_arities():
    for c in complexes().values():
        r, meta = idempotent_realization(c)
        for n, name in enumerate(meta.face_relations):
            assert r.rel[name].arity == n + 1
        assert len(meta.face_relations) == c.dimension + 2


# -- dSAT --------------------------------------------------------------------------


def test_dsat_tables():
    d = dsat()
    assert len(d.rel["3OR"]) == 7 and ("0", "0", "0") not in d.rel["3OR"]
    assert set(d.rel["NOT"]) == {("0", "1"), ("1", "0")}
    assert set(d.rel["1"]) == {("1",)} and set(d.rel["0"]) == {("0",)}


def test_projections_only():
    assert projections_only_check(dsat(), 3)
    assert projections_only_check(dsat(), 1)
    assert not projections_only_check(realization(path(1)), 3)


def test_projections_only_guard():
    with pytest.raises(ValueError, match="too large for exhaustive check"):
        projections_only_check(realization(cycle(5)), 3)


def test_dsat_polymorphisms_by_enumeration():
    for k in (1, 2, 3):
        tables = list(polymorphism_tables(dsat(), k))
        assert len(tables) == k
        for t in tables:
            assert any(all(v == key[i] for key, v in t.items()) for i in range(k))


# -- reductions --------------------------------------------------------------------


def test_to_relational_counts_match():
    b = path(2)
    inst = precolored_to_relational(b, ["0"], {"0": "0"}, b)
    assert solve(inst, realization(b), mode=Mode.COUNT) == len(enumerate_homomorphisms(b, b, {"0": "0"}))


def test_to_relational_empty_precoloring():
    inst = precolored_to_relational(path(2), [], {}, cycle(4))
    assert all(len(inst.rel[f"R_{x}"]) == 0 for x in cycle(4).vertices)


def test_to_relational_tuple_bound():
    b = cycle(4)
    a = full_simplex(2)
    inst = precolored_to_relational(a, [], {}, b)
    per_face = sum(len(inst.rel[f"F{n}"]) for n in range(b.dimension + 2))
    bound = sum(len(a.maximal_faces) * (len(a.maximal_faces[0]) ** (n + 1)) for n in range(b.dimension + 2))
    assert per_face <= bound


def test_to_relational_errors():
    with pytest.raises(ValueError):
        precolored_to_relational(path(1), ["0"], {"0": "9"}, path(1))
    with pytest.raises(ValueError):
        precolored_to_relational(path(1), ["0", "1"], {"0": "0"}, path(1))


def test_to_precolored_shortcut():
    b = path(1)
    inst = instance_over(realization(b), ["u"], {"R_0": tuple_set(1, [("u",)]), "R_1": tuple_set(1, [("u",)])})
    assert relational_to_precolored(inst, b) is UNSAT_SHORTCUT


def test_to_precolored_no_tuples():
    b = path(1)
    inst = instance_over(realization(b), ["u", "v"], {})
    res = relational_to_precolored(inst, b)
    assert res.alpha_prime == ()
    assert res.complex.maximal_faces == (("u",), ("v",))


def test_to_precolored_signature_mismatch():
    with pytest.raises(ValueError):
        relational_to_precolored(dsat(), path(1))


def count_precolored(res, b):
    if res is UNSAT_SHORTCUT:
        return 0
    return len(homs(res.complex, b, res.rho))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_round_trip_counts(seed):
    rng = random.Random(seed)
    a = random_complex(rng, rng.randint(1, 5), max_size=4)
    b = random_complex(rng, rng.randint(1, 4))
    rho = {v: rng.choice(b.vertices) for v in rng.sample(a.vertices, rng.randint(0, min(2, len(a.vertices))))}
    inst = precolored_to_relational(a, rho, rho, b)
    back = relational_to_precolored(inst, b)
    assert count_precolored(back, b) == len(homs(a, b, rho))
    assert len(structure_homs(inst, realization(b))) == len(homs(a, b, rho))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_random_instance_existence_preserved(seed):
    rng = random.Random(seed)
    b = random_complex(rng, rng.randint(1, 3))
    tmpl = realization(b)
    dom = [f"u{i}" for i in range(rng.randint(1, 4))]
    given_rels = {}
    for name, rel in tmpl.relations:
        k = rng.randint(0, 2)
        given_rels[name] = TableRelation(rel.arity, frozenset(tuple(rng.choice(dom) for _ in range(rel.arity)) for _ in range(k)))
    inst = RelStructure.make(dom, given_rels)
    rel_side = len(structure_homs(inst, tmpl))
    res = relational_to_precolored(inst, b)
    assert (count_precolored(res, b) > 0) == (rel_side > 0)


# -- Hom^SC for structures ---------------------------------------------------------


def test_hom_sc_structures_3or():
    d = dsat()
    inst = instance_over(d, ["x", "y", "z"], {"3OR": tuple_set(3, [("x", "y", "z")])})
    c, values = hom_sc_structures(inst, ["x", "y", "z"], d)
    assert len(c.vertices) == 7
    by_value = {v: k for k, v in values.items()}
    assert not c.is_face([by_value[("0", "0", "1")], by_value[("0", "1", "0")]])
    assert c.is_face([by_value[("1", "0", "1")], by_value[("1", "1", "1")]])


def test_hom_sc_structures_empty_alpha():
    d = dsat()
    inst = instance_over(d, ["x"], {"1": tuple_set(1, [("x",)])})
    c, _ = hom_sc_structures(inst, [], d)
    assert len(c.vertices) == 1


def test_hom_sc_structures_signature_mismatch():
    with pytest.raises(ValueError):
        hom_sc_structures(realization(path(1)), ["0"], dsat())


@pytest.mark.parametrize(
    "a,alpha,rho,b",
    [
        (path(2), ["2"], {"0": "1"}, cycle(5)),
        (path(2), ["0", "1", "2"], {"0": "1"}, cycle(5)),
        (path(1), ["0", "1"], {}, path(2)),
        (cycle(4), ["1", "3"], {"2": "1"}, cycle(4)),
    ],
)
def test_hom_sc_structures_matches_complex_version(a, alpha, rho, b):
    h = hom_sc_restricted(a, alpha, rho, b)
    inst = precolored_to_relational(a, rho, rho, b)
    c, values = hom_sc_structures(inst, alpha, realization(b))
    mine = {tuple(h.assignments[lab][v] for v in h.alpha): lab for lab in h.complex.vertices}
    assert set(values.values()) == set(mine)
    relabel = {lab: mine[values[lab]] for lab in c.vertices}
    assert c.relabel(relabel) == h.complex


# -- polymorphisms of realizations versus simplicial polymorphisms ----------------

SMALL = {k: v for k, v in complexes().items() if len(v.vertices) <= 4}
CASES = [(name, k) for name in sorted(SMALL) for k in (1, 2) if not (name == "simplex3" and k == 2)]
CASES += [("path0", 3), ("path1", 3), ("simplex0", 3), ("simplex1", 3)]


@pytest.mark.parametrize("name,k", CASES)
def test_realization_polymorphisms_are_idempotent_simplicial(name, k):
    c = SMALL[name]
    tmpl = realization(c)
    ii = indicator_instance(tmpl, IdentitySystem(k, ()))
    found = set()
    for h in solve(ii.instance, tmpl, ii.pre, Mode.ALL):
        found.add(tuple(h[ii.class_of[t]] for t in itertools.product(c.vertices, repeat=k)))
    expected = {tuple(t[key] for key in itertools.product(c.vertices, repeat=k)) for t in simplicial_tables(c, k)}
    assert found == expected

