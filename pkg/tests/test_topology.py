import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from simpdich.complex import cycle, disjoint_union, full_simplex, path, subdivision
from simpdich.fixtures import complexes, flap, rp2
from simpdich.homcomplex import hom_restricted
from simpdich.spheres import hypercube_complex
from simpdich.topology import (
    Contractibility, boundary_matrices, collapse, component_status, connected_components, euler_characteristic,
    integral_homology, smith_normal_form,
)

from oracles import random_complex


def matmul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def oracle_invariants(m):
    if not m or not m[0]:
        return []
    d = sympy_snf(Matrix(m), domain=ZZ)
    return sorted(abs(d[i, i]) for i in range(min(d.shape)) if d[i, i] != 0)


def oracle_homology(c):
    """Betti numbers from ranks and torsion from invariant factors, via sympy."""
    data = boundary_matrices(c)
    dims = c.dimension
    rank = {k: Matrix(m).rank() if m and m[0] else 0 for k, m in data.boundaries.items()}
    betti = [len(data.bases[k]) - rank.get(k, 0) - rank.get(k + 1, 0) for k in range(dims + 1)]
    torsion = [tuple(x for x in oracle_invariants(data.boundaries.get(k + 1, [])) if x > 1) for k in range(dims + 1)]
    return tuple(betti), tuple(torsion)


# -- components --------------------------------------------------------------------


def test_components():
    assert len(connected_components(cycle(5))) == 1
    assert len(connected_components(disjoint_union(path(1), path(1)))) == 2
    h = hom_restricted(path(2), ["0", "1", "2"], {"0": "1"}, cycle(5))
    assert len(connected_components(h.complex)) == 1


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_components_match_graph(seed):
    c = random_complex(random.Random(seed), 7, max_faces=5)
    g = nx.Graph()
    g.add_nodes_from(c.vertices)
    for f in c.maximal_faces:
        g.add_edges_from(zip(f, f[1:]))
    assert sorted(map(sorted, connected_components(c))) == sorted(map(sorted, nx.connected_components(g)))
    assert integral_homology(c).betti[0] == nx.number_connected_components(g)


# -- boundary matrices -------------------------------------------------------------


def test_boundary_of_edge():
    assert boundary_matrices(path(1)).boundaries[1] == [[-1], [1]]


def test_boundary_of_triangle():
    m = boundary_matrices(cycle(3)).boundaries[1]
    assert len(m) == 3 and len(m[0]) == 3
    assert Matrix(m).rank() == 2


def test_boundary_shape_rp2():
    m = boundary_matrices(rp2()).boundaries[2]
    assert (len(m), len(m[0])) == (15, 10)


@pytest.mark.parametrize("name", sorted(complexes()))
def test_boundary_squares_to_zero(name):
    data = boundary_matrices(complexes()[name])
    for k in data.boundaries:
        assert all(x in (-1, 0, 1) for row in data.boundaries[k] for x in row)
        if k + 1 in data.boundaries:
            prod = matmul(data.boundaries[k], data.boundaries[k + 1])
            assert all(x == 0 for row in prod for x in row)


# -- Smith normal form -------------------------------------------------------------


def test_snf_examples():
    assert list(smith_normal_form([[1, 2], [3, 4]]).diagonal) == [1, 2]
    assert list(smith_normal_form([[0, 0], [0, 0]]).diagonal) == []
    assert list(smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]]).diagonal) == [1, 1, 1]


def det(m):
    return Matrix(m).det()


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.integers(0, 10**6))
def test_snf_matches_sympy(rows, cols, seed):
    rng = random.Random(seed)
    m = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(rows)]
    s = smith_normal_form(m)
    diag = list(s.diagonal)
    assert diag == oracle_invariants(m)
    for a, b in zip(diag, diag[1:]):
        assert b % a == 0
    d = matmul(matmul(s.U, m), s.V)
    for i in range(rows):
        for j in range(cols):
            assert d[i][j] == (diag[i] if i == j and i < len(diag) else 0)
    assert abs(det(s.U)) == 1 and abs(det(s.V)) == 1


# -- homology ----------------------------------------------------------------------


def test_homology_examples():
    assert integral_homology(cycle(5)).betti == (1, 1)
    assert integral_homology(cycle(5)).torsion == ((), ())
    h = integral_homology(rp2())
    assert h.betti == (1, 0, 0) and h.torsion == ((), (2,), ())
    assert integral_homology(full_simplex(3)).betti == (1, 0, 0, 0)
    for n in range(0, 5):
        assert integral_homology(path(n)).betti[:2] == (1, 0)[: path(n).dimension + 1]


def test_reduced_homology():
    assert integral_homology(path(3), reduced=True).is_zero()
    assert integral_homology(cycle(4), reduced=True).betti == (0, 1)


@pytest.mark.parametrize("name", sorted(complexes()))
def test_homology_matches_oracle(name):
    c = complexes()[name]
    h = integral_homology(c)
    assert (h.betti, h.torsion) == oracle_homology(c)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6))
def test_homology_random_matches_oracle(seed):
    c = random_complex(random.Random(seed), 6, max_faces=6, max_size=4)
    h = integral_homology(c)
    assert (h.betti, h.torsion) == oracle_homology(c)
    assert sum((-1) ** k * b for k, b in enumerate(h.betti)) == euler_characteristic(c)


@pytest.mark.parametrize("name", sorted(n for n, c in complexes().items() if len(c.vertices) <= 8))
def test_subdivision_keeps_homology(name):
    c = complexes()[name]
    assert integral_homology(subdivision(c)) == integral_homology(c)


@pytest.mark.parametrize("d,n,m", [(1, 5, 3), (2, 3, 3), (2, 4, 3)])
def test_hypercube_is_sphere(d, n, m):
    c, _ = hypercube_complex(d, n, m)
    h = integral_homology(c)
    expected = [1] + [0] * (d - 1) + [1]
    assert list(h.betti[: d + 1]) == expected
    assert not any(h.betti[d + 1:])
    assert not any(h.torsion)


# -- Euler characteristic and collapses -------------------------------------------


def test_euler_characteristic():
    assert euler_characteristic(cycle(5)) == 0
    assert euler_characteristic(full_simplex(2)) == 1
    assert euler_characteristic(rp2()) == 1
    assert rp2().f_vector() == [6, 15, 10]


def test_collapse_examples():
    reduced, done = collapse(full_simplex(2))
    assert done and len(reduced.vertices) == 1
    reduced, done = collapse(cycle(4))
    assert not done and reduced == cycle(4)
    reduced, done = collapse(flap())
    assert done and len(reduced.vertices) == 1


def test_flap_is_acyclic():
    # QR sits in two triangles; the disk is still acyclic
    c = flap()
    cofaces = [set(f) for f in c.faces(2) if {"Q", "R"} <= set(f)]
    assert {"P", "Q", "R"} in cofaces and {"Q", "R", "L"} in cofaces
    assert integral_homology(c, reduced=True).is_zero()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_collapsible_implies_acyclic(seed):
    c = random_complex(random.Random(seed), 6, max_faces=6, max_size=4)
    _, done = collapse(c)
    if done:
        for comp in connected_components(c):
            assert integral_homology(c.induced(comp), reduced=True).is_zero()


def test_component_status():
    u = disjoint_union(full_simplex(2), cycle(3))
    status = {s for _, s in component_status(u)}
    assert status == {Contractibility.COLLAPSIBLE, Contractibility.NOT_CONTRACTIBLE}
