from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import naive_member, naive_power_points, primary_ideals
from mlab import (
    NotPrimary,
    build_polyhedron,
    covolume,
    facet_lattice_volume,
    ideal,
    integral_closure_power,
    maximal_ideal,
    polyhedra_equal,
    power,
    unit_ideal,
)
from mlab.errors import UnboundedFacet
from mlab.monomials import product
from mlab.newton import minkowski_covolume_value, mixed_covolume


def bounded_data(I):
    P = build_polyhedron(I)
    return [(f.normal, f.offset) for f in P.bounded_facets()]


def test_polyhedron_goldens():
    assert bounded_data(ideal(2, [(2, 0), (0, 3)])) == [((3, 2), 6)]
    assert bounded_data(ideal(2, [(2, 0), (1, 1), (0, 3)])) == [((1, 1), 2), ((2, 1), 3)]
    assert bounded_data(maximal_ideal(2)) == [((1, 1), 1)]
    assert bounded_data(maximal_ideal(3)) == [((1, 1, 1), 1)]
    assert bounded_data(maximal_ideal(4)) == [((1, 1, 1, 1), 1)]


def test_vertices_are_generators():
    I = ideal(2, [(2, 0), (1, 1), (0, 3), (3, 3)])
    P = build_polyhedron(I)
    assert set(P.vertices) == {(2, 0), (1, 1), (0, 3)}
    # (1,1) is a minimal generator of m*J but not a vertex of the sum
    mJ = product(maximal_ideal(2), ideal(2, [(2, 0), (0, 3)]))
    assert set(build_polyhedron(mJ).vertices) == {(3, 0), (2, 1), (0, 4)}


def test_unit_polyhedron():
    P = build_polyhedron(unit_ideal(2))
    assert P.vertices == ((0, 0),)
    assert P.bounded_facets() == ()
    assert covolume(unit_ideal(2)) == 0


def test_covolume_goldens():
    assert covolume(ideal(2, [(2, 0), (0, 3)])) == 3
    assert covolume(ideal(2, [(2, 0), (1, 1), (0, 3)])) == Fraction(5, 2)
    assert covolume(maximal_ideal(3)) == Fraction(1, 6)
    assert covolume(power(maximal_ideal(3), 2)) == Fraction(8, 6)
    assert covolume(ideal(1, [(4,)])) == 4


def test_covolume_requires_primary():
    with pytest.raises(NotPrimary):
        covolume(ideal(2, [(2, 0)]))


def test_facet_lattice_volumes():
    K = ideal(2, [(2, 0), (1, 1), (0, 3)])
    vols = [facet_lattice_volume(f) for f in build_polyhedron(K).bounded_facets()]
    assert vols == [1, 1]
    m2 = power(maximal_ideal(2), 2)
    assert [facet_lattice_volume(f) for f in build_polyhedron(m2).bounded_facets()] == [2]
    m3 = maximal_ideal(3)
    assert [facet_lattice_volume(f) for f in build_polyhedron(m3).bounded_facets()] == [1]
    m4 = maximal_ideal(4)
    assert [facet_lattice_volume(f) for f in build_polyhedron(m4).bounded_facets()] == [1]
    with pytest.raises(UnboundedFacet):
        facet_lattice_volume(build_polyhedron(m2).facets[-1])


@settings(max_examples=40, deadline=None)
@given(primary_ideals(dim=2))
def test_generators_inside_polyhedron_d2(I):
    P = build_polyhedron(I)
    for g in I.gens:
        assert P.contains(g)
    for f in P.bounded_facets():
        assert all(x > 0 for x in f.normal)
        assert min(sum(w * g for w, g in zip(f.normal, p)) for p in I.gens) == f.offset


@settings(max_examples=20, deadline=None)
@given(primary_ideals(dim=3, max_exp=3))
def test_generators_inside_polyhedron_d3(I):
    P = build_polyhedron(I)
    for g in I.gens:
        assert P.contains(g)
    # every vertex is a generator and saturates d independent facets
    assert set(P.vertices) <= set(I.gens)


def test_closure_goldens():
    assert integral_closure_power(ideal(2, [(3, 0), (0, 3)]), 1) == ideal(
        2, [(3, 0), (2, 1), (1, 2), (0, 3)]
    )
    K = ideal(2, [(2, 0), (1, 1), (0, 3)])
    assert integral_closure_power(K, 1) == K
    assert integral_closure_power(K, 0) == unit_ideal(2)
    J = ideal(2, [(2, 0), (0, 3)])
    assert integral_closure_power(J, 1) == ideal(2, [(2, 0), (1, 2), (0, 3)])


@settings(max_examples=25, deadline=None)
@given(primary_ideals(dim=2, max_exp=3), st.integers(min_value=1, max_value=3))
def test_closure_contains_power_and_scales(I, n):
    C = integral_closure_power(I, n)
    for p in naive_power_points(I.gens, n):
        assert naive_member(p, C.gens)
    # closure of the closure at the same level adds nothing
    assert integral_closure_power(C, 1) == C
    # polyhedron of the closure generators matches the scaled facets
    scaled = [(f.normal, n * f.offset) for f in build_polyhedron(I).bounded_facets()]
    assert [(f.normal, f.offset) for f in build_polyhedron(C).bounded_facets()] == scaled


def test_polyhedra_equal():
    I = ideal(2, [(2, 0), (0, 2), (1, 1)])
    m2 = power(maximal_ideal(2), 2)
    assert polyhedra_equal(I, m2)
    assert not polyhedra_equal(I, maximal_ideal(2))


@settings(max_examples=20, deadline=None)
@given(primary_ideals(dim=2, max_exp=3), primary_ideals(dim=2, max_exp=3))
def test_minkowski_value_matches_product_ideal(I, J):
    assert minkowski_covolume_value((I, J), (1, 1)) == covolume(product(I, J))
    assert minkowski_covolume_value((I, J), (2, 1)) == covolume(product(power(I, 2), J))


@settings(max_examples=10, deadline=None)
@given(primary_ideals(dim=3, max_exp=2, max_extras=2), primary_ideals(dim=3, max_exp=2, max_extras=2))
def test_minkowski_value_matches_product_ideal_d3(I, J):
    assert minkowski_covolume_value((I, J), (1, 1)) == covolume(product(I, J))


def test_mixed_covolume_golden():
    m = maximal_ideal(2)
    J = ideal(2, [(2, 0), (0, 3)])
    co = mixed_covolume((m, J))
    assert co == {
        (2, 0): Fraction(1, 2),
        (1, 1): Fraction(2),
        (0, 2): Fraction(3),
    }
