import itertools
import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rlctkit.algebra import Ideal, Polynomial, parse_ideal
from rlctkit.polyhedra import (NewtonPolyhedron, compact_faces, extreme_rays,
                               minimal_monomial_generators, newton_polyhedron, tau_distance)
from oracles import brute_force_facets, lp_tau_distance, monomial_rlct
from strategies import exponents

XY = ("x", "y")


def facet_set(P):
    return {(f.normal, f.offset) for f in P.facets}


def test_minimal_generators_examples():
    assert minimal_monomial_generators([(2, 0), (1, 1), (0, 2), (0, 4)]) == [(0, 2), (1, 1), (2, 0)]
    assert minimal_monomial_generators([(1, 0)]) == [(1, 0)]
    assert minimal_monomial_generators([(1, 2), (2, 1), (1, 1)]) == [(1, 1)]
    assert minimal_monomial_generators([]) == []


@given(st.lists(exponents(3), min_size=1, max_size=8))
def test_minimal_generators_antichain(points):
    mins = minimal_monomial_generators(points)
    for a, b in itertools.permutations(mins, 2):
        assert not all(x <= y for x, y in zip(a, b))
    for p in points:
        assert any(all(x <= y for x, y in zip(m, p)) for m in mins)


def test_newton_examples():
    P = newton_polyhedron(parse_ideal(["x", "y"], XY))
    assert set(P.point_generators) == {(1, 0), (0, 1)}
    assert facet_set(P) == {((1, 0), 0), ((0, 1), 0), ((1, 1), 1)}
    P = newton_polyhedron(parse_ideal(["x*y^2"], XY))
    assert P.point_generators == ((1, 2),)
    assert facet_set(P) == {((1, 0), 1), ((0, 1), 2)}
    P = newton_polyhedron(parse_ideal(["(x+y)^2 + y^4"], XY))
    assert set(P.point_generators) == {(2, 0), (1, 1), (0, 2)}
    assert facet_set(P) == {((1, 0), 0), ((0, 1), 0), ((1, 1), 2)}


def test_zero_ideal_rejected():
    with pytest.raises(ValueError, match="empty Newton polyhedron"):
        newton_polyhedron(Ideal((Polynomial.zero(2),)))


@settings(max_examples=60)
@given(st.integers(2, 4).flatmap(lambda d: st.lists(exponents(d), min_size=1, max_size=5)))
def test_facets_match_brute_force(points):
    d = len(points[0])
    P = NewtonPolyhedron.from_exponents(points)
    assert facet_set(P) == brute_force_facets(P.point_generators, d)


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda d: st.lists(exponents(d), min_size=1, max_size=5)),
       st.randoms(use_true_random=False))
def test_hull_correctness(points, rnd):
    P = NewtonPolyhedron.from_exponents(points)
    for f in P.facets:
        assert all(x >= 0 for x in f.normal)
    for g in P.point_generators:
        vals = [f.value(g) - f.offset for f in P.facets]
        assert min(vals) >= 0
    # random points of conv(G) + orthant satisfy every facet
    for _ in range(10):
        w = [Fraction(rnd.randint(0, 5)) for _ in P.point_generators]
        if not any(w):
            continue
        s = sum(w)
        pt = [sum(wi * g[j] for wi, g in zip(w, P.point_generators)) / s + rnd.randint(0, 2)
              for j in range(P.ambient_dim)]
        assert P.contains(pt)
    # every generator is tight on some facet
    for g in P.point_generators:
        assert any(f.value(g) == f.offset for f in P.facets)


def test_tau_distance_examples():
    dist, face = tau_distance(newton_polyhedron(parse_ideal(["x", "y"], XY)))
    assert (dist.l, dist.theta) == (Fraction(1, 2), 1)
    assert face.dim == 1
    dist, _ = tau_distance(newton_polyhedron(parse_ideal(["x*y^2"], XY)))
    assert (dist.l, dist.theta) == (2, 1)
    dist, face = tau_distance(newton_polyhedron(parse_ideal(["x^2*y^2"], XY)))
    assert (dist.l, dist.theta) == (2, 2)
    assert face.active_generators == ((2, 2),)


def test_tau_distance_origin_in_polyhedron():
    P = NewtonPolyhedron.from_exponents([(0, 0), (1, 0)])
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        dist, _ = tau_distance(P)
    assert dist.l == 0 and dist.theta is None
    assert w


@settings(max_examples=60)
@given(st.integers(1, 4).flatmap(lambda d: st.tuples(st.lists(exponents(d).filter(any), min_size=1, max_size=5),
                                                     exponents(d, 2))))
def test_tau_distance_matches_lp(data):
    points, tau = data
    P = NewtonPolyhedron.from_exponents(points)
    dist, _ = tau_distance(P, tau)
    assert float(dist.l) == pytest.approx(lp_tau_distance(P.point_generators, tau), abs=1e-9)


@given(st.integers(1, 4).flatmap(lambda d: st.tuples(exponents(d).filter(any), exponents(d))))
def test_tau_distance_monomial_formula(data):
    kappa, tau = data
    dist, _ = tau_distance(NewtonPolyhedron.from_exponents([kappa]), tau)
    lam, theta = monomial_rlct(kappa, tau)
    assert 1 / dist.l == lam and dist.theta == theta


@settings(max_examples=30)
@given(st.integers(2, 3).flatmap(lambda d: st.lists(exponents(d, 2).filter(any), min_size=1, max_size=3)))
def test_scaling_by_sum_of_squares(points):
    d = len(points[0])
    gens = tuple(Polynomial(d, {e: 1}) + Polynomial(d, {tuple(2 * a + 1 for a in e): 3}) for e in points)
    I = Ideal(gens)
    ssq = Ideal((sum((g * g for g in gens), Polynomial.zero(d)),))
    dI, _ = tau_distance(newton_polyhedron(I))
    dS, _ = tau_distance(newton_polyhedron(ssq))
    assert dS.l == 2 * dI.l and dS.theta == dI.theta


def test_compact_faces_examples():
    faces = compact_faces(newton_polyhedron(parse_ideal(["x", "y"], XY)))
    assert [(f.dim, f.active_generators) for f in faces] == [
        (0, ((0, 1),)), (0, ((1, 0),)), (1, ((0, 1), (1, 0)))]
    assert faces[2].supporting_normal == (1, 1)
    faces = compact_faces(newton_polyhedron(parse_ideal(["x*y^2"], XY)))
    assert [(f.dim, f.active_generators) for f in faces] == [(0, ((1, 2),))]
    faces = compact_faces(newton_polyhedron(parse_ideal(["x", "y", "z"], ("x", "y", "z"))))
    assert sorted(f.dim for f in faces) == [0, 0, 0, 1, 1, 1, 2]


@settings(max_examples=40)
@given(st.integers(2, 4).flatmap(lambda d: st.lists(exponents(d).filter(any), min_size=1, max_size=5)))
def test_compact_faces_have_positive_witness(points):
    P = NewtonPolyhedron.from_exponents(points)
    for face in compact_faces(P):
        beta = face.supporting_normal
        assert face.compact and all(b > 0 for b in beta)
        vals = [sum(b * a for b, a in zip(beta, g)) for g in P.point_generators]
        m = min(vals)
        assert m == face.offset
        assert {g for g, v in zip(P.point_generators, vals) if v == m} == set(face.active_generators)


def test_extreme_rays_square_cone():
    rays = extreme_rays([(1, 0), (0, 1)])
    assert rays == [(0, 1), (1, 0)]
    rays = extreme_rays([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, -1)])
    assert len(rays) == 4


def test_json_roundtrip():
    P = newton_polyhedron(parse_ideal(["x^2", "x*y^3", "y^5"], XY))
    Q = NewtonPolyhedron.from_json(P.dumps())
    assert Q == P
    assert P.to_json()["facets"][0]["offset"] == "0"


def test_large_case_fixture_is_fast():
    names = ("t", "a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2")
    I = parse_ideal(["b1", "b2", "c1", "c2", "a1*d1", "a1*d2", "a2*d1", "a2*d2"], names)
    P = newton_polyhedron(I)
    dist, _ = tau_distance(P)
    assert (dist.l, dist.theta) == (Fraction(1, 6), 2)
