import itertools
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rlctkit.algebra import Ideal, Polynomial, parse_ideal, parse_polynomial
from rlctkit.rlct import (RlctPair, blowup_charts, chain_map, generic_jacobian_rank,
                          jacobian_rank_bound, normalize_monomial_factor, pair_min,
                          pullback_monomial_map, rlct_constant_rank, rlct_hessian_case,
                          rlct_monomial, rlct_monomial_ideal_via_charts, rlct_newton_bound,
                          rlct_prod_disjoint, rlct_region_orthant_chain, rlct_sum_disjoint)
from oracles import monomial_rlct
from strategies import exponents

XY = ("x", "y")
F = Fraction
INF = RlctPair.infinite()


def pr(lam, theta, exact=True):
    return RlctPair(F(lam), theta, exact)


pairs = st.one_of(
    st.builds(lambda a, b, t: RlctPair(F(a, b), t), st.integers(0, 6), st.integers(1, 4), st.integers(1, 4)),
    st.just(INF))


def test_pair_min_examples():
    assert pair_min([pr(1, 1), pr(1, 2)]) == pr(1, 2)
    assert pair_min([INF, pr(2, 1)]) == pr(2, 1)
    assert pair_min([pr(5, 1), pr(6, 2), pr(7, 1)]) == pr(5, 1)
    assert not pair_min([pr(1, 1, False), pr(1, 1), pr(3, 1)]).exact
    with pytest.raises(ValueError):
        pair_min([])


@given(pairs, pairs, pairs)
def test_pair_order_total(a, b, c):
    assert sum([a < b, a == b, a > b]) == 1
    if a <= b and b <= c:
        assert a <= c
    if a <= b and b <= a:
        assert a == b
    assert pair_min([a, b]) == pair_min([b, a]) == min(a, b)
    assert pair_min([pair_min([a, b]), c]) == pair_min([a, pair_min([b, c])])


def test_pair_json_and_str():
    p = pr(F(3, 4), 1, False)
    assert p.to_json() == {"lambda": "3/4", "theta": 1, "exact": False}
    assert RlctPair.from_json(p.dumps()) == p
    assert str(p) == "<= (3/4, 1)"
    assert INF.to_json() == {"lambda": "inf", "theta": None, "exact": True}
    with pytest.raises(ValueError):
        RlctPair(F(1), 0)
    with pytest.raises(ValueError):
        RlctPair(F(-1), 1)


def test_monomial_examples():
    assert rlct_monomial((1, 2)) == pr(F(1, 2), 1)
    assert rlct_monomial((2, 2)) == pr(F(1, 2), 2)
    assert rlct_monomial((1, 2), (1, 0)) == pr(F(1, 2), 1)
    assert rlct_monomial((0, 0)) == INF


@given(st.integers(1, 4).flatmap(lambda d: st.tuples(exponents(d).filter(any), exponents(d))))
def test_monomial_formula(data):
    kappa, tau = data
    lam, theta = monomial_rlct(kappa, tau)
    assert rlct_monomial(kappa, tau) == RlctPair(lam, theta)
    assert rlct_newton_bound(Ideal((Polynomial.monomial(kappa),)), tau) == RlctPair(lam, theta)


def test_newton_bound_examples():
    p = rlct_newton_bound(parse_ideal(["x", "y"], XY))
    assert p == pr(2, 1) and p.exact
    p = rlct_newton_bound(parse_ideal(["(x+y)^2 + y^4"], XY))
    assert p == pr(1, 1) and not p.exact
    assert p > pr(F(3, 4), 1)
    p = rlct_newton_bound(parse_ideal(["x+y"], XY))
    assert p == pr(2, 1) and not p.exact
    p = rlct_newton_bound(parse_ideal(["x^2+y^2"], XY))
    assert p == pr(1, 1) and p.exact
    assert rlct_newton_bound(parse_ideal(["x + 1"], XY)) == INF


def test_sum_product_examples():
    assert rlct_sum_disjoint(pr(1, 1), pr(1, 1)) == pr(2, 1)
    assert rlct_sum_disjoint(pr(4, 1), pr(2, 2)) == pr(6, 2)
    assert rlct_sum_disjoint(pr(F(5, 2), 1), pr(F(3, 2), 2)) == pr(4, 2)
    assert rlct_sum_disjoint(INF, pr(2, 1)) == pr(2, 1)
    assert rlct_prod_disjoint(pr(1, 1), pr(1, 1)) == pr(1, 2) == rlct_monomial((1, 1))
    assert rlct_prod_disjoint(pr(2, 1), pr(2, 1)) == pr(2, 2)
    assert rlct_prod_disjoint(pr(1, 1), pr(2, 1)) == pr(1, 1)
    assert not rlct_sum_disjoint(pr(1, 1, False), pr(1, 1)).exact


def test_pullback_examples():
    I = parse_ideal(["x", "y"], XY)
    J, tau = pullback_monomial_map(I, [[1, 1], [0, 1]])
    assert J.generators == (parse_polynomial("x", XY), parse_polynomial("x*y", XY))
    assert tau == (1, 0)
    Jn, m = normalize_monomial_factor(J)
    assert m == (1, 0)
    assert rlct_newton_bound(J, tau) == pr(2, 1)
    I = parse_ideal(["x*y^2"], XY)
    J, tau = pullback_monomial_map(I, [[1, 1], [0, 1]])
    assert J.generators[0].exponents() == [(3, 2)] and tau == (1, 0)
    assert rlct_monomial((3, 2), tau) == pr(F(1, 2), 1)
    J, tau = pullback_monomial_map(I, [[1, 0], [1, 1]])
    assert J.generators[0].exponents() == [(1, 3)] and tau == (0, 1)
    assert rlct_monomial((1, 3), tau) == pr(F(2, 3), 1)
    assert rlct_monomial_ideal_via_charts(I, blowup_charts(2)) == pr(F(1, 2), 1)
    J, tau = pullback_monomial_map(parse_ideal(["x"], XY), [[1, 0], [0, 1]], (2, 1))
    assert J.generators == (parse_polynomial("x", XY),) and tau == (2, 1)
    with pytest.raises(ValueError):
        pullback_monomial_map(I, [[1, 1], [1, 1]])


@settings(max_examples=50)
@given(st.integers(2, 3).flatmap(lambda d: st.tuples(
    st.lists(exponents(d).filter(any), min_size=1, max_size=3), exponents(d, 2))))
def test_chart_consistency(data):
    gens, tau = data
    d = len(tau)
    I = Ideal(tuple(Polynomial.monomial(g) for g in gens))
    assert rlct_monomial_ideal_via_charts(I, blowup_charts(d), tau) == rlct_newton_bound(I, tau)


def test_chain_examples():
    assert rlct_region_orthant_chain((1, 2), (0, 1)) == pr(F(2, 3), 1)
    assert rlct_region_orthant_chain((1, 2), (1, 0)) == pr(F(1, 2), 1)
    assert rlct_region_orthant_chain((1, 0), (0, 1)) == pr(1, 1)
    assert chain_map(2, (0, 1)) == [[1, 0], [1, 1]]


def test_hessian_examples():
    assert rlct_hessian_case(parse_polynomial("x^2+y^2", XY)) == pr(1, 1)
    assert rlct_hessian_case(parse_polynomial("x^2-y^2", XY)) is None
    assert rlct_hessian_case(parse_polynomial("x^2", XY)) is None
    assert rlct_hessian_case(parse_polynomial("x", XY)) is None
    assert rlct_hessian_case(parse_polynomial("-x^2-3*y^2+x*y+x^3", XY)) == pr(1, 1)


def test_jacobian_examples():
    assert jacobian_rank_bound(parse_ideal(["x", "y"], XY)) == pr(2, 1)
    b = jacobian_rank_bound(parse_ideal(["x^2", "y^2"], XY))
    assert b == pr(1, 1) and not b.exact
    # (1, 1) lies inside the facet x + y >= 2, so theta is 1 (the pole of
    # int (x^4 + y^4)^(-z/2) at z = 1 is simple)
    assert b >= rlct_newton_bound(parse_ideal(["x^2", "y^2"], XY)) == pr(1, 1)
    assert jacobian_rank_bound(parse_ideal(["x+y^2"], XY)) == pr(F(3, 2), 1)


def test_constant_rank():
    assert rlct_constant_rank(parse_ideal(["x+y^2"], XY)) == pr(1, 1)
    assert rlct_constant_rank(parse_ideal(["x", "y"], XY)) == pr(2, 1)
    # rank drops at the origin
    assert rlct_constant_rank(parse_ideal(["x*y"], XY)) is None
    assert rlct_constant_rank(parse_ideal(["x", "x*y"], XY)) is None
    assert generic_jacobian_rank(parse_ideal(["x*y", "x^2"], XY)) == 2


@settings(max_examples=30)
@given(st.integers(2, 3).flatmap(lambda d: st.tuples(
    st.lists(exponents(d).filter(any), min_size=1, max_size=3),
    st.permutations(range(d)), st.lists(st.integers(1, 3), min_size=d, max_size=d))))
def test_permutation_and_scaling_invariance(data):
    gens, perm, scale = data
    d = len(perm)
    I = Ideal(tuple(Polynomial.monomial(g, 1) + Polynomial.monomial(tuple(2 * a for a in g), 2) for g in gens))
    J = Ideal(tuple(Polynomial(d, {tuple(e[perm[i]] for i in range(d)): c for e, c in g.items()})
                    for g in I.generators))
    # positive rescaling w_i -> s_i w_i only changes coefficients
    K = Ideal(tuple(Polynomial(d, {e: c * math.prod(s ** a for s, a in zip(scale, e)) for e, c in g.items()})
                    for g in I.generators))
    a = rlct_newton_bound(I, check_nondegeneracy=False)
    assert a == rlct_newton_bound(J, check_nondegeneracy=False) == rlct_newton_bound(K, check_nondegeneracy=False)


def test_bound_soundness_on_fixtures():
    # known exact values: (x+y)^2+y^4 -> (3/4, 1); x+y -> (1, 1) as a smooth hypersurface
    cases = [(["(x+y)^2 + y^4"], pr(F(3, 4), 1)), (["x+y"], pr(1, 1)), (["x^2+y^2"], pr(1, 1)),
             (["x", "y"], pr(2, 1)), (["x*y"], pr(1, 2))]
    for gens, truth in cases:
        bound = rlct_newton_bound(parse_ideal(gens, XY))
        assert bound >= truth
        if bound.exact:
            assert bound == truth
