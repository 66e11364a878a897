import json
import math
import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rlctkit.algebra import parse_polynomial
from rlctkit.models import (CASE_STUDY_COUNTS, PRINTED_MLE, PRINTED_Q, REFERENCE_LOG_BIC,
                            REFERENCE_LOG_RLCT, ContingencyTable, DiscreteModel, NotInModelError,
                            UnsupportedBoundaryError, binomial_model, classify_332, em_fit,
                            engineered_case13_model, fiber_ideal, kl_divergence,
                            learning_coefficient_at, mixture_332_model, mixture_q,
                            model_from_json, read_table_csv, s22_point, score_bic, score_rlct)
from rlctkit.numeric import Region
from rlctkit.rlct import RlctPair, jacobian_rank_bound
from oracles import independence_fit

F = Fraction


def test_model_validation():
    w = parse_polynomial("w", ("w",))
    with pytest.raises(ValueError, match="sum"):
        DiscreteModel((w, w), Region.box(1))
    with pytest.raises(ValueError):
        DiscreteModel((2 * w, 1 - 2 * w), Region.box(1))
    m = binomial_model()
    assert m.k == 2 and m.d == 1 and m.evaluate([F(1, 4)]) == (F(1, 4), F(3, 4))


def test_model_json_roundtrip():
    m = mixture_332_model()
    back = model_from_json(m.dumps())
    assert back.p == m.p and back.domain == m.domain and back.names() == m.names()


def test_table_io(tmp_path):
    path = tmp_path / "t.csv"
    path.write_text("43,16,3\n6,11,10\n9,18,16\n")
    t = read_table_csv(path)
    assert t.N == 132 and t.shape == (3, 3)
    assert t == ContingencyTable.from_matrix(CASE_STUDY_COUNTS)
    with pytest.raises(ValueError):
        ContingencyTable((0, 0, 0))
    with pytest.raises(ValueError):
        ContingencyTable((1, -1, 3))


def test_kl_divergence_example():
    m = binomial_model()
    assert kl_divergence([0.5, 0.5], [0.75], m) == pytest.approx(0.14384103622589042, rel=1e-12)
    assert kl_divergence([0.5, 0.5], [0.5], m) == 0.0
    with pytest.raises(ValueError):
        kl_divergence([1.0, 0.0], [0.5], m)
    with pytest.raises(ValueError):
        kl_divergence([0.5, 0.5], [1.0], m)


def test_fiber_ideal_keeps_all_generators():
    m = binomial_model()
    I = fiber_ideal(m, [F(1, 2), F(1, 2)])
    assert len(I.generators) == 2
    with pytest.raises(ValueError):
        fiber_ideal(m, [F(1, 2), F(1, 3)])


def test_binomial_learning_coefficient():
    res = learning_coefficient_at(binomial_model(), [F(1, 2), F(1, 2)], [F(1, 2)])
    assert (res.pair.lam, res.pair.theta, res.pair.exact) == (F(1, 2), 1, True)
    with pytest.raises(ValueError, match="fiber"):
        learning_coefficient_at(binomial_model(), [F(1, 2), F(1, 2)], [F(1, 3)])


def test_binomial_boundary_point_is_monomial_orthant():
    res = learning_coefficient_at(binomial_model(), [F(0), F(1)], [F(0)])
    assert res.method == "monomial-orthant"
    assert (res.pair.lam, res.pair.theta) == (F(1, 2), 1)


def test_engineered_model_goes_through_newton():
    m = engineered_case13_model()
    q = [F(1, 9)] * 9
    res = learning_coefficient_at(m, q, [0] * 8)
    assert res.method == "newton"
    assert res.ideal_pair == RlctPair(F(6), 2)
    assert res.pair == RlctPair(F(3), 2)


def test_mixture_mle_learning_coefficient():
    m = mixture_332_model()
    q = m.evaluate(PRINTED_MLE)
    res = learning_coefficient_at(m, q, PRINTED_MLE)
    assert res.method == "constant-rank"
    assert res.pair == RlctPair(F(7, 2), 1)
    assert classify_332(q)[1] == res.pair


def test_s22_boundary_is_unsupported():
    m = mixture_332_model()
    point = s22_point()
    q = m.evaluate(point)
    assert classify_332(q)[0].tag == "S22"
    with pytest.raises(UnsupportedBoundaryError):
        learning_coefficient_at(m, q, point)


def test_jacobian_corollary_bound():
    # the Jacobian bound dominates the exact value, and lambda never exceeds d/2
    m = mixture_332_model()
    q = m.evaluate(PRINTED_MLE)
    res = learning_coefficient_at(m, q, PRINTED_MLE)
    ideal = fiber_ideal(m, q).translate(PRINTED_MLE)
    J = jacobian_rank_bound(ideal)
    assert res.ideal_pair.lam <= J.lam
    assert 2 * res.pair.lam <= m.d


def test_classify_examples():
    assert classify_332(PRINTED_Q)[0].tag == "S2_generic"
    r = np.array([0.2, 0.3, 0.5])
    assert classify_332(np.outer(r, r))[0].tag == "S1"
    Q = np.array([[0, 1, 1], [1, 1, 1], [1, 1, 1]], dtype=float)
    Q = Q / Q.sum()
    # rank 2 with a single zero
    assert classify_332(Q)[0].tag == "S21_only"
    with pytest.raises(NotInModelError):
        classify_332(np.eye(3) / 3)
    with pytest.raises(ValueError):
        classify_332(np.ones((2, 2)) / 4)
    assert classify_332(np.ravel(PRINTED_Q))[0].tag == "S2_generic"


@given(st.permutations(range(3)), st.permutations(range(3)), st.booleans())
@settings(max_examples=40)
def test_classify_invariant_under_permutation_and_transpose(rows, cols, transpose):
    base = {
        "S2_generic": np.array([[float(x) for x in row] for row in PRINTED_Q]),
        "S22": np.array([[float(x) for x in row] for row in mixture_q(s22_point()).tolist()]),
        "S21_only": np.array([[0, 1, 1], [1, 1, 1], [1, 1, 1]]) / 8.0,
        "S1": np.outer([0.2, 0.3, 0.5], [0.1, 0.6, 0.3]),
    }
    for tag, Q in base.items():
        P = Q[np.ix_(rows, cols)]
        if transpose:
            P = P.T
        assert classify_332(P)[0].tag == tag


def test_em_monotone_history():
    fit = em_fit(ContingencyTable.from_matrix(CASE_STUDY_COUNTS), restarts=4, seed=7,
                 record_history=True)
    h = np.array(fit.history)
    assert len(h) > 2
    assert np.all(np.diff(h) >= -1e-10 * np.abs(h[1:]))
    assert h[-1] == pytest.approx(fit.loglik)


def test_em_rank_one_table_matches_independence():
    n = np.outer([1, 2, 3], [2, 3, 5])
    table = ContingencyTable.from_matrix(n)
    fit = em_fit(table, restarts=4, seed=0)
    q_ind = independence_fit(n)
    assert np.max(np.abs(fit.q - q_ind)) < 1e-6
    assert classify_332(fit.q, rank_tol=1e-5)[0].tag == "S1"


def test_em_case_study():
    fit = em_fit(ContingencyTable.from_matrix(CASE_STUDY_COUNTS), restarts=32, seed=0)
    printed = np.array([[float(x) for x in row] for row in PRINTED_Q])
    assert np.max(np.abs(fit.q - printed)) < 1e-6
    assert fit.fiber_dim == 2 and not fit.identifiable
    assert fit.parameters[0] >= 0.5
    again = em_fit(ContingencyTable.from_matrix(CASE_STUDY_COUNTS), restarts=32, seed=0, workers=3)
    assert again.parameters == fit.parameters and again.loglik == fit.loglik


def test_em_single_cell_is_boundary():
    n = np.zeros((3, 3), dtype=int)
    n[1, 2] = 10
    fit = em_fit(ContingencyTable.from_matrix(n), restarts=3)
    assert fit.boundary
    assert fit.q[1, 2] == pytest.approx(1.0)


def test_em_guards():
    with pytest.raises(ValueError):
        em_fit(ContingencyTable((1, 2, 3)), restarts=1)
    with pytest.raises(ValueError):
        em_fit(ContingencyTable.from_matrix(CASE_STUDY_COUNTS), restarts=0)


def test_scores():
    t = ContingencyTable.from_matrix(CASE_STUDY_COUNTS)
    assert score_bic(t, PRINTED_Q, 9) == pytest.approx(REFERENCE_LOG_BIC, abs=1e-6)
    assert score_rlct(t, PRINTED_Q, (F(7, 2), 1)) == pytest.approx(REFERENCE_LOG_RLCT, abs=1e-6)
    assert score_rlct(t, PRINTED_Q, RlctPair(F(9, 2), 1)) == score_bic(t, PRINTED_Q, 9)
    theta2 = score_rlct(t, PRINTED_Q, (F(7, 2), 2))
    assert theta2 - score_rlct(t, PRINTED_Q, (F(7, 2), 1)) == pytest.approx(math.log(math.log(132)))
    bad = np.array([[0, 1, 1], [1, 1, 1], [1, 1, 1]]) / 8.0
    with pytest.raises(ValueError):
        score_bic(t, bad, 9)
    with pytest.raises(ValueError):
        score_bic(t, [0.5, 0.5], 9)


def test_named_examples():
    r = [F(1, 2), F(1, 3), F(1, 6)]
    c = [F(1, 3)] * 3
    stratum, pair = classify_332([[a * b for b in c] for a in r])
    assert stratum.tag == "S1" and pair == RlctPair(F(5, 2), 1)
    ones = ContingencyTable.from_matrix(np.ones((3, 3), dtype=int))
    assert score_bic(ones, [F(1, 9)] * 9, 0) == pytest.approx(9 * math.log(1 / 9), rel=1e-15)
