"""Discrete models parametrized by polynomials, and the 3x3 mixture case study.

A model maps parameters ``w`` in a compact domain to a probability vector
``p(w)``. The learning coefficient at a true distribution ``q`` is half the
RLCT of the fiber ideal ``<p(w) - q>`` (theta unchanged); this module is the
only place that halving happens.
"""

from __future__ import annotations

import csv
import itertools
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import Ideal, Polynomial, as_fraction, format_fraction, parse_polynomial
from .numeric import Region
from .rlct import (RlctPair, jacobian_rank_bound, pair_min, rlct_constant_rank,
                   rlct_newton_bound)


class UnsupportedBoundaryError(ValueError):
    """The fiber point sits on a part of the domain boundary we cannot handle."""


class NotInModelError(ValueError):
    pass


# ---------------------------------------------------------------------------
# models and tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DiscreteModel:
    """``p = (p_1, ..., p_k)`` polynomials in ``d`` variables over ``domain``."""

    p: tuple[Polynomial, ...]
    domain: Region
    variables: tuple[str, ...] | None = None
    check_samples: int = 64

    def __post_init__(self):
        p = tuple(self.p)
        object.__setattr__(self, "p", p)
        if not p:
            raise ValueError("a model needs at least one state")
        d = p[0].ambient_dim
        if any(f.ambient_dim != d for f in p):
            raise ValueError("all probabilities must live in the same ring")
        if d != self.domain.dim:
            raise ValueError("domain dimension does not match the parameter count")
        total = sum(p, Polynomial.zero(d))
        if total != Polynomial.constant(1, d):
            raise ValueError("probabilities must sum to 1 identically")
        if self.check_samples:
            rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(12345)))
            W, _ = self.domain.map(rng.random((self.check_samples, d)))
            P = np.stack([f.numpy_evaluator()(W) for f in p], axis=1)
            if np.any(P < -1e-12) or np.any(P > 1 + 1e-12):
                raise ValueError("some p_i leaves [0, 1] on the domain")

    @property
    def k(self) -> int:
        return len(self.p)

    @property
    def d(self) -> int:
        return self.p[0].ambient_dim

    def names(self) -> tuple[str, ...]:
        if self.variables is not None:
            return tuple(self.variables)
        return tuple(f"w{i + 1}" for i in range(self.d))

    def evaluate(self, point: Sequence) -> tuple:
        return tuple(f.evaluate(point) for f in self.p)

    def evaluate_float(self, W: np.ndarray) -> np.ndarray:
        W = np.atleast_2d(np.asarray(W, dtype=float))
        return np.stack([f.numpy_evaluator()(W) for f in self.p], axis=1)

    def to_json(self) -> dict:
        names = self.names()
        return {"k": self.k, "vars": list(names),
                "p": [f.to_string(names) for f in self.p],
                "domain": self.domain.to_json()}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def model_from_json(obj) -> DiscreteModel:
    if isinstance(obj, str):
        obj = json.loads(obj)
    names = tuple(obj["vars"])
    p = tuple(parse_polynomial(s, names) for s in obj["p"])
    if "k" in obj and obj["k"] != len(p):
        raise ValueError("k does not match the number of probabilities")
    domain = Region.from_json(obj.get("domain", {"kind": "box"}), dim=len(names))
    return DiscreteModel(p, domain, names)


@dataclass(frozen=True)
class ContingencyTable:
    counts: tuple[int, ...]
    shape: tuple[int, ...] | None = None

    def __post_init__(self):
        counts = tuple(int(c) for c in np.asarray(self.counts).ravel())
        object.__setattr__(self, "counts", counts)
        if self.shape is None:
            object.__setattr__(self, "shape", (len(counts),))
        elif math.prod(self.shape) != len(counts):
            raise ValueError("shape does not match the number of cells")
        if any(c < 0 for c in counts):
            raise ValueError("counts must be nonnegative")
        if sum(counts) == 0:
            raise ValueError("the table is empty")

    @classmethod
    def from_matrix(cls, rows) -> ContingencyTable:
        arr = np.asarray(rows)
        return cls(tuple(int(c) for c in arr.ravel()), tuple(arr.shape))

    @property
    def N(self) -> int:
        return sum(self.counts)

    def matrix(self) -> np.ndarray:
        return np.array(self.counts, dtype=float).reshape(self.shape)

    def frequencies(self) -> np.ndarray:
        return self.matrix() / self.N


def read_table_csv(path) -> ContingencyTable:
    with open(path, newline="") as fh:
        rows = [[int(x) for x in row if x.strip()] for row in csv.reader(fh) if row]
    if len({len(r) for r in rows}) != 1:
        raise ValueError("ragged table")
    return ContingencyTable.from_matrix(rows)


# ---------------------------------------------------------------------------
# KL divergence and fiber ideals
# ---------------------------------------------------------------------------

def kl_divergence(q: Sequence[float], point: Sequence[float], model: DiscreteModel) -> float:
    """``K(w) = sum q_i log(q_i / p_i(w))``."""
    q = np.asarray([float(x) for x in q])
    if q.shape[0] != model.k:
        raise ValueError("q has the wrong length")
    if np.any(q <= 0):
        raise ValueError("q must be strictly positive")
    p = model.evaluate_float([float(x) for x in point])[0]
    if np.any(p <= 0):
        raise ValueError("the model assigns zero probability at this point")
    K = float(np.sum(q * np.log(q / p)))
    # Gibbs: K >= 0, with equality exactly at p = q (up to rounding)
    assert K >= -1e-12 * max(1.0, float(np.sum(np.abs(np.log(q))))), K
    if np.allclose(p, q, rtol=0, atol=1e-15):
        assert abs(K) < 1e-12
    return max(K, 0.0)


def _rational_distribution(q) -> tuple[Fraction, ...]:
    q = tuple(as_fraction(x) for x in np.asarray(q, dtype=object).ravel())
    if sum(q) != 1:
        raise ValueError("q must sum to 1")
    if any(x < 0 for x in q):
        raise ValueError("q must be nonnegative")
    return q


def fiber_ideal(model: DiscreteModel, q) -> Ideal:
    """``<p_1 - q_1, ..., p_k - q_k>``, keeping all ``k`` generators."""
    qs = _rational_distribution(q)
    if len(qs) != model.k:
        raise ValueError(f"q has {len(qs)} entries but the model has {model.k} states")
    gens = tuple(f - Polynomial.constant(c, model.d) for f, c in zip(model.p, qs))
    return Ideal(gens, model.names())


# ---------------------------------------------------------------------------
# learning coefficient at a point
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LocalCoefficient:
    pair: RlctPair          # learning coefficient (halved)
    ideal_pair: RlctPair    # RLCT of the translated fiber ideal
    method: str
    boundary: tuple = ()

    def to_json(self) -> dict:
        out = self.pair.to_json()
        out.update({"ideal_rlct": self.ideal_pair.to_json(), "method": self.method,
                    "boundary": [list(b) for b in self.boundary]})
        return out


def _active_constraints(domain: Region, point: Sequence[Fraction]):
    """Active boundary constraints at ``point`` as ``(kind, index)`` pairs."""
    active = []
    if domain.kind == "box":
        for j, x in enumerate(point):
            lo, hi = as_fraction(domain.lo[j]), as_fraction(domain.hi[j])
            if x < lo or x > hi:
                raise ValueError("point lies outside the domain")
            if x == lo:
                active.append(("lower", j))
            elif x == hi:
                active.append(("upper", j))
        return active
    if domain.kind == "simplex":
        start = 0
        for b in domain.blocks:
            block = point[start:start + b]
            if any(x < 0 for x in block) or sum(block) > 1:
                raise ValueError("point lies outside the domain")
            active += [("lower", start + j) for j, x in enumerate(block) if x == 0]
            if sum(block) == 1:
                active.append(("sum", start))
            start += b
        return active
    raise UnsupportedBoundaryError(f"learning coefficients over {domain.kind!r} regions are not supported")


def learning_coefficient_at(model: DiscreteModel, q, point: Sequence, *, tol: float = 0.0,
                            seed: int = 0, **search_options) -> LocalCoefficient:
    """Learning coefficient ``(lambda, theta)`` contributed by the fiber point ``point``.

    The fiber ideal is translated to ``point`` and its RLCT found by, in turn,
    the constant rank certificate, the Newton polyhedron with a
    nondegeneracy check, and finally the Newton and Jacobian upper bounds
    (then flagged not exact). Lambda is halved at the end.

    ``p(point)`` must equal ``q`` exactly unless ``tol > 0``, in which case
    the fiber through ``p(point)`` is used. Boundary points are accepted only
    when all active constraints are coordinate bounds and the translated
    ideal is monomial: a monomial ideal is invariant under sign changes of
    the coordinates, so its RLCT over an orthant equals that over a
    neighbourhood. Anything else raises :class:`UnsupportedBoundaryError`.
    """
    point = tuple(as_fraction(x) for x in point)
    if len(point) != model.d:
        raise ValueError("point has the wrong dimension")
    qs = _rational_distribution(q)
    image = model.evaluate(point)
    gap = max(abs(a - b) for a, b in zip(image, qs))
    if gap > as_fraction(tol):
        raise ValueError(f"point is not on the fiber of q (max |p - q| = {float(gap):.3g})")
    if gap:
        qs = image
    ideal = fiber_ideal(model, qs).translate(point)
    active = _active_constraints(model.domain, point)

    if active:
        if any(kind == "sum" for kind, _ in active) or not ideal.is_monomial():
            raise UnsupportedBoundaryError(
                "fiber point on the domain boundary "
                f"({', '.join(f'{k}:{model.names()[j]}' for k, j in active)}) "
                "with a non-monomial fiber ideal")
        pair = rlct_newton_bound(ideal, check_nondegeneracy=False)
        method = "monomial-orthant"
    else:
        pair = rlct_constant_rank(ideal, seed=seed)
        method = "constant-rank"
        if pair is None:
            pair = rlct_newton_bound(ideal, seed=seed, **search_options)
            method = "newton"
            if not pair.exact:
                pair = pair_min([pair, jacobian_rank_bound(ideal)]).with_exact(False)
                method = "upper-bound"
    half = RlctPair(pair.lam / 2, pair.theta, pair.exact) if pair.is_finite else pair
    return LocalCoefficient(half, pair, method, tuple(active))


# ---------------------------------------------------------------------------
# the 3x3 mixture of two independence models
# ---------------------------------------------------------------------------

MIXTURE_VARIABLES = ("t", "a1", "a2", "b1", "b2", "c1", "c2", "d1", "d2")

# the 132-patient table (visits by relatives vs. recovery time)
CASE_STUDY_COUNTS = ((43, 16, 3), (6, 11, 10), (9, 18, 16))

_PRINTED_Q_TIMES_132 = (
    ("43.00153927", "15.99813189", "3.000328847"),
    ("5.979732739", "11.12298188", "9.897285383"),
    ("9.018728012", "17.87888620", "16.10238577"),
)
PRINTED_Q = tuple(tuple(Fraction(x) / 132 for x in row) for row in _PRINTED_Q_TIMES_132)

PRINTED_MLE = tuple(Fraction(x) for x in (
    "0.5129202328",
    "0.09139459898", "0.3457903589",
    "0.1397061214", "0.4386217768",
    "0.8680689680", "0.05580725171",
    "0.7549807403", "0.2380125694",
))

REFERENCE_LOG_EXACT = -273.1911759
REFERENCE_LOG_BIC = -280.7992160
REFERENCE_LOG_RLCT = -275.9164140

STRATUM_PAIRS = {
    "S1": RlctPair(Fraction(5, 2), 1),
    "S2_generic": RlctPair(Fraction(7, 2), 1),
    "S21_only": RlctPair(Fraction(4), 1),
    "S22": RlctPair(Fraction(9, 2), 1),
}


def mixture_332_model() -> DiscreteModel:
    """``p_ij = t a_i b_j + (1 - t) c_i d_j`` on ``Delta_1 x (Delta_2)^4``."""
    names = MIXTURE_VARIABLES
    v = {n: parse_polynomial(n, names) for n in names}
    one = Polynomial.constant(1, len(names))

    def full(x):
        return (v[x + "1"], v[x + "2"], one - v[x + "1"] - v[x + "2"])

    a, b, c, d = full("a"), full("b"), full("c"), full("d")
    t = v["t"]
    p = tuple(t * a[i] * b[j] + (one - t) * c[i] * d[j] for i in range(3) for j in range(3))
    return DiscreteModel(p, Region.simplex_product((1, 2, 2, 2, 2)), names)


def mixture_parameters(point: Sequence) -> tuple[np.ndarray, ...]:
    """Split a 9-vector into ``t`` and the full distributions ``a, b, c, d``."""
    x = [float(v) for v in point]

    def full(i):
        return np.array([x[i], x[i + 1], 1.0 - x[i] - x[i + 1]])

    return x[0], full(1), full(3), full(5), full(7)


def mixture_q(point: Sequence) -> np.ndarray:
    t, a, b, c, d = mixture_parameters(point)
    return t * np.outer(a, b) + (1 - t) * np.outer(c, d)


@dataclass(frozen=True)
class Stratum:
    tag: str
    certificate: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.tag not in STRATUM_PAIRS:
            raise ValueError(f"unknown stratum {self.tag!r}")

    @property
    def pair(self) -> RlctPair:
        return STRATUM_PAIRS[self.tag]

    def to_json(self) -> dict:
        out = {"stratum": self.tag}
        out.update(self.pair.to_json())
        out.pop("exact")
        out["certificate"] = self.certificate
        return out


def classify_332(q, *, rank_tol: float = 1e-6, zero_tol: float = 1e-9) -> tuple[Stratum, RlctPair]:
    """Stratum of a 3x3 distribution in the mixture model and its learning coefficient.

    Rank comes from the singular values (``sigma_3 <= rank_tol`` is required,
    ``sigma_2 <= rank_tol`` means rank one). The zero patterns are searched
    over all row and column permutations with entries ``<= zero_tol``
    counted as zero.
    """
    flat = [float(x) for x in np.asarray(q, dtype=object).ravel()]
    if len(flat) != 9:
        raise ValueError("q must be a 3x3 matrix or a vector of 9 cells")
    Q = np.array(flat).reshape(3, 3)
    if np.any(Q < -zero_tol):
        raise ValueError("q has negative entries")
    if abs(Q.sum() - 1.0) > 1e-6:
        raise ValueError("q must sum to 1")
    sv = np.linalg.svd(Q, compute_uv=False)
    if sv[2] > rank_tol:
        raise NotInModelError(f"q has rank 3 (third singular value {sv[2]:.3g})")
    if sv[1] <= rank_tol:
        s = Stratum("S1", {"singular_values": sv.tolist()})
        return s, s.pair
    Z = Q <= zero_tol
    found21 = None
    for rows in itertools.permutations(range(3)):
        for cols in itertools.permutations(range(3)):
            z = Z[np.ix_(rows, cols)]
            if z[0, 0] and z[1, 1] and not z[0, 1] and not z[1, 0]:
                s = Stratum("S22", {"rows": list(rows), "cols": list(cols),
                                    "zeros": [[0, 0], [1, 1]], "singular_values": sv.tolist()})
                return s, s.pair
            if found21 is None and z[0, 0] and not (z[0, 1] or z[1, 0] or z[1, 1]):
                found21 = (rows, cols)
    if found21 is not None:
        s = Stratum("S21_only", {"rows": list(found21[0]), "cols": list(found21[1]),
                                 "zeros": [[0, 0]], "singular_values": sv.tolist()})
        return s, s.pair
    s = Stratum("S2_generic", {"singular_values": sv.tolist()})
    return s, s.pair


# ---------------------------------------------------------------------------
# EM
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MLFit:
    parameters: tuple[float, ...]
    loglik: float
    q: np.ndarray = field(compare=False)
    restarts_used: int
    seed: int
    iterations: int
    converged: bool
    fiber_dim: int
    t_identifiable: bool
    boundary: bool
    history: tuple = field(default=(), compare=False, repr=False)

    @property
    def identifiable(self) -> bool:
        return self.fiber_dim == 0

    def to_json(self) -> dict:
        return {"parameters": dict(zip(MIXTURE_VARIABLES, self.parameters)),
                "loglik": self.loglik, "q": self.q.tolist(),
                "restarts_used": self.restarts_used, "best_seed": self.seed,
                "iterations": self.iterations, "converged": self.converged,
                "fiber_dim": self.fiber_dim, "t_identifiable": self.t_identifiable,
                "boundary": self.boundary}


def _loglik(n: np.ndarray, P: np.ndarray) -> np.ndarray:
    mask = n > 0
    with np.errstate(divide="ignore"):
        logs = np.where(mask, np.log(np.where(mask, P, 1.0)), 0.0)
    return np.sum(n * logs, axis=(-2, -1))


def _em_batch(n: np.ndarray, seeds: Sequence[int], max_iter: int, tol: float, record: bool):
    B = len(seeds)
    t = np.empty(B)
    a, b, c, d = (np.empty((B, 3)) for _ in range(4))
    for k, s in enumerate(seeds):
        rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(int(s))))
        t[k] = rng.uniform()
        a[k], b[k], c[k], d[k] = rng.dirichlet(np.ones(3), size=4)
    N = n.sum()
    active = np.ones(B, dtype=bool)
    iters = np.zeros(B, dtype=int)

    def model(t, a, b, c, d):
        A = t[:, None, None] * a[:, :, None] * b[:, None, :]
        C = (1 - t)[:, None, None] * c[:, :, None] * d[:, None, :]
        return A, C

    A, C = model(t, a, b, c, d)
    ll = _loglik(n, A + C)
    history = [[float(x)] for x in ll] if record else None
    for _ in range(max_iter):
        idx = np.flatnonzero(active)
        if not idx.size:
            break
        Ai, Ci = A[idx], C[idx]
        P = Ai + Ci
        with np.errstate(invalid="ignore", divide="ignore"):
            r = np.where(P > 0, Ai / np.where(P > 0, P, 1.0), 0.5)
        nr = n * r
        ns = n * (1 - r)
        tn = nr.sum(axis=(1, 2)) / N
        ra, rb = nr.sum(axis=2), nr.sum(axis=1)
        sa, sb = ns.sum(axis=2), ns.sum(axis=1)

        def norm(x):
            s = x.sum(axis=1, keepdims=True)
            return np.where(s > 0, x / np.where(s > 0, s, 1.0), 1.0 / 3.0)

        t[idx], a[idx], b[idx], c[idx], d[idx] = tn, norm(ra), norm(rb), norm(sa), norm(sb)
        An, Cn = model(t[idx], a[idx], b[idx], c[idx], d[idx])
        A[idx], C[idx] = An, Cn
        new = _loglik(n, An + Cn)
        old = ll[idx]
        # the EM ascent property, up to rounding
        assert np.all(new >= old - 1e-10 * np.abs(old)), "EM decreased the log-likelihood"
        ll[idx] = new
        iters[idx] += 1
        if record:
            for k, v in zip(idx, new):
                history[k].append(float(v))
        done = np.abs(new - old) <= tol * np.abs(old)
        active[idx[done]] = False
    return t, a, b, c, d, ll, iters, ~active, history


def _jacobian_rank(model: DiscreteModel, point: Sequence[float], rel_tol: float = 1e-7):
    x = np.asarray(point, dtype=float)[None, :]
    J = np.array([[g.numpy_evaluator()(x)[0] for g in f.gradient()] for f in model.p])
    u, s, vt = np.linalg.svd(J)
    rank = int(np.sum(s > rel_tol * s[0])) if s.size and s[0] > 0 else 0
    null = vt[rank:]
    return rank, null


def _threads(workers: int | None) -> int:
    if workers is None:
        try:
            workers = int(os.environ.get("RLCTKIT_THREADS", "1"))
        except ValueError:
            workers = 1
    return max(1, workers)


def em_fit(table: ContingencyTable, restarts: int = 32, seed: int = 0, *,
           max_iter: int = 100_000, tol: float = 1e-12, workers: int | None = None,
           record_history: bool = False) -> MLFit:
    """Maximum likelihood for the 3x3 mixture by EM from ``restarts`` random starts.

    Restart ``k`` is seeded with ``seed + k``: ``t`` uniform and ``a, b, c, d``
    uniform on the open simplex. Restarts are run as one vectorised batch
    (split over ``workers`` threads, default ``RLCTKIT_THREADS``); the best
    log-likelihood wins with ties going to the lowest seed. The label swap
    is fixed by ``t >= 1/2``.

    The parametrization has positive-dimensional fibers (the Jacobian has
    rank at most 7), so the parameters, and ``t`` in particular, are not
    determined by the data even though ``q`` is. ``fiber_dim`` and
    ``t_identifiable`` report this at the returned point.
    """
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    if table.shape != (3, 3):
        raise ValueError("the mixture model needs a 3x3 table")
    n = table.matrix()
    seeds = [seed + k for k in range(restarts)]
    w = min(_threads(workers), restarts)
    chunks = [seeds[i::w] for i in range(w)]
    with ThreadPoolExecutor(max_workers=w) as pool:
        results = list(pool.map(lambda s: (s, _em_batch(n, s, max_iter, tol, record_history)), chunks))
    best = None
    for chunk, (t, a, b, c, d, ll, iters, conv, hist) in results:
        for k, s in enumerate(chunk):
            key = (-ll[k], s)
            if best is None or key < best[0]:
                best = (key, t[k], a[k], b[k], c[k], d[k], ll[k], iters[k], conv[k],
                        hist[k] if hist is not None else ())
    _, t, a, b, c, d, ll, it, conv, hist = best
    if t < 0.5:
        t, a, b, c, d = 1 - t, c, d, a, b
    params = (float(t), a[0], a[1], b[0], b[1], c[0], c[1], d[0], d[1])
    params = tuple(float(x) for x in params)
    q = mixture_q(params)
    rank, null = _jacobian_rank(mixture_332_model(), params)
    t_ident = bool(null.shape[0] == 0 or np.max(np.abs(null[:, 0])) < 1e-8)
    boundary = bool(min(t, 1 - t) < 1e-9 or min(a.min(), b.min(), c.min(), d.min()) < 1e-9)
    return MLFit(params, float(ll), q, restarts, int(best[0][1]), int(it), bool(conv),
                 len(params) - rank, t_ident, boundary, tuple(hist))


# ---------------------------------------------------------------------------
# scores
# ---------------------------------------------------------------------------

def _table_loglik(table: ContingencyTable, q) -> float:
    n = np.asarray(table.counts, dtype=float)
    Q = np.asarray([float(x) for x in np.asarray(q, dtype=object).ravel()])
    if Q.shape != n.shape:
        raise ValueError("q and the table have different sizes")
    if np.any((Q <= 0) & (n > 0)):
        raise ValueError("q vanishes at a cell with positive count")
    mask = n > 0
    return math.fsum(n[mask] * np.log(Q[mask]))


def score_rlct(table: ContingencyTable, q, pair) -> float:
    """``sum n log q - lambda log N + (theta - 1) log log N``."""
    if isinstance(pair, RlctPair):
        lam, theta = pair.lam, pair.theta
    else:
        lam, theta = pair
    N = table.N
    out = _table_loglik(table, q) - float(lam) * math.log(N)
    if theta != 1:
        out += (theta - 1) * math.log(math.log(N))
    return out


def score_bic(table: ContingencyTable, q, d: int) -> float:
    """``sum n log q - (d/2) log N``."""
    return score_rlct(table, q, (Fraction(d, 2), 1))


def case_study_report(restarts: int = 32, seed: int = 0, workers: int | None = None) -> dict:
    """Fit, classify and score the 132-patient table; compare with the exact value."""
    table = ContingencyTable.from_matrix(CASE_STUDY_COUNTS)
    fit = em_fit(table, restarts, seed, workers=workers)
    stratum, pair = classify_332(fit.q)
    rl = score_rlct(table, fit.q, pair)
    bic = score_bic(table, fit.q, 9)
    return {
        "loglik": fit.loglik,
        "bic": bic,
        "rlct": rl,
        "exact": REFERENCE_LOG_EXACT,
        "rlct_error": abs(rl - REFERENCE_LOG_EXACT),
        "bic_error": abs(bic - REFERENCE_LOG_EXACT),
        "rlct_closer": abs(rl - REFERENCE_LOG_EXACT) < abs(bic - REFERENCE_LOG_EXACT),
        "pair": {"lambda": format_fraction(pair.lam), "theta": pair.theta},
        "stratum": stratum.tag,
        "fit": fit.to_json(),
        "q_times_N": (fit.q * table.N).tolist(),
    }


# ---------------------------------------------------------------------------
# fixtures
# ---------------------------------------------------------------------------

def binomial_model() -> DiscreteModel:
    w = parse_polynomial("w", ("w",))
    return DiscreteModel((w, 1 - w), Region.box(1, 0.0, 1.0), ("w",))


def s22_point() -> tuple[Fraction, ...]:
    """A parameter point whose image has ``q11 = q22 = 0`` (up to the pattern)."""
    h = Fraction(1, 2)
    return (h, Fraction(0), h, h, Fraction(0), h, Fraction(0), Fraction(0), h)


def engineered_case13_model(delta=Fraction(1, 100)) -> DiscreteModel:
    """A 9-state model whose fiber ideal at the origin is
    ``<b1, b2, c1, c2> + <a1, a2> * <d1, d2>``.

    ``p_i = 1/9 + g_i`` for the eight generators and ``p_9 = 1/9 - sum g_i``
    over the box ``[-delta, delta]^8``.
    """
    names = ("b1", "b2", "c1", "c2", "a1", "a2", "d1", "d2")
    gens = ["b1", "b2", "c1", "c2", "a1*d1", "a1*d2", "a2*d1", "a2*d2"]
    g = [parse_polynomial(s, names) for s in gens]
    ninth = Polynomial.constant(Fraction(1, 9), len(names))
    p = tuple(ninth + x for x in g) + (ninth - sum(g, Polynomial.zero(len(names))),)
    delta = float(delta)
    return DiscreteModel(p, Region.box(len(names), -delta, delta), names)
