"""Real log canonical threshold pairs and the rules for computing them.

All pairs refer to the ideal convention: the RLCT of ``<f1, ..., fr>`` is the
smallest pole of ``z -> int (f1^2 + ... + fr^2)^(-z/2) |w^tau| dw`` with its
order. For a single generator this is the same as the function RLCT of ``|f|``.
"""

from __future__ import annotations

import functools
import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import Ideal, Polynomial, as_fraction, exact_rank, format_fraction
from .polyhedra import newton_polyhedron, tau_distance

INF = math.inf


@functools.total_ordering
@dataclass(frozen=True)
class RlctPair:
    """The pair ``(lambda, theta)`` ordered as in the asymptotic expansion.

    ``(l1, t1) > (l2, t2)`` when ``l1 > l2``, or ``l1 == l2`` and ``t1 < t2``.
    Infinity is the largest element. ``exact`` is not part of equality; it
    records whether the value is certified or only an upper bound.
    """

    lam: Fraction | float
    theta: int | None
    exact: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.lam == INF:
            object.__setattr__(self, "lam", INF)
            object.__setattr__(self, "theta", None)
            return
        lam = as_fraction(self.lam)
        if lam < 0:
            raise ValueError("lambda must be nonnegative")
        if self.theta is None or int(self.theta) < 1:
            raise ValueError("theta must be a positive integer for finite lambda")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "theta", int(self.theta))

    @classmethod
    def infinite(cls, exact: bool = True) -> RlctPair:
        return cls(INF, None, exact)

    @property
    def is_finite(self) -> bool:
        return self.lam != INF

    def _key(self):
        return (self.lam, 0) if not self.is_finite else (self.lam, -self.theta)

    def __lt__(self, other: RlctPair) -> bool:
        if not isinstance(other, RlctPair):
            return NotImplemented
        return self._key() < other._key()

    def with_exact(self, exact: bool) -> RlctPair:
        return RlctPair(self.lam, self.theta, exact)

    def to_json(self) -> dict:
        lam = "inf" if not self.is_finite else format_fraction(self.lam)
        return {"lambda": lam, "theta": self.theta, "exact": self.exact}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj) -> RlctPair:
        if isinstance(obj, str):
            obj = json.loads(obj)
        lam = INF if obj["lambda"] == "inf" else Fraction(obj["lambda"])
        return cls(lam, obj.get("theta"), bool(obj.get("exact", True)))

    def __str__(self):
        if not self.is_finite:
            return "(inf, -)"
        rel = "" if self.exact else "<= "
        return f"{rel}({format_fraction(self.lam)}, {self.theta})"


def pair_min(pairs: Iterable[RlctPair]) -> RlctPair:
    """Minimum in the pair order; exact only if every minimiser is exact."""
    pairs = list(pairs)
    if not pairs:
        raise ValueError("pair_min needs at least one pair")
    best = min(pairs)
    exact = all(p.exact for p in pairs if p == best)
    return best.with_exact(exact)


def rlct_monomial(kappa: Sequence[int], tau: Sequence[int] | None = None) -> RlctPair:
    """RLCT of ``w^kappa`` with amplitude ``w^tau`` over the positive orthant."""
    tau = tuple(tau) if tau is not None else (0,) * len(kappa)
    if len(tau) != len(kappa):
        raise ValueError("kappa and tau differ in length")
    ratios = [Fraction(t + 1, k) for k, t in zip(kappa, tau) if k]
    if not ratios:
        return RlctPair.infinite()
    lam = min(ratios)
    return RlctPair(lam, ratios.count(lam), True)


def rlct_sum_disjoint(px: RlctPair, py: RlctPair) -> RlctPair:
    """RLCT of ``I + J`` for ideals in disjoint sets of variables."""
    if not px.is_finite:
        return py
    if not py.is_finite:
        return px
    return RlctPair(px.lam + py.lam, px.theta + py.theta - 1, px.exact and py.exact)


def rlct_prod_disjoint(px: RlctPair, py: RlctPair) -> RlctPair:
    """RLCT of ``I * J`` for ideals in disjoint sets of variables."""
    if px.lam < py.lam:
        return px
    if py.lam < px.lam:
        return py
    if not px.is_finite:
        return RlctPair.infinite(px.exact and py.exact)
    return RlctPair(px.lam, px.theta + py.theta, px.exact and py.exact)


def _vanishes_at_origin(ideal: Ideal) -> bool:
    return all(g.constant_term() == 0 for g in ideal.generators)


def rlct_newton_bound(ideal: Ideal, tau: Sequence[int] | None = None, *,
                      check_nondegeneracy: bool = True, **search_options) -> RlctPair:
    """``(1/l_tau, theta_tau)`` from the Newton polyhedron of ``ideal``.

    This is always an upper bound for the RLCT at the origin and is flagged
    exact for monomial ideals and for ideals certified sos-nondegenerate.
    ``search_options`` are passed to the nondegeneracy checker.
    """
    if ideal.is_zero():
        raise ValueError("empty Newton polyhedron: zero ideal")
    if not _vanishes_at_origin(ideal):
        return RlctPair.infinite()
    P = newton_polyhedron(ideal)
    dist, _ = tau_distance(P, tau)
    pair = RlctPair(1 / dist.l, dist.theta, False)
    if ideal.is_monomial():
        return pair.with_exact(True)
    if check_nondegeneracy:
        from .nondegen import is_sos_nondegenerate
        if is_sos_nondegenerate(ideal, **search_options).status == "nondegenerate":
            return pair.with_exact(True)
    return pair


# ---------------------------------------------------------------------------
# monomial changes of variables
# ---------------------------------------------------------------------------

def _check_map(v: Sequence[Sequence[int]], d: int) -> list[list[int]]:
    v = [[int(x) for x in row] for row in v]
    if len(v) != d or any(len(row) != d for row in v):
        raise ValueError(f"monomial map must be a {d}x{d} matrix")
    if any(x < 0 for row in v for x in row):
        raise ValueError("monomial map entries must be nonnegative")
    if exact_rank(v) < d:
        raise ValueError("monomial map must have nonzero determinant")
    return v


def pullback_monomial_map(ideal: Ideal, v: Sequence[Sequence[int]],
                          tau: Sequence[int] | None = None) -> tuple[Ideal, tuple[int, ...]]:
    """Substitute ``w_j = prod_i mu_i^v[i][j]`` and return the new ideal and amplitude.

    The amplitude picks up the Jacobian ``mu_i^(sum_j v[i][j] - 1)``.
    Common monomial factors are left in place; see :func:`normalize_monomial_factor`.
    """
    d = ideal.ambient_dim
    v = _check_map(v, d)
    tau = tuple(tau) if tau is not None else (0,) * d
    if len(tau) != d:
        raise ValueError("tau has the wrong length")
    gens = []
    for g in ideal.generators:
        terms = {}
        for e, c in g.items():
            terms[tuple(sum(v[i][j] * e[j] for j in range(d)) for i in range(d))] = c
        gens.append(Polynomial(d, terms))
    new_tau = tuple(sum(v[i][j] * tau[j] for j in range(d)) + sum(v[i]) - 1 for i in range(d))
    return Ideal(tuple(gens), ideal.variables), new_tau


def normalize_monomial_factor(ideal: Ideal) -> tuple[Ideal, tuple[int, ...]]:
    """Divide out the largest monomial dividing every generator.

    Returns ``(J, m)`` with ``ideal = w^m * J``.
    """
    d = ideal.ambient_dim
    exps = [e for g in ideal.nonzero_generators() for e in g.exponents()]
    if not exps:
        return ideal, (0,) * d
    m = tuple(min(e[i] for e in exps) for i in range(d))
    gens = tuple(Polynomial(d, {tuple(a - b for a, b in zip(e, m)): c for e, c in g.items()})
                 for g in ideal.generators)
    return Ideal(gens, ideal.variables), m


def blowup_charts(d: int) -> list[list[list[int]]]:
    """The ``d`` charts of the blow-up of the origin as monomial maps.

    Chart ``k`` is ``w_k = mu_k`` and ``w_j = mu_j * mu_k`` for ``j != k``.
    """
    charts = []
    for k in range(d):
        v = [[int(i == j) for j in range(d)] for i in range(d)]
        v[k] = [1] * d
        charts.append(v)
    return charts


def rlct_monomial_ideal_via_charts(ideal: Ideal, charts: Sequence, tau=None) -> RlctPair:
    """Minimum over charts of the RLCT of a monomial ideal pulled back to each chart."""
    if not ideal.is_monomial():
        raise ValueError("chart evaluation is implemented for monomial ideals only")
    pairs = []
    for v in charts:
        J, new_tau = pullback_monomial_map(ideal, v, tau)
        pairs.append(rlct_newton_bound(J, new_tau))
    return pair_min(pairs)


def chain_map(d: int, chain: Sequence[int]) -> list[list[int]]:
    """Monomial map sending the box to the chain ``0 <= w_c1 <= w_c2 <= ... ``.

    ``w_{c_k} = prod_{l >= k} mu_{c_l}``; coordinates outside the chain are untouched.
    """
    chain = list(chain)
    if len(set(chain)) != len(chain) or any(not 0 <= c < d for c in chain):
        raise ValueError("chain must list distinct coordinate indices")
    v = [[int(i == j) for j in range(d)] for i in range(d)]
    for k, ck in enumerate(chain):
        for l in range(k, len(chain)):
            v[chain[l]][ck] = 1
    return v


def rlct_region_orthant_chain(kappa: Sequence[int], chain: Sequence[int],
                              tau: Sequence[int] | None = None) -> RlctPair:
    """RLCT of ``w^kappa`` over the region ``0 <= w_c1 <= ... <= w_cm <= eps``.

    ``chain`` lists coordinate indices from smallest to largest; coordinates
    not in the chain range over ``[0, eps]``. For instance ``kappa=(1, 2)``,
    ``chain=(0, 1)`` is ``x*y^2`` over ``0 <= x <= y``.
    """
    d = len(kappa)
    tau = tuple(tau) if tau is not None else (0,) * d
    v = chain_map(d, chain)
    new_kappa = [sum(v[i][j] * kappa[j] for j in range(d)) for i in range(d)]
    new_tau = [sum(v[i][j] * tau[j] for j in range(d)) + sum(v[i]) - 1 for i in range(d)]
    return rlct_monomial(new_kappa, new_tau)


# ---------------------------------------------------------------------------
# smooth cases
# ---------------------------------------------------------------------------

def hessian_at_origin(f: Polynomial) -> list[list[Fraction]]:
    d = f.ambient_dim
    zero = (0,) * d
    return [[f.derivative(i).derivative(j).coefficient(zero) for j in range(d)] for i in range(d)]


def _is_definite(h: list[list[Fraction]]) -> bool:
    # Sylvester: leading minors all positive (or alternating for -h)
    def minors(m):
        out = []
        for k in range(1, len(m) + 1):
            out.append(_det([row[:k] for row in m[:k]]))
        return out
    pos = minors(h)
    neg = minors([[-x for x in row] for row in h])
    return all(x > 0 for x in pos) or all(x > 0 for x in neg)


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [row[:] for row in m]
    n = len(m)
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            det = -det
        det *= m[col][col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return det


def rlct_hessian_case(f: Polynomial) -> RlctPair | None:
    """``(d/2, 1)`` when 0 is a nondegenerate local extremum of ``f``, else None."""
    zero = (0,) * f.ambient_dim
    if f.constant_term() != 0 or any(g.coefficient(zero) for g in f.gradient()):
        return None
    if not _is_definite(hessian_at_origin(f)):
        return None
    return RlctPair(Fraction(f.ambient_dim, 2), 1, True)


def jacobian_at(ideal: Ideal, point: Sequence | None = None) -> list[list[Fraction]]:
    d = ideal.ambient_dim
    point = [as_fraction(x) for x in point] if point is not None else [Fraction(0)] * d
    return [[g.derivative(j).evaluate(point) for j in range(d)] for g in ideal.generators]


def jacobian_rank_bound(ideal: Ideal) -> RlctPair:
    """The smooth-part bound ``((r + d)/2, 1)`` with ``r`` the Jacobian rank at 0."""
    if not _vanishes_at_origin(ideal):
        raise ValueError("generators must vanish at the origin")
    r = exact_rank(jacobian_at(ideal))
    return RlctPair(Fraction(r + ideal.ambient_dim, 2), 1, False)


def generic_jacobian_rank(ideal: Ideal, trials: int = 4, seed: int = 0,
                          scale: int = 10**6) -> int:
    """Rank of the Jacobian over the function field, by random rational evaluation.

    Each trial evaluates at a point with coordinates ``a/scale`` for random
    integers ``|a| <= scale``; a nonzero minor of degree ``D`` survives a trial
    except with probability at most ``D/(2*scale+1)``.
    """
    rng = random.Random(seed)
    d = ideal.ambient_dim
    best = 0
    for _ in range(trials):
        pt = [Fraction(rng.randint(-scale, scale), scale) for _ in range(d)]
        best = max(best, exact_rank(jacobian_at(ideal, pt)))
    return best


def rlct_constant_rank(ideal: Ideal, *, seed: int = 0) -> RlctPair | None:
    """``(r, 1)`` if the Jacobian has generic rank ``r`` already at the origin.

    By the constant rank theorem the ideal is then locally generated by ``r``
    coordinate functions, whose RLCT is ``(r, 1)``. Returns None otherwise.
    Only valid for the trivial amplitude ``tau = 0``.
    """
    if not _vanishes_at_origin(ideal):
        return RlctPair.infinite()
    r0 = exact_rank(jacobian_at(ideal))
    if r0 == 0:
        return None
    if r0 < generic_jacobian_rank(ideal, seed=seed):
        return None
    return RlctPair(Fraction(r0), 1, True)
