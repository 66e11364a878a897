"""Laurent principal parts of monomial zeta functions and Laplace asymptotics.

The zeta function of ``w^kappa`` with amplitude ``w^tau`` over ``[0, eps]^d`` is

    zeta(z) = prod_j eps^(tau_j + 1 - kappa_j z) / (tau_j + 1 - kappa_j z),

and its principal parts ``d_{alpha,j}`` (coefficients of ``(z - alpha)^-j``)
determine the expansion ``Z(N) ~ sum c_{alpha,i} N^-alpha (log N)^(i-1)`` of
``Z(N) = int exp(-N w^kappa) w^tau dw``.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import as_fraction, format_fraction


def _json_number(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else format_fraction(x)
    return float(x)


@dataclass(frozen=True)
class LaurentPrincipalPart:
    """``poles[alpha] = [d_{alpha,1}, ..., d_{alpha,d}]`` (padded with zeros)."""

    poles: Mapping[Fraction, tuple]

    def pole_order(self, alpha) -> int:
        coeffs = self.poles[as_fraction(alpha)]
        return max((j + 1 for j, c in enumerate(coeffs) if c != 0), default=0)

    def smallest_pole(self) -> tuple[Fraction, int] | None:
        if not self.poles:
            return None
        alpha = min(self.poles)
        return alpha, self.pole_order(alpha)

    def to_json(self) -> dict:
        return {"poles": {format_fraction(a): [_json_number(c) for c in cs]
                          for a, cs in sorted(self.poles.items())}}


@dataclass(frozen=True)
class AsymptoticSeries:
    """``terms[(alpha, i)] = c_{alpha,i}``."""

    terms: Mapping[tuple[Fraction, int], float]

    def to_json(self) -> list:
        return [{"alpha": format_fraction(a), "i": i, "c": float(c)}
                for (a, i), c in sorted(self.terms.items())]

    def dumps(self) -> str:
        return json.dumps(self.to_json())


@dataclass(frozen=True)
class StateDensityCoefficients:
    """``terms[(alpha, i)] = b_{alpha,i}`` in ``v(t) ~ sum b t^alpha (log t)^(i-1)``."""

    terms: Mapping[tuple[Fraction, int], object]


# ---------------------------------------------------------------------------
# principal parts
# ---------------------------------------------------------------------------

def _series_mul(a: list, b: list, n: int) -> list:
    out = [0] * n
    for i, x in enumerate(a[:n]):
        if x:
            for j, y in enumerate(b[: n - i]):
                out[i + j] += x * y
    return out


def zeta_monomial_box(kappa: Sequence[int], tau: Sequence[int] | None = None,
                      eps=1) -> LaurentPrincipalPart:
    """Principal parts of the monomial zeta function over ``[0, eps]^d``.

    With ``eps = 1`` everything is an exact rational; otherwise the factor
    ``eps^(-K (z - alpha))`` is expanded in floating point with ``log eps``.
    """
    kappa = tuple(int(k) for k in kappa)
    d = len(kappa)
    tau = tuple(int(t) for t in tau) if tau is not None else (0,) * d
    if len(tau) != d:
        raise ValueError("kappa and tau differ in length")
    if any(k < 0 for k in kappa) or any(t < 0 for t in tau):
        raise ValueError("kappa and tau must be nonnegative")
    if not any(kappa):
        raise ValueError("kappa must be nonzero")
    eps_q = as_fraction(eps)
    if eps_q <= 0:
        raise ValueError("eps must be positive")
    exact = eps_q == 1
    log_eps = 0.0 if exact else math.log(float(eps_q))
    K = sum(kappa)

    poles: dict[Fraction, tuple] = {}
    ratio = [Fraction(t + 1, k) if k else None for k, t in zip(kappa, tau)]
    for alpha in sorted({r for r in ratio if r is not None}):
        hit = [j for j in range(d) if ratio[j] == alpha]
        m = len(hit)
        # h(u) = zeta(alpha + u) * prod_{j in hit} kappa_j (alpha - z), as a series in u
        h = [Fraction(1)] + [Fraction(0)] * (m - 1)
        for j in range(d):
            if ratio[j] == alpha:
                continue
            a = tau[j] + 1 - kappa[j] * alpha
            r = kappa[j] / a
            term = 1 / a
            geo = [term]
            for _ in range(m - 1):
                term = term * r
                geo.append(term)
            h = _series_mul(h, geo, m)
        if not exact:
            scale = math.exp(log_eps * float(sum(t + 1 for t in tau) - K * alpha))
            e = [scale * (-K * log_eps) ** k / math.factorial(k) for k in range(m)]
            h = _series_mul([float(x) for x in h], e, m)
        pref = Fraction((-1) ** m, math.prod(kappa[j] for j in hit))
        if not exact:
            pref = float(pref)
        coeffs = [pref * h[m - j] for j in range(1, m + 1)]
        coeffs += [Fraction(0) if exact else 0.0] * (d - m)
        poles[alpha] = tuple(coeffs)
    return LaurentPrincipalPart(poles)


# ---------------------------------------------------------------------------
# Gamma and polygamma
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _bernoulli_even(count: int) -> tuple[Fraction, ...]:
    """``(B_2, B_4, ..., B_{2*count})`` by the Akiyama-Tanigawa algorithm."""
    n_max = 2 * count
    out = {}
    a = [Fraction(0)] * (n_max + 1)
    for m in range(n_max + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out[m] = a[0]
    return tuple(out[2 * k] for k in range(1, count + 1))


_SHIFT_FLOOR = 20.0
_N_BERNOULLI = 20


def polygamma(n: int, x: float) -> float:
    """``psi^(n)(x)`` for ``x > 0``: upward recurrence, then the asymptotic series."""
    if x <= 0:
        raise ValueError("polygamma is only implemented for x > 0")
    floor = max(_SHIFT_FLOOR, 2.0 * n + 10.0)
    acc = 0.0
    sign = -1.0 if n % 2 == 0 else 1.0  # (-1)^(n+1)
    fact_n = math.factorial(n)
    while x < floor:
        # psi^(n)(x) = psi^(n)(x+1) + (-1)^(n+1) n! / x^(n+1)
        acc += sign * fact_n / x ** (n + 1)
        x += 1.0
    bern = _bernoulli_even(_N_BERNOULLI)
    if n == 0:
        s = math.log(x) - 0.5 / x
        for k, b in enumerate(bern, start=1):
            term = float(b) / (2 * k * x ** (2 * k))
            s -= term
            if abs(term) < 1e-18 * abs(s):
                break
        return s + acc
    s = math.factorial(n - 1) / x ** n + fact_n / (2.0 * x ** (n + 1))
    for k, b in enumerate(bern, start=1):
        term = float(b) * math.factorial(2 * k + n - 1) / (math.factorial(2 * k) * x ** (2 * k + n))
        s += term
        if abs(term) < 1e-18 * abs(s):
            break
    return sign * s + acc


def gamma_derivative_ratios(alpha: float, m: int) -> list[float]:
    """``[Gamma^(k)(alpha) / Gamma(alpha) for k = 0..m]``; finite for every alpha > 0."""
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if m < 0:
        raise ValueError("m must be nonnegative")
    psi = [polygamma(k, float(alpha)) for k in range(m)]
    r = [1.0]
    # Gamma^(n+1) = sum_k C(n,k) Gamma^(k) psi^(n-k)
    for n in range(m):
        r.append(sum(math.comb(n, k) * r[k] * psi[n - k] for k in range(n + 1)))
    return r


def gamma_derivatives(alpha: float, m: int) -> list[float]:
    """``[Gamma(alpha), Gamma'(alpha), ..., Gamma^(m)(alpha)]``.

    Raises OverflowError once ``Gamma(alpha)`` exceeds the float range
    (alpha above about 171.6); :func:`gamma_derivative_ratios` still works there.
    """
    g = math.gamma(float(alpha)) if alpha > 0 else None
    if g is None:
        raise ValueError("alpha must be positive")
    return [g * r for r in gamma_derivative_ratios(alpha, m)]


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------

def laplace_coeffs(L: LaurentPrincipalPart) -> AsymptoticSeries:
    """``c_{a,i} = (-1)^i/(i-1)! * sum_{j>=i} Gamma^(j-i)(a)/(j-i)! * d_{a,j}``."""
    terms = {}
    for alpha, coeffs in L.poles.items():
        if alpha <= 0:
            raise ValueError("poles must be positive")
        top = max((j + 1 for j, c in enumerate(coeffs) if c != 0), default=0)
        if not top:
            continue
        gam = gamma_derivatives(float(alpha), top - 1)
        for i in range(1, top + 1):
            s = sum(gam[j - i] / math.factorial(j - i) * float(coeffs[j - 1])
                    for j in range(i, top + 1))
            terms[(alpha, i)] = (-1) ** i / math.factorial(i - 1) * s
    return AsymptoticSeries(terms)


def state_density_coeffs(L: LaurentPrincipalPart) -> StateDensityCoefficients:
    """``b_{a-1,j} = -d_{a,j} / (j-1)!``; exact when the Laurent data are rational."""
    terms = {}
    for alpha, coeffs in L.poles.items():
        for j, dval in enumerate(coeffs, start=1):
            if dval != 0:
                terms[(alpha - 1, j)] = -dval / math.factorial(j - 1)
    return StateDensityCoefficients(terms)


def laurent_from_state_density(S: StateDensityCoefficients, d: int) -> LaurentPrincipalPart:
    """Inverse of :func:`state_density_coeffs`, padding vectors to length ``d``."""
    poles: dict[Fraction, list] = {}
    for (beta, j), b in S.terms.items():
        alpha = beta + 1
        vec = poles.setdefault(alpha, [Fraction(0)] * d)
        vec[j - 1] = -b * math.factorial(j - 1)
    return LaurentPrincipalPart({a: tuple(v) for a, v in poles.items()})


def evaluate_series(S: AsymptoticSeries, N: float, leading: int | None = None) -> float:
    """Sum ``c N^-alpha (log N)^(i-1)`` over the ``leading`` smallest poles (all if None)."""
    if N <= 1:
        raise ValueError("N must exceed 1")
    alphas = sorted({a for a, _ in S.terms})
    if leading is not None:
        alphas = alphas[:leading]
    keep = set(alphas)
    logn = math.log(N)
    return math.fsum(c * N ** (-float(a)) * logn ** (i - 1)
                     for (a, i), c in S.terms.items() if a in keep)
