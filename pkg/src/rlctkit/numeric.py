"""Floating-point checks: Laplace integrals, zeta values and (lambda, theta) fits.

Integrals are computed in the coordinates of the unit cube; every region
comes with a map from ``[0,1]^d`` and its Jacobian. Up to three dimensions
an adaptive tensor Gauss-Legendre rule is used, above that scrambled Sobol
points. Everything is seeded and deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.stats import qmc

from .algebra import Polynomial

FUNCTION = "function"
IDEAL = "ideal"


@dataclass(frozen=True)
class Region:
    """Compact integration region given by a map from the unit cube.

    ``kind`` is ``"box"`` (coordinates in ``[lo_j, hi_j]``), ``"chain"``
    (``0 <= w_c1 <= ... <= w_cm <= eps`` with the other coordinates in
    ``[0, eps]``) or ``"simplex"`` (a product of standard simplices
    ``{x >= 0, sum x <= 1}`` on consecutive coordinate blocks).
    """

    kind: str
    dim: int
    lo: tuple[float, ...] = ()
    hi: tuple[float, ...] = ()
    chain: tuple[int, ...] = ()
    eps: float = 1.0
    blocks: tuple[int, ...] = ()

    @classmethod
    def box(cls, dim: int, lo=0.0, hi=1.0) -> Region:
        lo = tuple(float(x) for x in np.broadcast_to(lo, (dim,)))
        hi = tuple(float(x) for x in np.broadcast_to(hi, (dim,)))
        if any(h <= l for l, h in zip(lo, hi)):
            raise ValueError("box needs lo < hi in every coordinate")
        return cls("box", dim, lo=lo, hi=hi)

    @classmethod
    def chain_region(cls, dim: int, chain: Sequence[int], eps: float = 1.0) -> Region:
        chain = tuple(int(c) for c in chain)
        if len(set(chain)) != len(chain) or any(not 0 <= c < dim for c in chain):
            raise ValueError("chain must list distinct coordinate indices")
        return cls("chain", dim, chain=chain, eps=float(eps))

    @classmethod
    def simplex_product(cls, blocks: Sequence[int]) -> Region:
        blocks = tuple(int(b) for b in blocks)
        return cls("simplex", sum(blocks), blocks=blocks)

    def volume(self) -> float:
        if self.kind == "box":
            return float(np.prod(np.subtract(self.hi, self.lo)))
        if self.kind == "chain":
            return self.eps ** self.dim / math.factorial(len(self.chain))
        return float(np.prod([1.0 / math.factorial(b) for b in self.blocks]))

    def map(self, U: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Points ``W`` and Jacobian determinants for unit-cube points ``U``."""
        U = np.asarray(U, dtype=float)
        if self.kind == "box":
            lo, hi = np.array(self.lo), np.array(self.hi)
            return lo + U * (hi - lo), np.full(U.shape[0], float(np.prod(hi - lo)))
        if self.kind == "chain":
            W = self.eps * U
            jac = np.full(U.shape[0], self.eps ** self.dim)
            # w_{c_k} = w_{c_{k+1}} * u_{c_k}, from the top of the chain down
            for k in range(len(self.chain) - 2, -1, -1):
                upper = W[:, self.chain[k + 1]]
                W[:, self.chain[k]] = upper * U[:, self.chain[k]]
                jac = jac * upper / self.eps
            return W, jac
        W = np.empty_like(U)
        jac = np.ones(U.shape[0])
        start = 0
        for b in self.blocks:
            rest = np.ones(U.shape[0])
            for j in range(start, start + b):
                # stick breaking keeps the block inside the simplex
                W[:, j] = rest * U[:, j]
                jac = jac * rest
                rest = rest - W[:, j]
            start += b
        return W, jac

    def map_interval(self, ulo: np.ndarray, uhi: np.ndarray):
        """Boxes enclosing the images of unit-cube boxes, and a Jacobian upper bound."""
        if self.kind == "box":
            lo, hi = np.array(self.lo), np.array(self.hi)
            return lo + ulo * (hi - lo), lo + uhi * (hi - lo), np.full(ulo.shape[0], float(np.prod(hi - lo)))
        if self.kind == "chain":
            # the chain map is increasing in every coordinate
            wlo, _ = self.map(ulo)
            whi, jac_hi = self.map(uhi)
            return wlo, whi, jac_hi
        wlo = np.empty_like(ulo)
        whi = np.empty_like(uhi)
        jac_hi = np.ones(ulo.shape[0])
        start = 0
        for b in self.blocks:
            rlo = np.ones(ulo.shape[0])
            rhi = np.ones(ulo.shape[0])
            for j in range(start, start + b):
                wlo[:, j] = rlo * ulo[:, j]
                whi[:, j] = rhi * uhi[:, j]
                jac_hi = jac_hi * rhi
                rlo, rhi = rlo * (1.0 - uhi[:, j]), rhi * (1.0 - ulo[:, j])
            start += b
        return wlo, whi, jac_hi

    def contains(self, W: np.ndarray) -> np.ndarray:
        W = np.atleast_2d(np.asarray(W, dtype=float))
        if self.kind == "box":
            return np.all((W >= np.array(self.lo)) & (W <= np.array(self.hi)), axis=1)
        if self.kind == "chain":
            ok = np.all((W >= 0) & (W <= self.eps), axis=1)
            for a, b in zip(self.chain, self.chain[1:]):
                ok &= W[:, a] <= W[:, b]
            return ok
        ok = np.all(W >= 0, axis=1)
        start = 0
        for b in self.blocks:
            ok &= W[:, start:start + b].sum(axis=1) <= 1.0
            start += b
        return ok

    def to_json(self) -> dict:
        if self.kind == "box":
            return {"kind": "box", "lo": list(self.lo), "hi": list(self.hi)}
        if self.kind == "chain":
            return {"kind": "chain", "dim": self.dim, "chain": list(self.chain), "eps": self.eps}
        return {"kind": "simplex", "blocks": list(self.blocks)}

    @classmethod
    def from_json(cls, obj: dict, dim: int | None = None) -> Region:
        kind = obj.get("kind", "box")
        if kind == "box":
            d = dim if dim is not None else len(obj["lo"])
            return cls.box(d, obj.get("lo", 0.0), obj.get("hi", 1.0))
        if kind == "chain":
            return cls.chain_region(obj.get("dim", dim), obj["chain"], obj.get("eps", 1.0))
        if kind == "simplex":
            return cls.simplex_product(obj["blocks"])
        raise ValueError(f"unknown region kind {kind!r}")


@dataclass(frozen=True)
class Estimate:
    value: float
    stderr: float
    evaluations: int
    converged: bool


# ---------------------------------------------------------------------------
# interval bounds
# ---------------------------------------------------------------------------

def _imul(alo, ahi, blo, bhi):
    c = np.stack([alo * blo, alo * bhi, ahi * blo, ahi * bhi])
    return c.min(axis=0), c.max(axis=0)


def _ipow(lo, hi, a):
    if a == 0:
        return np.ones_like(lo), np.ones_like(hi)
    plo, phi = lo ** a, hi ** a
    if a % 2:
        return plo, phi
    straddle = (lo < 0) & (hi > 0)
    low = np.where(straddle, 0.0, np.minimum(plo, phi))
    return low, np.maximum(plo, phi)


def _termwise_interval(f: Polynomial):
    terms = [(e, float(c)) for e, c in f.items()]

    def bound(LO, HI):
        tot_lo = np.zeros(LO.shape[0])
        tot_hi = np.zeros(LO.shape[0])
        for e, c in terms:
            mlo = np.ones(LO.shape[0])
            mhi = np.ones(LO.shape[0])
            for j, a in enumerate(e):
                if a:
                    plo, phi = _ipow(LO[:, j], HI[:, j], a)
                    mlo, mhi = _imul(mlo, mhi, plo, phi)
            if c >= 0:
                tot_lo += c * mlo
                tot_hi += c * mhi
            else:
                tot_lo += c * mhi
                tot_hi += c * mlo
        return tot_lo, tot_hi
    return bound


def _quad_min(g, h, r):
    """Minimum of ``g*t + h*t^2/2`` over ``t`` in ``[-r, r]`` (elementwise)."""
    ends = np.minimum(-g * r + 0.5 * h * r * r, g * r + 0.5 * h * r * r)
    with np.errstate(divide="ignore", invalid="ignore"):
        t = np.where(h > 0, -g / h, 0.0)
    inner = np.where((h > 0) & (np.abs(t) <= r), -0.5 * g * g / np.where(h > 0, h, 1.0), np.inf)
    return np.minimum(ends, inner)


def polynomial_interval(f: Polynomial):
    """Enclosure of ``f`` over boxes ``[LO, HI]`` (rows are boxes).

    Intersects the term-wise enclosure with the first- and second-order
    centred forms; the latter are much tighter on small boxes near
    cancelling terms such as ``(x+y)^2``.
    """
    d = f.ambient_dim
    direct = _termwise_interval(f)
    centre = f.numpy_evaluator()
    grad_c = [f.derivative(j).numpy_evaluator() for j in range(d)]
    grads = [_termwise_interval(f.derivative(j)) for j in range(d)]
    hess = {(j, k): _termwise_interval(f.derivative(j).derivative(k))
            for j in range(d) for k in range(j, d)}

    def bound(LO, HI):
        lo, hi = direct(LO, HI)
        c = 0.5 * (LO + HI)
        r = 0.5 * (HI - LO)
        fc = centre(c)
        first = np.zeros(LO.shape[0])
        q_lo = np.zeros(LO.shape[0])
        q_hi = np.zeros(LO.shape[0])
        for j in range(d):
            glo, ghi = grads[j](LO, HI)
            first += np.maximum(np.abs(glo), np.abs(ghi)) * r[:, j]
            g = grad_c[j](c)
            hlo, hhi = hess[(j, j)](LO, HI)
            # exact range of g*t + h*t^2/2 on [-r, r], with h at its extremes
            q_lo += _quad_min(g, hlo, r[:, j])
            q_hi -= _quad_min(-g, -hhi, r[:, j])
        for (j, k), hb in hess.items():
            if j != k:
                hlo, hhi = hb(LO, HI)
                m = np.maximum(np.abs(hlo), np.abs(hhi)) * r[:, j] * r[:, k]
                q_lo -= m
                q_hi += m
        lo = np.maximum(lo, np.maximum(fc - first, fc + q_lo))
        hi = np.minimum(hi, np.minimum(fc + first, fc + q_hi))
        return lo, hi
    return bound


def _exponent_lower_bound(gens, convention):
    bounds = [polynomial_interval(g) for g in gens]

    def lower(LO, HI):
        out = np.zeros(LO.shape[0])
        for b in bounds:
            glo, ghi = b(LO, HI)
            straddle = (glo <= 0) & (ghi >= 0)
            m = np.where(straddle, 0.0, np.minimum(np.abs(glo), np.abs(ghi)))
            out += m * m if convention == IDEAL else m
        return out
    return lower


def _exponent_upper_bound(gens, convention):
    bounds = [polynomial_interval(g) for g in gens]

    def upper(LO, HI):
        out = np.zeros(LO.shape[0])
        for b in bounds:
            glo, ghi = b(LO, HI)
            m = np.maximum(np.abs(glo), np.abs(ghi))
            out += m * m if convention == IDEAL else m
        return out
    return upper


# ---------------------------------------------------------------------------
# integration
# ---------------------------------------------------------------------------

def _gl_cell_rule(order: int, d: int):
    x, w = np.polynomial.legendre.leggauss(order)
    x = (x + 1.0) / 2.0
    w = w / 2.0
    grids = np.meshgrid(*([x] * d), indexing="ij")
    nodes = np.stack([g.ravel() for g in grids], axis=1)
    wgrids = np.meshgrid(*([w] * d), indexing="ij")
    weights = np.prod(np.stack([g.ravel() for g in wgrids], axis=1), axis=1)
    return nodes, weights


def _adaptive_gl(fn, d: int, rtol: float, atol: float, max_evals: int,
                 cell_bound=None, cell_spread=None, order: int = 6, trust: float = 0.1,
                 max_spread: float = 25.0) -> Estimate:
    """Globally adaptive tensor Gauss-Legendre on the unit cube with bisection.

    Every cell is compared with its two halves along each axis; the worst
    cells are bisected along the axis with the largest discrepancy, so thin
    layers along coordinate directions cost only logarithmically many cells.
    When ``cell_bound(lo, hi)`` (an upper bound of the integrand on a box) is
    given, a cell whose nodes never see ``trust`` times that bound is not
    trusted: its error becomes bound times volume and it is bisected along the
    axis that shrinks the bound most. This catches peaks narrower than the
    node spacing.

    ``cell_spread(lo, hi)``, an upper bound on ``log(max/min)`` of the
    integrand on a box, catches the opposite failure: a cell over which the
    integrand changes by more than ``exp(max_spread)`` is not resolved by the
    rule even if its two bisections happen to agree, so it is treated like
    an untrusted cell and bisected along the axis along which it varies most.
    """
    nodes, weights = _gl_cell_rule(order, d)
    evals = 0

    def rule(lo, h):
        nonlocal evals
        pts = lo[:, None, :] + h[:, None, :] * nodes[None, :, :]
        vals = fn(pts.reshape(-1, d)).reshape(lo.shape[0], -1)
        evals += vals.size
        return (vals @ weights) * np.prod(h, axis=1), np.max(np.abs(vals), axis=1)

    def halves(lo, h, j):
        hh = h.copy()
        hh[:, j] /= 2.0
        lo_b = lo.copy()
        lo_b[:, j] += hh[:, j]
        return (lo, hh), (lo_b, hh)

    def assess(lo, h, coarse):
        n = lo.shape[0]
        est = np.empty((d, n))
        errs = np.empty((d, n))
        parts = []
        seen = np.zeros(n)
        for j in range(d):
            (la, ha), (lb, hb) = halves(lo, h, j)
            va, ma = rule(la, ha)
            vb, mb = rule(lb, hb)
            est[j] = va + vb
            errs[j] = np.abs(va + vb - coarse)
            seen = np.maximum(seen, np.maximum(ma, mb))
            parts.append((la, ha, va, lb, hb, vb))
        axis = np.argmax(errs, axis=0)
        err = errs.max(axis=0)
        if cell_bound is not None:
            vol = np.prod(h, axis=1)
            B = cell_bound(lo, lo + h)
            untrusted = seen < trust * B
            if np.any(untrusted):
                shrink = np.empty((d, n))
                for j in range(d):
                    la, ha, _, lb, hb, _ = parts[j]
                    shrink[j] = (cell_bound(la, la + ha) + cell_bound(lb, lb + hb)) * vol / 2.0
                axis = np.where(untrusted, np.argmin(shrink, axis=0), axis)
                err = np.where(untrusted, np.maximum(err, B * vol), err)
            if cell_spread is not None:
                unresolved = cell_spread(lo, lo + h) > max_spread
                if np.any(unresolved):
                    # variation along each axis alone, on the segment through the centre
                    along = np.empty((d, n))
                    mid = lo + h / 2.0
                    for j in range(d):
                        slo, shi = mid.copy(), mid.copy()
                        slo[:, j] = lo[:, j]
                        shi[:, j] = lo[:, j] + h[:, j]
                        along[j] = cell_spread(slo, shi)
                    axis = np.where(unresolved, np.argmax(along, axis=0), axis)
                    err = np.where(unresolved, np.maximum(err, B * vol), err)
        idx = np.arange(n)
        fine = est[axis, idx]
        kids = [np.empty((n, d)), np.empty((n, d)), np.empty(n), np.empty((n, d)), np.empty((n, d)), np.empty(n)]
        for j in range(d):
            m = axis == j
            if np.any(m):
                for slot, arr in zip(kids, parts[j]):
                    slot[m] = arr[m]
        return fine, err, kids

    k = 4
    lo = np.stack(np.meshgrid(*([np.arange(k) / k] * d), indexing="ij"), -1).reshape(-1, d)
    h = np.full(lo.shape, 1.0 / k)
    coarse, _ = rule(lo, h)
    fine, err, kids = assess(lo, h, coarse)
    converged = False
    while True:
        total = math.fsum(fine)
        total_err = math.fsum(err)
        if total_err <= max(rtol * abs(total), atol):
            converged = True
            break
        if evals >= max_evals:
            break
        # bisect the cells that carry the top half of the error
        order_idx = np.argsort(-err, kind="stable")
        cum = np.cumsum(err[order_idx])
        n_split = int(np.searchsorted(cum, 0.5 * cum[-1]) + 1)
        split = np.zeros(err.size, dtype=bool)
        split[order_idx[:n_split]] = True
        la, ha, va, lb, hb, vb = (a[split] for a in kids)
        new_fine, new_err, new_kids = assess(np.concatenate([la, lb]), np.concatenate([ha, hb]),
                                             np.concatenate([va, vb]))
        keep = ~split
        fine = np.concatenate([fine[keep], new_fine])
        err = np.concatenate([err[keep], new_err])
        kids = [np.concatenate([a[keep], b]) for a, b in zip(kids, new_kids)]
    if not converged:
        total_err = 10.0 * max(total_err, rtol * abs(total))
    return Estimate(float(total), float(total_err), evals, converged)


def _qmc(fn, d: int, seed: int, m: int = 14, replicas: int = 16) -> Estimate:
    ss = np.random.SeedSequence(seed)
    vals = []
    for child in ss.spawn(replicas):
        eng = qmc.Sobol(d, scramble=True, seed=np.random.Generator(np.random.Philox(child)))
        U = eng.random_base2(m)
        vals.append(math.fsum(fn(U)) / U.shape[0])
    vals = np.array(vals)
    return Estimate(float(vals.mean()), float(vals.std(ddof=1) / math.sqrt(replicas)),
                    replicas << m, True)


def integrate(fn: Callable[[np.ndarray], np.ndarray], region: Region, *, bound=None,
              spread=None, rtol: float = 1e-6, atol: float = 0.0, max_evals: int = 20_000_000,
              seed: int = 0, qmc_log2: int = 14) -> Estimate:
    """Integrate ``fn(W)`` over ``region``.

    ``bound(WLO, WHI)``, if given, must bound ``|fn|`` from above on boxes in
    the region's coordinates; it makes the adaptive rule reliable for
    sharply peaked integrands. ``spread(WLO, WHI)`` optionally bounds
    ``log(max fn / min fn)`` on such boxes (used only together with ``bound``).
    """
    d = region.dim

    def pulled(U):
        W, jac = region.map(U)
        return fn(W) * jac

    cell_bound = cell_spread = None
    if bound is not None:
        def cell_bound(ulo, uhi):
            wlo, whi, jac_hi = region.map_interval(ulo, uhi)
            return bound(wlo, whi) * jac_hi

        if spread is not None:
            def cell_spread(ulo, uhi):
                wlo, whi, _ = region.map_interval(ulo, uhi)
                return spread(wlo, whi)

    if d <= 3:
        return _adaptive_gl(pulled, d, rtol, atol, max_evals, cell_bound, cell_spread)
    return _qmc(pulled, d, seed, m=qmc_log2)


def _sum_of_squares(gens: Sequence[Polynomial]):
    fs = [g.numpy_evaluator() for g in gens]

    def s(W):
        out = np.zeros(W.shape[0])
        for f in fs:
            v = f(W)
            out += v * v
        return out
    return s


def _as_list(gens) -> list[Polynomial]:
    return [gens] if isinstance(gens, Polynomial) else list(gens)


def _exponent_fn(gens, convention):
    gens = _as_list(gens)
    if convention == IDEAL:
        return _sum_of_squares(gens)
    if convention == FUNCTION:
        if len(gens) != 1:
            raise ValueError("the function convention takes a single polynomial")
        f = gens[0].numpy_evaluator()
        return lambda W: np.abs(f(W))
    raise ValueError(f"unknown convention {convention!r}")


def laplace_value(gens, region: Region, N: float, convention: str = IDEAL, **kw) -> Estimate:
    """``Z(N) = int exp(-N * S(w)) dw`` over the region.

    ``S = sum g_i^2`` in the ideal convention and ``S = |f|`` in the function
    convention. Unconverged adaptive runs are returned with an inflated
    standard error and ``converged=False``.
    """
    if N <= 0:
        raise ValueError("N must be positive")
    S = _exponent_fn(gens, convention)
    lower = _exponent_lower_bound(_as_list(gens), convention)
    upper = _exponent_upper_bound(_as_list(gens), convention)
    kw.setdefault("rtol", 1e-4)
    return integrate(lambda W: np.exp(-N * S(W)), region,
                     bound=lambda lo, hi: np.exp(-N * lower(lo, hi)),
                     spread=lambda lo, hi: N * (upper(lo, hi) - lower(lo, hi)), **kw)


def numeric_zeta(gens, region: Region, z: float, convention: str = IDEAL, **kw) -> Estimate:
    """``int S(w)^(-z/2)`` (ideal) or ``int |f|^(-z)`` (function) for ``z < 0``."""
    if z >= 0:
        raise ValueError("numeric_zeta only evaluates the convergent range z < 0")
    S = _exponent_fn(gens, convention)
    upper = _exponent_upper_bound(_as_list(gens), convention)
    power = -z / 2.0 if convention == IDEAL else -z
    return integrate(lambda W: S(W) ** power, region,
                     bound=lambda lo, hi: upper(lo, hi) ** power, **kw)


# ---------------------------------------------------------------------------
# fitting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FitResult:
    lambda_hat: float
    theta_hat: int
    residual: float
    slope_convention: str
    residuals_by_theta: dict = field(default_factory=dict, compare=False)

    def to_json(self) -> dict:
        return {"lambda_hat": self.lambda_hat, "theta_hat": self.theta_hat,
                "residual": self.residual, "convention": self.slope_convention}


def default_n_grid(count: int = 12, lo: float = 1e2, hi: float = 1e6) -> np.ndarray:
    return np.logspace(math.log10(lo), math.log10(hi), count)


def fit_lambda_theta(samples: Sequence[tuple[float, float]], convention: str = FUNCTION) -> FitResult:
    """Fit ``log Z = a - s log N + (theta - 1) log log N`` for theta in {1, 2, 3}.

    Each theta gives a two-parameter least-squares fit; the theta with the
    smallest RMS residual wins. ``lambda_hat = s`` in the function convention
    and ``2 s`` in the ideal convention.
    """
    if convention not in (FUNCTION, IDEAL):
        raise ValueError(f"unknown convention {convention!r}")
    arr = np.asarray(samples, dtype=float)
    if arr.ndim != 2 or arr.shape[0] < 8:
        raise ValueError("need at least 8 (N, Z) samples")
    N, Z = arr[:, 0], arr[:, 1]
    if np.any(Z <= 0):
        raise ValueError("Z samples must be positive")
    if np.any(N <= math.e):
        raise ValueError("N samples must exceed e so that log log N is defined")
    if math.log10(N.max() / N.min()) < 3 - 1e-9:
        raise ValueError("N samples must span at least three decades")
    logN = np.log(N)
    y = np.log(Z)
    A = np.stack([np.ones_like(logN), -logN], axis=1)
    fits = {}
    for theta in (1, 2, 3):
        target = y - (theta - 1) * np.log(logN)
        coef, *_ = np.linalg.lstsq(A, target, rcond=None)
        rms = float(np.sqrt(np.mean((A @ coef - target) ** 2)))
        fits[theta] = (float(coef[1]), rms)
    theta = min(fits, key=lambda t: (fits[t][1], t))
    slope, rms = fits[theta]
    lam = slope if convention == FUNCTION else 2.0 * slope
    return FitResult(lam, theta, rms, convention, {t: r for t, (_, r) in fits.items()})


def laplace_fit(gens, region: Region, convention: str = FUNCTION,
                n_grid: Sequence[float] | None = None, **kw) -> tuple[FitResult, list]:
    """Evaluate ``Z`` on an N grid and fit (lambda, theta); returns the fit and the rows."""
    n_grid = default_n_grid() if n_grid is None else np.asarray(n_grid, dtype=float)
    rows = []
    for N in n_grid:
        est = laplace_value(gens, region, float(N), convention, **kw)
        rows.append((float(N), est.value, est.stderr))
    fit = fit_lambda_theta([(n, z) for n, z, _ in rows], convention)
    return fit, rows


# ---------------------------------------------------------------------------
# KL comparability
# ---------------------------------------------------------------------------

def kl_comparability(model, q: Sequence[float], point: Sequence[float], radius: float,
                     samples: int = 2000, seed: int = 0) -> tuple[float, float]:
    """Range of ``K(w) / sum (p_i(w) - q_i)^2`` over random points near ``point``.

    ``model`` needs attributes ``p`` (polynomials) and ``domain`` (a Region).
    Points are drawn uniformly from the ball of the given radius and kept if
    they lie in the domain and give positive probabilities.
    """
    q = np.asarray(q, dtype=float)
    if np.any(q <= 0):
        raise ValueError("q must have strictly positive entries")
    fs = [p.numpy_evaluator() for p in model.p]
    center = np.asarray(point, dtype=float)[None, :]
    p0 = np.array([f(center)[0] for f in fs])
    if np.max(np.abs(p0 - q)) > 1e-8:
        raise ValueError("the model does not map the given point to q")
    d = center.shape[1]
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    direction = rng.standard_normal((samples, d))
    direction /= np.linalg.norm(direction, axis=1, keepdims=True)
    r = radius * rng.random(samples) ** (1.0 / d)
    W = center + direction * r[:, None]
    W = W[model.domain.contains(W)]
    P = np.stack([f(W) for f in fs], axis=1)
    ok = np.all(P > 0, axis=1)
    P = P[ok]
    Q = np.sum((P - q) ** 2, axis=1)
    # K = sum q (u - log1p(u)) with u = p/q - 1, using sum(p - q) = 0; this
    # avoids the cancellation in sum q log(q/p) when p is close to q
    U = (P - q) / q
    small = np.abs(U) < 1e-3
    series = U * U * (0.5 - U * (1 / 3 - U * (0.25 - U * (0.2 - U / 6))))
    K = np.sum(q * np.where(small, series, U - np.log1p(np.where(small, 0.0, U))), axis=1)
    pos = Q > 1e-300
    if not np.any(pos):
        raise ValueError("Q vanishes on every sample: the fiber is locally all of the domain")
    ratio = K[pos] / Q[pos]
    return float(ratio.min()), float(ratio.max())
