"""Face polynomials and the sos-nondegeneracy test.

An ideal is sos-nondegenerate when no face ideal ``I_gamma`` (over compact
faces of the Newton polyhedron) has a real zero with all coordinates nonzero.
Each face is tried in three tiers:

1. a generator that cannot vanish on the real torus (a single term, or only
   even exponents with coefficients of one sign) makes the face pass;
2. if saturating by the coordinate product gives the unit ideal there is not
   even a complex torus zero, so the face passes;
3. otherwise a seeded multi-start Levenberg-Marquardt search looks for a real
   torus zero. Finding one makes the ideal degenerate; finding none leaves the
   verdict inconclusive.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import Ideal, Polynomial, is_unit_ideal, saturate_by_coordinates
from .polyhedra import Face, compact_faces, newton_polyhedron

STATUSES = ("nondegenerate", "degenerate", "inconclusive")


@dataclass(frozen=True)
class SearchOptions:
    starts: int = 200
    steps: int = 100
    seed: int = 0
    residual_tol: float = 1e-9
    coordinate_floor: float = 1e-6


@dataclass(frozen=True)
class NondegeneracyVerdict:
    status: str
    witness: tuple[float, ...] | None = None
    failing_face: Face | None = None
    checked_faces: int = 0
    tiers: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "degenerate" and self.witness is None:
            raise ValueError("a degenerate verdict needs a witness")

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "witness": list(self.witness) if self.witness is not None else None,
            "face": self.failing_face.to_json() if self.failing_face is not None else None,
            "checked_faces": self.checked_faces,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def face_polynomial(f: Polynomial, face: Face) -> Polynomial:
    """The terms of ``f`` whose exponents lie on ``face``."""
    return Polynomial(f.ambient_dim, {e: c for e, c in f.items() if face.contains_exponent(e)})


def face_ideal(ideal: Ideal, face: Face) -> Ideal:
    """Ideal of the nonzero face polynomials of the generators.

    If every face polynomial vanishes the result is the zero ideal ``<0>``.
    """
    polys = [face_polynomial(g, face) for g in ideal.generators]
    kept = tuple(p for p in polys if not p.is_zero())
    if not kept:
        kept = (Polynomial.zero(ideal.ambient_dim),)
    return Ideal(kept, ideal.variables)


def _sign_definite_on_torus(p: Polynomial) -> bool:
    if p.is_zero():
        return False
    if p.is_monomial():
        return True
    signs = {c > 0 for _, c in p.items()}
    return len(signs) == 1 and all(a % 2 == 0 for e in p.exponents() for a in e)


def _has_definite_generator(polys: Sequence[Polynomial]) -> bool:
    return any(_sign_definite_on_torus(p) for p in polys)


def torus_zero_search(polys: Sequence[Polynomial], weights: Sequence[int] | None = None,
                      options: SearchOptions = SearchOptions(), stream: int = 0,
                      initial_points: np.ndarray | None = None) -> np.ndarray | None:
    """Look for a common real zero of ``polys`` with every coordinate nonzero.

    Runs batched damped Gauss-Newton (Levenberg-Marquardt) on the residual
    vector from random starts with log-uniform magnitudes in ``[1e-2, 1e2]``
    and random signs. When the system is quasi-homogeneous for the positive
    ``weights`` (true for face ideals) each iterate is rescaled along the
    torus orbit so its largest weighted coordinate is 1, which keeps the
    search away from the origin. Returns the best accepted witness or None.
    """
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return None
    d = polys[0].ambient_dim
    residual_fns = [p.numpy_evaluator() for p in polys]
    jac_fns = [[p.derivative(j).numpy_evaluator() for j in range(d)] for p in polys]
    deg = max(p.degree() for p in polys)

    if initial_points is None:
        ss = np.random.SeedSequence([options.seed, stream])
        rng = np.random.Generator(np.random.Philox(ss))
        mags = 10.0 ** rng.uniform(-2.0, 2.0, size=(options.starts, d))
        signs = rng.choice(np.array([-1.0, 1.0]), size=(options.starts, d))
        X = mags * signs
    else:
        X = np.array(initial_points, dtype=float).reshape(-1, d)
    w = None if weights is None else np.asarray(weights, dtype=float)

    def rescale(X):
        if w is None:
            return X
        with np.errstate(divide="ignore"):
            logs = np.log(np.abs(X))
        u = np.min(-logs / w, axis=1, keepdims=True)
        u = np.where(np.isfinite(u), u, 0.0)
        return X * np.exp(w * u)

    def residuals(X):
        return np.stack([f(X) for f in residual_fns], axis=1)

    def jacobian(X):
        return np.stack([np.stack([g(X) for g in row], axis=1) for row in jac_fns], axis=1)

    X = rescale(X)
    R = residuals(X)
    F = np.sum(R * R, axis=1)
    mu = np.full(X.shape[0], 1e-3)
    eye = np.eye(d)
    for _ in range(options.steps):
        J = jacobian(X)
        JtJ = np.einsum("nki,nkj->nij", J, J)
        g = np.einsum("nki,nk->ni", J, R)
        A = JtJ + (mu * (1.0 + np.einsum("nii->n", JtJ)))[:, None, None] * eye
        try:
            step = np.linalg.solve(A, -g[..., None])[..., 0]
        except np.linalg.LinAlgError:
            step = -g / (1.0 + mu[:, None])
        Xn = rescale(X + step)
        Rn = residuals(Xn)
        Fn = np.sum(Rn * Rn, axis=1)
        ok = np.isfinite(Fn) & (Fn < F)
        X = np.where(ok[:, None], Xn, X)
        R = np.where(ok[:, None], Rn, R)
        F = np.where(ok, Fn, F)
        mu = np.where(ok, mu / 3.0, np.minimum(mu * 4.0, 1e12))

    norms = np.linalg.norm(X, axis=1)
    tol = options.residual_tol * (1.0 + norms ** deg)
    good = (np.max(np.abs(R), axis=1) <= tol) & (np.min(np.abs(X), axis=1) > options.coordinate_floor)
    if not np.any(good):
        return None
    idx = np.flatnonzero(good)
    best = idx[np.argmin(F[idx])]
    return X[best].copy()


def _check_faces(ideal: Ideal, systems, options: SearchOptions) -> NondegeneracyVerdict:
    tiers = {"definite": 0, "saturation": 0, "search": 0}
    checked = 0
    unresolved = False
    for k, (face, polys) in enumerate(systems):
        checked += 1
        if _has_definite_generator(polys):
            tiers["definite"] += 1
            continue
        nonzero = [p for p in polys if not p.is_zero()]
        if nonzero and is_unit_ideal(saturate_by_coordinates(Ideal(tuple(nonzero)))):
            tiers["saturation"] += 1
            continue
        tiers["search"] += 1
        witness = torus_zero_search(nonzero, face.supporting_normal, options, stream=k)
        if witness is not None:
            return NondegeneracyVerdict("degenerate", tuple(float(x) for x in witness),
                                        face, checked, tiers)
        unresolved = True
    status = "inconclusive" if unresolved else "nondegenerate"
    return NondegeneracyVerdict(status, None, None, checked, tiers)


def _options(options: SearchOptions | None, overrides) -> SearchOptions:
    options = options or SearchOptions()
    if overrides:
        options = SearchOptions(**{**options.__dict__, **overrides})
    return options


def is_sos_nondegenerate(ideal: Ideal, options: SearchOptions | None = None,
                         **overrides) -> NondegeneracyVerdict:
    """Decide sos-nondegeneracy face by face (see the module docstring)."""
    if ideal.is_zero():
        raise ValueError("the zero ideal has no Newton polyhedron")
    if any(g.constant_term() != 0 for g in ideal.generators):
        raise ValueError("generators must vanish at the origin")
    options = _options(options, overrides)
    P = newton_polyhedron(ideal)
    systems = [(face, face_ideal(ideal, face).generators) for face in compact_faces(P)]
    return _check_faces(ideal, systems, options)


def is_function_nondegenerate(f: Polynomial, options: SearchOptions | None = None,
                              **overrides) -> NondegeneracyVerdict:
    """Varchenko nondegeneracy: no face polynomial is singular on the real torus."""
    if f.is_zero() or f.constant_term() != 0:
        raise ValueError("f must be nonzero and vanish at the origin")
    options = _options(options, overrides)
    ideal = Ideal((f,))
    P = newton_polyhedron(ideal)
    systems = []
    for face in compact_faces(P):
        fg = face_polynomial(f, face)
        systems.append((face, (fg,) + tuple(fg.gradient())))
    return _check_faces(ideal, systems, options)
