"""Newton polyhedra, their facets and compact faces, and the tau-distance.

A Newton polyhedron here is ``conv(G) + R^d_{>=0}`` for a finite antichain ``G``
of exponent vectors. Facets are found exactly with the double-description
method on the cone of valid inequalities, so all arithmetic is integral.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import Exponent, Ideal, as_fraction, exact_rank, format_fraction


def minimal_monomial_generators(exponents: Iterable[Sequence[int]]) -> list[Exponent]:
    """Componentwise-minimal elements of a finite set of exponents, sorted."""
    pts = sorted({tuple(int(a) for a in e) for e in exponents}, key=lambda e: (sum(e), e))
    minimal: list[Exponent] = []
    for e in pts:
        # sorted by total degree, so only earlier points can divide e
        if not any(all(a <= b for a, b in zip(m, e)) for m in minimal):
            minimal.append(e)
    return sorted(minimal)


@dataclass(frozen=True)
class Facet:
    """The inequality ``<normal, alpha> >= offset`` (normal primitive integral)."""

    normal: tuple[int, ...]
    offset: Fraction

    def value(self, point: Sequence) -> Fraction:
        total = 0
        for b, p in zip(self.normal, point):
            total += b * (p if isinstance(p, (int, Fraction)) else as_fraction(p))
        return Fraction(total)

    def to_json(self) -> dict:
        return {"normal": list(self.normal), "offset": format_fraction(self.offset)}


@dataclass(frozen=True)
class Face:
    """A nonempty face of a Newton polyhedron.

    ``active_generators`` are the point generators lying on the face and
    ``rays`` the coordinate directions ``e_j`` in its recession cone; the face
    is compact exactly when ``rays`` is empty. ``supporting_normal`` attains
    its minimum ``offset`` over the polyhedron precisely on this face.
    """

    supporting_normal: tuple[int, ...]
    offset: Fraction
    active_generators: tuple[Exponent, ...]
    rays: tuple[int, ...]
    dim: int

    @property
    def compact(self) -> bool:
        return not self.rays

    def contains_exponent(self, e: Sequence[int]) -> bool:
        return sum(b * a for b, a in zip(self.supporting_normal, e)) == self.offset

    def to_json(self) -> dict:
        return {
            "normal": list(self.supporting_normal),
            "offset": format_fraction(self.offset),
            "generators": [list(g) for g in self.active_generators],
            "rays": list(self.rays),
            "dim": self.dim,
            "compact": self.compact,
        }


@dataclass(frozen=True)
class TauDistance:
    l: Fraction
    theta: int | None

    def __post_init__(self):
        if self.l < 0:
            raise ValueError("tau-distance is nonnegative")
        if (self.theta is None) != (self.l == 0):
            raise ValueError("theta is defined exactly when l > 0")


# ---------------------------------------------------------------------------
# double description
# ---------------------------------------------------------------------------

def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = math.gcd(g, x)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _dot(a, b) -> int:
    return sum(x * y for x, y in zip(a, b))


def extreme_rays(rows: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Extreme rays of the pointed cone ``{y : A y >= 0}`` for an integer matrix ``A``.

    Standard double description with the combinatorial adjacency test. ``A``
    must have full column rank.
    """
    rows = [tuple(int(x) for x in r) for r in rows]
    n = len(rows[0])
    # pick n independent rows to seed the cone
    basis: list[int] = []
    for i in range(len(rows)):
        if exact_rank([rows[k] for k in basis + [i]]) > len(basis):
            basis.append(i)
            if len(basis) == n:
                break
    if len(basis) < n:
        raise ValueError("constraint matrix does not have full column rank")
    inv = _inverse([[Fraction(x) for x in rows[k]] for k in basis])
    rays = []
    for col in range(n):
        vec = [inv[r][col] for r in range(n)]
        den = math.lcm(*(x.denominator for x in vec))
        rays.append(_primitive([int(x * den) for x in vec]))
    zero = [sum(1 << k for k in basis if _dot(rows[k], r) == 0) for r in rays]
    added = set(basis)
    for i, a in enumerate(rows):
        if i in added:
            continue
        vals = [_dot(a, r) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        new_rays = [rays[k] for k in pos + zer]
        new_zero = [zero[k] for k in pos] + [zero[k] | (1 << i) for k in zer]
        for p in pos:
            for q in neg:
                common = zero[p] & zero[q]
                if bin(common).count("1") < n - 2:
                    continue
                if any(k != p and k != q and (zero[k] & common) == common
                       for k in range(len(rays))):
                    continue
                r = [vals[p] * y - vals[q] * x for x, y in zip(rays[p], rays[q])]
                new_rays.append(_primitive(r))
                new_zero.append(common | (1 << i))
        rays, zero = new_rays, new_zero
        added.add(i)
    return sorted(set(rays))


def _inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    aug = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col])
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


# ---------------------------------------------------------------------------
# the polyhedron
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NewtonPolyhedron:
    ambient_dim: int
    point_generators: tuple[Exponent, ...]
    facets: tuple[Facet, ...] = field(default=())

    @classmethod
    def from_exponents(cls, exponents: Iterable[Sequence[int]], ambient_dim: int | None = None):
        gens = minimal_monomial_generators(exponents)
        if not gens:
            raise ValueError("empty Newton polyhedron")
        d = len(gens[0])
        if ambient_dim is not None and ambient_dim != d:
            raise ValueError("exponent length does not match ambient dimension")
        return cls(d, tuple(gens), _facets(gens, d))

    # -- queries ------------------------------------------------------------

    def contains(self, point: Sequence) -> bool:
        return all(f.value(point) >= f.offset for f in self.facets)

    def tight_set(self, facet: Facet) -> tuple[frozenset, frozenset]:
        verts = frozenset(g for g in self.point_generators if facet.value(g) == facet.offset)
        rays = frozenset(j for j in range(self.ambient_dim) if facet.normal[j] == 0)
        return verts, rays

    def face_from_facets(self, facet_indices: Iterable[int]) -> Face | None:
        idx = sorted(set(facet_indices))
        verts = frozenset(self.point_generators)
        rays = frozenset(range(self.ambient_dim))
        normal = [0] * self.ambient_dim
        for k in idx:
            v, r = self.tight_set(self.facets[k])
            verts &= v
            rays &= r
            normal = [a + b for a, b in zip(normal, self.facets[k].normal)]
        if not verts:
            return None
        return self._make_face(verts, rays, tuple(normal))

    def _make_face(self, verts, rays, normal) -> Face:
        verts = tuple(sorted(verts))
        rays = tuple(sorted(rays))
        base = verts[0]
        spans = [tuple(a - b for a, b in zip(v, base)) for v in verts[1:]]
        spans += [tuple(int(i == j) for i in range(self.ambient_dim)) for j in rays]
        dim = exact_rank(spans) if spans else 0
        offset = Fraction(_dot(normal, base))
        return Face(normal, offset, verts, rays, dim)

    def to_json(self) -> dict:
        return {"generators": [list(g) for g in self.point_generators],
                "facets": [f.to_json() for f in self.facets]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, obj) -> NewtonPolyhedron:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls.from_exponents(obj["generators"])


def _facets(gens: list[Exponent], d: int) -> tuple[Facet, ...]:
    # cone of valid inequalities (c, beta): <beta, v> - c >= 0 and beta >= 0
    rows = [(-1,) + tuple(v) for v in gens]
    rows += [(0,) + tuple(int(i == j) for i in range(d)) for j in range(d)]
    facets = []
    for ray in extreme_rays(rows):
        c, beta = ray[0], ray[1:]
        if not any(beta):
            continue
        g = 0
        for b in beta:
            g = math.gcd(g, b)
        facets.append(Facet(tuple(b // g for b in beta), Fraction(c, g)))
    facets.sort(key=lambda f: (f.offset, f.normal))
    return tuple(facets)


def newton_polyhedron(ideal: Ideal) -> NewtonPolyhedron:
    """Newton polyhedron of an ideal, computed from the generator monomials."""
    exps = [e for g in ideal.generators for e in g.exponents()]
    if not exps:
        raise ValueError("empty Newton polyhedron")
    return NewtonPolyhedron.from_exponents(exps, ideal.ambient_dim)


def tau_distance(P: NewtonPolyhedron, tau: Sequence[int] | None = None) -> tuple[TauDistance, Face]:
    """Smallest ``t >= 0`` with ``t*(tau+1)`` in ``P``, its multiplicity and face.

    ``theta`` is the rank of the facet normals active at ``l*(tau+1)``, which is
    the codimension of the smallest face containing that point.
    """
    d = P.ambient_dim
    tau = tuple(tau) if tau is not None else (0,) * d
    if len(tau) != d or any(t < 0 for t in tau):
        raise ValueError("tau must be a nonnegative vector of the ambient dimension")
    w = tuple(t + 1 for t in tau)
    ratios = [(f.offset / _dot(f.normal, w), k) for k, f in enumerate(P.facets) if f.offset > 0]
    if not ratios:
        warnings.warn("origin lies in the Newton polyhedron; tau-distance is 0", stacklevel=2)
        origin = (0,) * d
        face = P._make_face(frozenset([origin]) if origin in P.point_generators else
                            frozenset(P.point_generators), frozenset(range(d)), (0,) * d)
        return TauDistance(Fraction(0), None), face
    l = max(r for r, _ in ratios)
    active = [k for r, k in ratios if r == l]
    theta = exact_rank([P.facets[k].normal for k in active])
    face = P.face_from_facets(active)
    return TauDistance(l, theta), face


def compact_faces(P: NewtonPolyhedron) -> list[Face]:
    """All compact faces, each with a strictly positive supporting normal.

    Faces are the nonempty intersections of facet tight sets; the witness
    normal of a face is the sum of the normals of all facets containing it.
    """
    tight = [P.tight_set(f) for f in P.facets]
    seen: dict[tuple[frozenset, frozenset], None] = {}
    frontier = []
    for v, r in tight:
        if v and (v, r) not in seen:
            seen[(v, r)] = None
            frontier.append((v, r))
    while frontier:
        nxt = []
        for v, r in frontier:
            for v2, r2 in tight:
                key = (v & v2, r & r2)
                if key[0] and key not in seen:
                    seen[key] = None
                    nxt.append(key)
        frontier = nxt
    faces = []
    for v, r in seen:
        if r:
            continue
        containing = [k for k, (v2, r2) in enumerate(tight) if v <= v2]
        normal = [0] * P.ambient_dim
        for k in containing:
            normal = [a + b for a, b in zip(normal, P.facets[k].normal)]
        faces.append(P._make_face(v, frozenset(), tuple(normal)))
    faces.sort(key=lambda f: (f.dim, f.active_generators))
    return faces
