"""Exact-rational multivariate polynomials, ideals and a small Groebner engine.

Everything here is exact: coefficients are :class:`fractions.Fraction` and
no floating point is used except in :meth:`Polynomial.numpy_evaluator`,
which exists for the numeric harness.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np

Exponent = tuple[int, ...]


class PolynomialSyntaxError(ValueError):
    """Raised by :func:`parse_polynomial` with the offending character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def as_fraction(value) -> Fraction:
    """Convert ints, Fractions, decimal strings and 'a/b' strings exactly.

    Floats are converted through their shortest decimal repr, so ``0.1`` becomes
    ``1/10`` and not the binary expansion.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            raise ValueError(f"cannot convert {value!r} to an exact rational")
        return Fraction(repr(float(value)))
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to Fraction")


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def default_variables(d: int) -> tuple[str, ...]:
    return tuple(f"w{i + 1}" for i in range(d))


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order on exponent vectors.

    ``kind`` is ``"grevlex"`` or ``"lex"``; ``permutation`` lists variable
    indices from most to least significant (default: the given order).
    ``eliminate`` > 0 makes a block order in which any monomial involving one
    of the first ``eliminate`` (permuted) variables beats every monomial that
    does not; it is used for saturation.
    """

    kind: str = "grevlex"
    permutation: tuple[int, ...] | None = None
    eliminate: int = 0

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def key(self, e: Exponent):
        if self.permutation is not None:
            e = tuple(e[i] for i in self.permutation)
        if self.kind == "lex":
            base = e
        else:
            base = (sum(e), tuple(-x for x in reversed(e)))
        if self.eliminate:
            return (sum(e[: self.eliminate]), base)
        return base


GREVLEX = MonomialOrder()


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

class Polynomial:
    """Immutable polynomial with rational coefficients in ``ambient_dim`` variables."""

    __slots__ = ("ambient_dim", "_terms", "_hash")

    def __init__(self, ambient_dim: int, terms: Mapping[Sequence[int], object] | None = None):
        if ambient_dim < 1:
            raise ValueError("ambient dimension must be positive")
        self.ambient_dim = int(ambient_dim)
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            exp = tuple(int(a) for a in exp)
            if len(exp) != ambient_dim:
                raise ValueError(f"exponent {exp} does not have length {ambient_dim}")
            if any(a < 0 for a in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = as_fraction(coeff)
            if c:
                c = clean.get(exp, 0) + c
                if c:
                    clean[exp] = c
                else:
                    clean.pop(exp, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, d: int, terms: dict[Exponent, Fraction]) -> Polynomial:
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p.ambient_dim = d
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, d: int) -> Polynomial:
        return cls._raw(d, {})

    @classmethod
    def constant(cls, value, d: int) -> Polynomial:
        return cls(d, {(0,) * d: value})

    @classmethod
    def variable(cls, i: int, d: int) -> Polynomial:
        e = [0] * d
        e[i] = 1
        return cls._raw(d, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, exponent: Sequence[int], coeff=1) -> Polynomial:
        return cls(len(exponent), {tuple(exponent): coeff})

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def exponents(self) -> list[Exponent]:
        return list(self._terms)

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        """True for a single term (any nonzero coefficient)."""
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.ambient_dim, Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def sorted_terms(self, order: MonomialOrder = GREVLEX) -> list[tuple[Exponent, Fraction]]:
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder = GREVLEX) -> tuple[Exponent, Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=order.key)
        return e, self._terms[e]

    # -- arithmetic -----------------------------------------------------------

    def _check(self, other: Polynomial):
        if other.ambient_dim != self.ambient_dim:
            raise ValueError(
                f"dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        return Polynomial.constant(other, self.ambient_dim)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.ambient_dim, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ambient_dim, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = as_fraction(other)
            if not c:
                return Polynomial.zero(self.ambient_dim)
            return Polynomial._raw(self.ambient_dim, {e: v * c for e, v in self._terms.items()})
        self._check(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial._raw(self.ambient_dim, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (1 / as_fraction(other))

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomials only take nonnegative integer powers")
        result = Polynomial.constant(1, self.ambient_dim)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ambient_dim == other.ambient_dim and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other, self.ambient_dim)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ambient_dim, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self.to_string()!r})"

    def __str__(self):
        return self.to_string()

    # -- calculus and substitution ------------------------------------------

    def derivative(self, i: int) -> Polynomial:
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return Polynomial._raw(self.ambient_dim, out)

    def gradient(self) -> list[Polynomial]:
        return [self.derivative(i) for i in range(self.ambient_dim)]

    def evaluate(self, point: Sequence):
        """Evaluate at a point; exact if the point holds ints/Fractions."""
        if len(point) != self.ambient_dim:
            raise ValueError("point has wrong dimension")
        total = 0
        for e, c in self._terms.items():
            term = c
            for x, a in zip(point, e):
                if a:
                    term = term * x ** a
            total = total + term
        return total

    def translate(self, center: Sequence) -> Polynomial:
        """Return ``f(w + center)`` expanded exactly."""
        if len(center) != self.ambient_dim:
            raise ValueError(
                f"center has length {len(center)}, expected {self.ambient_dim}")
        d = self.ambient_dim
        shifted = [Polynomial.variable(i, d) + as_fraction(center[i]) for i in range(d)]
        cache: dict[tuple[int, int], Polynomial] = {}

        def power(i, a):
            if (i, a) not in cache:
                cache[(i, a)] = shifted[i] ** a
            return cache[(i, a)]

        result = Polynomial.zero(d)
        for e, c in self._terms.items():
            term = Polynomial.constant(c, d)
            for i, a in enumerate(e):
                if a:
                    term = term * power(i, a)
            result = result + term
        return result

    def embed(self, new_dim: int, positions: Sequence[int]) -> Polynomial:
        """Re-index variables: old variable ``k`` becomes ``positions[k]``."""
        out = {}
        for e, c in self._terms.items():
            e2 = [0] * new_dim
            for k, a in enumerate(e):
                e2[positions[k]] += a
            out[tuple(e2)] = c
        return Polynomial(new_dim, out)

    def numpy_evaluator(self):
        """Vectorised float evaluator: ``f(X)`` for ``X`` of shape ``(n, d)``."""
        if not self._terms:
            return lambda X: np.zeros(np.asarray(X).shape[0])
        exps = np.array(list(self._terms), dtype=np.int64)
        coeffs = np.array([float(c) for c in self._terms.values()])
        max_pow = int(exps.max())

        def f(X):
            X = np.asarray(X, dtype=float)
            if max_pow == 0:
                return np.full(X.shape[0], coeffs.sum())
            # powers[k] = X**k, shape (max_pow+1, n, d)
            powers = np.empty((max_pow + 1,) + X.shape)
            powers[0] = 1.0
            for k in range(1, max_pow + 1):
                powers[k] = powers[k - 1] * X
            # mono[k] = prod_j X[:, j] ** exps[k, j]
            mono = np.prod(np.stack([powers[exps[:, j], :, j] for j in range(X.shape[1])]),
                           axis=0)
            return coeffs @ mono

        return f

    # -- text -------------------------------------------------------------

    def to_string(self, variables: Sequence[str] | None = None) -> str:
        variables = tuple(variables) if variables else default_variables(self.ambient_dim)
        if not self._terms:
            return "0"
        parts = []
        for k, (e, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            factors = []
            for name, a in zip(variables, e):
                if a == 1:
                    factors.append(name)
                elif a > 1:
                    factors.append(f"{name}^{a}")
            if not factors:
                body = format_fraction(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = format_fraction(mag) + "*" + "*".join(factors)
            if k == 0:
                parts.append(("-" if sign == "-" else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)


def exact_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a rational matrix by fraction-exact Gaussian elimination."""
    if rows and all(type(x) is int for row in rows for x in row):
        return _integer_rank([list(row) for row in rows])
    m = [[as_fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pr = m[rank]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col] / pr[col]
                m[r] = [a - f * b for a, b in zip(m[r], pr)]
        rank += 1
        if rank == len(m):
            break
    return rank


def _integer_rank(m: list[list[int]]) -> int:
    # fraction-free (Bareiss) elimination; every division is exact
    ncols = len(m[0])
    rank, prev = 0, 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        pr = m[rank]
        p = pr[col]
        for r in range(rank + 1, len(m)):
            f = m[r][col]
            m[r] = [(a * p - f * b) // prev for a, b in zip(m[r], pr)]
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d*)?|\.\d+)|([A-Za-z_][A-Za-z_0-9']*)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else pos
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("id", m.group(2), start))
        elif m.group(3) is not None:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, variables):
        self.tokens = _tokenize(text)
        self.i = 0
        self.index = {name: k for k, name in enumerate(variables)}
        self.d = len(variables)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value:
            raise PolynomialSyntaxError(f"expected {value!r}, found {val or 'end of input'!r}", pos)

    def parse(self) -> Polynomial:
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise PolynomialSyntaxError(f"unexpected {val!r}", pos)
        return p

    def expr(self):
        kind, val, pos = self.peek()
        if val in ("+", "-"):
            self.take()
            p = self.term()
            if val == "-":
                p = -p
        else:
            p = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            t = self.term()
            p = p + t if op == "+" else p - t
        return p

    def term(self):
        p = self.power()
        while True:
            kind, val, _ = self.peek()
            if val == "*":
                self.take()
            elif not (kind == "id" or val == "("):
                return p
            # juxtaposition such as 2x or x(y+1) is multiplication
            p = p * self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, val, pos = self.take()
            if val == "-":
                raise PolynomialSyntaxError("negative exponent", pos)
            if kind != "num" or not val.isdigit():
                raise PolynomialSyntaxError("exponent must be a nonnegative integer", pos)
            base = base ** int(val)
        return base

    def atom(self):
        kind, val, pos = self.take()
        if kind == "num":
            q = Fraction(val)
            if self.peek()[1] == "/":
                self.take()
                k2, v2, p2 = self.take()
                if k2 != "num" or not v2.isdigit():
                    raise PolynomialSyntaxError("denominator must be an integer", p2)
                if int(v2) == 0:
                    raise PolynomialSyntaxError("division by zero", p2)
                q = q / int(v2)
            return Polynomial.constant(q, self.d)
        if kind == "id":
            if val not in self.index:
                raise PolynomialSyntaxError(f"unknown variable {val!r}", pos)
            return Polynomial.variable(self.index[val], self.d)
        if val == "(":
            p = self.expr()
            self.expect(")")
            return p
        if val in ("+", "-"):
            p = self.power()
            return -p if val == "-" else p
        raise PolynomialSyntaxError(f"unexpected {val or 'end of input'!r}", pos)


def parse_polynomial(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse ``text`` over the ordered variable list.

    >>> parse_polynomial("x^2*y + 3/2*z", ["x", "y", "z"]).terms
    {(2, 1, 0): Fraction(1, 1), (0, 0, 1): Fraction(3, 2)}
    """
    variables = list(variables)
    if len(set(variables)) != len(variables):
        raise ValueError("duplicate variable names")
    if not variables:
        raise ValueError("need at least one variable")
    return _Parser(text, variables).parse()


# ---------------------------------------------------------------------------
# ideals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Ideal:
    """A finitely generated ideal; generator order is kept as given."""

    generators: tuple[Polynomial, ...]
    variables: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("an ideal needs at least one generator")
        d = gens[0].ambient_dim
        if any(g.ambient_dim != d for g in gens):
            raise ValueError("generators live in different ambient dimensions")
        object.__setattr__(self, "generators", gens)
        if self.variables is not None:
            if len(self.variables) != d:
                raise ValueError("variable list does not match ambient dimension")
            object.__setattr__(self, "variables", tuple(self.variables))

    @property
    def ambient_dim(self) -> int:
        return self.generators[0].ambient_dim

    @property
    def names(self) -> tuple[str, ...]:
        return self.variables or default_variables(self.ambient_dim)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)

    def nonzero_generators(self) -> list[Polynomial]:
        return [g for g in self.generators if not g.is_zero()]

    def is_zero(self) -> bool:
        return not self.nonzero_generators()

    def monomial_exponents(self) -> list[Exponent] | None:
        """Exponents of a monomial generating set if the ideal is monomial, else None.

        The ideal is monomial when every term of every generator is divisible by
        some single-term generator; this is a sufficient test that never needs a
        Groebner basis.
        """
        singles = [g.exponents()[0] for g in self.generators if g.is_monomial()]
        if not singles:
            return None
        for g in self.generators:
            for e in g.exponents():
                if not any(all(a >= b for a, b in zip(e, s)) for s in singles):
                    return None
        return singles

    def is_monomial(self) -> bool:
        return self.monomial_exponents() is not None

    def translate(self, center: Sequence) -> Ideal:
        return Ideal(tuple(g.translate(center) for g in self.generators), self.variables)

    def to_json(self) -> dict:
        names = self.names
        return {"vars": list(names), "gens": [g.to_string(names) for g in self.generators]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def __str__(self):
        names = self.names
        return "<" + ", ".join(g.to_string(names) for g in self.generators) + ">"


def ideal_from_json(obj: Mapping | str) -> Ideal:
    """Build an ideal from ``{"vars": [...], "gens": [...]}`` (dict or JSON text)."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    names = list(obj["vars"])
    gens = tuple(parse_polynomial(g, names) for g in obj["gens"])
    return Ideal(gens, tuple(names))


def parse_ideal(gens: Iterable[str], variables: Sequence[str]) -> Ideal:
    variables = list(variables)
    return Ideal(tuple(parse_polynomial(g, variables) for g in gens), tuple(variables))


# ---------------------------------------------------------------------------
# Groebner bases
# ---------------------------------------------------------------------------

def _divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exponent, b: Exponent) -> Exponent:
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a: Exponent, b: Exponent) -> bool:
    return all(not (x and y) for x, y in zip(a, b))


class _GBPoly:
    """Mutable working polynomial for the Groebner engine (monic, with sugar)."""

    __slots__ = ("terms", "lm", "sugar")

    def __init__(self, terms, key, sugar):
        self.lm = max(terms, key=key)
        lc = terms[self.lm]
        self.terms = {e: c / lc for e, c in terms.items()} if lc != 1 else terms
        self.sugar = sugar


def _reduce_terms(f: dict, basis: list[_GBPoly], key) -> dict:
    """Fully reduce ``f`` modulo ``basis`` (monic leading coefficients)."""
    f = dict(f)
    remainder = {}
    while f:
        lm = max(f, key=key)
        lc = f[lm]
        for g in basis:
            if _divides(g.lm, lm):
                shift = tuple(a - b for a, b in zip(lm, g.lm))
                for e, c in g.terms.items():
                    e2 = tuple(a + b for a, b in zip(e, shift))
                    v = f.get(e2, 0) - lc * c
                    if v:
                        f[e2] = v
                    else:
                        f.pop(e2, None)
                break
        else:
            remainder[lm] = lc
            del f[lm]
    return remainder


def buchberger(ideal: Ideal | Sequence[Polynomial], order: MonomialOrder = GREVLEX) -> Ideal:
    """Reduced Groebner basis of ``ideal`` for ``order``.

    Pairs are selected by the sugar strategy and pruned with the
    Gebauer-Moeller criteria. The returned basis is monic, interreduced and
    sorted by decreasing leading monomial, so it is unique for the order.
    """
    gens = list(ideal.generators if isinstance(ideal, Ideal) else ideal)
    variables = ideal.variables if isinstance(ideal, Ideal) else None
    if not gens:
        raise ValueError("empty generator list")
    d = gens[0].ambient_dim
    key = order.key

    polys: list[_GBPoly] = []
    current: list[int] = []
    pairs: list[tuple[int, int]] = []

    def pair_sugar(i, j):
        gi, gj = polys[i], polys[j]
        lcm = _lcm(gi.lm, gj.lm)
        s = max(gi.sugar + sum(lcm) - sum(gi.lm), gj.sugar + sum(lcm) - sum(gj.lm))
        return s, key(lcm)

    def update(h):
        nonlocal current, pairs
        lmh = polys[h].lm
        candidates = list(current)
        kept = []
        for idx, g in enumerate(candidates):
            lcm_gh = _lcm(polys[g].lm, lmh)
            if _coprime(polys[g].lm, lmh):
                kept.append(g)
                continue
            others = candidates[idx + 1:] + kept
            if any(_divides(_lcm(polys[o].lm, lmh), lcm_gh) for o in others):
                continue
            kept.append(g)
        new_pairs = [(g, h) for g in kept if not _coprime(polys[g].lm, lmh)]
        survivors = []
        for (a, b) in pairs:
            lab = _lcm(polys[a].lm, polys[b].lm)
            if (_divides(lmh, lab) and _lcm(polys[a].lm, lmh) != lab
                    and _lcm(polys[b].lm, lmh) != lab):
                continue
            survivors.append((a, b))
        pairs = survivors + new_pairs
        current = [g for g in current if not _divides(lmh, polys[g].lm)] + [h]

    def add(terms, sugar):
        polys.append(_GBPoly(terms, key, sugar))
        update(len(polys) - 1)

    for g in gens:
        if g.ambient_dim != d:
            raise ValueError("generators live in different ambient dimensions")
        if g.is_zero():
            continue
        r = _reduce_terms(g.terms, [polys[i] for i in current], key)
        if r:
            add(r, g.degree())

    while pairs:
        best = min(range(len(pairs)), key=lambda k: pair_sugar(*pairs[k]))
        i, j = pairs.pop(best)
        gi, gj = polys[i], polys[j]
        lcm = _lcm(gi.lm, gj.lm)
        s: dict[Exponent, Fraction] = {}
        for g, sign in ((gi, 1), (gj, -1)):
            shift = tuple(a - b for a, b in zip(lcm, g.lm))
            for e, c in g.terms.items():
                e2 = tuple(a + b for a, b in zip(e, shift))
                v = s.get(e2, 0) + sign * c
                if v:
                    s[e2] = v
                else:
                    s.pop(e2, None)
        sugar = pair_sugar(i, j)[0]
        r = _reduce_terms(s, [polys[k] for k in current], key)
        if r:
            add(r, sugar)

    # minimal basis, then interreduce
    basis = [polys[i] for i in current]
    basis = [g for g in basis
             if not any(h is not g and _divides(h.lm, g.lm) and (h.lm != g.lm or id(h) < id(g))
                        for h in basis)]
    reduced = []
    for g in basis:
        others = [h for h in basis if h is not g]
        tail = {e: c for e, c in g.terms.items() if e != g.lm}
        r = _reduce_terms(tail, others, key)
        r[g.lm] = Fraction(1)
        reduced.append(Polynomial._raw(d, r))
    if not reduced:
        reduced = [Polynomial.zero(d)]
    reduced.sort(key=lambda p: key(p.leading_term(order)[0]) if not p.is_zero() else (), reverse=True)
    return Ideal(tuple(reduced), variables)


def normal_form(f: Polynomial, basis: Ideal, order: MonomialOrder = GREVLEX) -> Polynomial:
    """Remainder of ``f`` on division by a Groebner basis."""
    key = order.key
    work = [_GBPoly(g.terms, key, g.degree()) for g in basis.generators if not g.is_zero()]
    return Polynomial._raw(f.ambient_dim, _reduce_terms(f.terms, work, key))


def is_unit_ideal(ideal: Ideal | Sequence[Polynomial]) -> bool:
    """True iff the reduced Groebner basis is ``{1}``."""
    gens = ideal.generators if isinstance(ideal, Ideal) else tuple(ideal)
    if any(g.is_constant() and not g.is_zero() for g in gens):
        return True
    gb = buchberger(gens)
    return len(gb) == 1 and gb.generators[0].is_constant() and not gb.generators[0].is_zero()


def saturate_by_coordinates(ideal: Ideal) -> Ideal:
    """Return ``I : (w1*...*wd)^inf`` as a reduced grevlex Groebner basis.

    Uses the extra-variable trick: adjoin ``u``, add ``u*w1*...*wd - 1`` and
    eliminate ``u`` with a block order.
    """
    d = ideal.ambient_dim
    lifted = [g.embed(d + 1, range(1, d + 1)) for g in ideal.generators]
    lifted.append(Polynomial.monomial((1,) + (1,) * d) - 1)
    gb = buchberger(lifted, MonomialOrder("grevlex", eliminate=1))
    kept = []
    for g in gb.generators:
        if all(e[0] == 0 for e in g.exponents()):
            kept.append(Polynomial._raw(d, {e[1:]: c for e, c in g.items()}))
    if not kept:
        kept = [Polynomial.zero(d)]
    return buchberger(Ideal(tuple(kept), ideal.variables))
