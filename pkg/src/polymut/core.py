"""Exact scalars, space-tagged vectors, the N/M pairing and exact volume.

Everything here is exact: scalars are :class:`fractions.Fraction` and
floats are rejected at every entry point.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd
import numbers

from ._dd import cone_generators
from ._linalg import det_int, lcm_of_denominators, rank

Rational = Fraction

SPACES = ("N", "M")


class PolymutError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PolymutError, ValueError):
    """An argument lies outside the domain of an operation."""


class UsageError(PolymutError, ValueError):
    """Mismatched dimensions or N/M space tags."""


def dual_space(space):
    check_space(space)
    return "M" if space == "N" else "N"


def check_space(space):
    if space not in SPACES:
        raise UsageError(f"unknown space tag {space!r}")


def as_rational(x):
    """Convert ints, Fractions and 'p/q' strings to a Fraction. Floats are refused."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, numbers.Integral):
        return Fraction(int(x))
    if isinstance(x, str):
        s = x.strip()
        if any(c in s for c in ".eE"):
            raise ValueError(f"decimal notation not allowed: {x!r}")
        return Fraction(s)
    if isinstance(x, numbers.Rational):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"not an exact rational: {x!r}")


def format_rational(q):
    q = as_rational(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_point(coords):
    return tuple(as_rational(x) for x in coords)


def as_int_vector(coords):
    out = []
    for x in coords:
        q = as_rational(x)
        if q.denominator != 1:
            raise DomainError(f"non-integer lattice coordinate {x!r}")
        out.append(q.numerator)
    return tuple(out)


@dataclass(frozen=True)
class QVector:
    coords: tuple
    space: str

    def __post_init__(self):
        check_space(self.space)
        object.__setattr__(self, "coords", as_point(self.coords))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]


@dataclass(frozen=True)
class LatticeVector:
    coords: tuple
    space: str

    def __post_init__(self):
        check_space(self.space)
        object.__setattr__(self, "coords", as_int_vector(self.coords))

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __neg__(self):
        return LatticeVector(tuple(-x for x in self.coords), self.space)

    def is_zero(self):
        return not any(self.coords)

    def is_primitive(self):
        g = 0
        for x in self.coords:
            g = gcd(g, x)
        return g == 1


def pairing(v, u):
    """Natural pairing of an M-vector with an N-vector."""
    if not isinstance(v, (QVector, LatticeVector)) or not isinstance(u, (QVector, LatticeVector)):
        raise UsageError("pairing needs space-tagged vectors")
    if v.space != "M" or u.space != "N":
        raise UsageError(f"pairing expects (M, N), got ({v.space}, {u.space})")
    if len(v) != len(u):
        raise UsageError("dimension mismatch")
    return Fraction(sum(a * b for a, b in zip(v.coords, u.coords)))


def make_primitive(v):
    if v.is_zero():
        raise DomainError("zero vector has no primitive direction")
    g = 0
    for x in v.coords:
        g = gcd(g, x)
    return LatticeVector(tuple(x // g for x in v.coords), v.space)


def _facet_incidences(points):
    """Facet vertex-incidence bitmasks of a full-dimensional polytope."""
    d = len(points[0])
    L = lcm_of_denominators(x for p in points for x in p)
    gens = [tuple(int(x * L) for x in p) + (L,) for p in points]
    facets, lines = cone_generators(gens, d + 1)
    if lines:
        raise DomainError("polytope is not full-dimensional")
    masks = []
    for f in facets:
        if not any(f[:d]):
            continue
        m = 0
        for i, g in enumerate(gens):
            if sum(a * b for a, b in zip(f, g)) == 0:
                m |= 1 << i
        masks.append(m)
    return masks


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def pulling_triangulation(points):
    """Simplices (as index tuples) of a pulling triangulation of conv(points).

    Faces are tracked purely combinatorially through the facet incidences;
    each face is coned from its lowest-index vertex.
    """
    masks = _facet_incidences(points)
    d = len(points[0])
    memo = {}

    def subfacets(face):
        cands = set()
        for m in masks:
            s = face & m
            if s and s != face:
                cands.add(s)
        return [s for s in cands if not any(s != t and (s & t) == s for t in cands)]

    def tri(face, k):
        key = face
        if key in memo:
            return memo[key]
        apex = (face & -face).bit_length() - 1
        if k == 0:
            out = [(apex,)]
        else:
            out = []
            for sub in subfacets(face):
                if sub >> apex & 1:
                    continue
                for s in tri(sub, k - 1):
                    out.append((apex,) + s)
        memo[key] = out
        return out

    return tri((1 << len(points)) - 1, d)


def exact_volume(vertices):
    """Euclidean volume of a full-dimensional polytope given by a point list."""
    pts = list(dict.fromkeys(as_point(v) for v in vertices))
    if not pts:
        raise DomainError("empty point set")
    d = len(pts[0])
    if d == 0:
        raise DomainError("zero-dimensional ambient space")
    if rank([tuple(a - b for a, b in zip(p, pts[0])) for p in pts[1:]], d) < d:
        raise DomainError("polytope is not full-dimensional")
    L = lcm_of_denominators(x for p in pts for x in p)
    ints = [tuple(int(x * L) for x in p) for p in pts]
    total = 0
    for simplex in pulling_triangulation(pts):
        base = ints[simplex[0]]
        rows = [[a - b for a, b in zip(ints[i], base)] for i in simplex[1:]]
        total += abs(det_int(rows))
    return Fraction(total, factorial(d) * L ** d)
