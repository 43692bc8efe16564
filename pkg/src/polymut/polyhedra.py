"""Rational polyhedra in dual representation.

A :class:`Polyhedron` lives in one of the two spaces ``"N"`` or ``"M"`` and
may be given by generators (vertices and rays) or by half-spaces. The other
description is computed on first use with an exact double description and
cached. Generators are canonical: vertices sorted lexicographically, rays
primitive and sorted, so comparing them decides set equality.

Lower-dimensional polyhedra are ordinary values stored in ambient
coordinates; their half-space description carries the affine hull as pairs
of opposite inequalities. The empty set is a value as well, and Minkowski
sums with it are empty.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from ._dd import cone_generators
from ._linalg import dot, lcm_of_denominators, primitive, rank
from .core import (
    DomainError,
    LatticeVector,
    QVector,
    UsageError,
    as_int_vector,
    as_point,
    as_rational,
    check_space,
    dual_space,
    format_rational,
)


class EmptyPolyhedron(DomainError):
    pass


class NotPointed(DomainError):
    pass


class OriginNotContained(DomainError):
    pass


@dataclass(frozen=True, order=True)
class HalfSpace:
    """The set {u : <normal, u> >= rhs} with a primitive integer normal."""

    normal: tuple
    rhs: Fraction

    def __post_init__(self):
        a = as_point(self.normal)
        if not any(a):
            raise DomainError("half-space normal must be nonzero")
        L = lcm_of_denominators(a)
        ints = [int(x * L) for x in a]
        g = 0
        for x in ints:
            g = gcd(g, x)
        object.__setattr__(self, "normal", tuple(x // g for x in ints))
        object.__setattr__(self, "rhs", as_rational(self.rhs) * L / g)

    def value(self, x):
        return dot(self.normal, x) - self.rhs

    def contains(self, x):
        return self.value(x) >= 0

    def polar_form(self):
        """(normal, rhs) rescaled so that rhs is -1 or 0 when rhs <= 0."""
        if self.rhs < 0:
            s = -self.rhs
            return tuple(Fraction(x) / s for x in self.normal), Fraction(-1)
        return tuple(Fraction(x) for x in self.normal), self.rhs

    def __str__(self):
        return f"<{list(self.normal)}, u> >= {format_rational(self.rhs)}"


@dataclass(frozen=True)
class VRep:
    vertices: tuple
    rays: tuple = ()


def _halfspace(h):
    if isinstance(h, HalfSpace):
        return h
    normal, rhs = h
    return HalfSpace(tuple(normal), rhs)


def _homogenized_rows(halfspaces, d):
    rows = []
    for h in halfspaces:
        # <a,x> >= b  ->  <a,x> - b t >= 0
        vec = tuple(Fraction(x) for x in h.normal) + (-h.rhs,)
        rows.append(primitive(vec))
    rows.append((0,) * d + (1,))
    return rows


def _generators_from_hrep(halfspaces, d):
    rows = _homogenized_rows(halfspaces, d)
    rays, lines = cone_generators(rows, d + 1)
    verts = []
    rec = []
    for r in rays:
        t = r[d]
        if t > 0:
            verts.append(tuple(Fraction(x, t) for x in r[:d]))
        else:
            rec.append(tuple(r[:d]))
    if not verts:
        raise EmptyPolyhedron("half-spaces have empty intersection")
    return tuple(sorted(verts)), tuple(sorted(rec)), tuple(l[:d] for l in lines)


def _generator_rows(verts, rays, lines, d):
    L = lcm_of_denominators(x for v in verts for x in v)
    rows = [tuple(int(x * L) for x in v) + (L,) for v in verts]
    rows += [tuple(r) + (0,) for r in rays]
    for l in lines:
        rows.append(tuple(l) + (0,))
        rows.append(tuple(-x for x in l) + (0,))
    return rows


def _hrep_from_generators(verts, rays, lines, d):
    """Irredundant facets and affine-hull equalities of conv(verts)+cone(rays)+lin(lines)."""
    gens = _generator_rows(verts, rays, lines, d)
    nv = len(verts)
    dual_rays, dual_lines = cone_generators(gens, d + 1)
    facets = []
    for a in dual_rays:
        # skip the face at infinity: a true facet touches some vertex
        if not any(dot(a, g) == 0 for g in gens[:nv]):
            continue
        facets.append(HalfSpace(a[:d], -a[d]))
    eqs = []
    for a in dual_lines:
        if not any(a[:d]):
            continue
        eqs.append(HalfSpace(a[:d], -a[d]))
        eqs.append(HalfSpace(tuple(-x for x in a[:d]), a[d]))
    return sorted(set(facets)), eqs


def hrep_to_vrep(halfspaces, dim=None):
    """Vertices and rays of an intersection of half-spaces.

    Raises EmptyPolyhedron for an empty intersection and NotPointed when it
    contains a line.
    """
    hs = [_halfspace(h) for h in halfspaces]
    d = _infer_dim(hs, dim)
    verts, rays, lines = _generators_from_hrep(hs, d)
    if lines:
        raise NotPointed("intersection contains a line")
    return VRep(verts, rays)


def vrep_to_hrep(vrep, dim=None):
    """Irredundant half-spaces of conv(vertices) + cone(rays)."""
    return Polyhedron.from_vrep("N", vrep.vertices, vrep.rays, dim=dim).hrep


def _infer_dim(hs, dim):
    if dim is not None:
        return dim
    if not hs:
        raise UsageError("dimension needed for an empty half-space list")
    return len(hs[0].normal)


class Polyhedron:
    """A rational polyhedron tagged with its ambient space.

    Build instances with :meth:`from_vrep`, :meth:`from_hrep`,
    :meth:`empty` or :meth:`whole`.
    """

    def __init__(self, space, dim, *, gens=None, halfspaces=None, empty=False):
        check_space(space)
        self.space = space
        self.dim = dim
        self._empty = True if empty else None
        self._gens = gens
        self._hrep_in = halfspaces
        self._facets = None
        if empty:
            self._gens = ((), (), ())

    # construction

    @classmethod
    def from_vrep(cls, space, vertices, rays=(), dim=None):
        pts = list(dict.fromkeys(as_point(v) for v in vertices))
        rs = []
        for r in rays:
            r = as_int_vector(r)
            if any(r):
                rs.append(primitive(r))
        rs = list(dict.fromkeys(rs))
        if dim is None:
            if pts:
                dim = len(pts[0])
            elif rs:
                dim = len(rs[0])
            else:
                raise UsageError("dimension needed for an empty point list")
        if any(len(p) != dim for p in pts) or any(len(r) != dim for r in rs):
            raise UsageError("inconsistent coordinate lengths")
        if not pts:
            return cls.empty(space, dim)
        facets, eqs = _hrep_from_generators(pts, rs, (), dim)
        all_rows = _homogenized_rows(facets + eqs, dim)
        if rank([h.normal for h in facets + eqs], dim) < dim:
            raise NotPointed("cone of rays contains a line")
        # keep only generators spanning one-dimensional faces of the homogenization
        keep_v, keep_r = [], []
        L = lcm_of_denominators(x for v in pts for x in v)
        for p in pts:
            g = tuple(x * L for x in p) + (L,)
            tight = [row for row in all_rows if dot(row, g) == 0]
            if rank(tight, dim + 1) == dim:
                keep_v.append(p)
        for r in rs:
            g = tuple(r) + (0,)
            tight = [row for row in all_rows if dot(row, g) == 0]
            if rank(tight, dim + 1) == dim:
                keep_r.append(r)
        P = cls(space, dim, gens=(tuple(sorted(keep_v)), tuple(sorted(keep_r)), ()))
        P._empty = False
        P._facets = facets + eqs
        return P

    @classmethod
    def from_hrep(cls, space, halfspaces, dim=None):
        hs = [_halfspace(h) for h in halfspaces]
        d = _infer_dim(hs, dim)
        if any(len(h.normal) != d for h in hs):
            raise UsageError("inconsistent normal lengths")
        return cls(space, d, halfspaces=hs)

    @classmethod
    def empty(cls, space, dim):
        return cls(space, dim, empty=True)

    @classmethod
    def whole(cls, space, dim):
        return cls(space, dim, halfspaces=[])

    # representations

    def generators(self):
        """(vertices, rays, lines); vertices are those of the part orthogonal to the lines."""
        if self._gens is None:
            try:
                gens = _generators_from_hrep(self._hrep_in, self.dim)
            except EmptyPolyhedron:
                self._empty = True
                gens = ((), (), ())
            else:
                self._empty = False
            # compute-then-publish keeps concurrent first use safe
            self._gens = gens
        return self._gens

    @property
    def is_empty(self):
        if self._empty is None:
            self.generators()
        return self._empty

    @property
    def vrep(self):
        verts, rays, lines = self.generators()
        if lines:
            raise NotPointed("polyhedron contains a line")
        return VRep(verts, rays)

    @property
    def vertices(self):
        return self.vrep.vertices

    @property
    def rays(self):
        return self.vrep.rays

    @property
    def hrep(self):
        """Irredundant half-spaces; affine-hull equalities appear as opposite pairs."""
        if self._facets is None:
            if self.is_empty:
                e = (1,) + (0,) * (self.dim - 1)
                facets = [HalfSpace(e, 1), HalfSpace(tuple(-x for x in e), 0)]
            else:
                verts, rays, lines = self.generators()
                f, eqs = _hrep_from_generators(verts, rays, lines, self.dim)
                facets = f + eqs
            self._facets = facets
        return list(self._facets)

    def _constraints(self):
        if self._facets is not None:
            return self._facets
        if self._hrep_in is not None:
            return self._hrep_in
        return self.hrep

    # predicates

    def contains(self, x):
        x = as_point(x)
        if len(x) != self.dim:
            raise UsageError("dimension mismatch")
        if self.is_empty:
            return False
        return all(h.contains(x) for h in self._constraints())

    def contains_origin(self):
        return self.contains((0,) * self.dim)

    def affine_dimension(self):
        if self.is_empty:
            return -1
        verts, rays, lines = self.generators()
        v0 = verts[0]
        rows = [tuple(a - b for a, b in zip(v, v0)) for v in verts[1:]]
        rows += [tuple(r) for r in rays] + [tuple(l) for l in lines]
        return rank(rows, self.dim) if rows else 0

    def is_full_dimensional(self):
        return self.affine_dimension() == self.dim

    def origin_in_interior(self):
        if not self.is_full_dimensional():
            return False
        return all(h.rhs < 0 for h in self.hrep)

    @property
    def is_pointed(self):
        return not self.generators()[2]

    @property
    def is_bounded(self):
        _, rays, lines = self.generators()
        return not rays and not lines

    def is_lattice(self):
        return all(x.denominator == 1 for v in self.vertices for x in v)

    # comparison

    def _key(self):
        verts, rays, lines = self.generators()
        return (self.space, self.dim, verts, rays, lines)

    def __eq__(self, other):
        if not isinstance(other, Polyhedron):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        if self.is_empty:
            return f"Polyhedron({self.space}, empty)"
        verts, rays, lines = self.generators()
        v = [[format_rational(x) for x in p] for p in verts]
        s = f"Polyhedron({self.space}, vertices={v}"
        if rays:
            s += f", rays={[list(r) for r in rays]}"
        if lines:
            s += f", lines={[list(l) for l in lines]}"
        return s + ")"


@dataclass(frozen=True)
class Cone:
    """A pointed rational cone given by its minimal primitive generators."""

    space: str
    dim: int
    rays: tuple = ()

    @classmethod
    def from_generators(cls, space, generators, dim=None):
        gens = [as_int_vector(g) for g in generators]
        if dim is None:
            if not gens:
                raise UsageError("dimension needed for an empty generator list")
            dim = len(gens[0])
        P = Polyhedron.from_vrep(space, [(0,) * dim], gens, dim=dim)
        if P.vertices != ((Fraction(0),) * dim,):
            raise NotPointed("generators span a line")
        return cls(space, dim, P.rays)

    @classmethod
    def trivial(cls, space, dim):
        return cls(space, dim, ())

    @property
    def is_trivial(self):
        return not self.rays

    def as_polyhedron(self):
        return Polyhedron.from_vrep(self.space, [(0,) * self.dim], self.rays, dim=self.dim)


def _as_polyhedron(P):
    if isinstance(P, Cone):
        return P.as_polyhedron()
    if not isinstance(P, Polyhedron):
        raise UsageError(f"expected a Polyhedron, got {type(P).__name__}")
    return P


def _dual_vector(w, P):
    if isinstance(w, (LatticeVector, QVector)):
        if w.space != dual_space(P.space):
            raise UsageError(f"vector in {w.space} cannot act on a polyhedron in {P.space}")
        w = w.coords
    w = as_point(w)
    if len(w) != P.dim:
        raise UsageError("dimension mismatch")
    return w


def convex_hull(space, points, rays=(), dim=None):
    return Polyhedron.from_vrep(space, points, rays, dim=dim)


def equals(A, B):
    A, B = _as_polyhedron(A), _as_polyhedron(B)
    if A.space != B.space:
        raise UsageError("cannot compare polyhedra in different spaces")
    return A == B


def decompose(P):
    """Split a line-free polyhedron into (conv(vertices), cone(rays))."""
    P = _as_polyhedron(P)
    vrep = P.vrep
    if P.is_empty:
        raise EmptyPolyhedron("cannot decompose the empty set")
    polytope = Polyhedron.from_vrep(P.space, vrep.vertices, dim=P.dim)
    return polytope, Cone(P.space, P.dim, vrep.rays)


def minkowski_sum(A, B):
    A, B = _as_polyhedron(A), _as_polyhedron(B)
    if A.space != B.space or A.dim != B.dim:
        raise UsageError("Minkowski sum needs polyhedra in the same space")
    if A.is_empty or B.is_empty:
        return Polyhedron.empty(A.space, A.dim)
    a, b = A.vrep, B.vrep
    pts = [tuple(x + y for x, y in zip(p, q)) for p in a.vertices for q in b.vertices]
    return Polyhedron.from_vrep(A.space, pts, a.rays + b.rays, dim=A.dim)


def minkowski_difference(A, B):
    """{x : x + B is contained in A} for polytopes A and B; may be empty."""
    A, B = _as_polyhedron(A), _as_polyhedron(B)
    if A.space != B.space or A.dim != B.dim:
        raise UsageError("Minkowski difference needs polyhedra in the same space")
    if B.is_empty:
        raise DomainError("subtrahend must be nonempty")
    if A.is_empty:
        return Polyhedron.empty(A.space, A.dim)
    hs = []
    for h in A.hrep:
        for b in B.vertices:
            hs.append(HalfSpace(h.normal, h.rhs - dot(h.normal, b)))
    return Polyhedron.from_hrep(A.space, hs, dim=A.dim)


def slice(P, w, h):
    """Intersection of P with the hyperplane <w, .> = h."""
    P = _as_polyhedron(P)
    w = _dual_vector(w, P)
    h = as_rational(h)
    if not any(w):
        raise DomainError("slicing vector must be nonzero")
    if P.is_empty:
        return Polyhedron.empty(P.space, P.dim)
    hs = P._constraints() + [HalfSpace(w, h), HalfSpace(tuple(-x for x in w), -h)]
    return Polyhedron.from_hrep(P.space, hs, dim=P.dim)


def scale(P, c):
    """c * P for a rational c >= 0 (0 * P is the origin)."""
    P = _as_polyhedron(P)
    c = as_rational(c)
    if c < 0:
        raise DomainError("scaling factor must be non-negative")
    if P.is_empty:
        return P
    if c == 0:
        return Polyhedron.from_vrep(P.space, [(0,) * P.dim], dim=P.dim)
    v = P.vrep
    return Polyhedron.from_vrep(P.space, [tuple(c * x for x in p) for p in v.vertices], v.rays, dim=P.dim)


def translate(P, u):
    P = _as_polyhedron(P)
    u = as_point(u)
    if P.is_empty:
        return P
    v = P.vrep
    return Polyhedron.from_vrep(P.space, [tuple(a + b for a, b in zip(p, u)) for p in v.vertices],
                                v.rays, dim=P.dim)


def linear_image(P, f):
    """Image of a line-free polyhedron under an injective linear map f (a callable on tuples)."""
    P = _as_polyhedron(P)
    if P.is_empty:
        return P
    v = P.vrep
    verts = [as_point(f(p)) for p in v.vertices]
    rays = [primitive(f(tuple(Fraction(x) for x in r))) for r in v.rays]
    return Polyhedron.from_vrep(P.space, verts, rays, dim=P.dim)


def polar_dual(P):
    """{v : <v, u> >= -1 for all u in P}, living in the dual space."""
    P = _as_polyhedron(P)
    out_space = dual_space(P.space)
    d = P.dim
    if P._gens is None and P._hrep_in is not None:
        # origin in P iff every inequality holds at 0
        if any(h.rhs > 0 for h in P._hrep_in):
            raise OriginNotContained("polar dual needs the origin in P")
        pts = [(Fraction(0),) * d]
        rays = []
        for h in P._hrep_in:
            normal, rhs = h.polar_form()
            if rhs < 0:
                pts.append(normal)
            else:
                rays.append(h.normal)
        try:
            return Polyhedron.from_vrep(out_space, pts, rays, dim=d)
        except NotPointed:
            pass
    if P.is_empty or not P.contains_origin():
        raise OriginNotContained("polar dual needs the origin in P")
    verts, rays, lines = P.generators()
    hs = [HalfSpace(v, -1) for v in verts if any(v)]
    hs += [HalfSpace(r, 0) for r in rays]
    for l in lines:
        hs.append(HalfSpace(l, 0))
        hs.append(HalfSpace(tuple(-x for x in l), 0))
    return Polyhedron.from_hrep(out_space, hs, dim=d)
