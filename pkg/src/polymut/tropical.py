"""The piecewise-linear map u -> u - min_{v in F} <u, v> w on M.

Each vertex v of F owns the chamber K_v = {u : <u, v> <= <u, v'> for all
vertices v'} on which the map is the unimodular linear map
u -> u - <u, v> w. The chambers cover M, and neighbouring maps agree on
shared walls.

(K_v is the negative of the normal-fan cone attached to v, so the sign
flip usually written on the fan is already absorbed here.)
"""
from dataclasses import dataclass
from fractions import Fraction

from ._linalg import det_int, dot
from .core import DomainError, QVector, UsageError, as_point, exact_volume
from .mutation import Factor, mutate_polyhedron
from .polyhedra import HalfSpace, Polyhedron, linear_image, polar_dual


@dataclass(frozen=True)
class Chamber:
    vertex: tuple
    region: tuple
    w: tuple

    def apply(self, u):
        h = dot(u, self.vertex)
        return tuple(Fraction(a) - h * b for a, b in zip(u, self.w))

    def inverse(self, u):
        h = dot(u, self.vertex)
        return tuple(Fraction(a) + h * b for a, b in zip(u, self.w))

    def matrix(self):
        """Integer matrix of the linear piece acting on column vectors."""
        d = len(self.w)
        return [[(1 if i == j else 0) - self.w[i] * self.vertex[j] for j in range(d)] for i in range(d)]

    def determinant(self):
        return det_int(self.matrix())

    def contains(self, u):
        return all(h.contains(u) for h in self.region)


def chambers(fac):
    verts = [tuple(int(x) for x in v) for v in fac.vertices]
    out = []
    for v in verts:
        region = []
        for v2 in verts:
            if v2 != v:
                region.append(HalfSpace(tuple(a - b for a, b in zip(v2, v)), 0))
        out.append(Chamber(v, tuple(sorted(set(region))), fac.w.coords))
    return out


def _phi(w, fverts, u):
    umin = min(dot(u, v) for v in fverts)
    return tuple(Fraction(a) - umin * b for a, b in zip(u, w))


def phi_point(fac, u):
    if isinstance(u, QVector):
        if u.space != "M":
            raise UsageError("the tropical map acts on M")
        u = u.coords
    u = as_point(u)
    if len(u) != fac.dim:
        raise UsageError("dimension mismatch")
    return QVector(_phi(fac.w.coords, fac.vertices, u), "M")


@dataclass
class PLImage:
    """Image of a polytope under the tropical map, piece by piece."""

    pieces: list
    hull: Polyhedron
    convex: bool
    source_volume: Fraction = None
    piece_volume: Fraction = None
    hull_volume: Fraction = None


def phi_polytope(fac, Q):
    if not isinstance(fac, Factor):
        raise UsageError("expected a Factor")
    if Q.space != "M":
        raise UsageError("the tropical map acts on polytopes in M")
    if Q.dim != fac.dim:
        raise UsageError("dimension mismatch")
    if Q.is_empty or not Q.is_bounded or not Q.is_full_dimensional():
        raise DomainError("phi_polytope needs a full-dimensional polytope")
    pieces = []
    for ch in chambers(fac):
        part = Polyhedron.from_hrep("M", Q.hrep + list(ch.region), dim=Q.dim)
        if part.is_empty or not part.is_full_dimensional():
            continue
        pieces.append((ch, linear_image(part, ch.apply)))
    points = [v for _, img in pieces for v in img.vertices]
    hull = Polyhedron.from_vrep("M", points, dim=Q.dim)
    if len(pieces) == 1:
        return PLImage(pieces, hull, True)
    pv = sum((exact_volume(img.vertices) for _, img in pieces), Fraction(0))
    hv = exact_volume(hull.vertices)
    return PLImage(pieces, hull, hv == pv, exact_volume(Q.vertices), pv, hv)


def check_commutation(P, fac):
    """Whether the tropical image of P* is convex and equals the dual of the mutation of P."""
    cert = mutate_polyhedron(P, fac)
    if not cert.defined:
        raise DomainError(f"mutation undefined: {cert.reason}")
    img = phi_polytope(fac, polar_dual(P))
    return img.convex and img.hull == polar_dual(cert.result)
