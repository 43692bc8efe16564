"""Combinatorial mutation of rational polytopes, pointed cones and their sums.

The per-height polytopes G_h are always taken maximal,
``G_h = P_{w,h} (-) (-h)F`` (a Minkowski difference). Every admissible choice
sits inside the maximal one, so the mutation exists exactly when the maximal
family covers the vertices of P, and the resulting polytope does not depend
on the choice.

An undefined mutation is not an error: it is reported through
:class:`MutationCertificate` with ``defined=False``.
"""
from dataclasses import dataclass, field
from fractions import Fraction

from ._linalg import dot, primitive
from .core import DomainError, LatticeVector, UsageError, as_int_vector, as_point, as_rational
from .polyhedra import (
    Cone,
    Polyhedron,
    decompose,
    minkowski_difference,
    minkowski_sum,
    scale,
    slice,
)


class MixedSigns(DomainError):
    """The cone has generators on both sides of (or on) the hyperplane w-perp."""


@dataclass(frozen=True)
class Factor:
    """A width vector w in M together with a lattice polytope F in w-perp (in N)."""

    w: LatticeVector
    polytope: Polyhedron

    def __post_init__(self):
        w = self.w
        if not isinstance(w, LatticeVector):
            w = LatticeVector(tuple(w), "M")
            object.__setattr__(self, "w", w)
        if w.space != "M":
            raise UsageError("width vector must live in M")
        if w.is_zero() or not w.is_primitive():
            raise DomainError(f"width vector {list(w.coords)} is not primitive")
        F = self.polytope
        if F.space != "N" or F.dim != len(w):
            raise UsageError("factor must be a polytope in N of the same dimension as w")
        if F.is_empty or not F.is_bounded:
            raise DomainError("factor must be a nonempty polytope")
        if not F.is_lattice():
            raise DomainError("factor must be a lattice polytope")
        for v in F.vertices:
            if dot(w.coords, v) != 0:
                raise DomainError(f"factor vertex {[str(x) for x in v]} is not in w-perp")

    @classmethod
    def from_vertices(cls, w, vertices):
        w = LatticeVector(tuple(w), "M") if not isinstance(w, LatticeVector) else w
        return cls(w, Polyhedron.from_vrep("N", vertices, dim=len(w)))

    @property
    def dim(self):
        return len(self.w)

    @property
    def vertices(self):
        return self.polytope.vertices

    @property
    def is_trivial(self):
        return len(self.vertices) == 1

    def negated(self):
        return Factor(-self.w, self.polytope)

    def translated(self, u):
        u = as_int_vector(u)
        if dot(self.w.coords, u) != 0:
            raise DomainError("translation must lie in w-perp")
        return Factor.from_vertices(self.w, [tuple(a + b for a, b in zip(v, u)) for v in self.vertices])

    def height(self, x):
        return Fraction(dot(self.w.coords, x))


@dataclass
class MutationCertificate:
    """Outcome of one mutation, with the G_h family used (for audit)."""

    kind: str
    factor: Factor
    family: dict
    result: object
    defined: bool
    failure_height: Fraction = None
    reason: str = None
    input_id: str = ""
    parts: tuple = field(default_factory=tuple)


def _check_inputs(P, fac):
    if not isinstance(fac, Factor):
        raise UsageError("expected a Factor")
    if P.space != "N":
        raise UsageError("combinatorial mutation acts on polyhedra in N")
    if P.dim != fac.dim:
        raise UsageError("dimension mismatch between polyhedron and factor")


def maximal_Gh(P, fac, h):
    """The largest G with G + (-h)F inside the slice of P at height h."""
    h = as_rational(h)
    if h > 0:
        raise DomainError("G_h is only defined for h <= 0")
    if isinstance(P, Cone):
        P = P.as_polyhedron()
    _check_inputs(P, fac)
    return minkowski_difference(slice(P, fac.w, h), scale(fac.polytope, -h))


def _covers(G, fac, h, v):
    if G.is_empty:
        return False
    return minkowski_sum(G, scale(fac.polytope, -h)).contains(v)


def _valid_entry(P, fac, h, G):
    """Condition (vertices at h) <= G + (-h)F <= P_{w,h} for one height."""
    S = slice(P, fac.w, h)
    verts = [v for v in P.vertices if fac.height(v) == h]
    if G.is_empty:
        return not verts
    GF = minkowski_sum(G, scale(fac.polytope, -h))
    if not all(S.contains(p) for p in GF.vertices):
        return False
    return all(GF.contains(v) for v in verts)


def mutate_polytope(P, fac, family=None, input_id=""):
    """Mutation of a rational polytope with respect to ``fac``.

    ``family`` optionally maps negative heights to user-chosen G_h; it is
    checked against the admissibility condition before use.
    """
    _check_inputs(P, fac)
    if P.is_empty or not P.is_bounded:
        raise DomainError("mutate_polytope needs a nonempty polytope")
    verts = P.vertices
    heights = sorted({fac.height(v) for v in verts} | {Fraction(0)})
    gh = {}
    if family is None:
        for h in heights:
            if h < 0:
                gh[h] = maximal_Gh(P, fac, h)
        for h, G in gh.items():
            for v in verts:
                if fac.height(v) == h and not _covers(G, fac, h, v):
                    return MutationCertificate("polytope", fac, gh, None, False, h,
                                               "vertex not covered by G_h + (-h)F", input_id)
    else:
        gh = {as_rational(h): G for h, G in family.items() if as_rational(h) < 0}
        for h in heights:
            if h < 0 and h not in gh:
                gh[h] = Polyhedron.empty("N", P.dim)
        for h in sorted(gh):
            if not _valid_entry(P, fac, h, gh[h]):
                return MutationCertificate("polytope", fac, gh, None, False, h,
                                           "supplied G_h violates the admissibility condition", input_id)
    gh[Fraction(0)] = slice(P, fac.w, 0)
    points = []
    for h, G in gh.items():
        if h < 0 and not G.is_empty:
            points.extend(G.vertices)
    for h in heights:
        if h >= 0:
            S = slice(P, fac.w, h)
            if S.is_empty:
                continue
            for s in S.vertices:
                for f in fac.vertices:
                    points.append(tuple(a + h * b for a, b in zip(s, f)))
    result = Polyhedron.from_vrep("N", points, dim=P.dim)
    return MutationCertificate("polytope", fac, dict(sorted(gh.items())), result, True, input_id=input_id)


def mutate_cone(C, fac, input_id=""):
    """Mutation of a pointed rational cone.

    All generators must be strictly on one side of w-perp; otherwise
    :class:`MixedSigns` is raised.
    """
    if isinstance(C, Polyhedron):
        C = Cone(C.space, C.dim, C.rays)
    _check_inputs(C, fac)
    if C.is_trivial or not any(any(v) for v in fac.vertices):
        # F = {0} mutates nothing, whatever the signs
        return MutationCertificate("cone", fac, {}, C, True, input_id=input_id)
    heights = [fac.height(v) for v in C.rays]
    if all(h > 0 for h in heights):
        S = slice(C, fac.w, 1)
        gens = [primitive(tuple(a + b for a, b in zip(s, f))) for s in S.vertices for f in fac.vertices]
        result = Cone.from_generators("N", gens, dim=C.dim)
        return MutationCertificate("cone", fac, {}, result, True, input_id=input_id)
    if not all(h < 0 for h in heights):
        raise MixedSigns(f"generator heights {[str(h) for h in heights]} are not all of one sign")
    a = max(heights)
    Ga = maximal_Gh(C, fac, a)
    family = {a: Ga}
    for v, h in zip(C.rays, heights):
        if h not in family:
            family[h] = scale(Ga, h / a)
        # v covered by (h/a)G_a + (-h)F  <=>  (a/h)v covered by G_a + (-a)F
        target = tuple(Fraction(x) * a / h for x in v)
        if not _covers(Ga, fac, a, target):
            return MutationCertificate("cone", fac, dict(sorted(family.items())), None, False, h,
                                       "generator not covered by scaled G_a + (-h)F", input_id)
    gens = [primitive(g) for g in Ga.vertices]
    result = Cone.from_generators("N", gens, dim=C.dim)
    return MutationCertificate("cone", fac, dict(sorted(family.items())), result, True, input_id=input_id)


def is_in_PN(P):
    """Line-free, full-dimensional and with the origin in the interior."""
    return P.space == "N" and not P.is_empty and P.is_pointed and P.origin_in_interior()


def mutate_polyhedron(P, fac, input_id=""):
    """Mutation of P = P' + C as mut(P') + mut(C)."""
    _check_inputs(P, fac)
    if not is_in_PN(P):
        raise DomainError("mutate_polyhedron needs a line-free polyhedron with the origin in its interior")
    polytope, cone = decompose(P)
    cp = mutate_polytope(polytope, fac, input_id=input_id)
    try:
        cc = mutate_cone(cone, fac, input_id=input_id)
    except MixedSigns as exc:
        cc = MutationCertificate("cone", fac, {}, None, False, None, f"cone condition fails: {exc}", input_id)
    parts = (cp, cc)
    if not cp.defined:
        return MutationCertificate("polyhedron", fac, cp.family, None, False, cp.failure_height,
                                   "polytope part: " + cp.reason, input_id, parts)
    if not cc.defined:
        return MutationCertificate("polyhedron", fac, cp.family, None, False, cc.failure_height,
                                   "cone part: " + cc.reason, input_id, parts)
    result = minkowski_sum(cp.result, cc.result.as_polyhedron())
    return MutationCertificate("polyhedron", fac, cp.family, result, True, input_id=input_id, parts=parts)


def vertex_witnesses(P, fac, Q):
    """For each vertex q of Q find a vertex f of F with q - <w,q> f in P.

    Returns a list of (q, f, q - <w,q> f); raises DomainError if some vertex
    of Q has no witness.
    """
    out = []
    for q in Q.vertices:
        h = fac.height(q)
        for f in fac.vertices:
            p = tuple(a - h * b for a, b in zip(q, f))
            if P.contains(p):
                out.append((q, f, p))
                break
        else:
            raise DomainError(f"vertex {[str(x) for x in q]} has no witness")
    return out


def shear(fac, u):
    """The unimodular map x -> x + <w, x> u relating mutations by F and F + u."""
    u = as_point(u)
    w = fac.w.coords

    def f(x):
        h = dot(w, x)
        return tuple(a + h * b for a, b in zip(x, u))

    return f
