"""Random instance generators and independent oracles shared by the tests.

The oracles avoid the package's double-description code: planar hulls use
Andrew's monotone chain, and planar mutation is evaluated height by height
with interval arithmetic along w-perp.
"""
from fractions import Fraction
from itertools import product
from math import gcd

from polymut._linalg import nullspace
from polymut.mutation import Factor, maximal_Gh
from polymut.polyhedra import Polyhedron, minkowski_sum, scale


def F(*xs):
    return tuple(Fraction(x) for x in xs)


# generators

def random_point(rng, d, box=2, halves=False):
    den = rng.choice((1, 1, 2)) if halves else 1
    return tuple(Fraction(rng.randint(-box * den, box * den), den) for _ in range(d))


def random_polytope(rng, d, space="N", npts=None, box=2, halves=False):
    """A full-dimensional polytope spanned by random points."""
    while True:
        k = npts or rng.randint(d + 1, d + 4)
        pts = [random_point(rng, d, box, halves) for _ in range(k)]
        P = Polyhedron.from_vrep(space, pts, dim=d)
        if P.is_full_dimensional():
            return P


def random_Q(rng, d, origin="interior", box=2, halves=True):
    """A full-dimensional polytope in M containing the origin, in its interior or on its boundary."""
    while True:
        if origin == "interior":
            Q = random_polytope(rng, d, "M", box=box, halves=halves)
            if Q.origin_in_interior():
                return Q
        else:
            a = random_primitive(rng, d)
            pts = [p for p in (random_point(rng, d, box, halves) for _ in range(d + 5))
                   if sum(x * y for x, y in zip(a, p)) >= 0]
            if len(pts) < d:
                continue
            Q = Polyhedron.from_vrep("M", pts + [(0,) * d], dim=d)
            if Q.is_full_dimensional() and not Q.origin_in_interior():
                return Q


def random_primitive(rng, d, box=2):
    while True:
        w = tuple(rng.randint(-box, box) for _ in range(d))
        g = 0
        for x in w:
            g = gcd(g, x)
        if g == 1:
            return w


def random_factor(rng, d, box=2):
    w = random_primitive(rng, d, box)
    basis = nullspace([w], d)
    k = rng.randint(1, min(3, d))
    pts = set()
    while len(pts) < k:
        c = [rng.randint(-1, 1) for _ in basis]
        pts.add(tuple(sum(ci * b[j] for ci, b in zip(c, basis)) for j in range(d)))
    if rng.random() < 0.7:
        pts.add((0,) * d)
    return Factor.from_vertices(w, sorted(pts))


# alternative G_h families

def vertex_family(P, fac):
    """Smallest admissible family: G_h = conv(v - |h| f_v) over vertices v at height h.

    f_v is a vertex of F with v - |h| f_v in the maximal G_h; such a vertex
    exists whenever the maximal family covers v. Returns None when the
    mutation is undefined.
    """
    fam = {}
    by_h = {}
    for v in P.vertices:
        h = fac.height(v)
        if h < 0:
            by_h.setdefault(h, []).append(v)
    for h, vs in by_h.items():
        G = maximal_Gh(P, fac, h)
        pts = []
        for v in vs:
            for f in fac.vertices:
                q = tuple(a + h * b for a, b in zip(v, f))
                if not G.is_empty and G.contains(q):
                    pts.append(q)
                    break
            else:
                return None
        fam[h] = Polyhedron.from_vrep("N", pts, dim=P.dim)
    return fam


def shrunk_family(P, fac, rng):
    """vertex_family plus, sometimes, a single point of G_h at an extra height."""
    fam = vertex_family(P, fac)
    if fam is None:
        return None
    hmin = min(fac.height(v) for v in P.vertices)
    if hmin < 0 and rng.random() < 0.5:
        h = hmin / 2
        if h not in fam:
            G = maximal_Gh(P, fac, h)
            if not G.is_empty:
                fam[h] = Polyhedron.from_vrep("N", [rng.choice(G.vertices)], dim=P.dim)
    return fam


def family_differs(P, fac, fam):
    for h, G in fam.items():
        if G != maximal_Gh(P, fac, h):
            return True
    return False


def admissible(P, fac, h, G):
    """Condition V(P) at height h inside G + (-h)F inside the slice, checked directly."""
    GF = minkowski_sum(G, scale(fac.polytope, -h)) if not G.is_empty else G
    for p in (GF.vertices if not GF.is_empty else ()):
        if fac.height(p) != h or not P.contains(p):
            return False
    for v in P.vertices:
        if fac.height(v) == h and (GF.is_empty or not GF.contains(v)):
            return False
    return True


# planar oracles

def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def hull2d(points):
    """Vertices of a planar convex hull, sorted."""
    pts = sorted(set(tuple(Fraction(x) for x in p) for p in points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return sorted(lower[:-1] + upper[:-1])


def shoelace(verts):
    """Area of a convex polygon given by its vertex set."""
    pts = hull2d(verts)
    c = [sum(p[i] for p in pts) / len(pts) for i in range(2)]
    from math import atan2

    pts.sort(key=lambda p: atan2(float(p[1] - c[1]), float(p[0] - c[0])))
    s = Fraction(0)
    for i in range(len(pts)):
        x1, y1 = pts[i]
        x2, y2 = pts[(i + 1) % len(pts)]
        s += x1 * y2 - x2 * y1
    return abs(s) / 2


def _edges(verts):
    pts = hull2d(verts)
    if len(pts) < 3:
        return None
    c = (sum(p[0] for p in pts) / len(pts), sum(p[1] for p in pts) / len(pts))
    from math import atan2

    pts.sort(key=lambda p: atan2(float(p[1] - c[1]), float(p[0] - c[0])))
    return [(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))]


def _slice_interval(verts, w, u, h):
    """The slice of a convex polygon at <w,x> = h, as (base point, [t0, t1]) with x = base + t u."""
    pts = hull2d(verts)
    hits = []
    n = len(pts)
    for i in range(n):
        for j in range(i, n):
            a, b = pts[i], pts[j]
            ha = w[0] * a[0] + w[1] * a[1]
            hb = w[0] * b[0] + w[1] * b[1]
            if ha == hb == h:
                hits += [a, b]
            elif (ha - h) * (hb - h) <= 0 and ha != hb:
                t = (h - ha) / (hb - ha)
                hits.append((a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])))
    if not hits:
        return None
    # chords between all vertex pairs cover the polygon, so these are the extreme points
    base = hits[0]
    ts = []
    for p in hits:
        d = (p[0] - base[0], p[1] - base[1])
        t = d[0] / u[0] if u[0] else d[1] / u[1]
        ts.append(t)
    return base, min(ts), max(ts)


def mutate2d_oracle(verts, w, fverts):
    """Planar mutation of conv(verts) by interval arithmetic; None if undefined."""
    basis = nullspace([w], 2)[0]
    u = basis
    fs = []
    for f in fverts:
        fs.append(Fraction(f[0]) / u[0] if u[0] else Fraction(f[1]) / u[1])
    fa, fb = min(fs), max(fs)
    height = lambda p: w[0] * p[0] + w[1] * p[1]
    hs = sorted({height(v) for v in verts} | {Fraction(0)})
    out = []
    for h in hs:
        s = _slice_interval(verts, w, u, h)
        if s is None:
            continue
        base, t0, t1 = s
        at = lambda t: (base[0] + t * u[0], base[1] + t * u[1])
        if h < 0:
            # G = [t0 - |h| fa, t1 - |h| fb]
            g0, g1 = t0 - (-h) * fa, t1 - (-h) * fb
            if g0 > g1:
                if any(height(v) == h for v in verts):
                    return None
                continue
            out += [at(g0), at(g1)]
        else:
            out += [at(t0 + h * fa), at(t1 + h * fb)]
    return hull2d(out)


def brute_lattice_count(Q, m, box):
    """Integer points of mQ inside [-box, box]^d, tested against the H-representation."""
    rows = [(h.normal, h.rhs * m) for h in Q.hrep]
    return sum(1 for x in product(range(-box, box + 1), repeat=Q.dim)
               if all(sum(a * b for a, b in zip(n, x)) >= r for n, r in rows))
