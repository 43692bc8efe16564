"""Lattice-point counts of integer dilations, by enumeration over the bounding box."""
from dataclasses import dataclass, field
from itertools import product
from math import ceil, floor

from .core import DomainError


@dataclass
class CountSeries:
    polytope_id: str
    counts: list = field(default_factory=list)

    @property
    def values(self):
        return [c for _, c in self.counts]


def count_lattice_points(Q, m):
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise DomainError("dilation must be a positive integer")
    if Q.is_empty:
        return 0
    if not Q.is_bounded:
        raise DomainError("cannot count lattice points of an unbounded polyhedron")
    verts = Q.vertices
    d = Q.dim
    if d == 0:
        return 1
    ranges = []
    for i in range(d):
        lo = ceil(min(v[i] for v in verts) * m)
        hi = floor(max(v[i] for v in verts) * m)
        if lo > hi:
            return 0
        ranges.append(range(lo, hi + 1))
    rows = [(h.normal, h.rhs * m) for h in Q._constraints()]
    # the last coordinate is not scanned: each constraint bounds it directly
    free = [(n[:-1], r) for n, r in rows if n[-1] == 0]
    lower = [(n[:-1], r, n[-1]) for n, r in rows if n[-1] > 0]
    upper = [(n[:-1], r, n[-1]) for n, r in rows if n[-1] < 0]
    last = ranges.pop()
    total = 0
    for x in product(*ranges):
        if not all(sum(a * b for a, b in zip(nrm, x)) >= r for nrm, r in free):
            continue
        lo, hi = last.start, last.stop - 1
        for nrm, r, c in lower:
            lo = max(lo, ceil((r - sum(a * b for a, b in zip(nrm, x))) / c))
        for nrm, r, c in upper:
            hi = min(hi, floor((r - sum(a * b for a, b in zip(nrm, x))) / c))
        if hi >= lo:
            total += hi - lo + 1
    return total


def count_series(Q, M, polytope_id=""):
    if isinstance(M, bool) or not isinstance(M, int) or M < 1:
        raise DomainError("series length must be a positive integer")
    return CountSeries(polytope_id, [(m, count_lattice_points(Q, m)) for m in range(1, M + 1)])
