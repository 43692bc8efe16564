"""Finite posets, their order and chain polytopes, and the tropical route between them.

Coordinates of R^P follow the order of ``Poset.elements``. For a non-minimal
element p the step factor is w = -e_p with F = conv(-e_q : q covered by p);
the tropical map of that factor rewrites only coordinate p, to
min(x_p - x_q) over the lower covers q. Applying the steps from the top of
the poset downwards composes to the transfer map.
"""
from dataclasses import dataclass, field
from fractions import Fraction
import heapq
from itertools import permutations, product

from .core import DomainError, UsageError, as_rational
from .ehrhart import count_series
from .mutation import Factor
from .polyhedra import HalfSpace, Polyhedron
from .tropical import _phi, phi_polytope


class Poset:
    """A finite poset given by its cover relations.

    ``covers`` holds pairs (a, b) meaning that b covers a.
    """

    def __init__(self, elements, covers=()):
        elements = tuple(str(e) for e in elements)
        if len(set(elements)) != len(elements):
            raise DomainError("poset labels must be unique")
        self.elements = elements
        self._index = {e: i for i, e in enumerate(elements)}
        pairs = []
        for a, b in covers:
            a, b = str(a), str(b)
            if a not in self._index or b not in self._index:
                raise DomainError(f"cover ({a}, {b}) uses an unknown element")
            if a == b:
                raise DomainError(f"element {a} cannot cover itself")
            if (a, b) not in pairs:
                pairs.append((a, b))
        self.covers = tuple(pairs)
        self._lower = {e: [] for e in elements}
        self._upper = {e: [] for e in elements}
        for a, b in pairs:
            self._lower[b].append(a)
            self._upper[a].append(b)
        for e in elements:
            self._lower[e].sort(key=self._index.get)
            self._upper[e].sort(key=self._index.get)
        self._extension = self._topological_order()
        self._above = {e: set() for e in elements}
        for e in reversed(self._extension):
            for b in self._upper[e]:
                self._above[e].add(b)
                self._above[e] |= self._above[b]
        for a, b in pairs:
            if any(b in self._above[c] for c in self._upper[a] if c != b):
                raise DomainError(f"({a}, {b}) is implied by transitivity, not a cover")

    def _topological_order(self):
        indeg = {e: len(self._lower[e]) for e in self.elements}
        heap = [e for e in self.elements if indeg[e] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            e = heapq.heappop(heap)
            order.append(e)
            for b in self._upper[e]:
                indeg[b] -= 1
                if indeg[b] == 0:
                    heapq.heappush(heap, b)
        if len(order) != len(self.elements):
            raise DomainError("cover relation has a cycle")
        return order

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"Poset({list(self.elements)}, covers={[list(c) for c in self.covers]})"

    def index(self, e):
        return self._index[e]

    def less(self, a, b):
        """a strictly below b."""
        return b in self._above[a]

    def comparable(self, a, b):
        return a == b or self.less(a, b) or self.less(b, a)

    def lower_covers(self, e):
        return tuple(self._lower[e])

    def upper_covers(self, e):
        return tuple(self._upper[e])

    def minimal_elements(self):
        return [e for e in self.elements if not self._lower[e]]

    def maximal_elements(self):
        return [e for e in self.elements if not self._upper[e]]

    def linear_extension(self):
        """Topological order breaking ties by smallest label."""
        return list(self._extension)

    def maximal_chains(self):
        chains = []

        def walk(chain):
            top = chain[-1]
            if not self._upper[top]:
                chains.append(tuple(chain))
                return
            for b in self._upper[top]:
                walk(chain + [b])

        for m in self.minimal_elements():
            walk([m])
        return chains

    def vector(self, x):
        """Coordinates of a point given as a mapping or a sequence, in element order."""
        if isinstance(x, dict):
            if set(x) != set(self.elements):
                raise UsageError("point must be keyed by exactly the poset elements")
            return tuple(as_rational(x[e]) for e in self.elements)
        x = tuple(as_rational(v) for v in x)
        if len(x) != len(self.elements):
            raise UsageError("dimension mismatch")
        return x

    def mapping(self, x):
        return {e: Fraction(v) for e, v in zip(self.elements, x)}

    def relation_matrix(self):
        return frozenset((self._index[a], self._index[b]) for a in self.elements for b in self._above[a])


def enumerate_antichains(poset):
    els = poset.elements
    out = []

    def rec(i, chosen):
        if i == len(els):
            out.append(frozenset(chosen))
            return
        rec(i + 1, chosen)
        e = els[i]
        if all(not poset.comparable(e, c) for c in chosen):
            rec(i + 1, chosen + [e])

    rec(0, [])
    return sorted(out, key=lambda s: (len(s), sorted(poset.index(e) for e in s)))


def enumerate_filters(poset):
    out = []
    for a in enumerate_antichains(poset):
        f = set(a)
        for e in a:
            f |= poset._above[e]
        out.append(frozenset(f))
    return sorted(out, key=lambda s: (len(s), sorted(poset.index(e) for e in s)))


def indicator(poset, subset):
    return tuple(Fraction(1 if e in subset else 0) for e in poset.elements)


def _unit(n, i, s=1):
    return tuple(s if j == i else 0 for j in range(n))


def order_polytope(poset):
    n = len(poset)
    if n == 0:
        raise DomainError("poset must be nonempty")
    hs = []
    for a, b in poset.covers:
        row = [0] * n
        row[poset.index(b)] = 1
        row[poset.index(a)] = -1
        hs.append(HalfSpace(tuple(row), 0))
    for i in range(n):
        hs.append(HalfSpace(_unit(n, i), 0))
        hs.append(HalfSpace(_unit(n, i, -1), -1))
    return Polyhedron.from_hrep("M", hs, dim=n)


def chain_polytope(poset):
    n = len(poset)
    if n == 0:
        raise DomainError("poset must be nonempty")
    hs = [HalfSpace(_unit(n, i), 0) for i in range(n)]
    for chain in poset.maximal_chains():
        row = [0] * n
        for e in chain:
            row[poset.index(e)] = -1
        hs.append(HalfSpace(tuple(row), -1))
    return Polyhedron.from_hrep("M", hs, dim=n)


def _in_order_polytope(poset, x):
    if any(v < 0 or v > 1 for v in x):
        return False
    return all(x[poset.index(a)] <= x[poset.index(b)] for a, b in poset.covers)


def transfer_point(poset, x):
    """Stanley's transfer map; minimal elements keep their coordinate."""
    v = poset.vector(x)
    if not _in_order_polytope(poset, v):
        raise DomainError("point is not in the order polytope")
    out = {}
    for e in poset.elements:
        lower = poset.lower_covers(e)
        xe = v[poset.index(e)]
        out[e] = min(xe - v[poset.index(q)] for q in lower) if lower else xe
    return out


def mutation_steps(poset):
    """(element, Factor) pairs, non-minimal elements from the top down."""
    n = len(poset)
    steps = []
    for e in reversed(poset.linear_extension()):
        lower = poset.lower_covers(e)
        if not lower:
            continue
        w = _unit(n, poset.index(e), -1)
        F = [_unit(n, poset.index(q), -1) for q in lower]
        steps.append((e, Factor.from_vertices(w, F)))
    return steps


def mutation_sequence(poset):
    return [fac for _, fac in mutation_steps(poset)]


def composite_map(poset):
    """The composition of all step maps, as a function on coordinate tuples."""
    steps = [(fac.w.coords, fac.vertices) for _, fac in mutation_steps(poset)]

    def apply(x):
        x = tuple(Fraction(v) for v in x)
        for w, fv in steps:
            x = _phi(w, fv, x)
        return x

    return apply


@dataclass
class StepRecord:
    element: str
    factor: Factor
    convex: bool
    zero_one: bool
    coordinate_local: bool
    vertex_images: list
    hull: Polyhedron


@dataclass
class TheoremReport:
    poset: Poset
    steps: list = field(default_factory=list)
    final_equals_chain: bool = False
    transfer_agrees: bool = False
    passed: bool = False
    failure_step: int = None
    witness: str = None
    order_counts: list = None
    chain_counts: list = None


def _single_step_ok(poset, e, fac, x):
    """The step map for e changes only coordinate e, to min over lower covers of x_e - x_q."""
    y = _phi(fac.w.coords, fac.vertices, x)
    i = poset.index(e)
    expect = min(x[i] - x[poset.index(q)] for q in poset.lower_covers(e))
    return all(y[j] == x[j] for j in range(len(x)) if j != i) and y[i] == expect


def verify_theorem(poset, dilations=0):
    """Run the order-to-chain pipeline and check every claim along the way."""
    if len(poset) == 0:
        raise DomainError("poset must be nonempty")
    report = TheoremReport(poset)
    Q = order_polytope(poset)
    start = list(Q.vertices)
    images = list(start)
    n = len(poset)
    for k, (e, fac) in enumerate(mutation_steps(poset)):
        img = phi_polytope(fac, Q)
        samples = list(Q.vertices) + [tuple(sum(v[i] for v in Q.vertices) / len(Q.vertices) for i in range(n))]
        local = all(_single_step_ok(poset, e, fac, x) for x in samples)
        images = [_phi(fac.w.coords, fac.vertices, x) for x in images]
        zero_one = all(c in (0, 1) for x in images for c in x)
        report.steps.append(StepRecord(e, fac, img.convex, zero_one, local, images, img.hull))
        if not (img.convex and zero_one and local):
            report.failure_step = k
            what = "non-convex image" if not img.convex else (
                "vertex image not a (0,1)-vector" if not zero_one else "step map touches other coordinates")
            report.witness = f"step {k} (element {e}): {what}"
            return report
        Q = img.hull
    C = chain_polytope(poset)
    report.final_equals_chain = Q == C
    composite = composite_map(poset)
    report.transfer_agrees = True
    for x in start:
        t = poset.vector(transfer_point(poset, x))
        if composite(x) != t:
            report.transfer_agrees = False
            report.witness = f"composite and transfer map differ at {[str(c) for c in x]}"
            break
    if not report.final_equals_chain and report.witness is None:
        report.witness = "final polytope differs from the chain polytope"
    report.passed = report.final_equals_chain and report.transfer_agrees
    if dilations:
        report.order_counts = count_series(order_polytope(poset), dilations).values
        report.chain_counts = count_series(C, dilations).values
        if report.order_counts != report.chain_counts:
            report.passed = False
            report.witness = "lattice-point counts differ"
    return report


# enumeration up to isomorphism

def _closure_ok(rel, n):
    for a, b in rel:
        for c, d in rel:
            if b == c and (a, d) not in rel:
                return False
    return True


def _invariants(rel, n):
    below = [0] * n
    above = [0] * n
    for a, b in rel:
        above[a] += 1
        below[b] += 1
    return [(below[i], above[i]) for i in range(n)]


def canonical_form(rel, n):
    """Lexicographically smallest relabelling, searched within invariant classes."""
    inv = _invariants(rel, n)
    classes = {}
    for i in range(n):
        classes.setdefault(inv[i], []).append(i)
    keys = sorted(classes)
    best = None
    for choice in product(*(permutations(classes[k]) for k in keys)):
        order = [i for block in choice for i in block]
        pos = {v: j for j, v in enumerate(order)}
        form = tuple(sorted((pos[a], pos[b]) for a, b in rel))
        if best is None or form < best:
            best = form
    return (n, best)


def _labels(n):
    return [chr(ord("a") + i) if n <= 26 else f"p{i}" for i in range(n)]


def poset_from_relation(rel, n):
    labels = _labels(n)
    covers = []
    for a, b in sorted(rel):
        if not any((a, c) in rel and (c, b) in rel for c in range(n)):
            covers.append((labels[a], labels[b]))
    return Poset(labels, covers)


def enumerate_posets(n):
    """One representative per isomorphism class of posets on n elements."""
    if n < 0:
        raise DomainError("n must be non-negative")
    level = {(0, ()): frozenset()}
    for k in range(n):
        nxt = {}
        for rel in level.values():
            for bits in range(1 << k):
                down = {i for i in range(k) if bits >> i & 1}
                if any((j, i) in rel and j not in down for i in down for j in range(k)):
                    continue
                new = set(rel) | {(i, k) for i in down}
                key = canonical_form(new, k + 1)
                if key not in nxt:
                    nxt[key] = frozenset((a, b) for a, b in key[1])
        level = nxt
    return [poset_from_relation(rel, n) for _, rel in sorted(level.items())]
