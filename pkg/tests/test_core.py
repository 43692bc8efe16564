from fractions import Fraction
from itertools import product
import random

import pytest

from polymut.core import (
    DomainError,
    LatticeVector,
    QVector,
    UsageError,
    as_rational,
    exact_volume,
    format_rational,
    make_primitive,
    pairing,
    pulling_triangulation,
)
from polymut._linalg import det_int, nullspace, rank

from helpers import hull2d, random_polytope, shoelace


def test_rationals_are_exact():
    assert as_rational("3/6") == Fraction(1, 2)
    assert as_rational(4) == 4
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(Fraction(5)) == "5"
    with pytest.raises(TypeError):
        as_rational(0.5)
    with pytest.raises(ValueError):
        as_rational("0.5")
    with pytest.raises(TypeError):
        as_rational(True)


def test_pairing():
    v = QVector((1, 1), "M")
    assert pairing(v, QVector((0, 1), "N")) == 1
    assert pairing(QVector((1, 0), "M"), QVector(("-1/2", 3), "N")) == Fraction(-1, 2)
    assert pairing(QVector((0, 0, 0), "M"), QVector((5, -7, 2), "N")) == 0


def test_pairing_rejects_wrong_spaces():
    with pytest.raises(UsageError):
        pairing(QVector((1, 1), "N"), QVector((0, 1), "N"))
    with pytest.raises(UsageError):
        pairing(QVector((1, 1), "M"), QVector((0, 1, 0), "N"))
    with pytest.raises(UsageError):
        pairing((1, 1), (0, 1))


def test_make_primitive():
    assert make_primitive(LatticeVector((2, -4), "N")).coords == (1, -2)
    assert make_primitive(LatticeVector((0, 3, 0), "M")).coords == (0, 1, 0)
    assert make_primitive(LatticeVector((1, 1), "N")).coords == (1, 1)
    with pytest.raises(DomainError):
        make_primitive(LatticeVector((0, 0), "N"))


def test_lattice_vector_rejects_fractions():
    with pytest.raises(DomainError):
        LatticeVector(("1/2", 0), "N")


def test_volume_examples():
    assert exact_volume([(0, 0), (1, 0), (0, 1), (1, 1)]) == 1
    assert exact_volume([(0, 0), (1, 0), (1, 2)]) == 1
    assert exact_volume(list(product((0, 1), repeat=5))) == 1
    with pytest.raises(DomainError):
        exact_volume([(0, 0), (1, 1), (2, 2)])


def test_volume_of_standard_simplices():
    from math import factorial

    for d in range(1, 6):
        pts = [(0,) * d] + [tuple(int(i == j) for j in range(d)) for i in range(d)]
        assert exact_volume(pts) == Fraction(1, factorial(d))


def test_volume_matches_shoelace():
    rng = random.Random(11)
    for _ in range(60):
        P = random_polytope(rng, 2, halves=True)
        assert exact_volume(P.vertices) == shoelace(P.vertices)


def test_volume_ignores_interior_points_and_scales():
    rng = random.Random(12)
    for _ in range(20):
        P = random_polytope(rng, 3, halves=True)
        v = exact_volume(P.vertices)
        centre = tuple(sum(x[i] for x in P.vertices) / len(P.vertices) for i in range(3))
        assert exact_volume(list(P.vertices) + [centre]) == v
        assert exact_volume([tuple(3 * x for x in p) for p in P.vertices]) == 27 * v


def test_triangulation_covers_without_overlap():
    pts = [(0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2), (2, 2, 2), (2, 2, 0)]
    simplices = pulling_triangulation([tuple(Fraction(x) for x in p) for p in pts])
    assert all(len(s) == 4 for s in simplices)
    total = sum(abs(det_int([[a - b for a, b in zip(pts[i], pts[s[0]])] for i in s[1:]])) for s in simplices)
    assert Fraction(total, 6) == exact_volume(pts)


def test_linalg_helpers():
    assert rank([(1, 2), (2, 4)], 2) == 1
    ns = nullspace([(1, 1, 1)], 3)
    assert len(ns) == 2 and all(sum(v) == 0 for v in ns)
    assert det_int([[2, 1], [1, 1]]) == 1
    assert hull2d([(0, 0), (1, 0), (0, 1), (1, 1), (Fraction(1, 2), Fraction(1, 2))]) == \
        [(0, 0), (0, 1), (1, 0), (1, 1)]
