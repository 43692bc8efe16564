import json

import pytest

from polymut.formats import (
    FormatError,
    certificate_to_dict,
    dumps,
    factor_from_dict,
    factor_to_dict,
    plimage_to_dict,
    polyhedron_from_dict,
    polyhedron_to_dict,
    poset_from_dict,
    poset_to_dict,
    report_to_dict,
)
from polymut.mutation import Factor, mutate_polyhedron
from polymut.polyhedra import HalfSpace, Polyhedron, polar_dual
from polymut.poset import Poset, verify_theorem
from polymut.tropical import phi_polytope

P_DOC = {"space": "N", "dim": 2, "inequalities": [
    {"normal": [1, 0], "rhs": "-1"}, {"normal": [0, 1], "rhs": "-1"}, {"normal": [1, 1], "rhs": "-1"}]}


def test_polyhedron_round_trip():
    P = polyhedron_from_dict(P_DOC)
    doc = polyhedron_to_dict(P)
    assert doc == {"space": "N", "dim": 2, "vertices": [["-1", "0"], ["0", "-1"]], "rays": [[0, 1], [1, 0]]}
    assert polyhedron_from_dict(doc) == P
    h = polyhedron_to_dict(P, "hrep")
    assert polyhedron_from_dict(h) == P
    assert {x["rhs"] for x in h["inequalities"]} == {"-1"}


def test_rationals_stay_strings():
    Q = Polyhedron.from_vrep("M", [("1/2", 0), (0, "1/3"), (0, 0)])
    text = dumps(polyhedron_to_dict(Q))
    assert '"1/2"' in text and '"1/3"' in text and "." not in text


def test_lines_fall_back_to_inequalities():
    W = polar_dual(Polyhedron.from_vrep("N", [(0, 0)]))
    doc = polyhedron_to_dict(W)
    assert doc == {"space": "M", "dim": 2, "inequalities": []}


def test_bad_documents():
    with pytest.raises(FormatError):
        polyhedron_from_dict({"space": "X", "dim": 2, "vertices": []})
    with pytest.raises(FormatError):
        polyhedron_from_dict({"space": "N", "dim": 2, "vertices": [[0.5, 1]]})
    with pytest.raises(FormatError):
        polyhedron_from_dict({"space": "N", "dim": 2, "vertices": [[1, 2, 3]]})
    with pytest.raises(FormatError):
        polyhedron_from_dict({"space": "N", "dim": 2})
    with pytest.raises(FormatError):
        polyhedron_from_dict([1, 2])
    with pytest.raises(FormatError):
        factor_from_dict({"factor_vertices": [[0, 0]]})
    with pytest.raises(FormatError):
        poset_from_dict({"elements": [1, 2]})


def test_factor_round_trip():
    fac = factor_from_dict({"w": [1, 1], "factor_vertices": [[1, -1], [0, 0]]})
    assert factor_to_dict(fac) == {"w": [1, 1], "factor_vertices": [[0, 0], [1, -1]]}
    assert factor_from_dict({"factor_vertices": [[0, 0]]}, w=(0, 1)).w.coords == (0, 1)
    with pytest.raises(FormatError):
        factor_from_dict({"w": [1, 1], "factor_vertices": [[0, 0]]}, w=(1, 0))


def test_poset_round_trip():
    d = {"elements": ["p", "q", "r"], "covers": [["p", "q"], ["p", "r"]]}
    assert poset_to_dict(poset_from_dict(d)) == d


def test_certificate_contains_family():
    fac = Factor.from_vertices((1, 1), [(0, 0), (1, -1)])
    cert = mutate_polyhedron(polyhedron_from_dict(P_DOC), fac, input_id="P")
    doc = certificate_to_dict(cert)
    assert doc["defined"] and doc["input_id"] == "P"
    assert doc["family"][0] == {"height": "-1", "G": {"space": "N", "dim": 2, "vertices": [["-1", "0"]], "rays": []}}
    assert doc["result"]["vertices"] == [["-1", "0"]]
    assert [p["kind"] for p in doc["parts"]] == ["polytope", "cone"]
    json.dumps(doc)


def test_plimage_and_report_serialise():
    fac = Factor.from_vertices((1, 1), [(0, 0), (1, -1)])
    sq = Polyhedron.from_vrep("M", [(0, 0), (1, 0), (0, 1), (1, 1)])
    doc = plimage_to_dict(phi_polytope(fac, sq))
    assert doc["convex"] and len(doc["pieces"]) == 2
    assert doc["hull"]["vertices"] == [["0", "0"], ["1", "0"], ["1", "2"]]
    rep = report_to_dict(verify_theorem(Poset(["p", "q"], [("p", "q")]), 3))
    assert rep["passed"] and rep["order_counts"] == rep["chain_counts"] == [3, 6, 10]
    assert rep["steps"][0]["vertex_images"] == [["0", "0"], ["0", "1"], ["1", "0"]]


def test_halfspace_document_matches_object():
    P = polyhedron_from_dict(P_DOC)
    assert set(P.hrep) == {HalfSpace((1, 0), -1), HalfSpace((0, 1), -1), HalfSpace((1, 1), -1)}
