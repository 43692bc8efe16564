"""JSON encodings of polyhedra, factors, posets, certificates and reports.

Rationals are written as "p/q" strings (or "p"), never as floats. Output is
canonical: vertex, ray and facet lists are sorted, so equal inputs give
byte-identical files.
"""
import json
import os
import tempfile

from ._linalg import lcm_of_denominators
from .core import UsageError, as_rational, format_rational
from .mutation import Factor
from .polyhedra import HalfSpace, NotPointed, Polyhedron
from .poset import Poset


class FormatError(UsageError):
    """A document does not match the expected schema."""


def _vec(v):
    return [format_rational(x) for x in v]


def _int_vec(v):
    return [int(x) for x in v]


def _parse_vec(v, what):
    if not isinstance(v, list):
        raise FormatError(f"{what} must be an array")
    try:
        return tuple(as_rational(x) for x in v)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad number in {what}: {exc}") from None


def _require(d, keys, what):
    if not isinstance(d, dict):
        raise FormatError(f"{what} must be a JSON object")
    missing = [k for k in keys if k not in d]
    if missing:
        raise FormatError(f"{what} is missing {', '.join(missing)}")


def polyhedron_to_dict(P, form=None):
    """``form`` is "vrep", "hrep" or None (vrep unless the polyhedron has lines)."""
    if form is None:
        form = "vrep" if P.is_empty or not P.generators()[2] else "hrep"
    out = {"space": P.space, "dim": P.dim}
    if form == "vrep":
        if not P.is_empty and P.generators()[2]:
            raise NotPointed("a polyhedron with lines has no vertex form")
        out["vertices"] = [_vec(v) for v in P.vertices]
        out["rays"] = [_int_vec(r) for r in P.rays]
    elif form == "hrep":
        out["inequalities"] = [{"normal": _int_vec(h.normal), "rhs": format_rational(h.rhs)}
                               for h in sorted(P.hrep)]
    else:
        raise UsageError(f"unknown form {form!r}")
    return out


def polyhedron_from_dict(d):
    _require(d, ("space", "dim"), "polyhedron")
    space, dim = d["space"], d["dim"]
    if space not in ("N", "M"):
        raise FormatError("space must be \"N\" or \"M\"")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise FormatError("dim must be a positive integer")
    if "inequalities" in d:
        if "vertices" in d or "rays" in d:
            raise FormatError("give either vertices/rays or inequalities, not both")
        hs = []
        for item in d["inequalities"]:
            _require(item, ("normal", "rhs"), "inequality")
            normal = _parse_vec(item["normal"], "normal")
            if len(normal) != dim:
                raise FormatError("normal length differs from dim")
            try:
                hs.append(HalfSpace(normal, as_rational(item["rhs"])))
            except (TypeError, ValueError) as exc:
                raise FormatError(f"bad inequality: {exc}") from None
        return Polyhedron.from_hrep(space, hs, dim=dim)
    _require(d, ("vertices",), "polyhedron")
    verts = [_parse_vec(v, "vertex") for v in d["vertices"]]
    rays = [_parse_vec(r, "ray") for r in d.get("rays", [])]
    if any(len(v) != dim for v in verts + rays):
        raise FormatError("coordinate length differs from dim")
    if rays and not verts:
        raise FormatError("rays given without any vertex")
    scaled = [tuple(int(x * lcm_of_denominators(r)) for x in r) for r in rays]
    return Polyhedron.from_vrep(space, verts, scaled, dim=dim)


def factor_to_dict(fac):
    return {"w": list(fac.w.coords), "factor_vertices": [_int_vec(v) for v in fac.vertices]}


def parse_int_list(s):
    try:
        return tuple(int(x) for x in s.split(","))
    except ValueError:
        raise FormatError(f"expected comma-separated integers, got {s!r}") from None


def factor_from_dict(d, w=None):
    """Build a Factor; an explicit ``w`` must agree with any ``w`` in the document."""
    _require(d, ("factor_vertices",), "factor")
    if w is None:
        if "w" not in d:
            raise FormatError("factor needs a width vector")
        w = d["w"]
    elif "w" in d and [int(x) for x in d["w"]] != list(w):
        raise FormatError("--w disagrees with the width vector in the factor file")
    wv = _parse_vec(list(w), "w")
    if any(x.denominator != 1 for x in wv):
        raise FormatError("w must be an integer vector")
    verts = [_parse_vec(v, "factor vertex") for v in d["factor_vertices"]]
    if not verts:
        raise FormatError("factor needs at least one vertex")
    if any(len(v) != len(wv) for v in verts):
        raise FormatError("factor vertex length differs from w")
    return Factor.from_vertices(tuple(int(x) for x in wv), verts)


def poset_to_dict(poset):
    return {"elements": list(poset.elements), "covers": [list(c) for c in poset.covers]}


def poset_from_dict(d):
    _require(d, ("elements",), "poset")
    els = d["elements"]
    covers = d.get("covers", [])
    if not isinstance(els, list) or not all(isinstance(e, str) for e in els):
        raise FormatError("elements must be an array of strings")
    if not isinstance(covers, list) or not all(isinstance(c, list) and len(c) == 2 for c in covers):
        raise FormatError("covers must be an array of [lower, upper] pairs")
    return Poset(els, [tuple(c) for c in covers])


def certificate_to_dict(cert):
    out = {
        "kind": cert.kind,
        "input_id": cert.input_id,
        "factor": factor_to_dict(cert.factor),
        "defined": cert.defined,
        "family": [{"height": format_rational(h), "G": polyhedron_to_dict(G, "vrep")}
                   for h, G in sorted(cert.family.items())],
    }
    if cert.defined:
        res = cert.result
        out["result"] = polyhedron_to_dict(res.as_polyhedron() if hasattr(res, "as_polyhedron") else res)
    else:
        out["failure_height"] = None if cert.failure_height is None else format_rational(cert.failure_height)
        out["reason"] = cert.reason
    if cert.parts:
        out["parts"] = [certificate_to_dict(p) for p in cert.parts]
    return out


def plimage_to_dict(img):
    out = {
        "convex": img.convex,
        "hull": polyhedron_to_dict(img.hull),
        "pieces": [{"chamber_vertex": _int_vec(ch.vertex), "determinant": ch.determinant(),
                    "vertices": [_vec(v) for v in part.vertices]} for ch, part in img.pieces],
    }
    for key in ("source_volume", "piece_volume", "hull_volume"):
        val = getattr(img, key)
        if val is not None:
            out[key] = format_rational(val)
    return out


def count_series_to_dict(cs):
    return {"polytope_id": cs.polytope_id, "m": [m for m, _ in cs.counts], "counts": cs.values}


def report_to_dict(rep):
    out = {
        "poset": poset_to_dict(rep.poset),
        "passed": rep.passed,
        "steps": [{
            "element": s.element,
            "factor": factor_to_dict(s.factor),
            "convex": s.convex,
            "zero_one_vertex_images": s.zero_one,
            "coordinate_local": s.coordinate_local,
            "vertex_images": [_vec(v) for v in s.vertex_images],
            "hull": polyhedron_to_dict(s.hull),
        } for s in rep.steps],
        "final_equals_chain": rep.final_equals_chain,
        "transfer_agrees": rep.transfer_agrees,
    }
    if rep.order_counts is not None:
        out["order_counts"] = rep.order_counts
        out["chain_counts"] = rep.chain_counts
    if not rep.passed:
        out["failure_step"] = rep.failure_step
        out["witness"] = rep.witness
    return out


def dumps(obj):
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from None


def write_atomic(path, text):
    """Write through a temporary file in the same directory, then rename."""
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
