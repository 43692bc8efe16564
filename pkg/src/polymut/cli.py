"""Command-line front end.

Exit status: 0 on success, 1 when the outcome is mathematically undefined
(mutation undefined, non-convex image, failed theorem check; a JSON witness
is still written), 2 on invalid input.
"""
import argparse
from concurrent.futures import ProcessPoolExecutor
import sys

from . import formats
from .core import PolymutError, format_rational
from .ehrhart import count_series
from .mutation import is_in_PN, mutate_polyhedron, mutate_polytope
from .polyhedra import polar_dual
from .poset import (
    chain_polytope,
    enumerate_posets,
    mutation_steps,
    order_polytope,
    transfer_point,
    verify_theorem,
)
from .tropical import phi_polytope


class _Exit(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _emit(doc, path):
    text = formats.dumps(doc)
    if path:
        formats.write_atomic(path, text)
    else:
        sys.stdout.write(text)


def _polyhedron(args):
    if not args.inp:
        raise _Exit(2, "--in is required")
    return formats.polyhedron_from_dict(formats.load_json(args.inp))


def _factor(args):
    if not args.factor:
        raise _Exit(2, "--factor is required")
    w = formats.parse_int_list(args.w) if args.w else None
    return formats.factor_from_dict(formats.load_json(args.factor), w)


def _poset(args):
    if not args.poset:
        raise _Exit(2, "--poset is required")
    return formats.poset_from_dict(formats.load_json(args.poset))


def cmd_dualize(args):
    P = _polyhedron(args)
    _emit(formats.polyhedron_to_dict(polar_dual(P)), args.out)
    return 0


def cmd_mutate(args):
    P = _polyhedron(args)
    fac = _factor(args)
    if P.space != "N":
        raise _Exit(2, "mutation acts on polyhedra in N")
    if is_in_PN(P):
        cert = mutate_polyhedron(P, fac, input_id=args.inp)
    elif not P.is_empty and P.is_bounded:
        cert = mutate_polytope(P, fac, input_id=args.inp)
    else:
        raise _Exit(2, "input must be a polytope or a line-free polyhedron with the origin in its interior")
    cdoc = formats.certificate_to_dict(cert)
    if args.certificate:
        formats.write_atomic(args.certificate, formats.dumps(cdoc))
    if cert.defined:
        _emit(cdoc["result"], args.out)
        return 0
    _emit({"defined": False, "failure_height": cdoc["failure_height"], "reason": cert.reason}, args.out)
    return 1


def cmd_tropical(args):
    Q = _polyhedron(args)
    fac = _factor(args)
    img = phi_polytope(fac, Q)
    doc = formats.plimage_to_dict(img)
    if args.certificate:
        formats.write_atomic(args.certificate, formats.dumps(doc))
    if img.convex:
        _emit(doc["hull"] | {"convex": True}, args.out)
        return 0
    _emit(doc, args.out)
    return 1


def cmd_poset(args):
    poset = _poset(args)
    if args.action == "order":
        _emit(formats.polyhedron_to_dict(order_polytope(poset)), args.out)
    elif args.action == "chain":
        _emit(formats.polyhedron_to_dict(chain_polytope(poset)), args.out)
    elif args.action == "transfer":
        if not args.point:
            raise _Exit(2, "--point is required for transfer")
        pts = [p.strip() for p in args.point.split(",")]
        y = transfer_point(poset, pts)
        _emit({e: format_rational(y[e]) for e in poset.elements}, args.out)
    else:
        _emit([{"element": e} | formats.factor_to_dict(f) for e, f in mutation_steps(poset)], args.out)
    return 0


def cmd_count(args):
    Q = _polyhedron(args)
    if args.dilation is None:
        raise _Exit(2, "--dilation is required")
    _emit(formats.count_series_to_dict(count_series(Q, args.dilation, args.inp)), args.out)
    return 0


def _verify_one(item):
    doc, dilation = item
    rep = verify_theorem(formats.poset_from_dict(doc), dilation or 0)
    return formats.report_to_dict(rep)


def cmd_verify(args):
    sources = [bool(args.poset), args.all_up_to is not None, bool(args.corpus)]
    if sum(sources) != 1:
        raise _Exit(2, "give exactly one of --poset, --all-up-to, --corpus")
    if args.poset:
        rep = _verify_one((formats.poset_to_dict(_poset(args)), args.dilation))
        _emit(rep, args.out)
        return 0 if rep["passed"] else 1
    if args.corpus:
        corpus = formats.load_json(args.corpus)
        if not isinstance(corpus, list):
            raise _Exit(2, "corpus must be an array of posets")
        posets = [formats.poset_from_dict(d) for d in corpus]
    else:
        if args.all_up_to < 1:
            raise _Exit(2, "--all-up-to must be positive")
        posets = [p for n in range(1, args.all_up_to + 1) for p in enumerate_posets(n)]
    items = [(formats.poset_to_dict(p), args.dilation) for p in posets]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as ex:
            reports = list(ex.map(_verify_one, items, chunksize=4))
    else:
        reports = [_verify_one(it) for it in items]
    counts = {}
    for p in posets:
        counts[len(p)] = counts.get(len(p), 0) + 1
    doc = {
        "posets_per_size": {str(k): v for k, v in sorted(counts.items())},
        "passed": all(r["passed"] for r in reports),
        "failures": [r for r in reports if not r["passed"]],
        "reports": reports,
    }
    _emit(doc, args.out)
    return 0 if doc["passed"] else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="polymut", description="Exact polyhedral mutation tools.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, factor=False):
        p.add_argument("--in", dest="inp", metavar="PATH", help="input polyhedron (JSON)")
        p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
        if factor:
            p.add_argument("--w", metavar="a,b,...", help="width vector")
            p.add_argument("--factor", metavar="PATH", help="factor file (JSON)")
            p.add_argument("--certificate", metavar="PATH", help="write the full certificate here")

    p = sub.add_parser("dualize", help="polar dual of a polyhedron")
    common(p)
    p.set_defaults(func=cmd_dualize)

    p = sub.add_parser("mutate", help="combinatorial mutation")
    common(p, factor=True)
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("tropical", help="image under the tropical map")
    common(p, factor=True)
    p.set_defaults(func=cmd_tropical)

    p = sub.add_parser("poset", help="order/chain polytopes, transfer map, mutation sequence")
    p.add_argument("action", choices=["order", "chain", "transfer", "sequence"])
    p.add_argument("--poset", metavar="PATH", help="poset file (JSON)")
    p.add_argument("--point", metavar="x1,x2,...", help="point for transfer, in element order")
    p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    p.set_defaults(func=cmd_poset)

    p = sub.add_parser("count", help="lattice-point counts of dilations 1..m")
    common(p)
    p.add_argument("--dilation", type=int, metavar="m", help="largest dilation")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify-theorem", help="check the order-to-chain mutation sequence")
    p.add_argument("--poset", metavar="PATH", help="poset file (JSON)")
    p.add_argument("--all-up-to", type=int, metavar="n", help="every poset up to isomorphism with at most n elements")
    p.add_argument("--corpus", metavar="PATH", help="JSON array of posets")
    p.add_argument("--dilation", type=int, default=0, metavar="m",
                   help="also compare lattice-point counts for m = 1..m")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--out", metavar="PATH", help="output file (default: stdout)")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except _Exit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (PolymutError, ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
