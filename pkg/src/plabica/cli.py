"""Command line interface.

Graphs travel between commands as JSON on stdin/stdout, so invocations
compose: `plabica build --family ch --k 3 --n 6 | plabica labels`.
Exit codes: 0 success, 2 precondition violation, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .plabic import FAMILY_BUILDERS, PlabicError, PlabicGraph, build_family
from .polytopes import (
    check_no_body_is_gt,
    conjecture_scan,
    superpotential_polytope,
)
from .quiver import quiver_from_graph
from .seeds import (
    CLOSED_FORM_FAMILIES,
    closed_form_W,
    superpotential,
    superpotential_terms,
)
from .service import parse_label, serve_forever
from .subsets import DihedralElement


def _read_graph():
    try:
        data = json.load(sys.stdin)
    except ValueError as exc:
        raise PlabicError("malformed", f"stdin is not graph JSON: {exc}")
    return PlabicGraph.from_json(data)


def _emit(payload):
    json.dump(payload, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def cmd_build(args):
    G = build_family(args.family, args.k, args.n).contract()
    if args.shift or args.reflect:
        G = G.dihedral_act(DihedralElement(args.n, args.shift, args.reflect)).contract()
    if args.dot:
        sys.stdout.write(G.to_dot() + "\n")
    else:
        _emit(G.to_json())


def cmd_labels(args):
    G = _read_graph()
    _emit(
        {
            "left": G.label_collection().to_json(),
            "right": G.right_labels().to_json(),
            "mutable": [lab.to_json() for lab in G.mutable_labels()],
        }
    )


def cmd_mutate(args):
    G = _read_graph()
    label = parse_label([int(x) for x in args.label.split(",")], G.n)
    _emit(G.mutate(label).to_json())


def cmd_orbit(args):
    G = _read_graph()
    _emit({"orbit": [C.to_json() for C in G.orbit()], "size": len(G.orbit())})


def cmd_stabilizer(args):
    G = _read_graph()
    stab = G.stabilizer()
    _emit(
        {
            "stabilizer": [
                {"shift": g.shift, "reflected": g.reflected} for g in stab
            ],
            "order": len(stab),
        }
    )


def cmd_quiver(args):
    G = _read_graph()
    Q = quiver_from_graph(G)
    if args.dot:
        sys.stdout.write(Q.to_dot() + "\n")
    else:
        _emit(Q.to_json())


def cmd_superpotential(args):
    if args.closed_form:
        if args.k is None or args.n is None:
            raise PlabicError("invalid-family", "--closed-form needs --k and --n")
        expr = closed_form_W(args.closed_form, args.m, args.k, args.n)
        _emit({"W": expr.to_json()})
        return
    G = _read_graph()
    terms = superpotential_terms(G)
    _emit(
        {
            "terms": {str(i): t.to_json() for i, t in terms.items()},
            "W": superpotential(G).to_json(),
        }
    )


def cmd_polytope(args):
    G = _read_graph()
    P = superpotential_polytope(G, Fraction(args.r))
    payload = P.to_json()
    if args.vertices:
        payload["vertices"] = [
            [str(Fraction(x)) for x in v] for v in P.vertices()
        ]
    if args.counts:
        payload["lattice_point_count"] = len(P.lattice_points())
        payload["vertex_count"] = len(P.vertices())
    _emit(payload)


def cmd_check_gt(args):
    G = _read_graph()
    ok = check_no_body_is_gt(G)
    _emit({"gt_equivalent": ok})
    if not ok:
        sys.exit(1)


def cmd_conjecture_scan(args):
    G = _read_graph()
    _emit(conjecture_scan(G))


def cmd_dot(args):
    sys.stdout.write(_read_graph().to_dot() + "\n")


def cmd_serve(args):
    serve_forever(args.port, args.session)


def main(argv=None):
    parser = argparse.ArgumentParser(prog="plabica")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="construct a family graph")
    p.add_argument("--family", required=True, choices=sorted(FAMILY_BUILDERS))
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--shift", type=int, default=0, help="apply a rotation")
    p.add_argument("--reflect", action="store_true", help="apply a reflection")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("labels", help="face labels of the graph on stdin")
    p.set_defaults(func=cmd_labels)

    p = sub.add_parser("mutate", help="square move at a face label")
    p.add_argument("--label", required=True, help="comma separated, e.g. 1,4,6")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("orbit", help="dihedral orbit of the graph on stdin")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("stabilizer", help="dihedral stabilizer")
    p.set_defaults(func=cmd_stabilizer)

    p = sub.add_parser("quiver", help="quiver of the graph on stdin")
    p.add_argument("--dot", action="store_true")
    p.set_defaults(func=cmd_quiver)

    p = sub.add_parser("superpotential", help="superpotential terms")
    p.add_argument("--closed-form", choices=CLOSED_FORM_FAMILIES)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.set_defaults(func=cmd_superpotential)

    p = sub.add_parser("polytope", help="superpotential polytope")
    p.add_argument("--r", default="1")
    p.add_argument("--counts", action="store_true")
    p.add_argument("--vertices", action="store_true")
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("check-gt", help="verify Gelfand-Tsetlin equivalence")
    p.set_defaults(func=cmd_check_gt)

    p = sub.add_parser("conjecture-scan", help="rotation-invariance statistics")
    p.set_defaults(func=cmd_conjecture_scan)

    p = sub.add_parser("dot", help="DOT rendering of the graph on stdin")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("serve", help="run the local HTTP service")
    p.add_argument("--port", type=int, default=8642)
    p.add_argument("--session", default=None)
    p.set_defaults(func=cmd_serve)

    args = parser.parse_args(argv)
    try:
        args.func(args)
    except PlabicError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        sys.exit(3 if exc.code == "budget" else 2)
    return 0


if __name__ == "__main__":
    sys.exit(main())
