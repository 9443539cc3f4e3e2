"""Command-line interface: ``nnscf <command> ...``.

Exit codes: 0 success, 1 a verification failed, 2 bad input, 3 size guard
hit, 4 an internal consistency check failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import arcs as arcs_mod
from .errors import GroundSetTooLarge, GroupTooLarge, InternalCheckFailure, NNSCFError
from .serialize import (
    diagram_document,
    diagram_from_json,
    dumps,
    field_from_q,
    load_json,
    poset_from_json,
    table_to_json,
    vector_from_json,
)

EXIT_FAIL, EXIT_INPUT, EXIT_SIZE, EXIT_INTERNAL = 1, 2, 3, 4


def _field(args):
    return field_from_q(args.q, getattr(args, "e", None), getattr(args, "modulus", None))


def _poset(args):
    if args.poset is None:
        raise NNSCFError("--poset is required")
    return poset_from_json(load_json(args.poset))


def _limit(args):
    if getattr(args, "limit", None):
        os.environ["NNSCF_LIMIT"] = str(args.limit)
    return None


def _emit(args, payload, text=None, latex=None):
    fmt = getattr(args, "format", "json")
    if fmt == "ascii" and text is not None:
        out = text if text.endswith("\n") else text + "\n"
    elif fmt == "latex" and latex is not None:
        out = latex
    else:
        out = dumps(payload)
    sys.stdout.write(out)


# -- commands ----------------------------------------------------------------------------------

def cmd_enumerate(args) -> int:
    P, F = _poset(args), _field(args)
    nonnesting = not args.all
    diagrams = arcs_mod.enumerate_diagrams(P, F, nonnesting_only=nonnesting)
    poly = arcs_mod.count_polynomial(P, F.q, nonnesting)
    shapes = arcs_mod.shape_arc_counts(P, nonnesting)
    if poly != len(diagrams):
        raise InternalCheckFailure("enumeration disagrees with the shape polynomial",
                                   witness={"enumerated": len(diagrams), "polynomial": poly})
    payload = {
        "poset": P.to_json(), "field": F.to_json(),
        "kind": "nonnesting" if nonnesting else "all",
        "count": len(diagrams),
        "shape_counts_by_arcs": {str(k): shapes[k] for k in sorted(shapes)},
        "polynomial_value": poly,
        "diagrams": [d.to_json() for d in diagrams],
    }
    text = "\n".join([f"{len(diagrams)} diagrams (polynomial value {poly})"]
                     + [repr(d) for d in diagrams])
    _emit(args, payload, text)
    return 0


def cmd_table(args) -> int:
    from .render import table_ascii, table_latex
    from .supercharacters import algebra_table, supercharacter_table, verify_sct
    P, F = _poset(args), _field(args)
    _limit(args)
    if args.theory == "algebra":
        table = algebra_table(P, F, with_class_sizes=args.oracle)
    else:
        table = supercharacter_table(P, F)
    payload = table_to_json(table)
    if args.oracle:
        if args.theory == "algebra":
            payload["verification"] = _algebra_oracle(table)
        else:
            report = verify_sct(P, F, big_fiber=True)
            payload["verification"] = report
        if not payload["verification"]["passed"]:
            raise InternalCheckFailure("table disagrees with the oracle",
                                       witness=payload["verification"])
    _emit(args, payload, table_ascii(table), table_latex(table))
    return 0


def _algebra_oracle(table) -> dict:
    from .pattern_group import pattern_group
    from .supercharacters import _point, algebra_orbit_character
    G = pattern_group(table.poset, table.field)
    witness = None
    for eta, row in zip(table.rows, table.values):
        chi = algebra_orbit_character(eta)
        for nu, v in zip(table.cols, row):
            if chi(_point(G, nu)) != v:
                witness = {"eta": repr(eta), "nu": repr(nu)}
                break
        if witness:
            break
    return {"checks": [{"name": "formula equals dual-orbit sum", "passed": witness is None,
                        "witness": witness}], "passed": witness is None}


def cmd_verify_sct(args) -> int:
    from .supercharacters import verify_sct
    P, F = _poset(args), _field(args)
    _limit(args)
    report = verify_sct(P, F, big_fiber=args.oracle)
    _emit(args, report, _report_text(report))
    return 0 if report["passed"] else EXIT_FAIL


def _report_text(report) -> str:
    lines = [f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}" for c in report["checks"]]
    if "noncommutative_witness" in report:
        lines.append("non-commuting pair found" if report["noncommutative_witness"]
                     else "no non-commuting pair found")
    lines.append("overall: " + ("PASS" if report["passed"] else "FAIL"))
    return "\n".join(lines)


def cmd_verify_hopf(args) -> int:
    from .hopf import check_hopf_axioms
    report = check_hopf_axioms(args.n, _field(args), basis=args.basis, method=args.method)
    _emit(args, report, _report_text(report))
    return 0 if report["passed"] else EXIT_FAIL


def cmd_render(args) -> int:
    from .posets import render_hasse_ascii
    from .render import render_arcs_ascii, render_arcs_latex, render_hasse_latex
    if args.diagram is None:
        P = _poset(args)
        _emit(args, P.to_json(), render_hasse_ascii(P), render_hasse_latex(P))
        return 0
    data = load_json(args.diagram)
    P = _poset(args) if args.poset else None
    F = _field(args) if args.q else None
    d = diagram_from_json(data, P, F)
    _emit(args, diagram_document(d), render_arcs_ascii(d, args.extension),
          render_arcs_latex(d, args.extension))
    return 0


def _load_vector(path, basis):
    return vector_from_json(load_json(path), basis)


def cmd_hopf_product(args) -> int:
    from .hopf import product
    _limit(args)
    x, y = _load_vector(args.left, args.basis), _load_vector(args.right, args.basis)
    result = product(x, y, method=args.method)
    _emit(args, result.to_json(), repr(result))
    return 0


def cmd_hopf_coproduct(args) -> int:
    from .hopf import coproduct
    _limit(args)
    x = _load_vector(args.input, args.basis)
    subset = [s for s in args.subset.split(",") if s] if args.subset else []
    result = coproduct(x, subset, method=args.method)
    _emit(args, result.to_json(), repr(result))
    return 0


def cmd_hopf_free(args) -> int:
    from .hopf import free_structure
    report = free_structure(args.n, _field(args), all_poset_check=not args.linear_only)
    _emit(args, report, _report_text(report))
    return 0 if report["passed"] else EXIT_FAIL


def cmd_oracle_superclasses(args) -> int:
    from .pattern_group import pattern_group, superclass_size
    P, F = _poset(args), _field(args)
    _limit(args)
    G = pattern_group(P, F)
    sizes = {}
    for x in G.codes():
        key = G.sml_key(x)
        sizes[key] = sizes.get(key, 0) + 1
    rows, lines = [], ["brute  closed  diagram"]
    for d in arcs_mod.NN(P, F):
        brute = sizes.get(G.key_of(d), 0)
        rows.append({"diagram": d.to_json(), "brute_force": brute, "closed_form": superclass_size(d)})
        lines.append(f"{brute:>5}  {superclass_size(d):>6}  {d!r}")
    ok = all(r["brute_force"] == r["closed_form"] for r in rows)
    payload = {"group_order": G.order, "superclasses": rows, "passed": ok}
    _emit(args, payload, "\n".join(lines))
    return 0 if ok else EXIT_FAIL


def cmd_oracle_orbit(args) -> int:
    from .pattern_group import AlgebraElement, Functional, dual_orbit, two_sided_orbit
    P, F = _poset(args), _field(args)
    _limit(args)
    data = load_json(args.element)
    if args.dual:
        lam = Functional.from_json(P, F, data)
        orbit = dual_orbit(lam)
    else:
        x = AlgebraElement.from_json(P, F, data)
        orbit = two_sided_orbit(x)
    payload = {"size": len(orbit), "orbit": [o.to_json() for o in orbit]}
    _emit(args, payload, f"orbit size {len(orbit)}")
    return 0


# -- parser ------------------------------------------------------------------------------------------

def _common(p, poset=True, fmt=("json", "ascii")):
    if poset:
        p.add_argument("--poset", help="poset JSON file")
    p.add_argument("--q", type=int, default=2, help="field order p^e")
    p.add_argument("--e", type=int, default=None, help="extension degree (checked against q)")
    p.add_argument("--modulus", default=None, help="irreducible modulus, constant coefficient first")
    p.add_argument("--format", choices=fmt, default="json")
    p.add_argument("--limit", type=int, default=None, help="group-size guard")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nnscf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list nonnesting (or all) labelled arc diagrams")
    _common(p)
    p.add_argument("--all", action="store_true", help="include nesting diagrams")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("table", help="supercharacter table")
    _common(p, fmt=("json", "ascii", "latex"))
    p.add_argument("--theory", choices=("nonnesting", "algebra"), default="nonnesting")
    p.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("verify", help="verification suites")
    vsub = p.add_subparsers(dest="suite", required=True)
    v = vsub.add_parser("sct", help="supercharacter theory checks on one pattern group")
    _common(v)
    v.add_argument("--oracle", action="store_true", help="also compare with the big-fiber sums")
    v.set_defaults(func=cmd_verify_sct)
    v = vsub.add_parser("hopf", help="Hopf monoid axioms on ground sets up to size n")
    _common(v, poset=False)
    v.add_argument("--n", type=int, default=3)
    v.add_argument("--basis", default="kappa")
    v.add_argument("--method", choices=("functional", "combinatorial"), default="functional")
    v.set_defaults(func=cmd_verify_hopf)

    p = sub.add_parser("render", help="draw a diagram or a Hasse diagram")
    _common(p, fmt=("ascii", "latex", "json"))
    p.set_defaults(format="ascii")
    p.add_argument("--diagram", help="diagram JSON file (omit to draw the poset)")
    p.add_argument("--extension", type=int, default=0, help="index of the linear extension used")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("hopf", help="products, coproducts and freeness")
    hsub = p.add_subparsers(dest="op", required=True)
    h = hsub.add_parser("product")
    _common(h, poset=False)
    h.add_argument("--basis", default="kappa")
    h.add_argument("--left", required=True)
    h.add_argument("--right", required=True)
    h.add_argument("--method", choices=("functional", "combinatorial"), default="combinatorial")
    h.set_defaults(func=cmd_hopf_product)
    h = hsub.add_parser("coproduct")
    _common(h, poset=False)
    h.add_argument("--basis", default="kappa")
    h.add_argument("--input", required=True)
    h.add_argument("--subset", required=True, help="comma-separated S; T is the complement")
    h.add_argument("--method", choices=("functional", "combinatorial"), default="combinatorial")
    h.set_defaults(func=cmd_hopf_coproduct)
    h = hsub.add_parser("verify")
    _common(h, poset=False)
    h.add_argument("--n", type=int, default=3)
    h.add_argument("--basis", default="kappa")
    h.add_argument("--method", choices=("functional", "combinatorial"), default="functional")
    h.set_defaults(func=cmd_verify_hopf)
    h = hsub.add_parser("free")
    _common(h, poset=False)
    h.add_argument("--n", type=int, default=4)
    h.add_argument("--linear-only", action="store_true")
    h.set_defaults(func=cmd_hopf_free)

    p = sub.add_parser("oracle", help="brute-force group computations")
    osub = p.add_subparsers(dest="oracle_cmd", required=True)
    o = osub.add_parser("superclasses", help="superclass sizes by enumeration vs closed form")
    _common(o)
    o.set_defaults(func=cmd_oracle_superclasses)
    o = osub.add_parser("orbit", help="two-sided orbit of an algebra element (or dual orbit)")
    _common(o)
    o.add_argument("--element", required=True, help="element JSON file")
    o.add_argument("--dual", action="store_true", help="treat the input as a functional")
    o.set_defaults(func=cmd_oracle_orbit)
    o = osub.add_parser("sct", help="verify sct with the big-fiber oracle")
    _common(o)
    o.set_defaults(func=cmd_verify_sct, oracle=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = os.environ.get("NNSCF_LIMIT")
    try:
        return args.func(args)
    except (GroupTooLarge, GroundSetTooLarge) as exc:
        _error({"error": type(exc).__name__, "message": str(exc)})
        return EXIT_SIZE
    except InternalCheckFailure as exc:
        _error({"error": type(exc).__name__, "message": str(exc), "witness": exc.witness})
        return EXIT_INTERNAL
    except (NNSCFError, ValueError, KeyError, TypeError, OSError, json.JSONDecodeError) as exc:
        payload = {"error": type(exc).__name__, "message": str(exc)}
        if getattr(exc, "witness", None) is not None:
            payload["witness"] = list(exc.witness)
        _error(payload)
        return EXIT_INPUT
    finally:
        if saved is None:
            os.environ.pop("NNSCF_LIMIT", None)
        else:
            os.environ["NNSCF_LIMIT"] = saved


def _error(payload):
    sys.stderr.write(json.dumps(payload, default=str) + "\n")


if __name__ == "__main__":
    sys.exit(main())
