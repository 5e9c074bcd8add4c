"""Command-line front end: ``qgwa <command> ...``.

Exit status is 0 on success, 1 when the answer to a yes/no question is
"no" (not isomorphic, relations fail, not symmetric, ...), 2 on errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import classify, derivations, morphisms
from .algebra import AlgebraSpec
from .errors import ParseError, QGWAError
from .parse import parse_element, parse_field, parse_poly, parse_scalar, parse_spec

FIELD_ENV = "QGWA_FIELD"


def _default_field(args):
    text = args.field or os.environ.get(FIELD_ENV)
    return parse_field(text) if text else None


def _read_spec_file(path: str) -> str:
    with open(path, encoding="utf-8") as fh:
        lines = [ln.split("#", 1)[0] for ln in fh]
    return " ".join(ln.strip() for ln in lines if ln.strip())


def _spec(args, text: Optional[str] = None, attr: str = "spec") -> AlgebraSpec:
    if text is None:
        text = getattr(args, attr, None)
        path = getattr(args, attr + "_file", None)
        if path:
            text = _read_spec_file(path)
    if not text:
        raise QGWAError(f"no algebra given (use --{attr.replace('_', '-')} or --{attr.replace('_', '-')}-file)")
    return parse_spec(text, _default_field(args))


def _images(spec: AlgebraSpec, texts):
    return [parse_element(t, spec) for t in texts]


# ---------------------------------------------------------------------------
# commands; each returns (record, ok)

def cmd_nf(args):
    A = _spec(args)
    u = parse_element(args.expr, A)
    return {"spec": str(A), "input": args.expr, "nf": str(u), "terms": u.to_json()}, True


def cmd_mul(args):
    A = _spec(args)
    u, v = parse_element(args.left, A), parse_element(args.right, A)
    w = u * v
    return {"spec": str(A), "left": str(u), "right": str(v), "product": str(w), "terms": w.to_json()}, True


def cmd_iso(args):
    A1 = _spec(args, args.spec_a)
    A2 = _spec(args, args.spec_b)
    res = classify.decide_isomorphic(A1, A2)
    return {"A": str(A1), "B": str(A2), **res.to_json()}, res.isomorphic


def cmd_aut(args):
    A = _spec(args, args.spec_pos or None)
    d = classify.automorphism_group(A)
    rec = {"spec": str(A), **d.to_json()}
    if args.samples:
        rec["samples"] = [m.to_json() for m in classify.sample_automorphisms(A, d)]
    return rec, True


def cmd_check_hom(args):
    src = _spec(args, attr="source")
    tgt = _spec(args, attr="target") if (args.target or args.target_file) else src
    m = morphisms.MorphismSpec(src, tgt, *_images(tgt, args.images))
    v = morphisms.verify_morphism(m)
    return {"source": str(src), "target": str(tgt), "morphism": m.to_json(), "ok": v.ok, "failures": v.failures}, v.ok


def cmd_aut_gen(args):
    A = _spec(args)
    kind = args.kind
    if kind == "eta":
        m = morphisms.eta(A, parse_scalar(args.gamma, A.field), parse_scalar(args.mu, A.field), args.shift)
    elif kind == "omega":
        m = morphisms.omega(A)
    elif kind == "omega-sym":
        m = morphisms.omega_sym(A)
    elif kind == "omega-minus1":
        m = morphisms.omega_minus1(A)
    else:
        if not args.matrix:
            raise QGWAError("unit-matrix needs --matrix m11 m12 m21 m22")
        e = args.matrix
        M = ((e[0], e[1]), (e[2], e[3]))
        torus = tuple(parse_scalar(t, A.field) for t in args.torus)
        m = morphisms.unit_case_automorphism(A, M, torus)
    if m is None:
        return {"spec": str(A), "kind": kind, "exists": False}, False
    v = morphisms.verify_morphism(m)
    return {"spec": str(A), "kind": kind, "exists": True, "morphism": m.to_json(), "verified": v.ok}, v.ok


def cmd_derive(args):
    A = _spec(args)
    d = derivations.Derivation(A, *_images(A, args.images))
    res = derivations.relation_residuals(d)
    failures = [{"relation": name, "residual": str(r)} for name, r in zip(derivations.RELATIONS, res) if r]
    rec = {"spec": str(A), "derivation": [str(u) for u in d.images()], "consistent": not failures, "failures": failures}
    if not failures:
        if args.apply:
            rec["value"] = str(derivations.apply(d, parse_element(args.apply, A)))
        if args.deg_of:
            rec["deg"] = derivations.deg_d(d, parse_element(args.deg_of, A), args.bound)
    return rec, not failures


def cmd_derivation_space(args):
    A = _spec(args)
    basis = derivations.derivation_space(A, args.weight, args.deg_bound, args.locally_finite)
    return {
        "spec": str(A),
        "weight": args.weight,
        "deg_bound": args.deg_bound,
        "locally_finite": args.locally_finite,
        "dimension": len(basis),
        "basis": [[str(u) for u in d.images()] for d in basis],
    }, True


def cmd_symmetric(args):
    from .poly import is_symmetric

    field = _default_field(args) or parse_field("Q")
    f = parse_poly(args.poly, field, True)
    sym = is_symmetric(f)
    rec = {"poly": str(f), "symmetric": sym is not None}
    if sym is not None:
        rec.update(l=sym.l, gamma=str(sym.gamma), delta=str(sym.delta))
    return rec, sym is not None


def cmd_lambda(args):
    radius = args.radius if args.radius is not None else args.N + 4
    pts = sorted(classify.lambda_indecomposables(args.N, radius))
    return {"N": args.N, "radius": radius, "indecomposables": [list(p) for p in pts]}, True


def cmd_cross_check_aut(args):
    A = _spec(args, args.spec_pos or None)
    rep = classify.cross_check_aut(A, args.grid_size)
    return {"spec": str(A), "grid_size": args.grid_size, **rep.to_json()}, rep.ok


# ---------------------------------------------------------------------------
# human-readable rendering

def _render(command: str, rec: dict) -> str:
    if command in ("nf", "mul"):
        return rec["nf"] if command == "nf" else rec["product"]
    if command == "iso":
        lines = [f"isomorphic: {str(rec['isomorphic']).lower()}", f"reason: {rec['reason']}"]
        w = rec.get("witness")
        if w:
            lines.append(f"witness: eps={w['eps']} beta={w['beta']} alpha={w['alpha']} q_match={w['q_match']}")
            mo = w["morphism"]
            lines.append(f"map: y -> {mo['y']}, h -> {mo['h']}, x -> {mo['x']}")
        elif not rec["isomorphic"]:
            lines.append(f"search_complete: {'yes' if rec['search_complete'] else 'no'}")
        return "\n".join(lines)
    lines = []
    for k, v in rec.items():
        if isinstance(v, (list, dict)):
            v = json.dumps(v)
        lines.append(f"{k}: {v}")
    return "\n".join(lines)


def _add_spec_opts(p, name="spec"):
    flag = name.replace("_", "-")
    p.add_argument(f"--{flag}", dest=name, help="algebra spec text")
    p.add_argument(f"--{flag}-file", dest=f"{name}_file", help="file holding the algebra spec")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON record")
    common.add_argument("--field", help=f"default field when a spec has no field= clause (env {FIELD_ENV})")

    ap = argparse.ArgumentParser(prog="qgwa", description=__doc__.splitlines()[0], parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nf", parents=[common], help="normal form of an element")
    p.add_argument("expr")
    _add_spec_opts(p)

    p = sub.add_parser("mul", parents=[common], help="product of two elements")
    p.add_argument("left")
    p.add_argument("right")
    _add_spec_opts(p)

    p = sub.add_parser("iso", parents=[common], help="decide isomorphism of two algebras")
    p.add_argument("spec_a")
    p.add_argument("spec_b")

    for name, helptext in (("aut", "automorphism group descriptor"), ("cross-check-aut", "grid cross-check of Aut")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("spec_pos", nargs="?", default="")
        _add_spec_opts(p)
        if name == "aut":
            p.add_argument("--samples", action="store_true", help="also list sample automorphisms")
        else:
            p.add_argument("--grid-size", type=int, default=6)

    p = sub.add_parser("check-hom", parents=[common], help="verify generator images")
    p.add_argument("--images", nargs=3, metavar=("Y", "H", "X"), required=True)
    _add_spec_opts(p, "source")
    _add_spec_opts(p, "target")

    p = sub.add_parser("aut-gen", parents=[common], help="build a named automorphism")
    p.add_argument("kind", choices=["eta", "omega", "omega-sym", "omega-minus1", "unit-matrix"])
    p.add_argument("--gamma", default="1")
    p.add_argument("--mu", default="1")
    p.add_argument("--shift", type=int, default=0)
    p.add_argument("--matrix", type=int, nargs=4, metavar="M")
    p.add_argument("--torus", nargs=2, default=["1", "1"], metavar=("S", "T"))
    _add_spec_opts(p)

    p = sub.add_parser("derive", parents=[common], help="check a derivation given by images")
    p.add_argument("--images", nargs=3, metavar=("Y", "H", "X"), required=True)
    p.add_argument("--apply", help="element to apply the derivation to")
    p.add_argument("--deg-of", help="element whose deg_d is wanted")
    p.add_argument("--bound", type=int, default=8)
    _add_spec_opts(p)

    p = sub.add_parser("derivation-space", parents=[common], help="homogeneous derivations of a weight")
    p.add_argument("--weight", type=int, default=0)
    p.add_argument("--deg-bound", type=int, default=4)
    p.add_argument("--locally-finite", action="store_true")
    _add_spec_opts(p)

    p = sub.add_parser("symmetric", parents=[common], help="symmetry test for a Laurent polynomial")
    p.add_argument("poly")

    p = sub.add_parser("lambda", parents=[common], help="boundary indecomposables of Lambda")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--radius", type=int)
    return ap


COMMANDS = {
    "nf": cmd_nf,
    "mul": cmd_mul,
    "iso": cmd_iso,
    "aut": cmd_aut,
    "check-hom": cmd_check_hom,
    "aut-gen": cmd_aut_gen,
    "derive": cmd_derive,
    "derivation-space": cmd_derivation_space,
    "symmetric": cmd_symmetric,
    "lambda": cmd_lambda,
    "cross-check-aut": cmd_cross_check_aut,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        rec, ok = COMMANDS[args.command](args)
    except (QGWAError, ValueError, OSError) as exc:
        info = {"type": type(exc).__name__, "message": str(exc)}
        if isinstance(exc, ParseError):
            info.update(message=exc.message, line=exc.line, column=exc.column)
        if args.json:
            print(json.dumps({"command": args.command, "error": info}, sort_keys=True), file=out)
        else:
            print(f"error: {info['type']}: {exc}", file=err)
        return 2
    if args.json:
        print(json.dumps({"command": args.command, **rec}, sort_keys=True), file=out)
    else:
        print(_render(args.command, rec), file=out)
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
