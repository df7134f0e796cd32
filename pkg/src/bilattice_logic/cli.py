"""Command-line entry point.

Exit status: 0 for success or a positive answer, 1 for a negative answer,
2 for usage and input errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import bilattice_core as bc
from . import filters_congruences as fc
from . import logic_lb as lb
from . import logic_lbs as lbs
from . import representation as rep
from .syntax import ParseError, parse, parse_equation, parse_sequent_text, to_text

OK, NO, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_input(value: str | None) -> str:
    if value is None or value == "-":
        return sys.stdin.read().strip()
    return value


def _load_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _dump(obj):
    print(json.dumps(obj, indent=2, ensure_ascii=False, sort_keys=True))


# decide / nf / prove

def cmd_decide(args) -> int:
    left, right = parse_sequent_text(_read_input(args.input))
    if len(right) != 1:
        raise UsageError("decide expects exactly one formula after |-")
    phi = right[0]
    if args.logic == "lbs":
        if args.method == "nf":
            raise UsageError("the normal-form method is only available for --logic lb")
        valid = lbs.consequence_lbs(left, phi)
    elif args.method == "nf":
        lb.check_language(*left, phi)
        valid = lb.decide_nf(left, phi)
    else:
        valid = lb.consequence_lb(left, phi)
    print("VALID" if valid else "INVALID")
    return OK if valid else NO


def cmd_nf(args) -> int:
    phi = parse(_read_input(args.input))
    lb.check_language(phi)
    nf = lb.normal_form(phi)
    if args.emit == "json":
        _dump([sorted(("" if pos else "~") + name for name, pos in c)
               for c in sorted(nf, key=sorted)])
    else:
        print(lb.nf_text(nf))
    return OK


def cmd_prove(args) -> int:
    s = lb.parse_sequent(_read_input(args.input))
    lb.check_language(*s.left, *s.right)
    try:
        proof = lb.prove_gentzen(s, args.depth)
    except lb.DepthExceeded as e:
        print(f"UNKNOWN: {e}", file=sys.stderr)
        return NO
    if proof is None:
        print("NO PROOF")
        return NO
    if args.emit == "json":
        _dump(lb.proof_json(proof))
    else:
        print(lb.proof_tree_text(proof))
    return OK


def cmd_check_proof(args) -> int:
    """Proof files are JSON objects; see the README for the three layouts."""
    data = _load_json(args.file)
    try:
        if args.calculus == "glb":
            goal = lb.parse_sequent(data["goal"])
            lb.check_gentzen(lb.proof_from_json(data["steps"]), goal)
        else:
            premises = [parse(x) for x in data.get("premises", [])]
            goal = parse(data["goal"])
            if args.calculus == "hlb":
                steps = [lb.Step(parse(d["formula"]), d.get("rule", "premise"),
                                 tuple(d.get("refs", ()))) for d in data["steps"]]
                lb.check_hilbert_lb(steps, premises, goal)
            else:
                lbs.check_hilbert_lbs(lbs.steps_from_json(data["steps"]), premises, goal)
    except lb.BadStep as e:
        print(f"INVALID: {e}")
        return NO
    print("VALID")
    return OK


# algebra

def _variety_checks(A) -> dict[str, list[str]]:
    """Failure lists for each variety that applies to A's signature."""
    out = {"pre": []}
    if not isinstance(A, bc.PreBilattice):
        return out
    out["int"] = [] if bc.is_interlaced(A) else ["interlaced"]
    out["dist"] = [] if bc.is_distributive_pb(A) else ["distributive"]
    if isinstance(A, bc.Bilattice):
        out["bil"] = bc.negation_failures(A)
    if isinstance(A, bc.ConflatedBilattice):
        out["conf"] = bc.conflation_failures(A)
    if isinstance(A, bc.ImplicativeBilattice):
        out["imp"] = bc.implicative_failures(A)
        try:
            out["rdm"] = bc.rdm_failures(A)
        except bc.AxiomViolation as e:
            out["rdm"] = [str(e)]
        out["ialg"] = bc.i_algebra_failures(A)
    return out


def cmd_algebra_check(args) -> int:
    A = bc.algebra_from_json(_load_json(args.file))
    checks = _variety_checks(A)
    if args.variety:
        if args.variety not in checks:
            raise UsageError(f"variety {args.variety} does not apply to this signature")
        checks = {args.variety: checks[args.variety]}
    for name, failures in checks.items():
        print(f"{name}: " + ("ok" if not failures else "fails " + ", ".join(failures)))
    return OK if all(not f for f in checks.values()) else NO


def cmd_algebra_decompose(args) -> int:
    A = bc.algebra_from_json(_load_json(args.file))
    try:
        if isinstance(A, bc.ImplicativeBilattice):
            d = rep.decompose_implicative(A)
        elif isinstance(A, bc.ConflatedBilattice):
            d = rep.decompose_conflated(A)
        elif isinstance(A, bc.Bilattice):
            d = rep.decompose_bilattice(A)
        else:
            d = rep.decompose_pre(A)
    except (fc.NotInterlaced, rep.NotCommutative, bc.AxiomViolation) as e:
        print(f"cannot decompose: {e}", file=sys.stderr)
        return NO
    _dump(d.to_json())
    return OK


def cmd_algebra_enumerate(args) -> int:
    A = bc.algebra_from_json(_load_json(args.file))
    if args.what == "bifilters":
        masks = fc.enumerate_bifilters(A)
        _dump([[A.label(a) for a in fc.members(m)] for m in masks])
    else:
        cons = fc.enumerate_congruences(A)
        _dump([[[A.label(a) for a in block] for block in c.blocks()] for c in cons])
    return OK


def _table_text(A, name: str, table) -> str:
    labels = [A.label(a) for a in range(A.n)]
    width = max(len(x) for x in labels)
    lines = [name]
    if isinstance(table[0], int):
        for a in range(A.n):
            lines.append(f"  {labels[a]:>{width}} | {labels[table[a]]}")
    else:
        lines.append("  " + " " * width + " | " + " ".join(f"{x:>{width}}" for x in labels))
        for a in range(A.n):
            lines.append(f"  {labels[a]:>{width}} | "
                         + " ".join(f"{labels[table[a][b]]:>{width}}" for b in range(A.n)))
    return "\n".join(lines)


def algebra_tables(A) -> dict:
    """Operation tables, with the derived arrow and fusion for implicative algebras."""
    tables = dict(bc.operations_of(A))
    if isinstance(A, bc.ImplicativeBilattice):
        r = range(A.n)
        tables["arrow"] = tuple(tuple(lbs.arrow_value(A, a, b) for b in r) for a in r)
        tables["fusion"] = tuple(tuple(lbs.fusion_value(A, a, b) for b in r) for a in r)
    return tables


def cmd_algebra_named(args) -> int:
    try:
        A = bc.named_algebra(args.name)
    except KeyError as e:
        raise UsageError(e.args[0]) from None
    if args.emit == "json":
        _dump(A.to_json())
    else:
        print("\n\n".join(_table_text(A, k, v) for k, v in algebra_tables(A).items()))
    return OK


# translate

def cmd_translate(args) -> int:
    text = _read_input(args.input)
    if args.dir == "tau":
        if args.system == "glb":
            eq = lb.tau_gentzen(lb.parse_sequent(text))
        else:
            eq = lbs.tau_lbs(parse(text))
        print(f"{to_text(eq.lhs)} = {to_text(eq.rhs)}")
        return OK
    eq = parse_equation(text)
    if args.system == "glb":
        for s in lb.rho_gentzen(eq):
            print(s)
    else:
        for style in ("biarrow", "four"):
            for phi in lbs.rho_lbs(eq, style):
                print(to_text(phi))
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bilattice-logic",
                                description="Finite bilattices and their four-valued logics.")
    sub = p.add_subparsers(dest="command", required=True)

    d = sub.add_parser("decide", help="decide a consequence 'G1, G2 |- phi'")
    d.add_argument("input", nargs="?", help="sequent text, or - / omitted for stdin")
    d.add_argument("--logic", choices=("lb", "lbs"), default="lb")
    d.add_argument("--method", choices=("semantic", "nf"), default="semantic")
    d.set_defaults(func=cmd_decide)

    n = sub.add_parser("nf", help="clause normal form of a formula")
    n.add_argument("input", nargs="?")
    n.add_argument("--emit", choices=("text", "json"), default="text")
    n.set_defaults(func=cmd_nf)

    pr = sub.add_parser("prove", help="cut-free Gentzen proof search")
    pr.add_argument("input", nargs="?")
    pr.add_argument("--depth", type=int, default=20)
    pr.add_argument("--emit", choices=("text", "json"), default="text")
    pr.set_defaults(func=cmd_prove)

    c = sub.add_parser("check-proof", help="validate a proof file (JSON)")
    c.add_argument("file")
    c.add_argument("--calculus", choices=("hlb", "hlbs", "glb"), required=True)
    c.set_defaults(func=cmd_check_proof)

    a = sub.add_parser("algebra", help="work with finite algebras")
    asub = a.add_subparsers(dest="action", required=True)
    ac = asub.add_parser("check")
    ac.add_argument("file")
    ac.add_argument("--variety", choices=("pre", "int", "dist", "bil", "conf", "imp", "rdm", "ialg"))
    ac.set_defaults(func=cmd_algebra_check)
    ad = asub.add_parser("decompose")
    ad.add_argument("file")
    ad.set_defaults(func=cmd_algebra_decompose)
    ae = asub.add_parser("enumerate")
    ae.add_argument("file")
    ae.add_argument("--what", choices=("bifilters", "congruences"), required=True)
    ae.set_defaults(func=cmd_algebra_enumerate)
    an = asub.add_parser("named")
    an.add_argument("name")
    an.add_argument("--emit", choices=("json", "tables"), default="tables")
    an.set_defaults(func=cmd_algebra_named)

    t = sub.add_parser("translate", help="translations between sequents, formulas and equations")
    t.add_argument("input", nargs="?")
    t.add_argument("--dir", choices=("tau", "rho"), required=True)
    t.add_argument("--system", choices=("glb", "lbs"), default="glb")
    t.set_defaults(func=cmd_translate)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (UsageError, ParseError, ValueError, KeyError, OSError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
