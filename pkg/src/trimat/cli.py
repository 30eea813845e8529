"""Command line front end.

Exit codes: 0 verified, 1 refuted, 2 input error, 3 inconclusive.
Every command prints one JSON report on stdout.
"""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import invariants as iv
from . import mate as mt
from .algebra import is_algebra_isomorphism
from .errors import DocumentError, NotPerfect, TrimatError
from .homological import DEFAULT_BOUND, Finite
from .io import algebra_to_spec, fixture_data, fixture_names, resolve, to_json_value
from .triangular import TriangularData, build_triangular

EXIT = {"pass": 0, "fail": 1, "unknown": 3}


class InputError(Exception):
    pass


def _lookup(ref: str, role: str, section: str, args, cache):
    ws, name = resolve(ref, args.field, cache)
    name = name or ws.default(role)
    if name is None:
        raise InputError(f"{ref}: no object given and the document has no default {role}")
    return ws, name, ws.get(name, section)


def _triplet(ref, args, cache) -> tuple:
    return _lookup(ref, "triplet", "triplets", args, cache)


def _tilting(args, ws, cache):
    """--tilting reference (same document when only a name is given)."""
    ref = args.tilting
    if ref is None:
        name = ws.default("tilting")
        if name is None:
            return None
        return ws.module(name)
    if "#" in ref or ref.startswith("fixtures:") or ref.endswith(".json"):
        _, _, M = _lookup(ref, "tilting", "modules", args, cache)
        return M
    return ws.module(ref)


# ---------------------------------------------------------------------------
# commands


def cmd_validate(args, cache):
    ws, _ = resolve(args.ref, args.field, cache)
    counts = ws.validate_all()
    return "pass", {"objects": counts, "field": ws.field.name}


def cmd_cartan(args, cache):
    ws, name = resolve(args.ref, args.field, cache)
    name = name or ws.default("triplet") or ws.default("algebra")
    if name is None:
        raise InputError("nothing to compute: name an algebra or a triplet")
    section = ws.kind_of(name)
    if section == "triplets":
        rep = iv.cartan_block_check(ws.triplet(name))
        return ("pass" if rep.passed else "fail"), {"object": name, **rep.as_dict()}
    if section == "algebras":
        A = ws.algebra(name)
        C = iv.cartan_matrix(A, cross_check=True)
        return "pass", {"object": name, "cartan": C, "basic": getattr(A, "basic", True)}
    raise InputError(f"{name} is neither an algebra nor a triplet")


def cmd_mate(args, cache):
    ws, name, d = _triplet(args.ref, args, cache)
    T = _tilting(args, ws, cache) if args.mode == "general" else None
    if args.mode == "general" and T is None:
        raise InputError("general mode needs --tilting")
    rep = mt.certify(d, args.mode, T, args.bound, args.window)
    out = {"triplet": name, "mode": args.mode, **rep.as_dict()}
    if rep.mate is not None:
        mb = build_triangular(rep.mate.data).algebra
        out["mate_cartan"] = iv.cartan_matrix(mb)
        out["original_cartan"] = iv.cartan_matrix(build_triangular(d).algebra)
        other = ws.default("mate")
        if other is not None:
            target = ws.triplet(other)
            out["matches_document_mate"] = _same_triangular(rep.mate.data, target)
    return rep.verdict, out


def _same_triangular(a: TriangularData, b: TriangularData) -> bool:
    A, B = build_triangular(a).algebra, build_triangular(b).algebra
    if A.dim != B.dim:
        return False
    from . import linalg as la

    return is_algebra_isomorphism(A, B, la.identity(A.dim, A.field))


def cmd_check(args, cache):
    ws, name, d = _triplet(args.ref, args, cache)
    T = _tilting(args, ws, cache)
    if T is None:
        raise InputError("check needs --tilting")
    rep = mt.check_hypotheses(d, T, args.bound)
    return rep.verdict, {"triplet": name, **rep.as_dict()}


def cmd_tilt_verify(args, cache):
    ws, name, d = _triplet(args.ref, args, cache)
    if args.mode == "artin":
        from .algebra import dual_regular_module

        T = dual_regular_module(d.S)
    elif args.mode == "projective":
        from .algebra import regular_module

        T = regular_module(d.S)
    else:
        T = _tilting(args, ws, cache)
        if T is None:
            raise InputError("tilt-verify needs --tilting")
    try:
        tc = mt.build_tilting_complex(d, T, args.bound)
    except NotPerfect as e:
        return "unknown", {"triplet": name, "reason": str(e)}
    win = mt.verify_tilting_complex(tc, args.window)
    out = {"triplet": name, "complex": tc.as_dict(), **win.as_dict()}
    verdict = "pass" if win.passed else "fail"
    if args.identify:
        if args.mode == "artin":
            m = mt.mate_artin(d, args.bound, check=False)
        elif args.mode == "projective":
            m = mt.mate_projective(d, args.bound, check=False)
        else:
            m = mt.mate_general(d, T, args.bound, check=False)
        ident = mt.end_ring_identification(tc, m)
        out["identification"] = ident.as_dict()
        if not ident.passed:
            verdict = "fail"
    return verdict, out


def _cartan_of(ref, args, cache):
    ws, name = resolve(ref, args.field, cache)
    if name is None:
        name = ws.default("matrix") or ws.default("triplet") or ws.default("algebra")
    section = ws.kind_of(name)
    if section == "matrices":
        return name, ws.get(name, "matrices"), ws
    if section == "triplets":
        return name, iv.cartan_matrix(build_triangular(ws.triplet(name)).algebra), ws
    if section == "algebras":
        return name, iv.cartan_matrix(ws.algebra(name)), ws
    raise InputError(f"{name} has no Cartan matrix")


def cmd_congruent(args, cache):
    n1, C1, ws = _cartan_of(args.ref, args, cache)
    if args.other:
        n2, C2, _ = _cartan_of(args.other, args, cache)
    else:
        # default partner: the document's mate, else the (S, R, DM) mate
        other = ws.default("mate")
        if other is not None:
            n2 = other
            C2 = iv.cartan_matrix(build_triangular(ws.triplet(other)).algebra)
        elif ws.kind_of(n1) == "triplets":
            from .algebra import dual_bimodule

            d = ws.triplet(n1)
            n2 = f"({n1})^mate"
            C2 = iv.cartan_matrix(build_triangular(TriangularData(d.S, d.R, dual_bimodule(d.M))).algebra)
        else:
            raise InputError("congruent needs two matrices")
    if len(C1) != len(C2) or any(len(r) != len(C1) for r in C1 + C2):
        raise InputError("congruent needs square matrices of equal size")
    res = iv.congruent_over_Z(C1, C2, args.search_bound)
    verdict = {"Congruent": "pass", "NotCongruent": "fail", "Unknown": "unknown"}[res.verdict]
    return verdict, {"C1": {"name": n1, "matrix": C1}, "C2": {"name": n2, "matrix": C2}, **res.as_dict()}


def cmd_gldim(args, cache):
    _, name, A = _lookup(args.ref, "algebra", "algebras", args, cache)
    probe = iv.global_dimension(A, args.bound)
    verdict = "pass" if isinstance(probe.value, Finite) else "unknown"
    out = {"algebra": name, "dim": A.dim, **probe.as_dict()}
    ws, _ = resolve(args.ref, args.field, cache)
    ref = ws.default("reference")
    if ref is not None and ref != name:
        from . import linalg as la

        B = ws.algebra(ref)
        out["reference"] = ref
        out["matches_reference"] = A.dim == B.dim and is_algebra_isomorphism(A, B, la.identity(A.dim, A.field))
    return verdict, out


def cmd_repetitive(args, cache):
    _, name, d = _triplet(args.ref, args, cache)
    rep = iv.repetitive_shift_isomorphism(d, args.periods)
    return ("pass" if rep.passed else "fail"), {"triplet": name, **rep.as_dict()}


def cmd_trivext(args, cache):
    ws, aname = resolve(args.algebra, args.field, cache)
    aname = aname or ws.default("algebra")
    A = ws.algebra(aname)
    bref = args.bimodule
    if "#" in bref or bref.startswith("fixtures:"):
        _, bname, M = _lookup(bref, "bimodule", "bimodules", args, cache)
    else:
        bname, M = bref, ws.bimodule(bref)
    E = iv.trivial_extension(A, M)
    probe = iv.global_dimension(E, args.bound)
    return "pass", {
        "algebra": aname,
        "bimodule": bname,
        "dim": E.dim,
        "cartan": iv.cartan_matrix(E),
        "gldim": probe.as_dict(),
        "structure": algebra_to_spec(E),
    }


def cmd_fixtures(args, cache):
    if args.name:
        return "pass", {"name": args.name, "document": fixture_data(args.name)}
    return "pass", {"fixtures": fixture_names()}


COMMANDS = {
    "validate": cmd_validate,
    "cartan": cmd_cartan,
    "mate": cmd_mate,
    "check": cmd_check,
    "tilt-verify": cmd_tilt_verify,
    "congruent": cmd_congruent,
    "gldim": cmd_gldim,
    "repetitive": cmd_repetitive,
    "trivext": cmd_trivext,
    "fixtures": cmd_fixtures,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default=None, help="rational | fp:<p> (overrides the document)")
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="resolution length bound")
    common.add_argument("--no-timing", action="store_true", help="omit the timing field")

    p = argparse.ArgumentParser(prog="trimat", description="Triangular matrix algebras, tilting and mates.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="build and validate every object of a document")
    s.add_argument("ref")
    s = sub.add_parser("cartan", parents=[common], help="Cartan matrix of an algebra or triplet")
    s.add_argument("ref")
    s = sub.add_parser("mate", parents=[common], help="construct and certify a mate")
    s.add_argument("ref")
    s.add_argument("--mode", choices=["general", "artin", "projective"], default="general")
    s.add_argument("--tilting", default=None)
    s.add_argument("--window", type=int, default=6)
    s = sub.add_parser("check", parents=[common], help="hypotheses for a triplet and a tilting module")
    s.add_argument("ref")
    s.add_argument("--tilting", default=None)
    s = sub.add_parser("tilt-verify", parents=[common], help="verify the tilting complex")
    s.add_argument("ref")
    s.add_argument("--tilting", default=None)
    s.add_argument("--mode", choices=["general", "artin", "projective"], default="general")
    s.add_argument("--window", type=int, default=6)
    s.add_argument("--no-identify", dest="identify", action="store_false", help="skip the endomorphism ring check")
    s = sub.add_parser("congruent", parents=[common], help="integral congruence of Cartan matrices")
    s.add_argument("ref")
    s.add_argument("other", nargs="?")
    s.add_argument("--search-bound", type=int, default=3)
    s = sub.add_parser("gldim", parents=[common], help="global dimension probe")
    s.add_argument("ref")
    s = sub.add_parser("repetitive", parents=[common], help="shift isomorphism of repetitive truncations")
    s.add_argument("ref")
    s.add_argument("--periods", type=int, default=3)
    s = sub.add_parser("trivext", parents=[common], help="trivial extension A x M")
    s.add_argument("algebra")
    s.add_argument("bimodule")
    s = sub.add_parser("fixtures", parents=[common], help="list or print bundled documents")
    s.add_argument("name", nargs="?")
    return p


def run(argv=None) -> tuple[int, dict]:
    parser = build_parser()
    args = parser.parse_args(argv)
    cache: dict = {}
    report = {"command": args.command, "argv": list(argv) if argv is not None else sys.argv[1:]}
    t0 = time.perf_counter()
    try:
        verdict, result = COMMANDS[args.command](args, cache)
        code = EXIT[verdict]
        report.update({"verdict": verdict, "result": to_json_value(result)})
    except (DocumentError, InputError) as e:
        code = 2
        report.update({"verdict": "input-error", "error": str(e)})
    except TrimatError as e:
        code = 2
        report.update({"verdict": "input-error", "error": f"{type(e).__name__}: {e}"})
    report["exit_code"] = code
    if not args.no_timing:
        report["timing"] = {"seconds": round(time.perf_counter() - t0, 4)}
    return code, report


def main(argv=None) -> int:
    try:
        code, report = run(argv)
    except SystemExit as e:  # argparse usage errors
        return 2 if e.code not in (0, None) else 0
    print(json.dumps(report, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
