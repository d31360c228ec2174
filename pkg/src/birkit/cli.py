"""Command line front end: ``birkit <command> --session FILE [options]``.

Every command prints one report (JSON by default, ``--text`` for a short
human summary) on stdout.  Exit codes: 0 verdict computed, 1 input error,
2 resource limit, 3 internal error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import re
import sys
import time
import traceback
from fractions import Fraction

from . import birational as bir
from . import invariants as inv
from . import locus
from .algebra.monomial import GREVLEX, LEX
from .algebra.poly import PolyRingCtx
from .errors import (BirkitError, InputError, NotApplicable, PreconditionViolated,
                     ResourceLimit, RingMismatch, ZeroPolynomial)
from .groebner import Limits, is_reduced, spoly_check
from .session import Session, load_session

SCHEMA_VERSION = "1.0"

EXIT_OK, EXIT_INPUT, EXIT_LIMIT, EXIT_INTERNAL = 0, 1, 2, 3


def _jsonable(value):
    if isinstance(value, Fraction):
        return str(value) if value.denominator != 1 else value.numerator
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return _jsonable(value.to_dict())
    return value


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

def _forms(args, session: Session):
    """Forms from --forms (comma separated) or from --map."""
    if args.forms:
        return [session.variety.ring.parse(t) for t in args.forms.split(",")]
    if args.map:
        return list(session.get_map(args.map).forms)
    raise InputError("give --forms or --map")


def _map(args, session: Session):
    if not args.map:
        raise InputError("--map is required")
    return session.get_map(args.map)


def _option(args, session, name, default):
    value = getattr(args, name, None)
    if value is None:
        value = session.options.get(name, default)
    return value


def _degree(args, default=None):
    if args.degree is None:
        if default is None:
            raise InputError("--degree is required")
        return default
    return args.degree


# ---------------------------------------------------------------------------
# commands: each returns (result, text)
# ---------------------------------------------------------------------------

def cmd_gb(args, s):
    order = LEX if args.order == "lex" else GREVLEX
    G = s.variety.ideal.gb(order, s.variety.limits)
    elems = [str(g) for g in G.elements]
    res = {"order": args.order or "grevlex", "basis": elems, "reduced": is_reduced(G),
           "spoly_check": spoly_check(G)}
    return res, "\n".join(elems) or "0"


def cmd_nf(args, s):
    if not args.poly:
        raise InputError("--poly is required")
    order = LEX if args.order == "lex" else GREVLEX
    G = s.variety.ideal.gb(order, s.variety.limits)
    f = G.reduce(s.variety.ring.parse(args.poly))
    return {"poly": args.poly, "normal_form": str(f)}, str(f)


def cmd_member(args, s):
    if not args.poly:
        raise InputError("--poly is required")
    ok = s.variety.contains(s.variety.ring.parse(args.poly))
    return {"poly": args.poly, "member": ok}, str(ok).lower()


def cmd_dim(args, s):
    V = s.variety
    return {"krull_dim": V.r, "projective_dim": V.dim_x}, str(V.r)


def cmd_hf(args, s):
    V = s.variety
    d = _degree(args)
    N = V.ring.count_monomials(d)
    res = {"degree": d, "hf": V.hf(d), "hf_ideal": V.hf_ideal(d), "ambient": N}
    return res, str(V.hf(d))


def cmd_mult(args, s):
    H = s.variety.hilbert
    res = {"multiplicity": H.multiplicity, "dim": H.dim, "numerator": H.numerator,
           "h_vector": H.h_vector}
    return res, str(H.multiplicity)


def cmd_pclass(args, s):
    forms = _forms(args, s)
    ok = inv.principal_class_test(s.variety, forms)
    return {"forms": [str(f) for f in forms], "principal_class": ok}, str(ok).lower()


def cmd_tau(args, s):
    V = s.variety
    forms = _forms(args, s)
    if args.m is not None:
        T = inv.tau_matrix(V, forms, args.m)
        ok = inv.tau_surjective(V, forms, args.m)
        res = {"m": args.m, "shape": list(T.shape), "rank": T.rank(V.ring.field.p), "surjective": ok}
        return res, str(ok).lower()
    sweep = _option(args, s, "cap", 4)
    verdict = inv.tau_decide(V, forms, sweep)
    status = "surjective" if verdict else "indeterminate"
    return {"sweep": sweep, "verdict": status}, status


def cmd_grade2(args, s):
    forms = _forms(args, s)
    ok = inv.grade_at_least_2(s.variety, forms)
    return {"forms": [str(f) for f in forms], "grade_at_least_2": ok}, str(ok).lower()


def cmd_spread(args, s):
    forms = _forms(args, s)
    ell = inv.analytic_spread(s.variety, forms)
    return {"forms": [str(f) for f in forms], "analytic_spread": ell, "r": s.variety.r}, str(ell)


def cmd_map_check(args, s):
    h = _map(args, s)
    v = bir.bir_xd_membership(h, args.degree, _option(args, s, "trials", 32),
                              _option(args, s, "seed", 0), _option(args, s, "cap", None))
    res = {"map": h.name, "degree": args.degree or h.degree} | v.to_dict()
    return res, f"in_bir_xd: {str(v.in_bir_xd).lower()}"


def cmd_invert(args, s):
    h = _map(args, s)
    cap = _option(args, s, "cap", None) or bir.default_cap(s.variety, h.degree)
    g = bir.find_inverse(h, cap, seed=_option(args, s, "seed", 0))
    res = {"map": h.name, "cap": cap, "inverse": [str(f) for f in g.forms] if g else None,
           "inverse_degree": g.degree if g else None}
    return res, str(g) if g else "none"


def cmd_birational(args, s):
    h = _map(args, s)
    v = bir.is_birational(h, _option(args, s, "cap", None), seed=_option(args, s, "seed", 0))
    d = v.to_dict()
    res = {"map": h.name, "birational": d["status"], "inverse_degree": d["inverse_degree"],
           "inverse": d["inverse"], "reason": d["reason"], "search_cap": d["search_cap"],
           "fiber_degrees": d["fiber_degrees"]}
    return res, d["status"] + (f" (inverse degree {v.inverse_degree})" if v.inverse else "")


def cmd_coords(args, s):
    h = _map(args, s)
    vec = bir.canonical_coordinates(h)
    text = " ".join(str(v) for v in vec)
    return {"map": h.name, "s": s.variety.hf(h.degree), "coordinates": vec}, text


def cmd_bound(args, s):
    B = bir.inverse_degree_bound(s.variety, _degree(args))
    return B.to_dict(), str(B.value)


def cmd_suv(args, s):
    h = _map(args, s)
    try:
        rep = bir.suv_check(h)
    except NotApplicable as exc:
        return {"map": h.name, "applicable": False, "reason": str(exc)}, "not applicable"
    res = {"map": h.name} | rep.to_dict()
    return res, f"lhs={rep.lhs} rhs={rep.rhs} equality={str(rep.equality).lower()}"


def cmd_edim(args, s):
    E = bir.edim_bound(s.variety, _degree(args))
    return E.to_dict(), str(E.value)


def cmd_locus_eqs(args, s):
    if not args.template:
        raise InputError("--template is required (a polynomial in z1..zm)")
    arity = args.arity
    if arity is None:
        idx = [int(k) for k in re.findall(r"z(\d+)", args.template)]
        arity = max(idx, default=1)
    zring = PolyRingCtx([f"z{i}" for i in range(1, arity + 1)], s.variety.ring.field)
    T = locus.CompositionTemplate(zring.parse(args.template), s.variety.ideal, _degree(args))
    L = locus.locus_equations(T)
    eqs = [str(e) for e in L.equations]
    res = {"template": args.template, "arity": arity, "degree": T.arg_degree,
           "parameters": list(L.parameter_ring.variables), "equations": eqs}
    return res, "\n".join(eqs) or "(no equations)"


def cmd_vpz(args, s):
    d = _degree(args)
    basis = locus.vpz_basis(s.variety.ideal, d)
    monos = [str(s.variety.ring.monomial(m)) for m in s.variety.ring.monomials_of_degree(d)]
    res = {"degree": d, "monomials": monos, "basis": basis, "dimension": len(basis)}
    return res, str(len(basis))


def cmd_sample(args, s):
    if not args.locus:
        raise InputError("--locus is required (C<j>, G2 or N<count>)")
    trials = _option(args, s, "trials", 1000)
    rep = locus.sample_locus(s.variety, args.locus, _degree(args, 1), trials,
                             _option(args, s, "prime", 101), _option(args, s, "seed", 0),
                             args.jobs or 1)
    return rep.to_dict(), rep.to_csv().rstrip("\n")


COMMANDS = {
    "gb": cmd_gb, "nf": cmd_nf, "member": cmd_member,
    "dim": cmd_dim, "hf": cmd_hf, "mult": cmd_mult, "pclass": cmd_pclass, "tau": cmd_tau,
    "grade2": cmd_grade2, "spread": cmd_spread,
    "map-check": cmd_map_check, "invert": cmd_invert, "birational": cmd_birational,
    "coords": cmd_coords, "bound": cmd_bound, "suv": cmd_suv, "edim": cmd_edim,
    "locus-eqs": cmd_locus_eqs, "vpz": cmd_vpz, "sample": cmd_sample,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--session", required=True, help="session JSON file")
    common.add_argument("--map", help="name of a map in the session")
    common.add_argument("--degree", type=int)
    common.add_argument("--order", choices=["lex", "grevlex"])
    common.add_argument("--cap", type=int, help="degree cap (inverse search, tau sweep)")
    common.add_argument("--trials", type=int)
    common.add_argument("--prime", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--jobs", type=int)
    common.add_argument("--max-degree", type=int, dest="max_degree")
    common.add_argument("--max-pairs", type=int, dest="max_pairs")
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")
    common.add_argument("--poly", help="polynomial (nf, member)")
    common.add_argument("--forms", help="comma separated forms (pclass, tau, grade2, spread)")
    common.add_argument("--m", type=int, help="degree m of the tau matrix")
    common.add_argument("--template", help="template polynomial in z1..zm (locus-eqs)")
    common.add_argument("--arity", type=int, help="number of template variables")
    common.add_argument("--locus", help="C<j>, G2 or N<count> (sample)")

    parser = argparse.ArgumentParser(prog="birkit", description="Birational maps of projective varieties.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=COMMANDS[name].__name__[4:].replace("_", " "))
    return parser


def _report(command, argv, digest, result, elapsed, limits_hit, error=None):
    rep = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "argv": list(argv),
        "inputs_digest": digest,
        "result": _jsonable(result),
        "timings": {"total_s": round(elapsed, 6)},
        "limits_hit": limits_hit,
    }
    if error is not None:
        rep["error"] = error
    return rep


def run(argv=None, stdout=None, stderr=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    fmt = args.fmt or "json"
    start = time.perf_counter()
    digest = hashlib.sha256(json.dumps(argv).encode()).hexdigest()
    result, text, error, limits_hit = None, None, None, []
    code = EXIT_OK
    try:
        limits = Limits.from_env(max_degree=args.max_degree, max_pairs=args.max_pairs)
        if args.max_degree is None and args.max_pairs is None:
            limits = None
        session = load_session(args.session, limits)
        digest = hashlib.sha256((session.digest() + json.dumps(argv)).encode()).hexdigest()
        result, text = COMMANDS[args.command](args, session)
    except ResourceLimit as exc:
        code, error = EXIT_LIMIT, {"kind": "ResourceLimit", "message": str(exc)}
        limits_hit.append({"kind": str(exc.kind), "limit": exc.limit})
    except (InputError, PreconditionViolated, RingMismatch, ZeroPolynomial, NotApplicable) as exc:
        code, error = EXIT_INPUT, {"kind": type(exc).__name__, "message": str(exc)}
    except BirkitError as exc:
        code, error = EXIT_INTERNAL, {"kind": type(exc).__name__, "message": str(exc)}
    except Exception as exc:  # pragma: no cover - reported, not hidden
        code, error = EXIT_INTERNAL, {"kind": type(exc).__name__, "message": str(exc)}
        traceback.print_exc(file=stderr)
    if error is not None:
        print(f"birkit {args.command}: {error['kind']}: {error['message']}", file=stderr)
    elapsed = time.perf_counter() - start
    if fmt == "json":
        rep = _report(args.command, argv, digest, result, elapsed, limits_hit, error)
        print(json.dumps(rep, indent=2), file=stdout)
    elif text is not None:
        print(text, file=stdout)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
