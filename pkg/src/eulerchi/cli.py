"""Command line front end.

Every subcommand reads one system file (see :mod:`eulerchi.parsing`) and
prints either plain text or, with ``--json``, a document matching one of the
schemas shipped in ``eulerchi/schemas``.  Exit codes: 0 success, 2 input
errors, 3 engine errors, 1 anything unexpected.
"""

import argparse
import json
import logging
import sys
from importlib import resources

from . import errors
from .arrangements import (Arrangement, arrangement_motive_identity, characteristic_polynomial,
                           intersection_lattice)
from .decompose import components
from .engine import (ProjectionConfig, euler_characteristic, motive, projective_euler,
                     projective_motive, report)
from .ffcount import DEFAULT_BUDGET, MixedGrid, almost_all_primes_check, count_report, reduce_mod_p
from .groebner import Ideal, degree, dimension, eliminate, hilbert_polynomial, is_homogeneous_ideal
from .multipoly import GREVLEX, LEX
from .parsing import parse_system

log = logging.getLogger("eulerchi")

COMMANDS = ("gb", "eliminate", "dim-deg", "decompose", "euler", "motive", "proj-euler",
            "proj-motive", "arrangement", "count", "validate-ff")

SCHEMAS = {
    "gb": "basis.json",
    "eliminate": "basis.json",
    "dim-deg": "dimdeg.json",
    "decompose": "decompose.json",
    "euler": "report.json",
    "motive": "report.json",
    "proj-euler": "projective.json",
    "proj-motive": "projective.json",
    "arrangement": "arrangement.json",
    "count": "count.json",
    "validate-ff": "validate_ff.json",
    "error": "error.json",
}


def load_schema(name):
    """The JSON schema for a subcommand (or "error")."""
    text = resources.files("eulerchi").joinpath("schemas", SCHEMAS[name]).read_text()
    return json.loads(text)


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}")


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="system file ('-' for stdin)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--bound", type=_positive, default=10, help="coefficient bound for coordinate changes")
    common.add_argument("--retries", type=_positive, default=20)
    common.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="points per enumeration")
    common.add_argument("--json", action="store_true", help="machine readable output")
    common.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="eulerchi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("gb", parents=[common], help="reduced Groebner basis")
    p = sub.add_parser("eliminate", parents=[common], help="elimination ideal")
    p.add_argument("--keep", required=True, help="comma separated variables to keep")
    sub.add_parser("dim-deg", parents=[common], help="dimension, degree and Hilbert polynomial")
    sub.add_parser("decompose", parents=[common], help="equidimensional radical components")
    sub.add_parser("euler", parents=[common], help="Euler characteristic")
    sub.add_parser("motive", parents=[common], help="the polynomial F(V) in Z[L]")
    sub.add_parser("proj-euler", parents=[common], help="Euler characteristic of a projective set")
    sub.add_parser("proj-motive", parents=[common], help="F of a projective set")
    sub.add_parser("arrangement", parents=[common], help="hyperplane arrangement invariants")
    p = sub.add_parser("count", parents=[common], help="points on a mixed finite-field grid")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--ds", type=_int_list, required=True)
    p = sub.add_parser("validate-ff", parents=[common], help="compare F over Q with F over F_p")
    p.add_argument("--primes", type=_int_list, required=True)
    p.add_argument("--dmax", type=int, default=2)
    return parser


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise errors.InputError(f"cannot read {path}: {exc.strerror}") from exc


def _ideal(system):
    return Ideal(system.ring, system.polys)


def _basis_doc(system, G, order, ring=None):
    ring = ring or system.ring
    return {"field": system.field_spec, "vars": list(ring.vars), "order": order,
            "basis": [g.to_str() for g in G]}


def _cmd_gb(args, system, cfg):
    order = LEX if args.order == "lex" else GREVLEX
    G = _ideal(system).gb(order)
    return _basis_doc(system, G.polys, args.order), "\n".join(g.to_str(order) for g in G.polys)


def _cmd_eliminate(args, system, cfg):
    keep = [v.strip() for v in args.keep.split(",") if v.strip()]
    for v in keep:
        if v not in system.ring.vars:
            raise errors.UnknownVariable(f"unknown variable {v!r}")
    J = eliminate(_ideal(system), keep, LEX if args.order == "lex" else None)
    gens = J.reduced_gens()
    doc = _basis_doc(system, gens, args.order, J.ring)
    return doc, "\n".join(g.to_str() for g in gens) or "0"


def _cmd_dim_deg(args, system, cfg):
    I = _ideal(system)
    d, g = dimension(I), degree(I)
    doc = {"dimension": d, "degree": g, "hilbert": None}
    text = f"dimension {d}\ndegree {g}"
    if is_homogeneous_ideal(I):
        hp = hilbert_polynomial(I)
        doc["hilbert"] = [str(c) for c in hp.coeffs]
        text += f"\nhilbert {hp}"
    return doc, text


def _cmd_decompose(args, system, cfg):
    comps = components(_ideal(system))
    doc = {"components": [{"dimension": dimension(C), "degree": degree(C),
                           "basis": [g.to_str() for g in C.reduced_gens()]} for C in comps]}
    lines = []
    for c in doc["components"]:
        lines.append(f"dim {c['dimension']} deg {c['degree']}: " + ", ".join(c["basis"]))
    return doc, "\n".join(lines)


def _cmd_report(args, system, cfg):
    I = _ideal(system)
    if args.json:
        return report(I, cfg).to_dict(), None
    if args.command == "euler":
        return None, str(euler_characteristic(I, cfg))
    return None, str(motive(I, cfg))


def _cmd_projective(args, system, cfg):
    I = _ideal(system)
    if args.command == "proj-euler":
        chi = projective_euler(I, cfg)
        return {"euler": chi, "motive": None, "seed": cfg.seed}, str(chi)
    F = projective_motive(I, cfg)
    return {"euler": F(1), "motive": F.tolist(), "seed": cfg.seed}, str(F)


def _cmd_arrangement(args, system, cfg):
    A = Arrangement(system.ring, system.polys)
    chi = characteristic_polynomial(A)
    engine_side, lattice_side = arrangement_motive_identity(A, cfg)
    ok = engine_side == lattice_side
    doc = {"characteristic": chi.tolist(), "motive_lattice": lattice_side.tolist(),
           "motive_engine": engine_side.tolist(), "flats": len(intersection_lattice(A)),
           "identity": ok, "seed": cfg.seed}
    text = (f"chi(A, L) = {chi}\nF(A) = {engine_side}\n"
            f"L^n - chi(A, L) = {lattice_side}\nidentity {'holds' if ok else 'FAILS'}")
    return doc, text


def _cmd_count(args, system, cfg):
    I = _ideal(system)
    grid = MixedGrid(args.p, args.ds)
    if I.ring.field.characteristic not in (0, args.p) or getattr(I.ring.field, "degree", 1) != 1:
        raise errors.FieldMismatch(f"system over {system.field_spec} counted over F_{args.p}")
    if I.ring.field.characteristic == 0:
        I, _ = reduce_mod_p(I, args.p)
    rep = count_report(I, grid, cfg=cfg, budget=args.budget)
    doc = rep.to_dict()
    doc["seed"] = cfg.seed
    return doc, str(rep.count)


def _cmd_validate(args, system, cfg):
    I = _ideal(system)
    if I.ring.field.characteristic != 0:
        raise errors.InputError("validate-ff needs a system over Q")
    F = motive(I, cfg)
    verdicts = almost_all_primes_check(I, args.primes, args.dmax, cfg, args.budget)
    doc = {"motive": F.tolist(), "verdicts": [v.to_dict() for v in verdicts], "seed": cfg.seed}
    lines = [f"F = {F}"]
    for v in verdicts:
        if v.bad:
            lines.append(f"p={v.p}: bad ({'; '.join(v.reasons)})")
        else:
            w = "none" if v.witness is None else ",".join(map(str, v.witness.ds))
            lines.append(f"p={v.p}: F_p = {v.motive} {'matches' if v.match else 'DIFFERS'}, witness {w}")
    return doc, "\n".join(lines)


HANDLERS = {
    "gb": _cmd_gb,
    "eliminate": _cmd_eliminate,
    "dim-deg": _cmd_dim_deg,
    "decompose": _cmd_decompose,
    "euler": _cmd_report,
    "motive": _cmd_report,
    "proj-euler": _cmd_projective,
    "proj-motive": _cmd_projective,
    "arrangement": _cmd_arrangement,
    "count": _cmd_count,
    "validate-ff": _cmd_validate,
}


def run(argv=None, stdout=None):
    """Run one subcommand; returns the exit code."""
    out = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                        format="%(levelname)s %(name)s: %(message)s")
    cfg = ProjectionConfig(seed=args.seed, bound=args.bound, retries=args.retries)
    try:
        system = parse_system(_read(args.file), seed=args.seed)
        doc, text = HANDLERS[args.command](args, system, cfg)
    except errors.EulerChiError as exc:
        code = errors.exit_code_for(exc)
        if args.json:
            json.dump({"error": type(exc).__name__, "message": str(exc), "exit_code": code}, out)
            out.write("\n")
        else:
            print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return code
    if args.json:
        json.dump(doc, out)
        out.write("\n")
    else:
        out.write(text + "\n")
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
