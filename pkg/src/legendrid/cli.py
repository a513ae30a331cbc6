"""Command line entry point: ``legendrid <command> ...``.

Exit codes: 0 all claims pass, 1 some claim fails, 2 some claim is
unknown but none fails, 3 fixture or I/O error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .explorer import DEFAULT_NODE_BUDGET, admits_nontrivial_exchange, exchange_class
from .grid import GridError, equivalent, parse, serialize
from .groups import (
    Budget, abelianization, check_class_preserved, check_endo, check_homology_fixed,
    check_involution_mod_inner, fox_alexander,
)
from .invariants import alexander, summary
from .moves import STAB_TYPES, stabilize
from .registry import FixtureError, Registry
from .surfaces import (
    SurfaceError, boundary, boundary_components, codes_isomorphic, euler_characteristic,
    genus, orientable, serialize_code,
)
from .verify import combined_exit_code, run_claims

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_FIXTURE = 0, 1, 2, 3

log = logging.getLogger("legendrid")


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _diagram(reg: Registry, ref: str):
    """A registry name/expression, or a path to a ``.grid`` file."""
    if ref.endswith(".grid"):
        try:
            with open(ref) as fh:
                return parse(fh.read())
        except OSError as exc:
            raise FixtureError(f"cannot read {ref}: {exc.strerror}") from None
        except GridError as exc:
            raise FixtureError(f"{ref}: {exc}") from None
    return reg.diagram(ref)


# -- commands -------------------------------------------------------------------

def cmd_verify(reg, args) -> int:
    names = ["prop1", "prop2"] if args.which == "all" else [args.which]
    reports = []
    for name in names:
        def progress(o, name=name):
            line = f"{name} {o.id:<22} {o.status.upper():<8} {o.detail}".rstrip()
            if args.timings:
                line += f" [{o.wall_time:.2f}s]"
            print(line, flush=True)

        reports.append(run_claims(reg, name, budget=args.budget, size_cap=args.size_cap,
                                  progress=progress))
    for r in reports:
        c = r.counts()
        print(f"{r.name}: {c['pass']} pass, {c['fail']} fail, {c['unknown']} unknown, "
              f"{c['assumed']} assumed")
    code = combined_exit_code(reports)
    if args.json:
        doc = {"schema": 1, "exit_code": code, "reports": [r.as_dict(args.timings) for r in reports]}
        try:
            with open(args.json, "w") as fh:
                json.dump(doc, fh, indent=2, sort_keys=True)
                fh.write("\n")
        except OSError as exc:
            print(f"error: cannot write {args.json}: {exc.strerror}", file=sys.stderr)
            return EXIT_FIXTURE
    return code


def cmd_invariants(reg, args) -> int:
    g = _diagram(reg, args.diagram)
    out = summary(g)
    out["alexander"] = str(alexander(g).normalized())
    out["diagram"] = args.diagram
    _emit(out)
    return EXIT_OK


def cmd_orbit(reg, args) -> int:
    g = _diagram(reg, args.diagram)
    cls = exchange_class(g, args.budget)
    _emit({
        "diagram": args.diagram,
        "size": cls.size,
        "complete": cls.complete,
        "nontrivial_exchange": admits_nontrivial_exchange(g),
    })
    return EXIT_OK if cls.complete else EXIT_UNKNOWN


def cmd_stab(reg, args) -> int:
    g = _diagram(reg, args.diagram)
    h = stabilize(g, args.type, args.column, args.role)
    out = {"diagram": args.diagram, "type": args.type, "result": serialize(h)}
    code = EXIT_OK
    if args.class_size:
        cls = exchange_class(h, args.budget)
        out.update(class_size=cls.size, complete=cls.complete)
        code = EXIT_OK if cls.complete else EXIT_UNKNOWN
    _emit(out)
    return code


def cmd_surface(reg, args) -> int:
    s = reg.surface(args.surface)
    b = boundary(s)
    matches = [name for name in reg.diagram_names() if equivalent(b, reg.base_diagram(name))]
    out = {
        "surface": args.surface,
        "patches": len(s.patches),
        "euler": euler_characteristic(s),
        "orientable": orientable(s),
        "boundary_components": boundary_components(s),
        "boundary": serialize(b),
        "boundary_matches": matches,
    }
    try:
        out["genus"] = genus(s)
    except SurfaceError as exc:
        out["genus"] = None
        out["genus_error"] = str(exc)
    _emit(out)
    return EXIT_OK


def cmd_group(reg, args) -> int:
    p = reg.presentation(args.presentation)
    rank, torsion = abelianization(p)
    out = {"presentation": args.presentation, "abelian_rank": rank, "torsion": list(torsion)}
    budget = Budget(max_length=args.max_length, max_depth=args.max_depth)
    code = EXIT_OK
    if rank == 1 and not torsion:
        out["alexander"] = str(fox_alexander(p).normalized())
    if args.endo:
        e = reg.endomorphism(args.endo, args.presentation)
        checks = {
            "endomorphism": check_endo(p, e, budget).status,
            "involution_mod_inner": check_involution_mod_inner(p, e, budget).status,
            "homology_fixed": {g: check_homology_fixed(p, e, i) for i, g in enumerate(p.gens)},
        }
        if args.word:
            v = check_class_preserved(p, e, reg.word(args.word, args.presentation), budget)
            checks["class_preserved"] = v.status
            checks["abelian_class_equal"] = v.certificates.get("abelian")
        out["checks"] = checks
        statuses = [checks["endomorphism"], checks["involution_mod_inner"], checks.get("class_preserved")]
        if "unknown" in statuses:
            code = EXIT_UNKNOWN
    _emit(out)
    return code


def cmd_code(reg, args) -> int:
    if args.action == "show":
        c = reg.code(args.names[0])
        _emit({
            "code": args.names[0],
            "labels": c.n_labels,
            "family_a": len(c.family_a),
            "family_b": len(c.family_b),
            "round_trip": serialize_code(c) == reg.code_text(args.names[0]),
        })
    else:
        if len(args.names) != 2:
            raise FixtureError("code iso needs two code names")
        a, b = (reg.code(n) for n in args.names)
        _emit({"codes": args.names, "reflection": args.reflection,
               "isomorphic": codes_isomorphic(a, b, allow_reflection=args.reflection)})
    return EXIT_OK


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="legendrid", description=__doc__.splitlines()[0])
    ap.add_argument("--fixtures", help="fixture directory (default: packaged data)")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check the claim files")
    v.add_argument("which", choices=["prop1", "prop2", "all"])
    v.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET,
                   help="diagrams visited per closure or search")
    v.add_argument("--size-cap", type=int, default=None,
                   help="largest grid size in Legendrian searches (default: input size + 2)")
    v.add_argument("--json", help="write the report here")
    v.add_argument("--timings", action="store_true", help="include wall times (not reproducible)")
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("invariants", help="tb, rotation numbers, Alexander polynomial, type")
    i.add_argument("diagram", help="fixture expression such as R1 or -mu(R7), or a .grid file")
    i.set_defaults(func=cmd_invariants)

    o = sub.add_parser("orbit", help="exchange class of a diagram")
    o.add_argument("diagram")
    o.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    o.set_defaults(func=cmd_orbit)

    s = sub.add_parser("stab", help="stabilize a diagram")
    s.add_argument("diagram")
    s.add_argument("type", choices=STAB_TYPES)
    s.add_argument("--column", type=int, default=0)
    s.add_argument("--role", choices=["X", "O"], default="X")
    s.add_argument("--class-size", action="store_true", help="also close under exchanges")
    s.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    s.set_defaults(func=cmd_stab)

    f = sub.add_parser("surface", help="topology and boundary of a surface diagram")
    f.add_argument("surface")
    f.set_defaults(func=cmd_surface)

    g = sub.add_parser("group", help="presentation checks")
    g.add_argument("presentation")
    g.add_argument("--endo")
    g.add_argument("--word")
    g.add_argument("--max-length", type=int, default=64)
    g.add_argument("--max-depth", type=int, default=8)
    g.set_defaults(func=cmd_group)

    c = sub.add_parser("code", help="dividing codes")
    c.add_argument("action", choices=["show", "iso"])
    c.add_argument("names", nargs="+")
    c.add_argument("--reflection", action="store_true", help="allow cycle-reversing bijections")
    c.set_defaults(func=cmd_code)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    reg = Registry(args.fixtures)
    try:
        return args.func(reg, args)
    except FixtureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FIXTURE


if __name__ == "__main__":
    sys.exit(main())
