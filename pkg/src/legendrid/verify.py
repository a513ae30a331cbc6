"""Run claim files against the fixtures and assemble reports.

Each claim evaluates to ``pass``, ``fail``, ``unknown`` (a search budget
ran out) or ``assumed`` (a declared correspondence that is not checked).
Reports are deterministic for fixed budgets unless wall times are requested.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .explorer import (
    DEFAULT_NODE_BUDGET, admits_nontrivial_exchange, compare_stab_classes,
    legendrian_equiv_bounded, replay, same_class,
)
from .grid import canonical_key, equivalent
from .groups import (
    Budget, check_class_preserved, check_endo, check_homology_fixed,
    check_involution_mod_inner, fox_alexander, replay_endo, wirtinger,
)
from .invariants import identify, rotation_minus, rotation_plus, tb_minus, tb_plus
from .registry import FixtureError, Registry
from .surfaces import SurfaceError, boundary, euler_characteristic, genus, orientable

SCHEMA_VERSION = 1

PASS, FAIL, UNKNOWN, ASSUMED = "pass", "fail", "unknown", "assumed"


@dataclass
class ClaimOutcome:
    id: str
    kind: str
    status: str
    detail: str = ""
    witness: dict = field(default_factory=dict)
    wall_time: float = 0.0

    def as_dict(self, timings: bool = False) -> dict:
        d = {"id": self.id, "kind": self.kind, "status": self.status, "detail": self.detail}
        if self.witness:
            d["witness"] = self.witness
        if timings:
            d["wall_time"] = round(self.wall_time, 3)
        return d


@dataclass
class VerificationReport:
    name: str
    title: str
    outcomes: list[ClaimOutcome]
    budget: int
    size_cap: int | None

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, UNKNOWN: 0, ASSUMED: 0}
        for o in self.outcomes:
            out[o.status] += 1
        return out

    @property
    def exit_code(self) -> int:
        c = self.counts()
        if c[FAIL]:
            return 1
        if c[UNKNOWN]:
            return 2
        return 0

    def as_dict(self, timings: bool = False) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "name": self.name,
            "title": self.title,
            "budget": self.budget,
            "size_cap": self.size_cap,
            "summary": self.counts(),
            "exit_code": self.exit_code,
            "claims": [o.as_dict(timings) for o in self.outcomes],
        }


def combined_exit_code(reports) -> int:
    codes = [r.exit_code for r in reports]
    if 1 in codes:
        return 1
    if 2 in codes:
        return 2
    return 0


# -- claim kinds --------------------------------------------------------------------

def _tb(reg, c, ctx):
    bad = []
    values = {}
    for name in c["diagrams"]:
        g = reg.diagram(name)
        values[name] = [tb_plus(g), tb_minus(g)]
        if "tb_plus" in c and values[name][0] != c["tb_plus"]:
            bad.append(f"tb+({name}) = {values[name][0]}")
        if "tb_minus" in c and values[name][1] != c["tb_minus"]:
            bad.append(f"tb-({name}) = {values[name][1]}")
    return (FAIL, "; ".join(bad)) if bad else (PASS, ""), {"tb": values}


def _rot(reg, c, ctx):
    bad = []
    values = {}
    for name in c["diagrams"]:
        g = reg.diagram(name)
        values[name] = [rotation_plus(g), rotation_minus(g)]
        if "rot_plus" in c and values[name][0] != c["rot_plus"]:
            bad.append(f"rot+({name}) = {values[name][0]}")
        if "rot_minus" in c and values[name][1] != c["rot_minus"]:
            bad.append(f"rot-({name}) = {values[name][1]}")
    return (FAIL, "; ".join(bad)) if bad else (PASS, ""), {"rot": values}


def _knot_type(reg, c, ctx):
    found = {name: identify(reg.diagram(name)) for name in c["diagrams"]}
    bad = [f"{k} identified as {v}" for k, v in found.items() if v != c["type"]]
    return (FAIL, "; ".join(bad)) if bad else (PASS, ""), {"types": found}


def _assumed(reg, c, ctx):
    return (ASSUMED, "declared correspondence, not verified"), {"statement": c["statement"]}


def _stab_equal(reg, c, ctx):
    r = compare_stab_classes(reg.diagram(c["lhs"]), c["lhs_type"], reg.diagram(c["rhs"]),
                             c["rhs_type"], ctx["budget"])
    return (r.status, r.detail), {"closure_size": r.sizes[0]}


def _rigid(reg, c, ctx):
    movable = [name for name in c["diagrams"] if admits_nontrivial_exchange(reg.diagram(name))]
    if movable:
        return (FAIL, "non-trivial exchange exists for " + ", ".join(movable)), {}
    return (PASS, ""), {}


def _distinct(reg, c, ctx):
    same = same_class(reg.diagram(c["lhs"]), reg.diagram(c["rhs"]), ctx["budget"])
    if same is None:
        return (UNKNOWN, "budget exhausted"), {}
    return (FAIL, "the classes coincide") if same else (PASS, ""), {}


def _not_in_classes(reg, c, ctx):
    g = reg.diagram(c["diagram"])
    status, hits = PASS, []
    for name in c["classes"]:
        same = same_class(reg.diagram(name), g, ctx["budget"])
        if same:
            hits.append(name)
        elif same is None and status == PASS:
            status = UNKNOWN
    if hits:
        return (FAIL, f"{c['diagram']} lies in the class of " + ", ".join(hits)), {}
    return (status, "" if status == PASS else "budget exhausted"), {}


def _legendrian(reg, c, ctx):
    a, b = reg.diagram(c["lhs"]), reg.diagram(c["rhs"])
    v = legendrian_equiv_bounded(a, b, c["sign"], ctx["size_cap"], ctx["budget"])
    if not v.yes:
        return (UNKNOWN, f"no path found after {v.explored} diagrams"), {}
    end = replay(a, v.path)
    ok = canonical_key(end.xs, end.os) == canonical_key(b.xs, b.os)
    return (PASS if ok else FAIL, ""), {"path": [str(m) for m in v.path]}


def _surface(reg, c, ctx):
    try:
        s = reg.surface(c["surface"])
        b = boundary(s)
        facts = {"euler": euler_characteristic(s), "orientable": orientable(s), "genus": genus(s),
                 "patches": len(s.patches)}
    except SurfaceError as exc:
        return (FAIL, str(exc)), {}
    bad = [f"{k} = {facts[k]}" for k in ("euler", "orientable", "genus") if k in c and facts[k] != c[k]]
    if not equivalent(b, reg.diagram(c["boundary"])):
        bad.append(f"boundary is not equivalent to {c['boundary']}")
    return (FAIL, "; ".join(bad)) if bad else (PASS, ""), facts


def _alexander_agree(reg, c, ctx):
    polys = {c["diagram"]: fox_alexander(wirtinger(reg.diagram(c["diagram"]))).normalized()}
    for name in c["presentations"]:
        polys[name] = fox_alexander(reg.presentation(name)).normalized()
    ok = len(set(polys.values())) == 1
    return (PASS if ok else FAIL, ""), {"alexander": {k: str(v) for k, v in polys.items()}}


def _certs(steps):
    return [[s.pos, s.rel, s.sign, s.rotation, s.length] for s in steps]


def _group_endo(reg, c, ctx):
    p = reg.presentation(c["presentation"])
    e = reg.endomorphism(c["endo"], c["presentation"])
    v = check_endo(p, e, ctx["group_budget"])
    if not v.verified:
        return (UNKNOWN, "no certificate within budget"), {}
    if not replay_endo(p, e, v):
        return (FAIL, "certificate does not replay"), {}
    return (PASS, ""), {"certificates": {str(k): _certs(s) for k, s in v.certificates.items()}}


def _group_involution(reg, c, ctx):
    p = reg.presentation(c["presentation"])
    e = reg.endomorphism(c["endo"], c["presentation"])
    v = check_involution_mod_inner(p, e, ctx["group_budget"])
    if not v.verified:
        return (UNKNOWN, "no conjugator within budget"), {}
    return (PASS, ""), {"conjugator": p.format(v.certificates["conjugator"])}


def _group_class(reg, c, ctx):
    p = reg.presentation(c["presentation"])
    e = reg.endomorphism(c["endo"], c["presentation"])
    w = reg.word(c["word"], c["presentation"])
    v = check_class_preserved(p, e, w, ctx["group_budget"])
    if not v.certificates.get("abelian", False):
        return (FAIL, "abelianized images differ"), {}
    if not v.verified:
        return (UNKNOWN, "no conjugator within budget"), {}
    return (PASS, ""), {"conjugator": p.format(v.certificates["conjugator"]),
                        "steps": _certs(v.certificates["steps"])}


def _group_homology(reg, c, ctx):
    p = reg.presentation(c["presentation"])
    e = reg.endomorphism(c["endo"], c["presentation"])
    bad = [g for g in c["generators"] if not check_homology_fixed(p, e, p.gens.index(g))]
    return (FAIL, "class moved: " + ", ".join(bad)) if bad else (PASS, ""), {}


HANDLERS = {
    "tb": _tb,
    "rot": _rot,
    "knot_type": _knot_type,
    "assumed": _assumed,
    "stab_equal": _stab_equal,
    "rigid": _rigid,
    "class_distinct": _distinct,
    "not_in_classes": _not_in_classes,
    "legendrian": _legendrian,
    "surface": _surface,
    "alexander_agree": _alexander_agree,
    "group_endo": _group_endo,
    "group_involution": _group_involution,
    "group_class": _group_class,
    "group_homology": _group_homology,
}


def run_claims(reg: Registry, name: str, budget: int = DEFAULT_NODE_BUDGET,
               size_cap: int | None = None, group_budget: Budget = Budget(),
               progress=None) -> VerificationReport:
    """Evaluate every claim of ``claims/<name>.json`` in file order."""
    doc = reg.claims(name)
    ctx = {"budget": budget, "size_cap": size_cap, "group_budget": group_budget}
    outcomes = []
    for c in doc.get("claims", []):
        handler = HANDLERS.get(c.get("kind"))
        if handler is None:
            raise FixtureError(f"claim {c.get('id')!r} has unknown kind {c.get('kind')!r}")
        t0 = time.perf_counter()
        try:
            (status, detail), witness = handler(reg, c, ctx)
        except KeyError as exc:
            raise FixtureError(f"claim {c.get('id')!r} lacks field {exc}") from None
        out = ClaimOutcome(c["id"], c["kind"], status, detail, witness, time.perf_counter() - t0)
        outcomes.append(out)
        if progress is not None:
            progress(out)
    return VerificationReport(name, doc.get("title", name), outcomes, budget, size_cap)


def verify_prop1(reg: Registry | None = None, **kw) -> VerificationReport:
    return run_claims(reg or Registry(), "prop1", **kw)


def verify_prop2(reg: Registry | None = None, **kw) -> VerificationReport:
    return run_claims(reg or Registry(), "prop2", **kw)
