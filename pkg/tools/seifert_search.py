"""Find a rectangular diagram of a genus-two Seifert surface bounded by a
given 9x9 grid diagram, using CP-SAT (ortools; a tool-time dependency only).

Boundary levels sit at even positions of a doubled level grid; odd levels
are optional interior levels.  With ``n`` boundary levels per circle and
``L`` interior levels in use, a connected surface with one fan per level
has chi = n - F + L, so chi = -3 fixes the rectangle count.  The one-fan
and connectivity conditions are checked after each solve and violated
solutions are cut off.

Usage: python tools/seifert_search.py R1.grid out.surface [--interior K]
"""

import argparse
import sys

from ortools.sat.python import cp_model

from legendrid.grid import canonical_key, parse
from legendrid.surfaces import (
    SurfaceError, boundary, euler_characteristic, genus, orientable,
    serialize_surface, validate_surface,
)

KINDS = ("SW", "SE", "NE", "NW")
CS = {"SW": 1, "NE": 1, "NW": -1, "SE": -1}


def cyc(lo, hi, size):
    out, x = [], lo
    while True:
        out.append(x)
        if x == hi:
            return out
        x = (x + 1) % size


def build(knot, interior_theta, interior_phi, slots=1):
    n = knot.n
    w = slots + 1
    # boundary level i sits at w*i; interior slots follow it
    t_levels = sorted([w * i for i in range(n)]
                      + [w * i + j for i in interior_theta for j in range(1, w)])
    p_levels = sorted([w * i for i in range(n)]
                      + [w * i + j for i in interior_phi for j in range(1, w)])
    nt, np_ = len(t_levels), len(p_levels)
    tix = {v: k for k, v in enumerate(t_levels)}
    pix = {v: k for k, v in enumerate(p_levels)}
    bdir = {}
    for c in range(n):
        bdir[(tix[w * c], pix[w * knot.xs[c]])] = -1
        bdir[(tix[w * c], pix[w * knot.os[c]])] = 1
    rects = []
    for t1 in range(nt):
        for t2 in range(nt):
            if t1 == t2:
                continue
            ts = cyc(t1, t2, nt)
            for p1 in range(np_):
                for p2 in range(np_):
                    if p1 == p2:
                        continue
                    ps = cyc(p1, p2, np_)
                    corners = {(t1, p1), (t2, p1), (t2, p2), (t1, p2)}
                    if any((t, p) in bdir for t in ts for p in ps if (t, p) not in corners):
                        continue
                    rects.append((t1, t2, p1, p2))
    return nt, np_, bdir, rects


def corner_map(r):
    t1, t2, p1, p2 = r
    return {"SW": (t1, p1), "SE": (t2, p1), "NE": (t2, p2), "NW": (t1, p2)}


def solve(knot, interior_theta, interior_phi, chi=-3, time_limit=600.0, workers=8,
          optional=False, slots=1):
    nt, np_, bdir, rects = build(knot, interior_theta, interior_phi, slots)
    print(f"levels {nt}x{np_}, {len(rects)} candidate rectangles", flush=True)
    m = cp_model.CpModel()
    x = [m.NewBoolVar(f"x{i}") for i in range(len(rects))]
    # y[i]: rectangle i is used and positively oriented
    y = [m.NewBoolVar(f"y{i}") for i in range(len(rects))]
    for xi, yi in zip(x, y):
        m.AddImplication(yi, xi)
    at = {}
    for i, r in enumerate(rects):
        for k, pt in corner_map(r).items():
            at.setdefault(pt, {kk: [] for kk in KINDS})[k].append(i)
    used = {}
    for t in range(nt):
        for p in range(np_):
            pt = (t, p)
            ks = at.get(pt, {kk: [] for kk in KINDS})
            c = {k: sum(x[i] for i in ks[k]) for k in KINDS}
            for k in KINDS:
                m.Add(c[k] <= 1)
            if pt in bdir:
                m.Add(sum(c.values()) == 1)
                for k in KINDS:
                    want = bdir[pt] * CS[k]
                    for i in ks[k]:
                        m.Add(y[i] == x[i]) if want > 0 else m.Add(y[i] == 0)
                used[pt] = 1
            else:
                m.Add(c["SW"] == c["NE"])
                m.Add(c["NW"] == c["SE"])
                m.Add(c["SW"] + c["NW"] <= 1)
                u = m.NewBoolVar(f"u{t}_{p}")
                m.Add(u == c["SW"] + c["NW"])
                used[pt] = u
                # the two rectangles sharing a corner have opposite orientations
                for a, b in (("SW", "NE"), ("NW", "SE")):
                    m.Add(sum(y[i] for i in ks[a] + ks[b]) == c[a])
    for i, r in enumerate(rects):
        t1, t2, p1, p2 = r
        cs = set(corner_map(r).values())
        for t in cyc(t1, t2, nt):
            for p in cyc(p1, p2, np_):
                if (t, p) in cs or (t, p) in bdir:
                    continue
                m.AddImplication(x[i], used[(t, p)].Not())
    # every interior level is used
    t_int = [tix for tix in range(nt) if all((tix, p) not in bdir for p in range(np_))]
    p_int = [pix for pix in range(np_) if all((t, pix) not in bdir for t in range(nt))]
    level_used = []
    for axis, levels in ((0, t_int), (1, p_int)):
        for lv in levels:
            on = [x[i] for i, r in enumerate(rects) if lv in r[2 * axis: 2 * axis + 2]]
            if optional:
                b = m.NewBoolVar(f"lv{axis}_{lv}")
                m.AddMaxEquality(b, on)
                level_used.append(b)
            else:
                m.AddBoolOr(on)
                level_used.append(1)
    m.Add(sum(x) == knot.n + sum(level_used) - chi)
    target = canonical_key(knot.xs, knot.os)
    solver = cp_model.CpSolver()
    solver.parameters.max_time_in_seconds = time_limit
    solver.parameters.num_workers = workers
    for attempt in range(500):
        st = solver.Solve(m)
        if st not in (cp_model.OPTIMAL, cp_model.FEASIBLE):
            print("no solution:", solver.StatusName(st), flush=True)
            return None
        chosen = [i for i in range(len(x)) if solver.Value(x[i])]
        pos = [i for i in chosen if solver.Value(y[i])]
        order = pos[:1] + [i for i in chosen if i not in pos[:1]]
        try:
            surf = validate_surface(nt, np_, [rects[i] for i in order])
            ok = (orientable(surf) and euler_characteristic(surf) == chi and genus(surf) == 2)
            b = boundary(surf)
            ok = ok and canonical_key(b.xs, b.os) == target
        except SurfaceError as exc:
            print(f"attempt {attempt}: rejected ({exc})", flush=True)
            ok = False
        if ok:
            return surf
        m.AddBoolOr([x[i].Not() for i in chosen])
    return None


def compress(surf):
    ts = sorted({v for r in surf.patches for v in (r.t1, r.t2)})
    ps = sorted({v for r in surf.patches for v in (r.p1, r.p2)})
    ti = {v: k for k, v in enumerate(ts)}
    pi = {v: k for k, v in enumerate(ps)}
    return validate_surface(len(ts), len(ps), [
        (ti[r.t1], ti[r.t2], pi[r.p1], pi[r.p2]) for r in surf.patches])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("grid")
    ap.add_argument("out")
    ap.add_argument("--theta", default="", help="comma list of interior theta slots")
    ap.add_argument("--phi", default="", help="comma list of interior phi slots")
    ap.add_argument("--time", type=float, default=600.0)
    ap.add_argument("--all", action="store_true", help="offer every interior slot, optionally used")
    ap.add_argument("--slots", type=int, default=1, help="interior slots per gap")
    args = ap.parse_args()
    knot = parse(open(args.grid).read())
    it = [int(v) for v in args.theta.split(",") if v]
    ip = [int(v) for v in args.phi.split(",") if v]
    if args.all:
        it = ip = list(range(knot.n))
    surf = solve(knot, it, ip, time_limit=args.time, optional=args.all,
                 slots=args.slots)
    if surf is None:
        sys.exit(1)
    surf = compress(surf)
    open(args.out, "w").write(serialize_surface(surf))
    print(serialize_surface(surf))


if __name__ == "__main__":
    main()
