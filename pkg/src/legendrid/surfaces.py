"""Rectangular diagrams of surfaces and dividing codes.

A surface diagram is a finite set of rectangles on the torus.  In the
three-sphere viewed as the join of the two level circles, a rectangle
spans a disc bounded by the four join arcs over its corners.  Two
rectangles may be disjoint, cross (neither contains a corner of the
other), or share a single corner diagonally; a corner shared by two
rectangles is an interior edge of the surface and a corner used once is a
boundary arc.  The boundary therefore is the set of once-used corners,
which must form a rectangular diagram of a link.

Topology of the glued complex:

* faces are the rectangles, edges are the distinct corners;
* near a point of a level circle the sides lying on that level fit
  together along shared corners into fans; each fan is one vertex;
* every used level carries exactly one fan, otherwise the surface would
  be pinched at that point.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from itertools import combinations

from .grid import GridDiagram, validate


class SurfaceError(ValueError):
    pass


class TripleSideSharing(SurfaceError):
    """A corner is shared by three or more rectangles."""


class NonSurfaceIncidence(SurfaceError):
    """Two rectangles meet in a way that does not glue to a surface."""


class Disconnected(SurfaceError):
    pass


class SurfaceSyntaxError(SurfaceError):
    pass


def _in_cyclic(x: int, lo: int, hi: int, size: int) -> bool:
    """Is ``x`` in the closed cyclic interval from ``lo`` up to ``hi``?"""
    return (x - lo) % size <= (hi - lo) % size


@dataclass(frozen=True, order=True)
class RectanglePatch:
    """``[t1, t2] x [p1, p2]``, each interval running upward cyclically."""

    t1: int
    t2: int
    p1: int
    p2: int

    def corners(self) -> dict[str, tuple[int, int]]:
        return {
            "SW": (self.t1, self.p1),
            "SE": (self.t2, self.p1),
            "NE": (self.t2, self.p2),
            "NW": (self.t1, self.p2),
        }

    def contains(self, point, nt: int, np_: int) -> bool:
        t, p = point
        return _in_cyclic(t, self.t1, self.t2, nt) and _in_cyclic(p, self.p1, self.p2, np_)


# SW/NE corners traverse their join arc from the theta circle to the phi
# circle when the rectangle is positively oriented
CORNER_SIGN = {"SW": 1, "NE": 1, "NW": -1, "SE": -1}
DIAGONAL = {"SW": "NE", "NE": "SW", "NW": "SE", "SE": "NW"}


@dataclass(frozen=True)
class SurfaceDiagram:
    n_theta: int
    n_phi: int
    patches: tuple[RectanglePatch, ...]

    def corner_uses(self) -> dict[tuple[int, int], list[tuple[int, str]]]:
        uses = defaultdict(list)
        for i, r in enumerate(self.patches):
            for kind, pt in r.corners().items():
                uses[pt].append((i, kind))
        return dict(uses)

    def boundary_points(self) -> dict[tuple[int, int], tuple[int, str]]:
        return {pt: u[0] for pt, u in self.corner_uses().items() if len(u) == 1}


def validate_surface(n_theta: int, n_phi: int, patches) -> SurfaceDiagram:
    """Check the gluing rules and return the diagram.

    Raises :class:`TripleSideSharing` or :class:`NonSurfaceIncidence`.
    """
    patches = tuple(RectanglePatch(*p) for p in patches)
    for r in patches:
        if r.t1 % n_theta == r.t2 % n_theta or r.p1 % n_phi == r.p2 % n_phi:
            raise NonSurfaceIncidence(f"degenerate rectangle {r}")
        for v in (r.t1, r.t2):
            if not 0 <= v < n_theta:
                raise NonSurfaceIncidence(f"theta level out of range in {r}")
        for v in (r.p1, r.p2):
            if not 0 <= v < n_phi:
                raise NonSurfaceIncidence(f"phi level out of range in {r}")
    s = SurfaceDiagram(n_theta, n_phi, patches)
    for pt, uses in s.corner_uses().items():
        if len(uses) > 2:
            raise TripleSideSharing(f"corner {pt} is used by {len(uses)} rectangles")
        if len(uses) == 2:
            (_, k1), (_, k2) = uses
            if DIAGONAL[k1] != k2:
                raise NonSurfaceIncidence(f"rectangles meet along a side at {pt}")
    for (i, a), (j, b) in combinations(enumerate(patches), 2):
        ca, cb = set(a.corners().values()), set(b.corners().values())
        for pt in ca - cb:
            if b.contains(pt, n_theta, n_phi):
                raise NonSurfaceIncidence(f"corner {pt} of rectangle {i} touches rectangle {j}")
        for pt in cb - ca:
            if a.contains(pt, n_theta, n_phi):
                raise NonSurfaceIncidence(f"corner {pt} of rectangle {j} touches rectangle {i}")
    cols, rows = defaultdict(int), defaultdict(int)
    for t, p in s.boundary_points():
        cols[t] += 1
        rows[p] += 1
    if any(v != 2 for v in cols.values()) or any(v != 2 for v in rows.values()):
        raise NonSurfaceIncidence("boundary is not a rectangular diagram of a link")
    # a level is a single point of the sphere; two fans there pinch the surface
    for (axis, level), k in _level_fans(s).items():
        if k > 1:
            name = "theta" if axis == 0 else "phi"
            raise NonSurfaceIncidence(f"{name} level {level} carries {k} separate fans")
    return s


# -- topology ---------------------------------------------------------------------

def _components(s: SurfaceDiagram) -> list[set[int]]:
    parent = list(range(len(s.patches)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for uses in s.corner_uses().values():
        if len(uses) == 2:
            parent[find(uses[0][0])] = find(uses[1][0])
    groups = defaultdict(set)
    for i in range(len(s.patches)):
        groups[find(i)].add(i)
    return list(groups.values())


def _level_fans(s: SurfaceDiagram) -> dict[tuple[int, int], int]:
    """Fans on each used level, keyed by ``(axis, level)``."""
    uses = s.corner_uses()
    out = {}
    for axis in (0, 1):
        # sides lying on each level, as (patch, level) -> its two corners
        sides = defaultdict(list)
        for i, r in enumerate(s.patches):
            c = r.corners()
            if axis == 0:
                sides[r.t1].append((c["SW"], c["NW"]))
                sides[r.t2].append((c["SE"], c["NE"]))
            else:
                sides[r.p1].append((c["SW"], c["SE"]))
                sides[r.p2].append((c["NW"], c["NE"]))
        for level, segs in sides.items():
            parent = list(range(len(segs)))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            at = defaultdict(list)
            for k, (a, b) in enumerate(segs):
                at[a].append(k)
                at[b].append(k)
            for pt, ks in at.items():
                if len(uses[pt]) == 2:
                    for k in ks[1:]:
                        parent[find(k)] = find(ks[0])
            out[(axis, level)] = len({find(k) for k in range(len(segs))})
    return out


def _fans(s: SurfaceDiagram) -> int:
    return sum(_level_fans(s).values())


def euler_characteristic(s: SurfaceDiagram) -> int:
    return _fans(s) - len(s.corner_uses()) + len(s.patches)


def orientation_signs(s: SurfaceDiagram) -> list[int] | None:
    """Signs making every shared corner cancel, or ``None`` if impossible.

    Diagonally shared corners have equal corner signs, so neighbouring
    rectangles need opposite orientations: orientable means bipartite.
    The first rectangle of each component is taken positive.
    """
    nbrs = defaultdict(list)
    for uses in s.corner_uses().values():
        if len(uses) == 2:
            a, b = uses[0][0], uses[1][0]
            nbrs[a].append(b)
            nbrs[b].append(a)
    sign = [0] * len(s.patches)
    for start in range(len(s.patches)):
        if sign[start]:
            continue
        sign[start] = 1
        stack = [start]
        while stack:
            i = stack.pop()
            for j in nbrs[i]:
                if not sign[j]:
                    sign[j] = -sign[i]
                    stack.append(j)
                elif sign[j] == sign[i]:
                    return None
    return sign


def orientable(s: SurfaceDiagram) -> bool:
    return orientation_signs(s) is not None


def boundary(s: SurfaceDiagram, orientation: int = 1) -> GridDiagram:
    """Boundary as an oriented grid diagram, levels compressed.

    ``orientation`` flips the surface orientation (and so the boundary's).
    For a non-orientable surface each component is oriented by tracing it
    from its smallest point.
    """
    signs = orientation_signs(s)
    pts = s.boundary_points()
    cols = sorted({t for t, _ in pts})
    rows = sorted({p for _, p in pts})
    ci = {t: k for k, t in enumerate(cols)}
    ri = {p: k for k, p in enumerate(rows)}
    n = len(cols)
    xs, os = [None] * n, [None] * n
    if signs is None:
        return _traced_boundary(pts, ci, ri)
    for (t, p), (i, kind) in pts.items():
        direction = CORNER_SIGN[kind] * signs[i] * orientation
        # theta -> phi arcs end a vertical edge: O vertices
        if direction > 0:
            os[ci[t]] = ri[p]
        else:
            xs[ci[t]] = ri[p]
    return validate(n, xs, os, allow_links=True)


def _traced_boundary(pts, ci, ri) -> GridDiagram:
    by_col, by_row = defaultdict(list), defaultdict(list)
    for t, p in pts:
        by_col[t].append((t, p))
        by_row[p].append((t, p))
    n = len(ci)
    xs, os = [None] * n, [None] * n
    done = set()
    for start in sorted(pts):
        if start in done:
            continue
        cur = start
        while cur not in done:
            # vertical edges run X -> O, horizontal ones O -> X
            t, p = cur
            up = next(q for q in by_col[t] if q != cur)
            xs[ci[t]], os[ci[t]] = ri[p], ri[up[1]]
            done.update((cur, up))
            cur = next(q for q in by_row[up[1]] if q != up)
    return validate(n, xs, os, allow_links=True)


def boundary_components(s: SurfaceDiagram) -> int:
    from .grid import count_components

    b = boundary(s)
    return count_components(b.xs, b.os)


def genus(s: SurfaceDiagram) -> int:
    if len(_components(s)) != 1:
        raise Disconnected("surface diagram is not connected")
    if not orientable(s):
        raise SurfaceError("genus is only defined here for orientable surfaces")
    chi = euler_characteristic(s)
    g2 = 2 - chi - boundary_components(s)
    return g2 // 2


def single_rectangle() -> SurfaceDiagram:
    return validate_surface(2, 2, [(0, 1, 0, 1)])


# -- text format --------------------------------------------------------------------

def parse_surface(text: str) -> SurfaceDiagram:
    """``levels <n_theta> <n_phi>`` then one ``rect t1 t2 p1 p2`` per line."""
    n_theta = n_phi = None
    patches = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        try:
            if parts[0] == "levels":
                n_theta, n_phi = int(parts[1]), int(parts[2])
            elif parts[0] == "rect":
                patches.append(tuple(int(v) for v in parts[1:5]))
                if len(parts) != 5:
                    raise ValueError(line)
            else:
                raise ValueError(line)
        except (ValueError, IndexError):
            raise SurfaceSyntaxError(f"cannot parse line {line!r}") from None
    if n_theta is None:
        raise SurfaceSyntaxError("missing 'levels' header")
    return validate_surface(n_theta, n_phi, patches)


def serialize_surface(s: SurfaceDiagram) -> str:
    lines = [f"levels {s.n_theta} {s.n_phi}"]
    lines += [f"rect {r.t1} {r.t2} {r.p1} {r.p2}" for r in s.patches]
    return "\n".join(lines) + "\n"


# -- dividing codes -------------------------------------------------------------------

class CodeSyntaxError(ValueError):
    pass


class LabelCoverageError(ValueError):
    pass


@dataclass(frozen=True)
class DividingCode:
    """Two families of cyclic label sequences.

    ``closed_marks`` remembers which cycles of the second family were
    printed with their first label repeated at the end; it affects only
    formatting, not equality of the underlying code.
    """

    family_a: tuple[tuple[int, ...], ...]
    family_b: tuple[tuple[int, ...], ...]
    closed_marks: tuple[bool, ...] = ()

    @property
    def n_labels(self) -> int:
        return sum(len(t) for t in self.family_a)

    def _perm(self, family) -> dict[int, int]:
        out = {}
        for cyc in family:
            for i, x in enumerate(cyc):
                out[x] = cyc[(i + 1) % len(cyc)]
        return out

    def permutations(self) -> tuple[dict[int, int], dict[int, int]]:
        return self._perm(self.family_a), self._perm(self.family_b)

    def __eq__(self, other):
        if not isinstance(other, DividingCode):
            return NotImplemented
        return self.permutations() == other.permutations()

    def __hash__(self):
        a, b = self.permutations()
        return hash((tuple(sorted(a.items())), tuple(sorted(b.items()))))


_TUPLE = re.compile(r"\(([^()]*)\)")


def _family(text: str):
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise CodeSyntaxError(f"family must be brace-delimited: {text[:30]!r}")
    inner = text[1:-1]
    if _TUPLE.sub("", inner).replace(",", "").strip():
        raise CodeSyntaxError("unexpected text between tuples")
    out = []
    for m in _TUPLE.finditer(inner):
        try:
            out.append(tuple(int(v) for v in m.group(1).split(",")))
        except ValueError:
            raise CodeSyntaxError(f"bad tuple ({m.group(1)})") from None
    return out


def parse_code(text: str) -> DividingCode:
    """Parse ``{(..),(..)},{(..),(..)}`` as printed; whitespace is ignored."""
    flat = "".join(text.split())
    depth, split_at = 0, None
    for i, ch in enumerate(flat):
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth == 0 and split_at is None:
                split_at = i + 1
        if depth < 0:
            raise CodeSyntaxError("unbalanced braces")
    if depth or split_at is None or flat[split_at: split_at + 1] != ",":
        raise CodeSyntaxError("expected two families separated by a comma")
    fam_a = _family(flat[:split_at])
    raw_b = _family(flat[split_at + 1:])
    fam_b, marks = [], []
    for cyc in raw_b:
        closed = len(cyc) > 1 and cyc[0] == cyc[-1]
        fam_b.append(cyc[:-1] if closed else cyc)
        marks.append(closed)
    labels_a = [x for t in fam_a for x in t]
    n = len(labels_a)
    if sorted(labels_a) != list(range(1, n + 1)):
        raise LabelCoverageError("first family must use each of 1..N exactly once")
    labels_b = [x for t in fam_b for x in t]
    if sorted(labels_b) != list(range(1, n + 1)):
        raise LabelCoverageError("second family must use each of 1..N exactly once")
    return DividingCode(tuple(fam_a), tuple(fam_b), tuple(marks))


def serialize_code(code: DividingCode) -> str:
    def fmt(t):
        return "(" + ",".join(map(str, t)) + ")"

    marks = code.closed_marks or (False,) * len(code.family_b)
    a = ",".join(fmt(t) for t in code.family_a)
    b = ",".join(fmt(t + (t[0],) if m else t) for t, m in zip(code.family_b, marks))
    return "{" + a + "},{" + b + "}"


def _component_forms(alpha, beta):
    """Canonical labelled form of each orbit of the group <alpha, beta>."""
    labels = set(alpha)
    seen = set()
    forms = []
    for x in sorted(labels):
        if x in seen:
            continue
        orbit = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for z in (alpha[y], beta[y]):
                if z not in orbit:
                    orbit.add(z)
                    stack.append(z)
        seen |= orbit
        best = None
        for start in orbit:
            order = {start: 0}
            queue = [start]
            k = 0
            while k < len(queue):
                y = queue[k]
                k += 1
                for z in (alpha[y], beta[y]):
                    if z not in order:
                        order[z] = len(order)
                        queue.append(z)
            form = tuple((order[alpha[y]], order[beta[y]]) for y in queue)
            if best is None or form < best:
                best = form
        forms.append(best)
    return sorted(forms)


def codes_isomorphic(c1: DividingCode, c2: DividingCode, allow_reflection: bool = False) -> bool:
    """Is there a relabelling carrying both families onto the other code's,
    preserving the cyclic order of every sequence?

    With ``allow_reflection`` the relabelling may also reverse every cycle
    of both families at once.
    """
    if c1.n_labels != c2.n_labels:
        return False
    a1, b1 = c1.permutations()
    a2, b2 = c2.permutations()
    target = _component_forms(a2, b2)
    if _component_forms(a1, b1) == target:
        return True
    if allow_reflection:
        inv = lambda p: {v: k for k, v in p.items()}  # noqa: E731
        return _component_forms(inv(a1), inv(b1)) == target
    return False
