"""Exchange moves, oriented stabilizations and destabilizations.

Stabilization types use the arrow notation ``I>``, ``I<``, ``II>``, ``II<``
(right/left arrows).  Each type corresponds to two ``(role, compass)``
pairs, where ``role`` is the marking that gets doubled and ``compass`` is
the position of the empty cell in the new 2x2 block.
"""

from __future__ import annotations

from dataclasses import dataclass

from .grid import GridDiagram, canonical_key, transpose

STAB_TYPES = ("I>", "I<", "II>", "II<")

TYPE_SITES = {
    "I>": (("X", "NE"), ("O", "SW")),
    "I<": (("X", "SW"), ("O", "NE")),
    "II>": (("X", "SE"), ("O", "NW")),
    "II<": (("X", "NW"), ("O", "SE")),
}

SITE_TYPE = {site: t for t, sites in TYPE_SITES.items() for site in sites}

# types of each family; a type-I move preserves the "+" Legendrian class
FAMILY = {"+": ("I>", "I<"), "-": ("II>", "II<")}

_OPPOSITE = {"NE": "SW", "SW": "NE", "NW": "SE", "SE": "NW"}


class IllegalMove(ValueError):
    pass


class IncompatibleSite(ValueError):
    pass


@dataclass(frozen=True)
class Move:
    """One move applied to a diagram.

    ``kind`` is ``"xch-col"``, ``"xch-row"``, ``"stab"`` or ``"destab"``.
    For exchanges ``index`` is the first of the two adjacent levels.  For a
    stabilization ``index`` is the column of the vertex being split; for a
    destabilization ``index`` and ``row`` locate the vertex that collapses.
    ``role`` (the doubled marking) and ``compass`` (the empty cell) give the
    block layout and ``stab_type`` its oriented type.
    """

    kind: str
    index: int
    role: str = ""
    compass: str = ""
    row: int = -1

    @property
    def stab_type(self) -> str:
        return SITE_TYPE.get((self.role, self.compass), "")

    def __str__(self):
        if self.kind in ("xch-col", "xch-row"):
            return f"{self.kind}:{self.index}"
        if self.kind == "stab":
            return f"stab:{self.stab_type},{self.role},{self.compass}@{self.index}"
        return f"destab:{self.stab_type},{self.role},{self.compass}@{self.index},{self.row}"

    @classmethod
    def parse(cls, text: str) -> "Move":
        kind, _, rest = text.partition(":")
        if kind in ("xch-col", "xch-row"):
            return cls(kind, int(rest))
        head, _, where = rest.partition("@")
        _, role, compass = head.split(",")
        if kind == "stab":
            return cls("stab", int(where), role, compass)
        col, row = where.split(",")
        return cls("destab", int(col), role, compass, int(row))


# -- exchanges --------------------------------------------------------------

def _interleaved(a, b, c, d) -> bool:
    """Do the pairs {a, b} and {c, d} alternate around the circle?"""
    lo, hi = min(a, b), max(a, b)
    return (lo < c < hi) != (lo < d < hi)


def _column_sites(xs, os) -> list[int]:
    n = len(xs)
    sites = []
    for i in range(n):
        j = (i + 1) % n
        a, b, c, d = xs[i], os[i], xs[j], os[j]
        if len({a, b, c, d}) == 4 and not _interleaved(a, b, c, d):
            sites.append(i)
    return sites


def applicable_exchanges(g: GridDiagram) -> list[Move]:
    """Every legal exchange of cyclically adjacent columns or rows."""
    if g.n < 3:
        return []
    moves = [Move("xch-col", i) for i in _column_sites(g.xs, g.os)]
    t = transpose(g)
    moves += [Move("xch-row", j) for j in _column_sites(t.xs, t.os)]
    return moves


def _swap_columns(xs, os, i):
    n = len(xs)
    j = (i + 1) % n
    xs, os = list(xs), list(os)
    xs[i], xs[j] = xs[j], xs[i]
    os[i], os[j] = os[j], os[i]
    return tuple(xs), tuple(os)


def apply_exchange(g: GridDiagram, m: Move) -> GridDiagram:
    if m.kind == "xch-col":
        if m.index not in _column_sites(g.xs, g.os) or g.n < 3:
            raise IllegalMove(f"{m} is not applicable")
        return GridDiagram(g.n, *_swap_columns(g.xs, g.os, m.index))
    if m.kind == "xch-row":
        t = transpose(g)
        if m.index not in _column_sites(t.xs, t.os) or g.n < 3:
            raise IllegalMove(f"{m} is not applicable")
        return transpose(GridDiagram(g.n, *_swap_columns(t.xs, t.os, m.index)))
    raise IllegalMove(f"{m} is not an exchange")


def exchange_neighbors(xs, os):
    """Yield ``(move, xs, os)`` for all exchange moves, on raw tuples.

    This is the hot loop of the class enumeration, so it avoids building
    intermediate diagram objects.
    """
    n = len(xs)
    if n < 3:
        return
    for i in _column_sites(xs, os):
        nx, no = _swap_columns(xs, os, i)
        yield Move("xch-col", i), nx, no
    x_inv = [0] * n
    o_inv = [0] * n
    for c in range(n):
        x_inv[xs[c]] = c
        o_inv[os[c]] = c
    for j in _column_sites(x_inv, o_inv):
        k = (j + 1) % n
        nx, no = list(xs), list(os)
        # rows j and k trade places
        nx[x_inv[j]], nx[x_inv[k]] = k, j
        no[o_inv[j]], no[o_inv[k]] = k, j
        yield Move("xch-row", j), tuple(nx), tuple(no)


def is_trivial_exchange(g: GridDiagram, m: Move) -> bool:
    """True iff the exchange produces a translate of ``g``."""
    h = apply_exchange(g, m)
    return canonical_key(h.xs, h.os) == canonical_key(g.xs, g.os)


# -- stabilizations ---------------------------------------------------------

def _block(compass_of_empty: str):
    """Cell layout of a stabilization block as compass -> marking kind."""
    empty = compass_of_empty
    other = _OPPOSITE[empty]
    doubled = [k for k in ("NE", "NW", "SE", "SW") if k not in (empty, other)]
    return other, doubled


def _cell(compass: str, c: int, r: int) -> tuple[int, int]:
    return (c + (1 if compass[1] == "E" else 0), r + (1 if compass[0] == "N" else 0))


def _build(n: int, verts) -> GridDiagram:
    xs = [None] * n
    os = [None] * n
    for c, r, role in verts:
        if role == "X":
            xs[c] = r
        else:
            os[c] = r
    return GridDiagram(n, tuple(xs), tuple(os))


def stabilize(g: GridDiagram, stab_type: str, column: int, role: str) -> GridDiagram:
    """Stabilization of type ``stab_type`` at the ``role`` vertex of ``column``.

    The compass direction is the one the type dictionary assigns to
    ``role``.  A new column and a new row are inserted right after the
    vertex, so all other vertices keep their relative order.
    """
    if stab_type not in TYPE_SITES:
        raise IncompatibleSite(f"unknown stabilization type {stab_type!r}")
    compass = dict(TYPE_SITES[stab_type]).get(role)
    if compass is None:
        raise IncompatibleSite(f"role must be X or O, got {role!r}")
    return stabilize_at(g, column, role, compass)


def stabilize_at(g: GridDiagram, column: int, role: str, compass: str) -> GridDiagram:
    n = g.n
    c = column % n
    r = g.xs[c] if role == "X" else g.os[c]
    other_role = "O" if role == "X" else "X"
    b_pos, a_pos = _block(compass)
    b_cell = _cell(b_pos, c, r)
    a_cells = [_cell(k, c, r) for k in a_pos]
    # the doubled marking sharing B's column keeps the outer horizontal edge
    a_same_col = next(p for p in a_cells if p[0] == b_cell[0])
    a_same_row = next(p for p in a_cells if p[1] == b_cell[1])
    ext_row = a_same_col[1]
    ext_col = a_same_row[0]

    def cmap(x):
        return x if x < c else x + 1

    def rmap(y):
        return y if y < r else y + 1

    verts = [(b_cell[0], b_cell[1], other_role)] + [(p[0], p[1], role) for p in a_cells]
    for cc in range(n):
        for rr, rl in ((g.xs[cc], "X"), (g.os[cc], "O")):
            if cc == c and rr == r:
                continue
            if cc == c:
                verts.append((ext_col, rmap(rr), rl))
            elif rr == r:
                verts.append((cmap(cc), ext_row, rl))
            else:
                verts.append((cmap(cc), rmap(rr), rl))
    return _build(n + 1, verts)


@dataclass(frozen=True)
class Destabilization:
    stab_type: str
    move: Move
    result: GridDiagram
    # where to split in ``result`` to get back the original, up to translation
    site: tuple[int, str]


def destabilizations(g: GridDiagram) -> list[Destabilization]:
    """All destabilization sites, with their oriented types.

    A site is a vertex ``B`` whose column partner and row partner are both
    adjacent to it; the two partners and ``B`` collapse to one marking placed
    in the fourth (empty) cell of the 2x2 block.
    """
    n = g.n
    if n < 3:
        return []
    x_inv, o_inv = g.x_inverse, g.o_inverse
    out = []
    for cb in range(n):
        for b_role in ("X", "O"):
            rb = g.xs[cb] if b_role == "X" else g.os[cb]
            r_other = g.os[cb] if b_role == "X" else g.xs[cb]
            c_other = o_inv[rb] if b_role == "X" else x_inv[rb]
            dr = (r_other - rb) % n
            dc = (c_other - cb) % n
            if dr not in (1, n - 1) or dc not in (1, n - 1):
                continue
            a_role = "O" if b_role == "X" else "X"
            # the empty cell sits diagonally from B
            ce, re = c_other, r_other
            col_seq = g.xs if a_role == "X" else g.os
            other_seq = g.os if a_role == "X" else g.xs
            if other_seq[ce] == re or col_seq[ce] == re:
                continue
            empty = ("N" if dr == 1 else "S") + ("E" if dc == 1 else "W")
            verts = []
            for cc in range(n):
                for rr, rl in ((g.xs[cc], "X"), (g.os[cc], "O")):
                    if cc == cb or rr == rb:
                        continue
                    verts.append((cc, rr, rl))
            verts.append((ce, re, a_role))
            verts = [(cc - (cc > cb), rr - (rr > rb), rl) for cc, rr, rl in verts]
            h = _build(n - 1, verts)
            new_col = ce - (ce > cb)
            m = Move("destab", cb, a_role, empty, rb)
            out.append(Destabilization(m.stab_type, m, h, (new_col, a_role)))
    return out


def destabilization_neighbors(xs, os, types=None):
    g = GridDiagram(len(xs), xs, os)
    for d in destabilizations(g):
        if types is None or d.stab_type in types:
            yield d.move, d.result.xs, d.result.os


def stabilization_neighbors(xs, os, types=None):
    g = GridDiagram(len(xs), xs, os)
    for t in types or STAB_TYPES:
        for role, compass in TYPE_SITES[t]:
            for c in range(g.n):
                h = stabilize_at(g, c, role, compass)
                yield Move("stab", c, role, compass), h.xs, h.os


def apply_move(g: GridDiagram, m: Move) -> GridDiagram:
    """Replay one move; destabilizations are matched by their reported site."""
    if m.kind in ("xch-col", "xch-row"):
        return apply_exchange(g, m)
    if m.kind == "stab":
        return stabilize_at(g, m.index, m.role, m.compass)
    if m.kind == "destab":
        for d in destabilizations(g):
            if d.move == m:
                return d.result
        raise IllegalMove(f"{m} is not applicable")
    raise IllegalMove(f"unknown move kind {m.kind!r}")
