"""Oriented rectangular (grid) diagrams of knots on the torus.

A diagram of size ``n`` is stored as two column->row maps ``xs`` and ``os``:
column ``i`` carries an X-vertex at row ``xs[i]`` and an O-vertex at row
``os[i]``.  The orientation is fixed by convention: vertical edges run from
X to O, horizontal edges from O to X.  Reversing the orientation therefore
amounts to swapping the two maps.

Columns and rows are residues mod ``n``.  Diagrams that differ by a torus
translation are *equivalent*; :func:`canonical_form` picks a representative.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, NamedTuple


class GridError(ValueError):
    """Base class for invalid diagram input."""


class NotAPermutation(GridError):
    pass


class VertexCollision(GridError):
    pass


class NotAKnot(GridError):
    pass


class GridSyntaxError(GridError):
    pass


@dataclass(frozen=True, order=True)
class GridDiagram:
    n: int
    xs: tuple[int, ...]
    os: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "xs", tuple(self.xs))
        object.__setattr__(self, "os", tuple(self.os))

    @property
    def x_inverse(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for c, r in enumerate(self.xs):
            inv[r] = c
        return tuple(inv)

    @property
    def o_inverse(self) -> tuple[int, ...]:
        inv = [0] * self.n
        for c, r in enumerate(self.os):
            inv[r] = c
        return tuple(inv)

    def vertices(self) -> Iterator[tuple[int, int, str]]:
        """Yield ``(column, row, role)`` for all ``2n`` vertices."""
        for c in range(self.n):
            yield c, self.xs[c], "X"
            yield c, self.os[c], "O"

    def key(self) -> bytes:
        return bytes(self.xs + self.os)

    def __str__(self):
        return serialize(self)


def count_components(xs, os) -> int:
    """Number of cycles of the permutation ``O^{-1} o X``."""
    n = len(xs)
    o_inv = [0] * n
    for c, r in enumerate(os):
        o_inv[r] = c
    seen = [False] * n
    cycles = 0
    for start in range(n):
        if seen[start]:
            continue
        cycles += 1
        c = start
        while not seen[c]:
            seen[c] = True
            c = o_inv[xs[c]]
    return cycles


def validate(n: int, xs, os, *, allow_links: bool = False) -> GridDiagram:
    """Check the diagram invariants and build a :class:`GridDiagram`.

    Raises :class:`NotAPermutation`, :class:`VertexCollision` or
    :class:`NotAKnot`.
    """
    xs = tuple(int(v) for v in xs)
    os = tuple(int(v) for v in os)
    if n < 2:
        raise GridError(f"grid size must be at least 2, got {n}")
    for name, seq in (("X", xs), ("O", os)):
        if len(seq) != n or sorted(seq) != list(range(n)):
            raise NotAPermutation(f"{name} is not a permutation of 0..{n - 1}: {seq}")
    for c in range(n):
        if xs[c] == os[c]:
            raise VertexCollision(f"column {c} carries X and O in row {xs[c]}")
    if not allow_links:
        k = count_components(xs, os)
        if k != 1:
            raise NotAKnot(f"diagram has {k} components")
    return GridDiagram(n, xs, os)


# -- text format ------------------------------------------------------------

def serialize(g: GridDiagram) -> str:
    return (
        f"n={g.n}\n"
        f"X={','.join(map(str, g.xs))}\n"
        f"O={','.join(map(str, g.os))}\n"
        "orient=XtoO\n"
    )


def parse(text: str) -> GridDiagram:
    """Parse the four-line fixture format.

    Lines starting with ``#`` are comments.  ``orient=OtoX`` is normalized
    by swapping the X and O rows, so the result always has X->O verticals.
    """
    fields = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise GridSyntaxError(f"expected key=value, got {line!r}")
        k, v = line.split("=", 1)
        fields[k.strip()] = v.strip()
    missing = {"n", "X", "O", "orient"} - fields.keys()
    if missing:
        raise GridSyntaxError(f"missing fields: {sorted(missing)}")
    try:
        n = int(fields["n"])
        xs = [int(t) for t in fields["X"].split(",")]
        os = [int(t) for t in fields["O"].split(",")]
    except ValueError as exc:
        raise GridSyntaxError(str(exc)) from None
    orient = fields["orient"]
    if orient == "OtoX":
        xs, os = os, xs
    elif orient != "XtoO":
        raise GridSyntaxError(f"orient must be XtoO or OtoX, got {orient!r}")
    return validate(n, xs, os)


# -- symmetries -------------------------------------------------------------

def shift(g: GridDiagram, dc: int, dr: int) -> GridDiagram:
    """Translate by ``dc`` columns and ``dr`` rows (new column i = old i+dc)."""
    n = g.n
    xs = tuple((g.xs[(i + dc) % n] - dr) % n for i in range(n))
    os = tuple((g.os[(i + dc) % n] - dr) % n for i in range(n))
    return GridDiagram(n, xs, os)


def reflect_vertical(g: GridDiagram) -> GridDiagram:
    """Reflection in a vertical line, ``(col, row) -> (-col, row)``."""
    return GridDiagram(g.n, g.xs[::-1], g.os[::-1])


def flip_rows(g: GridDiagram) -> GridDiagram:
    """Reflection in a horizontal line, ``(col, row) -> (col, -row)``."""
    m = g.n - 1
    return GridDiagram(g.n, tuple(m - r for r in g.xs), tuple(m - r for r in g.os))


def rotate_pi(g: GridDiagram) -> GridDiagram:
    """Point reflection ``(col, row) -> (-col, -row)``."""
    return reflect_vertical(flip_rows(g))


def reverse(g: GridDiagram) -> GridDiagram:
    """Orientation reversal; every vertex changes sign."""
    return GridDiagram(g.n, g.os, g.xs)


def transpose(g: GridDiagram) -> GridDiagram:
    """Swap the roles of columns and rows (used by the row exchange code)."""
    return GridDiagram(g.n, g.x_inverse, g.o_inverse)


def canonical_key(xs, os) -> bytes:
    """Lexicographically least ``xs + os`` over all torus translations.

    For a fixed column shift the row shift making the first X-entry zero is
    the only candidate, so ``n`` shifts are compared rather than ``n**2``.
    """
    n = len(xs)
    best = None
    for c in range(n):
        r = xs[c]
        cand = bytes(
            [(xs[(i + c) % n] - r) % n for i in range(n)]
            + [(os[(i + c) % n] - r) % n for i in range(n)]
        )
        if best is None or cand < best:
            best = cand
    return best


def from_key(key: bytes) -> GridDiagram:
    n = len(key) // 2
    return GridDiagram(n, tuple(key[:n]), tuple(key[n:]))


def canonical_form(g: GridDiagram) -> GridDiagram:
    return from_key(canonical_key(g.xs, g.os))


def equivalent(a: GridDiagram, b: GridDiagram) -> bool:
    """Equality up to torus translation.  Orientation is taken into account."""
    if a.n != b.n:
        return False
    return canonical_key(a.xs, a.os) == canonical_key(b.xs, b.os)


# -- corners ----------------------------------------------------------------

class Corner(NamedTuple):
    column: int
    row: int
    role: str
    compass: str     # position of the vertex in its bend: NE, NW, SE, SW
    outgoing: str    # direction the oriented curve leaves the vertex: N, S, E, W


def corners(g: GridDiagram) -> list[Corner]:
    """Classify every vertex of the planar picture in the fundamental domain.

    A vertex whose column partner lies above it sits at the south end of its
    vertical edge, and so on; the compass letters name that position.
    """
    x_inv, o_inv = g.x_inverse, g.o_inverse
    out = []
    for c in range(g.n):
        for role, r, other_r in (("X", g.xs[c], g.os[c]), ("O", g.os[c], g.xs[c])):
            other_c = o_inv[r] if role == "X" else x_inv[r]
            ns = "S" if other_r > r else "N"
            ew = "W" if other_c > c else "E"
            # X leaves vertically (X->O), O leaves horizontally (O->X)
            if role == "X":
                outgoing = "N" if other_r > r else "S"
            else:
                outgoing = "E" if other_c > c else "W"
            out.append(Corner(c, r, role, ns + ew, outgoing))
    return out


@dataclass(frozen=True)
class CornerCensus:
    """Counts keyed by ``(compass, vertical direction of travel)``.

    The vertical direction is ``"up"`` when the oriented curve moves north
    through the vertex's vertical edge and ``"down"`` otherwise.
    """

    counts: tuple[tuple[tuple[str, str], int], ...]

    def __getitem__(self, item) -> int:
        if isinstance(item, str):
            return sum(v for (k, _), v in self.counts if k == item)
        return dict(self.counts).get(item, 0)

    @property
    def total(self) -> int:
        return sum(v for _, v in self.counts)


def _vertical_travel(corner: Corner) -> str:
    # X starts the vertical edge, O ends it.
    if corner.role == "X":
        return "up" if corner.compass[0] == "S" else "down"
    return "up" if corner.compass[0] == "N" else "down"


def corner_census(g: GridDiagram) -> CornerCensus:
    tally = Counter((c.compass, _vertical_travel(c)) for c in corners(g))
    cells = [((k, d), tally.get((k, d), 0)) for k in ("NE", "NW", "SE", "SW") for d in ("up", "down")]
    return CornerCensus(tuple(cells))


def vertex_sign(role: str) -> int:
    """Black (positive) vertices are X, white (negative) ones are O."""
    return 1 if role == "X" else -1


def unknot() -> GridDiagram:
    """The 2x2 diagram of the trivial knot."""
    return GridDiagram(2, (1, 0), (0, 1))


def connected_sum(a: GridDiagram, b: GridDiagram) -> GridDiagram:
    """Place ``b`` diagonally after ``a`` and swap the X-rows of the two
    middle columns.  The swap is a band move inside the strip between those
    columns, so no crossing is added and the result is ``a # b``.
    """
    n = a.n + b.n
    xs = list(a.xs) + [r + a.n for r in b.xs]
    os = list(a.os) + [r + a.n for r in b.os]
    k = a.n - 1
    xs[k], xs[k + 1] = xs[k + 1], xs[k]
    return validate(n, xs, os)
