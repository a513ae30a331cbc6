"""Classical and contact invariants of oriented grid diagrams.

Crossings are read off the planar picture in the fundamental domain with
vertical segments passing over horizontal ones.  With that picture

    tb+ = writhe - (#NW + #SE) / 2,    tb- = -writhe - (#NE + #SW) / 2,

so ``tb+ + tb- = -n``.  NW/SE vertices are the cusps of the ``+`` front and
NE/SW vertices those of the ``-`` front; a rotation number is half the number
of cusps traversed downward minus those traversed upward.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .grid import GridDiagram, corner_census, corners, parse, reflect_vertical
from .laurent import LaurentPolynomial


def crossings(g: GridDiagram) -> list[tuple[int, int, int]]:
    """``(column, row, sign)`` for every crossing of the planar picture."""
    x_inv, o_inv = g.x_inverse, g.o_inverse
    out = []
    for c in range(g.n):
        lo, hi = sorted((g.xs[c], g.os[c]))
        up = 1 if g.os[c] > g.xs[c] else -1
        for r in range(lo + 1, hi):
            left, right = sorted((x_inv[r], o_inv[r]))
            if left < c < right:
                # horizontal edges run O -> X
                east = 1 if x_inv[r] > o_inv[r] else -1
                out.append((c, r, -up * east))
    return out


def writhe(g: GridDiagram) -> int:
    return sum(s for _, _, s in crossings(g))


def tb_plus(g: GridDiagram) -> int:
    census = corner_census(g)
    return writhe(g) - (census["NW"] + census["SE"]) // 2


def tb_minus(g: GridDiagram) -> int:
    census = corner_census(g)
    return -writhe(g) - (census["NE"] + census["SW"]) // 2


def _rotation(g: GridDiagram, cusps: tuple[str, str]) -> int:
    census = corner_census(g)
    down = sum(census[(k, "down")] for k in cusps)
    up = sum(census[(k, "up")] for k in cusps)
    return (down - up) // 2


def rotation_plus(g: GridDiagram) -> int:
    return _rotation(g, ("NW", "SE"))


def rotation_minus(g: GridDiagram) -> int:
    """Rotation number of the ``-`` front, which is that of ``r_|(g)``."""
    return rotation_plus(reflect_vertical(g))


def alexander(g: GridDiagram) -> LaurentPolynomial:
    from .groups import fox_alexander, wirtinger

    return fox_alexander(wirtinger(g))


# -- identification ---------------------------------------------------------

UNKNOWN = "unknown"
AMBIGUOUS = "ambiguous"

_TABLE_KNOTS = (
    "unknot", "3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3",
    "7_1", "7_2", "7_3", "7_4", "7_5", "7_6", "7_7", "3_1#4_1",
)


def _reference_grid(name: str) -> GridDiagram:
    text = resources.files("legendrid.data").joinpath("knots", f"{name}.grid").read_text()
    return parse(text)


@lru_cache(maxsize=None)
def alexander_table() -> dict[LaurentPolynomial, tuple[str, ...]]:
    """Normalized Alexander polynomial -> knot names, from reference grids."""
    table: dict[LaurentPolynomial, tuple[str, ...]] = {}
    for name in _TABLE_KNOTS:
        poly = alexander(_reference_grid(name))
        table[poly] = table.get(poly, ()) + (name,)
    return table


def identify_polynomial(poly: LaurentPolynomial) -> str:
    names = alexander_table().get(poly.normalized())
    if not names:
        return UNKNOWN
    if len(names) > 1:
        return AMBIGUOUS
    return names[0]


def identify(g: GridDiagram) -> str:
    """Knot type from the fixed table, up to mirror image."""
    return identify_polynomial(alexander(g))


def summary(g: GridDiagram) -> dict:
    poly = alexander(g)
    return {
        "n": g.n,
        "writhe": writhe(g),
        "tb_plus": tb_plus(g),
        "tb_minus": tb_minus(g),
        "rot_plus": rotation_plus(g),
        "rot_minus": rotation_minus(g),
        "alexander": poly.to_pairs(),
        "type": identify_polynomial(poly),
    }


def census_signature(g: GridDiagram) -> tuple[int, int, int, int]:
    """``(tb+, tb-, rot+, rot-)``, the contact data an exchange preserves."""
    return tb_plus(g), tb_minus(g), rotation_plus(g), rotation_minus(g)


__all__ = [
    "alexander", "corners", "crossings", "identify", "rotation_minus",
    "rotation_plus", "summary", "tb_minus", "tb_plus", "writhe",
]
