"""Convert KnotInfo ``grid_notation`` entries into the fixture format.

Usage: python tools/knotinfo_grids.py path/to/knotinfo_data_complete.csv outdir
"""

import csv
import json
import sys
from pathlib import Path

NAMES = ["3_1", "4_1", "5_1", "5_2", "6_1", "6_2", "6_3",
         "7_1", "7_2", "7_3", "7_4", "7_5", "7_6", "7_7"]


def to_xo(points):
    n = max(c for c, _ in points)
    cols = {c: [] for c in range(n)}
    rows = {r: [] for r in range(n)}
    for c, r in points:
        cols[c - 1].append(r - 1)
        rows[r - 1].append(c - 1)
    xs, os = [None] * n, [None] * n
    c, r = 0, cols[0][0]
    for _ in range(n):
        xs[c] = r
        r2 = next(v for v in cols[c] if v != r)
        os[c] = r2
        c = next(v for v in rows[r2] if v != c)
        r = r2
    return n, xs, os


def main(src, out):
    csv.field_size_limit(10**9)
    rows = csv.reader(open(src), delimiter="|")
    header = next(rows)
    out = Path(out)
    for row in rows:
        d = dict(zip(header, row))
        if d["name"] in NAMES:
            n, xs, os = to_xo(json.loads(d["grid_notation"]))
            (out / f"{d['name']}.grid").write_text(
                f"# {d['name']}, from the KnotInfo grid notation\n"
                f"n={n}\nX={','.join(map(str, xs))}\nO={','.join(map(str, os))}\norient=XtoO\n"
            )


if __name__ == "__main__":
    main(*sys.argv[1:])
