"""Map the minimal (9x9) exchange classes of 7_6 and their one-step
stabilization links.

Starting from the KnotInfo grid and its images under reversal and the
point reflection, every 9x9 exchange class is stabilized with each of the
four oriented types; every destabilization of every member of the
resulting 10x10 class is followed back down.  The output (JSON) lists the
9x9 classes with their invariants and the links, which is enough to read
off the "+" and "-" Legendrian components reachable through size 10.
"""

import json
import sys
import time
from importlib import resources

from legendrid.explorer import exchange_class
from legendrid.grid import canonical_key, from_key, parse, reverse, rotate_pi
from legendrid.invariants import census_signature
from legendrid.moves import STAB_TYPES, destabilizations, stabilize


def main(out_path):
    seed = parse(resources.files("legendrid.data").joinpath("knots", "7_6.grid").read_text())
    seeds = [seed, reverse(seed), rotate_pi(seed), reverse(rotate_pi(seed))]
    class9 = {}      # member key -> class id (min key hex)
    info9 = {}
    queue = []

    def add9(g):
        k = canonical_key(g.xs, g.os)
        if k in class9:
            return class9[k]
        cls = exchange_class(g)
        cid = min(cls.members).hex()
        for m in cls.members:
            class9[m] = cid
        tbp, tbm, rp, rm = census_signature(g)
        info9[cid] = {"size": cls.size, "tb_plus": tbp, "tb_minus": tbm,
                      "rot_plus": rp, "rot_minus": rm, "rep": min(cls.members).hex()}
        queue.append(cid)
        return cid

    for s in seeds:
        add9(s)
    class10 = {}
    links = []       # (class9, type, class10)
    t0 = time.time()
    while queue:
        cid = queue.pop()
        rep = from_key(bytes.fromhex(cid))
        for t in STAB_TYPES:
            h = stabilize(rep, t, 0, "X")
            k = canonical_key(h.xs, h.os)
            if k in class10:
                continue
            cls = exchange_class(h)
            tid = min(cls.members).hex()
            for m in cls.members:
                class10[m] = tid
            found = set()
            for m in cls.members:
                for d in destabilizations(from_key(m)):
                    found.add((add9(d.result), d.stab_type))
            for c9, st in found:
                links.append((c9, st, tid))
            print(f"{time.time() - t0:7.1f}s class10 {tid[:12]} size {cls.size} "
                  f"links {sorted((a[:8], b) for a, b in found)}", flush=True)
    json.dump({"classes9": info9, "links": sorted(set(links))}, open(out_path, "w"), indent=1)
    print(len(info9), "classes of size 9")


if __name__ == "__main__":
    main(sys.argv[1])
