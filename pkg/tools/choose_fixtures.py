"""Pick 9x9 diagrams of 7_6 satisfying the relations used in the proofs.

Reads the JSON written by ``atlas_survey.py``.  ``S_T(A) ~ S_T'(B)`` holds
when the survey saw type-T and type-T' destabilizations of members of one
10x10 exchange class landing in the classes of A and B.
"""

import json
import sys
from collections import defaultdict

from legendrid.explorer import exchange_class
from legendrid.grid import canonical_key, from_key, reflect_vertical, reverse, rotate_pi


def main(path):
    data = json.load(open(path))
    info = data["classes9"]
    member = {}
    for cid in info:
        for m in exchange_class(from_key(bytes.fromhex(cid))).members:
            member[m] = cid
    stab = defaultdict(set)
    for c9, t, c10 in data["links"]:
        stab[(c9, t)].add(c10)

    def cls(g):
        return member.get(canonical_key(g.xs, g.os))

    def rep(c):
        return from_key(bytes.fromhex(c))

    def mu(c):
        return cls(rotate_pi(rep(c)))

    def mmu(c):
        return cls(reverse(rotate_pi(rep(c))))

    def same(a, ta, b, tb):
        return bool(stab[(a, ta)] & stab[(b, tb)])

    # "+" components through type-I links
    parent = {c: c for c in info}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    by10 = defaultdict(list)
    for c9, t, c10 in data["links"]:
        if t in ("I>", "I<"):
            by10[c10].append(c9)
    for cs in by10.values():
        for c in cs[1:]:
            parent[find(c)] = find(cs[0])
    lplus = {c: find(c) for c in info}
    by10 = defaultdict(list)
    for c9, t, c10 in data["links"]:
        if t in ("II>", "II<"):
            by10[c10].append(c9)
    parent = {c: c for c in info}
    for cs in by10.values():
        for c in cs[1:]:
            parent[find(c)] = find(cs[0])
    lminus = {c: find(c) for c in info}

    C = sorted(info)
    single = [c for c in C if info[c]["size"] == 1 and info[mmu(c)]["size"] == 1 and mmu(c) != c]
    found = []
    for r1 in single:
        if info[r1]["rot_plus"] != 1:
            continue
        for r6 in C:
            if not same(r1, "II>", r6, "II>"):
                continue
            for r5 in single:
                if r5 in (r1, mmu(r1)):
                    continue
                if r6 in (r1, mmu(r1), r5, mmu(r5)):
                    continue
                for r2 in C:
                    if info[r2]["rot_plus"] != 1 or lplus[r2] == lplus[r1]:
                        continue
                    if not same(r2, "I<", r6, "I<"):
                        continue
                    found.append((r1, r5, r6, r2))
    print("R1/R5/R6/R2 options:", len(found))
    tail = []
    for r7 in C:
        if mmu(r7) == r7 or not same(r7, "II<", mmu(r7), "II<"):
            continue
        for r3 in C:
            if info[r3]["rot_plus"] != 1 or not same(mu(r3), "I>", r7, "I>"):
                continue
            for r8 in C:
                if r8 == r7 or not same(r7, "I<", r8, "I<"):
                    continue
                for q in C:
                    if same(r7, "II<", q, "II>") and same(r8, "II>", mu(q), "II>"):
                        tail.append((r7, r3, r8, q))
    print("R7/R3/R8/r|R4 options:", len(tail))
    for head in found:
        r1, r5, r6, r2 = head
        for r7, r3, r8, q in tail:
            if len({lplus[r1], lplus[r2], lplus[r3]}) == 3:
                print(json.dumps({"R1": r1, "R2": r2, "R3": r3, "R5": r5, "R6": r6,
                                  "R7": r7, "R8": r8, "rR4": q,
                                  "lminus_R7_R8_differ": lminus[r7] != lminus[r8],
                                  "R5_same_plus_R1": lplus[r5] == lplus[r1]}))


if __name__ == "__main__":
    main(sys.argv[1])
