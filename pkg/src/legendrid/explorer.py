"""Exchange classes and bounded Legendrian-equivalence search.

Diagrams are handled through their canonical keys (see
:func:`legendrid.grid.canonical_key`), so every set below is a set of
translation classes.
"""

from __future__ import annotations

import logging
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .grid import GridDiagram, canonical_key, from_key
from .invariants import census_signature
from .moves import (
    FAMILY, TYPE_SITES, Move, apply_move, destabilizations, exchange_neighbors,
    stabilize, stabilize_at,
)

log = logging.getLogger(__name__)

DEFAULT_NODE_BUDGET = 1_000_000


class InvariantTripwire(AssertionError):
    """An exchange move changed a quantity it must preserve."""


@dataclass(frozen=True)
class ExchangeClass:
    representative: GridDiagram
    members: frozenset
    complete: bool

    @property
    def size(self) -> int:
        return len(self.members)

    def smallest(self) -> bytes:
        return min(self.members)

    def __contains__(self, g: GridDiagram) -> bool:
        return canonical_key(g.xs, g.os) in self.members

    def sorted_members(self) -> list[bytes]:
        return sorted(self.members)


def _expand(key: bytes):
    n = len(key) // 2
    xs, os = tuple(key[:n]), tuple(key[n:])
    return [canonical_key(nx, no) for _, nx, no in exchange_neighbors(xs, os)]


def exchange_class(
    g: GridDiagram,
    node_budget: int = DEFAULT_NODE_BUDGET,
    *,
    workers: int = 1,
    tripwire: bool = False,
) -> ExchangeClass:
    """Closure of ``g`` under exchange moves, modulo translation.

    ``complete`` is False when more than ``node_budget`` classes were seen;
    the members found so far are returned in that case.  With ``workers > 1``
    each BFS layer is expanded on a thread pool; the resulting set does not
    depend on the schedule.  ``tripwire`` re-checks tb and rotation numbers
    on every member.
    """
    start = canonical_key(g.xs, g.os)
    expected = census_signature(g) if tripwire else None
    seen = {start}
    frontier = [start]
    complete = True
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    try:
        while frontier:
            if pool is not None:
                batches = pool.map(_expand, frontier, chunksize=256)
            else:
                batches = map(_expand, frontier)
            nxt = []
            for batch in batches:
                for key in batch:
                    if key not in seen:
                        seen.add(key)
                        nxt.append(key)
            if tripwire:
                for key in nxt:
                    if census_signature(from_key(key)) != expected:
                        raise InvariantTripwire(f"exchange changed invariants at {key.hex()}")
            if len(seen) > node_budget:
                complete = False
                break
            frontier = nxt
    finally:
        if pool is not None:
            pool.shutdown()
    return ExchangeClass(g, frozenset(seen), complete)


def same_class(a: GridDiagram, b: GridDiagram, node_budget: int = DEFAULT_NODE_BUDGET):
    """``True``/``False`` when decided, ``None`` when the closure is incomplete."""
    if a.n != b.n:
        return False
    cls = exchange_class(a, node_budget)
    if canonical_key(b.xs, b.os) in cls.members:
        return True
    return False if cls.complete else None


def admits_nontrivial_exchange(g: GridDiagram) -> bool:
    key = canonical_key(g.xs, g.os)
    return any(canonical_key(nx, no) != key for _, nx, no in exchange_neighbors(g.xs, g.os))


def stab_class(g: GridDiagram, stab_type: str, node_budget: int = DEFAULT_NODE_BUDGET,
               *, column: int = 0, role: str = "X", workers: int = 1) -> ExchangeClass:
    """Exchange class of a type-``stab_type`` stabilization of ``g``."""
    return exchange_class(stabilize(g, stab_type, column, role), node_budget, workers=workers)


@dataclass
class ClaimResult:
    status: str                      # "pass", "fail" or "unknown"
    sizes: tuple[int, int] = (0, 0)
    detail: str = ""


def compare_stab_classes(lhs: GridDiagram, lhs_type: str, rhs: GridDiagram, rhs_type: str,
                         node_budget: int = DEFAULT_NODE_BUDGET, workers: int = 1) -> ClaimResult:
    """Decide ``E(S_T(lhs)) == E(S_T'(rhs))``.

    Equality needs one complete closure containing the other diagram;
    inequality needs a complete closure missing it.
    """
    a = stabilize(lhs, lhs_type, 0, "X")
    b = stabilize(rhs, rhs_type, 0, "X")
    return compare_classes(a, b, node_budget, workers)


def compare_classes(a: GridDiagram, b: GridDiagram, node_budget: int = DEFAULT_NODE_BUDGET,
                    workers: int = 1) -> ClaimResult:
    if a.n != b.n:
        return ClaimResult("fail", detail="sizes differ")
    ca = exchange_class(a, node_budget, workers=workers)
    kb = canonical_key(b.xs, b.os)
    if kb in ca.members:
        return ClaimResult("pass", (ca.size, ca.size), "equal")
    if ca.complete:
        return ClaimResult("fail", (ca.size, 0), "closure of the left side misses the right side")
    return ClaimResult("unknown", (ca.size, 0), "budget exhausted")


def verify_stab_equalities(claims, node_budget: int = DEFAULT_NODE_BUDGET) -> list[ClaimResult]:
    """``claims`` is an iterable of ``((diagram, type), (diagram, type))``."""
    return [compare_stab_classes(l, lt, r, rt, node_budget) for (l, lt), (r, rt) in claims]


# -- Legendrian search ------------------------------------------------------------

YES = "yes"
UNKNOWN = "unknown"


@dataclass
class SearchVerdict:
    status: str
    path: list[Move] = field(default_factory=list)
    explored: int = 0

    @property
    def yes(self) -> bool:
        return self.status == YES


def _legendrian_neighbors(g: GridDiagram, types, size_cap: int):
    for m, nx, no in exchange_neighbors(g.xs, g.os):
        yield m, GridDiagram(g.n, nx, no)
    if g.n < size_cap:
        for t in types:
            for role, compass in TYPE_SITES[t]:
                for c in range(g.n):
                    yield Move("stab", c, role, compass), stabilize_at(g, c, role, compass)
    for d in destabilizations(g):
        if d.stab_type in types:
            yield d.move, d.result


def _path_to(parents, key):
    path = []
    while parents[key] is not None:
        prev, move, _ = parents[key]
        path.append((prev, move))
        key = prev
    return path[::-1]


def legendrian_equiv_bounded(
    a: GridDiagram,
    b: GridDiagram,
    sign: str = "+",
    size_cap: int | None = None,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> SearchVerdict:
    """Bidirectional search for a move sequence from ``a`` to ``b``.

    Moves are exchanges plus (de)stabilizations of the family that
    preserves the ``sign`` Legendrian class.  The size cap is deepened one
    step at a time up to ``size_cap``, sharing ``node_budget`` across the
    rounds, so short witnesses are not drowned by larger diagrams.  A
    returned path is replayed before it is reported, so ``YES`` is never
    wrong.
    """
    types = FAMILY[sign]
    top = size_cap if size_cap is not None else max(a.n, b.n) + 2
    ka, kb = canonical_key(a.xs, a.os), canonical_key(b.xs, b.os)
    if ka == kb:
        return SearchVerdict(YES, [], 1)
    explored = 0
    for cap in range(max(a.n, b.n), top + 1):
        path, used = _bidirectional(a, b, ka, kb, types, cap, node_budget - explored)
        explored += used
        if path is not None:
            return SearchVerdict(YES, path, explored)
        if explored >= node_budget:
            break
    return SearchVerdict(UNKNOWN, [], explored)


def _bidirectional(a, b, ka, kb, types, cap, budget):
    # parents map canonical key -> (previous key, move, concrete diagram)
    side = [{ka: None}, {kb: None}]
    concrete = [{ka: a}, {kb: b}]
    frontiers = [deque([ka]), deque([kb])]
    explored = 2
    while frontiers[0] and frontiers[1] and explored < budget:
        s = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        layer = frontiers[s]
        frontiers[s] = deque()
        for key in layer:
            g = concrete[s][key]
            for move, h in _legendrian_neighbors(g, types, cap):
                kh = canonical_key(h.xs, h.os)
                if kh in side[s]:
                    continue
                side[s][kh] = (key, move, h)
                concrete[s][kh] = h
                explored += 1
                if kh in side[1 - s]:
                    path = _stitch(side, concrete, kh, s)
                    if path is not None and _replays(a, b, path):
                        return path, explored
                frontiers[s].append(kh)
    return None, explored


def _stitch(side, concrete, meet, s):
    """Combine the two half paths into a move list starting at ``a``.

    The half from ``b`` is walked backwards by recomputing moves from the
    ``a`` side's concrete diagram, since a translate may be needed to
    continue; each backwards edge is searched among the neighbours.
    """
    forward = _path_to(side[0], meet)
    moves = [m for _, m in forward]
    # current concrete diagram at the meeting point on the a-side
    g = concrete[0][meet]
    key = meet
    while side[1][key] is not None:
        prev, _, _ = side[1][key]
        # find a move from g reaching the class of prev
        step = _find_move(g, prev)
        if step is None:
            return None
        move, g = step
        moves.append(move)
        key = prev
    return moves


def _find_move(g: GridDiagram, target: bytes):
    from .moves import STAB_TYPES

    for m, nx, no in exchange_neighbors(g.xs, g.os):
        if canonical_key(nx, no) == target:
            return m, GridDiagram(g.n, nx, no)
    for d in destabilizations(g):
        if canonical_key(d.result.xs, d.result.os) == target:
            return d.move, d.result
    if len(target) // 2 == g.n + 1:
        for t in STAB_TYPES:
            for role, compass in TYPE_SITES[t]:
                for c in range(g.n):
                    h = stabilize_at(g, c, role, compass)
                    if canonical_key(h.xs, h.os) == target:
                        return Move("stab", c, role, compass), h
    return None


def _replays(a: GridDiagram, b: GridDiagram, path) -> bool:
    g = a
    for m in path:
        g = apply_move(g, m)
    return canonical_key(g.xs, g.os) == canonical_key(b.xs, b.os)


def replay(a: GridDiagram, path) -> GridDiagram:
    g = a
    for m in path:
        g = apply_move(g, m)
    return g
