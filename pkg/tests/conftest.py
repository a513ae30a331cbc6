import random

import pytest
from hypothesis import strategies as st

from legendrid.grid import GridDiagram
from legendrid.registry import Registry


@st.composite
def knot_diagrams(draw, min_n=2, max_n=8):
    """Random one-component grid diagrams.

    X is an arbitrary permutation; O is fixed by choosing the cyclic order in
    which the knot visits the columns, so every draw is a knot.
    """
    n = draw(st.integers(min_n, max_n))
    xs = draw(st.permutations(range(n)))
    order = draw(st.permutations(range(n)))
    succ = {order[i]: order[(i + 1) % n] for i in range(n)}
    os = [0] * n
    for c in range(n):
        # the horizontal edge leaving column succ[c]'s O reaches X in column c
        os[succ[c]] = xs[c]
    return GridDiagram(n, tuple(xs), tuple(os))


def random_knot(rng: random.Random, n: int) -> GridDiagram:
    xs = list(range(n))
    rng.shuffle(xs)
    order = list(range(n))
    rng.shuffle(order)
    os = [0] * n
    for i in range(n):
        os[order[(i + 1) % n]] = xs[order[i]]
    return GridDiagram(n, tuple(xs), tuple(os))


@pytest.fixture(scope="session")
def reg():
    return Registry()


@pytest.fixture(scope="session")
def R(reg):
    return {i: reg.diagram(f"R{i}") for i in range(1, 9)}
