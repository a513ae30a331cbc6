"""Smith normal form of integer matrices, with transforms."""

from __future__ import annotations


def _identity(k):
    return [[int(i == j) for j in range(k)] for i in range(k)]


def smith_normal_form(a):
    """Return ``(d, u, v)`` with ``u @ a @ v`` diagonal, entries ``d``.

    ``a`` is a list of integer rows (``m x k``).  ``u`` (``m x m``) and ``v``
    (``k x k``) are unimodular.  The diagonal is nonnegative and each entry
    divides the next; ``d`` lists the first ``min(m, k)`` diagonal entries.
    """
    m = len(a)
    k = len(a[0]) if m else 0
    s = [list(map(int, row)) for row in a]
    u = _identity(m)
    v = _identity(k)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        # row_dst += f * row_src
        s[dst] = [x + f * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in s:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    while t < min(m, k):
        nonzero = [(abs(s[i][j]), i, j) for i in range(t, m) for j in range(t, k) if s[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            for i in range(t + 1, m):
                if s[i][t]:
                    q = s[i][t] // s[t][t]
                    add_row(i, t, -q)
                    if s[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, k):
                if s[t][j]:
                    q = s[t][j] // s[t][t]
                    add_col(j, t, -q)
                    if s[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, k) if s[i][j] % s[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    d = [s[i][i] for i in range(min(m, k))]
    return d, u, v


def mat_mul(a, b):
    return [[sum(x * y for x, y in zip(row, col)) for col in zip(*b)] for row in a]


def in_row_space(vec, rows) -> bool:
    """Is the integer vector ``vec`` an integer combination of ``rows``?"""
    if not rows:
        return not any(vec)
    d, _, v = smith_normal_form(rows)
    w = [sum(vec[i] * v[i][j] for i in range(len(vec))) for j in range(len(vec))]
    for j, x in enumerate(w):
        dj = d[j] if j < len(d) else 0
        if dj == 0:
            if x:
                return False
        elif x % dj:
            return False
    return True
