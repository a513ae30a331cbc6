"""Free words, finite presentations, Wirtinger presentations of grid knots,
Fox calculus and bounded certificate searches in finitely presented groups.

Words are tuples of nonzero integers: ``k`` stands for generator ``k - 1``
and ``-k`` for its inverse.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .grid import GridDiagram
from .invariants import crossings
from .laurent import ONE, LaurentPolynomial, laurent_gcd
from .snf import in_row_space, smith_normal_form


class NotKnotLike(ValueError):
    """The abelianization is not infinite cyclic."""


class PresentationSyntaxError(ValueError):
    pass


# -- words --------------------------------------------------------------------

def free_reduce(word) -> tuple[int, ...]:
    out: list[int] = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def cyclic_reduce(word) -> tuple[int, ...]:
    w = free_reduce(word)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def inverse(word) -> tuple[int, ...]:
    return tuple(-a for a in reversed(word))


def mul(*words) -> tuple[int, ...]:
    return free_reduce(itertools.chain.from_iterable(words))


def conj(c, w) -> tuple[int, ...]:
    """``c w c^-1``."""
    return mul(c, w, inverse(c))


def exponent_sums(word, ngens: int) -> list[int]:
    v = [0] * ngens
    for a in word:
        v[abs(a) - 1] += 1 if a > 0 else -1
    return v


@dataclass(frozen=True)
class FreeWord:
    """A freely reduced word; ``letters`` as in the module docstring."""

    letters: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "letters", free_reduce(self.letters))

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord(self.letters + other.letters)

    def __invert__(self) -> "FreeWord":
        return FreeWord(inverse(self.letters))

    def __len__(self):
        return len(self.letters)

    def cyclically_reduced(self) -> "FreeWord":
        return FreeWord(cyclic_reduce(self.letters))


# -- presentations --------------------------------------------------------------

@dataclass(frozen=True)
class GroupPresentation:
    gens: tuple[str, ...]
    relators: tuple[tuple[int, ...], ...]
    # indices of relators known to follow from the others
    redundant: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "relators", tuple(r for r in (cyclic_reduce(r) for r in self.relators))
        )

    @property
    def ngens(self) -> int:
        return len(self.gens)

    def word(self, text: str) -> tuple[int, ...]:
        return parse_word(text, self.gens)

    def format(self, word) -> str:
        return format_word(word, self.gens)


def parse_word(text: str, gens) -> tuple[int, ...]:
    index = {g: i + 1 for i, g in enumerate(gens)}
    out = []
    for tok in text.split():
        inv = tok.endswith("^")
        name = tok[:-1] if inv else tok
        if name not in index:
            raise PresentationSyntaxError(f"unknown generator {name!r}")
        out.append(-index[name] if inv else index[name])
    return free_reduce(out)


def format_word(word, gens) -> str:
    return " ".join(gens[abs(a) - 1] + ("^" if a < 0 else "") for a in word)


def parse_presentation(text: str) -> GroupPresentation:
    """``gens a b c`` followed by one relator per line (``^`` = inverse)."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines or not lines[0].startswith("gens"):
        raise PresentationSyntaxError("first line must start with 'gens'")
    gens = tuple(lines[0].split()[1:])
    if not gens or len(set(gens)) != len(gens):
        raise PresentationSyntaxError("generator names must be distinct and nonempty")
    rels = tuple(parse_word(ln, gens) for ln in lines[1:])
    return GroupPresentation(gens, rels)


def serialize_presentation(p: GroupPresentation) -> str:
    body = "\n".join(p.format(r) for r in p.relators)
    return f"gens {' '.join(p.gens)}\n{body}\n"


@dataclass(frozen=True)
class Endomorphism:
    """Images of the generators, as words in the same generators."""

    images: tuple[tuple[int, ...], ...]

    def __call__(self, word) -> tuple[int, ...]:
        out = []
        for a in word:
            img = self.images[abs(a) - 1]
            out.extend(img if a > 0 else inverse(img))
        return free_reduce(out)

    @classmethod
    def identity(cls, ngens: int) -> "Endomorphism":
        return cls(tuple((i + 1,) for i in range(ngens)))

    @classmethod
    def parse(cls, mapping: dict[str, str], gens) -> "Endomorphism":
        """``{"u": "x2^ u", ...}``; unlisted generators are fixed."""
        images = []
        for i, g in enumerate(gens):
            images.append(parse_word(mapping[g], gens) if g in mapping else (i + 1,))
        return cls(tuple(images))


# -- Wirtinger presentation -------------------------------------------------------

def wirtinger(g: GridDiagram) -> GroupPresentation:
    """One generator per arc and one relator per crossing.

    The knot is traversed from the X-vertex of column 0; arcs are numbered
    in traversal order and end at undercrossings, which lie on horizontal
    edges.  The last relator is marked redundant.
    """
    signs = {(c, r): s for c, r, s in crossings(g)}
    x_inv = g.x_inverse
    over_arc = {}
    unders = []          # (column, row) in traversal order
    arc = 0
    c = 0
    for _ in range(g.n):
        over_arc[c] = arc
        r = g.os[c]
        c_next = x_inv[r]
        step = 1 if c_next > c else -1
        for cc in range(c + step, c_next, step):
            if (cc, r) in signs:
                unders.append((cc, r))
                arc += 1
        c = c_next
    k = len(unders)
    if k == 0:
        return GroupPresentation(("a0",), ())
    # the arc after the last undercrossing is arc 0 again
    for col in over_arc:
        if over_arc[col] == k:
            over_arc[col] = 0
    gens = tuple(f"a{i}" for i in range(k))
    rels = []
    for i, (cc, r) in enumerate(unders):
        incoming, outgoing = i + 1, (i + 1) % k + 1
        over = over_arc[cc] + 1
        if signs[(cc, r)] > 0:
            rels.append((over, incoming, -over, -outgoing))
        else:
            rels.append((-over, incoming, over, -outgoing))
    return GroupPresentation(gens, tuple(rels), redundant=(k - 1,))


# -- abelianization ---------------------------------------------------------------

def relation_matrix(p: GroupPresentation) -> list[list[int]]:
    return [exponent_sums(r, p.ngens) for r in p.relators]


def abelianization(p: GroupPresentation) -> tuple[int, tuple[int, ...]]:
    """``(free rank, torsion coefficients)`` of ``H_1``."""
    rows = relation_matrix(p)
    if not rows:
        return p.ngens, ()
    d, _, _ = smith_normal_form(rows)
    nonzero = [x for x in d if x]
    torsion = tuple(x for x in nonzero if x != 1)
    return p.ngens - len(nonzero), torsion


def abelian_degrees(p: GroupPresentation) -> list[int]:
    """A surjection ``H_1 -> Z`` as generator degrees, for ``H_1 = Z``.

    The sign is fixed so that the first nonzero degree is positive.
    """
    rank, torsion = abelianization(p)
    if rank != 1 or torsion:
        raise NotKnotLike(f"abelianization is Z^{rank} + {torsion}")
    rows = relation_matrix(p)
    if not rows:
        return [1]
    d, _, v = smith_normal_form(rows)
    r = sum(1 for x in d if x)
    # the last column of v spans the kernel of the relation matrix
    vec = [v[i][r] for i in range(p.ngens)]
    g = 0
    for x in vec:
        g = gcd(g, x)
    vec = [x // g for x in vec]
    first = next(x for x in vec if x)
    return [-x for x in vec] if first < 0 else vec


def homology_class(p: GroupPresentation, word) -> int:
    """Image of ``word`` in ``H_1 = Z`` under :func:`abelian_degrees`."""
    deg = abelian_degrees(p)
    return sum(deg[i] * s for i, s in enumerate(exponent_sums(word, p.ngens)))


def check_homology_fixed(p: GroupPresentation, e: Endomorphism, gen: int) -> bool:
    """Does ``e`` fix the homology class of generator ``gen`` (0-based)?"""
    diff = [a - b for a, b in zip(exponent_sums(e((gen + 1,)), p.ngens), exponent_sums((gen + 1,), p.ngens))]
    return in_row_space(diff, relation_matrix(p))


# -- Fox calculus -------------------------------------------------------------------

def fox_row(word, degrees) -> list[LaurentPolynomial]:
    """Fox derivatives of ``word`` pushed to ``Z[t, 1/t]``."""
    acc: list[dict[int, int]] = [dict() for _ in degrees]
    prefix = 0
    for a in word:
        j = abs(a) - 1
        if a > 0:
            acc[j][prefix] = acc[j].get(prefix, 0) + 1
            prefix += degrees[j]
        else:
            prefix -= degrees[j]
            acc[j][prefix] = acc[j].get(prefix, 0) - 1
    return [LaurentPolynomial(d) for d in acc]


def _det_int(m) -> int:
    """Bareiss fraction-free determinant."""
    m = [row[:] for row in m]
    k = len(m)
    if k == 0:
        return 1
    sign, prev = 1, 1
    for i in range(k - 1):
        if m[i][i] == 0:
            swap = next((r for r in range(i + 1, k) if m[r][i]), None)
            if swap is None:
                return 0
            m[i], m[swap] = m[swap], m[i]
            sign = -sign
        for r in range(i + 1, k):
            for c in range(i + 1, k):
                m[r][c] = (m[r][c] * m[i][i] - m[r][i] * m[i][c]) // prev
        prev = m[i][i]
    return sign * m[-1][-1]


def laurent_det(rows: list[list[LaurentPolynomial]]) -> LaurentPolynomial:
    """Determinant by evaluation at integer points and interpolation."""
    k = len(rows)
    if k == 0:
        return ONE
    shift = 0
    dense = []
    for row in rows:
        lo = min((p.min_exp for p in row if not p.is_zero()), default=0)
        shift += lo
        dense.append([p.shift(-lo) for p in row])
    degree = sum(max((p.max_exp for p in row if not p.is_zero()), default=0) for row in dense)
    points = list(range(degree + 1))
    values = [_det_int([[p(x) for p in row] for row in dense]) for x in points]
    # Newton interpolation over Q
    coeffs = [Fraction(v) for v in values]
    npts = len(points)
    for j in range(1, npts):
        for i in range(npts - 1, j - 1, -1):
            coeffs[i] = (coeffs[i] - coeffs[i - 1]) / (points[i] - points[i - j])
    poly = [Fraction(0)] * npts
    for i in range(npts - 1, -1, -1):
        # poly = poly * (x - points[i]) + coeffs[i]
        nxt = [Fraction(0)] * npts
        for e, c in enumerate(poly):
            if c:
                if e + 1 < npts:
                    nxt[e + 1] += c
                nxt[e] -= c * points[i]
        nxt[0] += coeffs[i]
        poly = nxt
    assert all(c.denominator == 1 for c in poly)
    return LaurentPolynomial.from_coeffs([int(c) for c in poly], low=shift)


def fox_matrix(p: GroupPresentation, degrees=None) -> list[list[LaurentPolynomial]]:
    degrees = degrees or abelian_degrees(p)
    return [fox_row(r, degrees) for r in p.relators]


def fox_alexander(p: GroupPresentation) -> LaurentPolynomial:
    """Alexander polynomial: gcd of the (g-1)-minors of the Fox matrix.

    Relators flagged redundant are dropped first.  When some generator maps
    to a generator of ``H_1`` a single column deletion per row subset is
    enough, since the other minors are multiples of it.
    """
    degrees = abelian_degrees(p)
    g = p.ngens
    if g == 1:
        return ONE
    rows = [fox_row(r, degrees) for i, r in enumerate(p.relators) if i not in p.redundant]
    if len(rows) < g - 1:
        raise NotKnotLike("fewer than g-1 relators")
    unit_cols = [j for j, d in enumerate(degrees) if abs(d) == 1]
    cols = unit_cols[:1] or list(range(g))
    result = LaurentPolynomial()
    for subset in itertools.combinations(range(len(rows)), g - 1):
        for j in cols:
            minor = [[rows[i][c] for c in range(g) if c != j] for i in subset]
            result = laurent_gcd(result, laurent_det(minor))
            if result == ONE or result == -ONE:
                return ONE
    if result.is_zero():
        return result
    return result.normalized()


# -- certificate searches -------------------------------------------------------------

VERIFIED = "verified"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class Step:
    """Replace ``word[pos:pos+length]`` using relator ``rel`` (sign, rotation).

    With ``rho`` the rotation of ``rel**sign`` and ``rho = s t`` where
    ``len(s) == length``, the subword ``s`` is replaced by ``t^-1``.
    """

    pos: int
    rel: int
    sign: int
    rotation: int
    length: int


def _rho(rel, sign, rotation):
    w = rel if sign > 0 else inverse(rel)
    return w[rotation:] + w[:rotation]


def apply_step(word, relators, step: Step) -> tuple[int, ...]:
    rho = _rho(relators[step.rel], step.sign, step.rotation)
    s, t = rho[: step.length], rho[step.length:]
    if tuple(word[step.pos: step.pos + step.length]) != s:
        raise ValueError("certificate step does not match the word")
    return cyclic_reduce(word[: step.pos] + inverse(t) + word[step.pos + step.length:])


def replay(word, relators, steps) -> bool:
    """Re-check a membership certificate by pure rewriting."""
    w = cyclic_reduce(word)
    for st in steps:
        w = apply_step(w, relators, st)
    return not w


@dataclass(frozen=True)
class Budget:
    max_length: int = 64
    max_depth: int = 8
    max_nodes: int = 200_000


def _cyclic_variants(relators):
    out = []
    for i, r in enumerate(relators):
        for sign in (1, -1):
            w = r if sign > 0 else inverse(r)
            for rot in range(len(w)):
                out.append((i, sign, rot, w[rot:] + w[:rot]))
    return out


def normal_closure_certificate(word, relators, budget: Budget = Budget()):
    """Search a rewriting sequence taking ``word`` to the empty word.

    Best-first on word length.  Each step multiplies by a conjugate of a
    relator, so success proves membership in the normal closure.  Returns
    the list of steps, or ``None`` when the budget runs out.
    """
    start = cyclic_reduce(word)
    if not start:
        return []
    variants = _cyclic_variants(relators)
    heap = [(len(start), 0, start, ())]
    seen = {start}
    counter = 0
    while heap and counter < budget.max_nodes:
        _, _, w, path = heapq.heappop(heap)
        if len(path) >= budget.max_depth:
            continue
        lw = len(w)
        for pos in range(lw):
            for ri, sign, rot, rho in variants:
                if rho[0] != w[pos]:
                    continue
                # longest match of a prefix of rho at pos
                ln = 1
                while ln < len(rho) and pos + ln < lw and w[pos + ln] == rho[ln]:
                    ln += 1
                for length in range(ln, 0, -1):
                    if 2 * length < len(rho) - 2:
                        break
                    step = Step(pos, ri, sign, rot, length)
                    nw = cyclic_reduce(w[:pos] + inverse(rho[length:]) + w[pos + length:])
                    if nw in seen or len(nw) > budget.max_length:
                        continue
                    seen.add(nw)
                    counter += 1
                    if not nw:
                        return list(path + (step,))
                    heapq.heappush(heap, (len(nw), counter, nw, path + (step,)))
    return None


@dataclass
class Verdict:
    status: str
    certificates: dict = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED


def check_endo(p: GroupPresentation, e: Endomorphism, budget: Budget = Budget()) -> Verdict:
    """Does ``e`` send every relator into the normal closure of the relators?"""
    certs = {}
    for i, r in enumerate(p.relators):
        cert = normal_closure_certificate(e(r), p.relators, budget)
        if cert is None:
            return Verdict(UNKNOWN, certs)
        certs[i] = cert
    return Verdict(VERIFIED, certs)


def replay_endo(p: GroupPresentation, e: Endomorphism, verdict: Verdict) -> bool:
    return verdict.verified and all(
        replay(e(r), p.relators, verdict.certificates[i]) for i, r in enumerate(p.relators)
    )


def _short_words(ngens: int, max_len: int):
    letters = [a for k in range(1, ngens + 1) for a in (k, -k)]
    yield ()
    for ln in range(1, max_len + 1):
        for w in itertools.product(letters, repeat=ln):
            if free_reduce(w) == w:
                yield w


def check_involution_mod_inner(
    p: GroupPresentation, e: Endomorphism, budget: Budget = Budget(), conj_length: int = 2
) -> Verdict:
    """Find ``c`` with ``e(e(g)) = c g c^-1`` for every generator ``g``."""
    for c in _short_words(p.ngens, conj_length):
        certs = {}
        for k in range(1, p.ngens + 1):
            target = mul(e(e((k,))), inverse(conj(c, (k,))))
            cert = normal_closure_certificate(target, p.relators, budget)
            if cert is None:
                break
            certs[k - 1] = cert
        else:
            return Verdict(VERIFIED, {"conjugator": c, "steps": certs})
    return Verdict(UNKNOWN)


def check_class_preserved(p: GroupPresentation, e: Endomorphism, w, budget: Budget = Budget(),
                          conj_length: int = 2) -> Verdict:
    """Is ``e(w)`` conjugate to ``w``?  Returns the conjugator and steps.

    Conjugators are tried among the prefixes of ``w`` and ``e(w)`` (cyclic
    rotations) and then among short words.
    """
    img = e(w)
    ab_w = exponent_sums(w, p.ngens)
    ab_img = exponent_sums(img, p.ngens)
    abelian_ok = in_row_space([a - b for a, b in zip(ab_img, ab_w)], relation_matrix(p))
    prefixes = [w[:i] for i in range(len(w) + 1)] + [img[:i] for i in range(len(img) + 1)]
    candidates = prefixes + [inverse(c) for c in prefixes]
    candidates += list(_short_words(p.ngens, conj_length))
    seen = set()
    for c in candidates:
        c = free_reduce(c)
        if c in seen:
            continue
        seen.add(c)
        target = mul(conj(c, w), inverse(img))
        cert = normal_closure_certificate(target, p.relators, budget)
        if cert is not None:
            return Verdict(VERIFIED, {"conjugator": c, "steps": cert, "abelian": abelian_ok})
    return Verdict(UNKNOWN, {"abelian": abelian_ok})
