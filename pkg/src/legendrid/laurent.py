"""Integer Laurent polynomials in one variable ``t``."""

from __future__ import annotations

from math import gcd
from typing import Iterable, Mapping


class LaurentPolynomial:
    """Finite map exponent -> nonzero integer coefficient.  Immutable."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            acc[e] = acc.get(e, 0) + c
        self._terms = tuple(sorted((e, c) for e, c in acc.items() if c))

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPolynomial":
        return cls({exp: coeff})

    @classmethod
    def from_coeffs(cls, coeffs, low: int = 0) -> "LaurentPolynomial":
        return cls({low + i: c for i, c in enumerate(coeffs)})

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def min_exp(self) -> int:
        return self._terms[0][0]

    @property
    def max_exp(self) -> int:
        return self._terms[-1][0]

    def coeffs(self) -> list[int]:
        """Dense coefficient list from ``min_exp`` to ``max_exp``."""
        if not self._terms:
            return []
        d = dict(self._terms)
        return [d.get(e, 0) for e in range(self.min_exp, self.max_exp + 1)]

    def __add__(self, other):
        other = _coerce(other)
        return LaurentPolynomial(self._terms + other._terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial((e, -c) for e, c in self._terms)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        acc: dict[int, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPolynomial(acc)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self._terms) != 1 or abs(self._terms[0][1]) != 1:
                raise ValueError("only units can be inverted")
            (e, c), = self._terms
            return LaurentPolynomial({-e * -k: c ** -k})
        out = LaurentPolynomial({0: 1})
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = _coerce(other)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __call__(self, t):
        return sum(c * t ** e for e, c in self._terms)

    def shift(self, k: int) -> "LaurentPolynomial":
        return LaurentPolynomial((e + k, c) for e, c in self._terms)

    def content(self) -> int:
        g = 0
        for _, c in self._terms:
            g = gcd(g, c)
        return g

    def normalized(self) -> "LaurentPolynomial":
        """Associate ``+-t^k p`` centred at exponent 0 with ``p(1) > 0``.

        For an Alexander polynomial this is the symmetric representative with
        ``p(1) = 1``.  When the span is odd the exponents cannot be centred
        and the lowest term is moved to exponent 0 instead.
        """
        if not self._terms:
            return self
        lo, hi = self.min_exp, self.max_exp
        p = self.shift(-(lo + hi) // 2 if (lo + hi) % 2 == 0 else -lo)
        value = p(1)
        if value < 0 or (value == 0 and p._terms[-1][1] < 0):
            p = -p
        return p

    def is_symmetric(self) -> bool:
        return self._terms == tuple(sorted((-e, c) for e, c in self._terms))

    def to_pairs(self) -> list[list[int]]:
        return [[e, c] for e, c in self._terms]

    def __repr__(self):
        return f"LaurentPolynomial({dict(self._terms)})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in reversed(self._terms):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def _coerce(x) -> LaurentPolynomial:
    if isinstance(x, LaurentPolynomial):
        return x
    if isinstance(x, int):
        return LaurentPolynomial({0: x})
    raise TypeError(f"cannot treat {x!r} as a Laurent polynomial")


ONE = LaurentPolynomial({0: 1})
ZERO = LaurentPolynomial()
T = LaurentPolynomial({1: 1})


def _poly_divmod(num: list, den: list):
    """Division of dense integer polynomials over Q (lists, ascending)."""
    from fractions import Fraction

    num = [Fraction(c) for c in num]
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    while len(num) >= len(den) and any(num):
        k = len(num) - len(den)
        f = num[-1] / den[-1]
        q[k] = f
        for i, d in enumerate(den):
            num[i + k] -= f * d
        while num and num[-1] == 0:
            num.pop()
    return q, num


def _primitive(coeffs: list) -> list[int]:
    from fractions import Fraction

    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        return []
    lcm_den = 1
    for c in coeffs:
        lcm_den = lcm_den * c.denominator // gcd(lcm_den, c.denominator)
    ints = [int(c * lcm_den) for c in coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def laurent_gcd(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    """Gcd in ``Z[t, t^-1]`` up to units, computed after clearing powers of t.

    Uses the primitive Euclidean algorithm over Q, then restores the gcd of
    the contents (Gauss's lemma).
    """
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    ca, cb = a.content(), b.content()
    pa = _primitive(a.shift(-a.min_exp).coeffs())
    pb = _primitive(b.shift(-b.min_exp).coeffs())
    while pb:
        _, r = _poly_divmod(pa, pb)
        pa, pb = pb, _primitive(r)
    # strip factors of t, which are units
    while len(pa) > 1 and pa[0] == 0:
        pa = pa[1:]
    return LaurentPolynomial.from_coeffs([gcd(ca, cb) * c for c in pa])
