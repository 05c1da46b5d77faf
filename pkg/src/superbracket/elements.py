"""Sparse elements: rational linear combinations of commutative monomials.

A monomial is a key-sorted tuple of factors ``(key, parity, exp)`` where the
key identifies an interned basis word of the owning algebra's word space; the
empty tuple is the unit.  Odd factors never carry an exponent above 1.  The
same machinery backs both the generalized-Poisson/Jordan-bracket engine and
the generic-Poisson engine; they differ only in how the owning algebra
brackets two monomials.

Elements are immutable; all operators return new objects.
"""

from __future__ import annotations

from fractions import Fraction

from .core import AlgebraError, scalar
from .speedups import merge_factors

UNIT_MONOMIAL = ()


def factor_of(word, exp: int = 1):
    """Factor triple of an interned basis word."""
    return (word.key, word.parity, exp)


def monomial_of(*words):
    """Monomial from basis words given in any order (must be distinct or even)."""
    m = UNIT_MONOMIAL
    sign = 1
    for w in words:
        s, m = merge_factors(m, (factor_of(w),))
        sign *= s
    if sign == 0:
        raise AlgebraError("odd factor squared in monomial")
    if sign != 1:
        raise AlgebraError("words were not given in canonical order")
    return m


def monomial_parity(m) -> int:
    p = 0
    for _, par, exp in m:
        p ^= par & exp & 1
    return p


def monomial_factor_count(m) -> int:
    """Total exponent sum (the number of basis-word factors with multiplicity)."""
    return sum(exp for _, _, exp in m)


class Element:
    """A finite rational combination of monomials of one algebra."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra, terms: dict):
        self.algebra = algebra
        self.terms = terms

    # -- ring structure -----------------------------------------------------

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            val = out.get(m)
            val = c if val is None else val + c
            if val:
                out[m] = val
            elif m in out:
                del out[m]
        return Element(self.algebra, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return Element(self.algebra, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return self.algebra.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, coeff) -> "Element":
        c = scalar(coeff)
        if not c:
            return Element(self.algebra, {})
        return Element(self.algebra, {m: c * v for m, v in self.terms.items()})

    def bracket(self, other) -> "Element":
        self._check(other)
        return self.algebra.bracket(self, other)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    # -- graded data --------------------------------------------------------

    def parity(self) -> int:
        """Common parity of all monomials; raises if mixed."""
        parities = {monomial_parity(m) for m in self.terms}
        if len(parities) > 1:
            raise AlgebraError("element is not parity-homogeneous")
        return parities.pop() if parities else 0

    def is_homogeneous(self) -> bool:
        return len({monomial_parity(m) for m in self.terms}) <= 1

    def degrees(self) -> tuple:
        """Common multidegree of all monomials; raises if mixed."""
        degs = {self.algebra.monomial_degrees(m) for m in self.terms}
        if len(degs) > 1:
            raise AlgebraError("element is not multidegree-homogeneous")
        return degs.pop() if degs else self.algebra.space.alphabet.zero_degrees()

    def monomials(self):
        """Canonically ordered (monomial, coefficient) pairs."""
        return sorted(self.terms.items(), key=lambda mc: _monomial_sort_key(mc[0]))

    def coefficient(self, m) -> Fraction:
        return self.terms.get(m, Fraction(0))

    def _check(self, other):
        if self.algebra is not other.algebra:
            raise AlgebraError("elements belong to different algebras/theories")

    def __repr__(self):
        return f"Element({self.algebra.describe()}, {len(self.terms)} terms)"


def _monomial_sort_key(m):
    return (monomial_factor_count(m), tuple((k, e) for k, _, e in m))


def combine(algebra, pieces) -> Element:
    """Sum of (coefficient, Element) pairs, normalized."""
    out = {}
    for coeff, el in pieces:
        if not coeff:
            continue
        for m, c in el.terms.items():
            val = out.get(m)
            val = coeff * c if val is None else val + coeff * c
            if val:
                out[m] = val
            elif m in out:
                del out[m]
    return Element(algebra, out)
