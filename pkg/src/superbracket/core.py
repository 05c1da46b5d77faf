"""Graded alphabet, exact scalars, raw term trees, and Koszul sign bookkeeping.

The base field is fixed to the rationals; every coefficient in the package is
a :class:`fractions.Fraction`, so each identity check is an exact zero test.
All values here are immutable and every function is pure.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .speedups import odd_inversion_sign

EVEN = 0
ODD = 1

UNIT_NAME = "1"


class AlgebraError(Exception):
    """Base class for user-facing errors raised by this package."""


class UndefinedParityError(AlgebraError):
    """A parity or multidegree was requested where it is not defined."""


def scalar(value) -> Fraction:
    """Coerce ints, strings like ``"3/2"``, and Fractions to an exact scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise AlgebraError(f"not an exact scalar: {value!r}")


def scalar_str(value: Fraction) -> str:
    """Render a scalar as ``p/q`` with the denominator always present."""
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Generator:
    """One symbol of the graded alphabet; index 0 is always the unit."""

    index: int
    name: str
    parity: int

    @property
    def is_unit(self) -> bool:
        return self.index == 0


class Alphabet:
    """An ordered, finite, Z2-graded alphabet with a minimal even unit.

    Construct from ``[(name, parity), ...]`` for the non-unit generators in
    declaration order; the unit is inserted automatically below them.
    Parities may be given as 0/1 or the strings ``"even"``/``"odd"``.
    """

    def __init__(self, names_parities):
        gens = [Generator(0, UNIT_NAME, EVEN)]
        for name, parity in names_parities:
            gens.append(Generator(len(gens), str(name), _coerce_parity(parity)))
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise AlgebraError(f"duplicate generator names in {names}")
        self.generators = tuple(gens)
        self.by_name = {g.name: g for g in gens}
        self.parities = tuple(g.parity for g in gens)
        self.size = len(gens)

    @property
    def unit(self) -> Generator:
        return self.generators[0]

    def gen(self, name: str) -> Generator:
        try:
            return self.by_name[name]
        except KeyError:
            raise AlgebraError(f"undeclared generator {name!r}") from None

    def names(self):
        """Non-unit generator names, in order."""
        return tuple(g.name for g in self.generators[1:])

    def zero_degrees(self):
        return (0,) * self.size

    def degrees_of(self, counts: dict) -> tuple:
        """Multidegree tuple from a ``{name: count}`` mapping."""
        deg = [0] * self.size
        for name, c in counts.items():
            g = self.gen(str(name))
            if c < 0:
                raise AlgebraError("negative multidegree component")
            deg[g.index] = int(c)
        return tuple(deg)

    def to_json(self) -> dict:
        return {
            "generators": [
                {"name": g.name, "parity": "odd" if g.parity else "even"}
                for g in self.generators[1:]
            ]
        }

    @classmethod
    def from_json(cls, data) -> "Alphabet":
        if isinstance(data, str):
            data = json.loads(data)
        return cls([(g["name"], g["parity"]) for g in data["generators"]])

    def __repr__(self):
        inner = ",".join(f"{g.name}:{g.parity}" for g in self.generators)
        return f"Alphabet({inner})"


def _coerce_parity(parity) -> int:
    if parity in (EVEN, ODD):
        return int(parity)
    if parity == "even":
        return EVEN
    if parity == "odd":
        return ODD
    raise AlgebraError(f"bad parity {parity!r}")


# ---------------------------------------------------------------------------
# Term trees: raw expressions over the two multiplications, before reduction.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Var:
    """Placeholder leaf for identity-checking contexts."""

    name: str


@dataclass(frozen=True)
class Prod:
    left: object
    right: object


@dataclass(frozen=True)
class Bracket:
    left: object
    right: object


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (Fraction, term)


def term_sum(*pairs) -> Sum:
    return Sum(tuple((scalar(c), t) for c, t in pairs))


def term_parity(alphabet: Alphabet, t) -> int:
    """Parity of a term: the mod-2 count of odd generator occurrences.

    Both multiplications are parity-additive, so the tree shape is
    irrelevant.  Sums must be parity-homogeneous.  Var leaves have no
    parity and raise.
    """
    if isinstance(t, Gen):
        return alphabet.gen(t.name).parity
    if isinstance(t, (Prod, Bracket)):
        return (term_parity(alphabet, t.left) + term_parity(alphabet, t.right)) & 1
    if isinstance(t, Sum):
        parities = {term_parity(alphabet, sub) for _, sub in t.terms}
        if len(parities) > 1:
            raise UndefinedParityError("sum of terms with different parities")
        return parities.pop() if parities else EVEN
    if isinstance(t, Var):
        raise UndefinedParityError(f"parity of variable leaf ?{t.name} is undefined")
    raise AlgebraError(f"not a term: {t!r}")


def multidegree(alphabet: Alphabet, t) -> tuple:
    """Occurrence count of every generator, the unit included."""
    if isinstance(t, Gen):
        deg = [0] * alphabet.size
        deg[alphabet.gen(t.name).index] = 1
        return tuple(deg)
    if isinstance(t, (Prod, Bracket)):
        dl = multidegree(alphabet, t.left)
        dr = multidegree(alphabet, t.right)
        return tuple(a + b for a, b in zip(dl, dr))
    if isinstance(t, Sum):
        degs = {multidegree(alphabet, sub) for _, sub in t.terms}
        if len(degs) > 1:
            raise UndefinedParityError("sum of terms with different multidegrees")
        return degs.pop() if degs else alphabet.zero_degrees()
    if isinstance(t, Var):
        raise UndefinedParityError(f"multidegree of variable leaf ?{t.name} is undefined")
    raise AlgebraError(f"not a term: {t!r}")


def koszul_merge_sign(left_parities, right_parities, merged_order) -> Fraction:
    """Sign for interleaving two sign-graded factor sequences.

    ``merged_order[t]`` gives, for position ``t`` of the merged sequence, the
    index of the factor in the concatenation ``left + right`` that lands
    there.  The order must be a shuffle: the relative order inside each input
    sequence is preserved.  The sign is (-1)**k where k counts the odd-odd
    adjacent transpositions a stable sort performs to realize the order.
    """
    parities = [int(p) & 1 for p in left_parities] + [int(p) & 1 for p in right_parities]
    n = len(parities)
    order = [int(x) for x in merged_order]
    if sorted(order) != list(range(n)):
        raise AlgebraError("merged_order is not a permutation")
    nl = len(left_parities)
    left_pos = [x for x in order if x < nl]
    right_pos = [x for x in order if x >= nl]
    if left_pos != sorted(left_pos) or right_pos != sorted(right_pos):
        raise AlgebraError("merged_order is not a shuffle of the two sequences")
    sign = odd_inversion_sign(order, [parities[s] for s in order])
    return Fraction(sign)
