"""Free unital generalized Poisson and Jordan-bracket superalgebras.

Elements live in the shared monomial basis: products of Lie basis words with
exponents (odd words squarefree, no bare unit factor), plus the unit.  The
two theories share the product; they differ in how a bracket of two basis
words is straightened:

* generalized Poisson: plain super-Jacobi rewriting (stays in the Lie span);
* Jordan brackets: the Jacobi-like rewriting acquires three derivation terms,
  so straightening produces genuine products.

The distinguished derivation is ``D(a) = {a, 1}``.
"""

from __future__ import annotations

from fractions import Fraction

from .core import (
    AlgebraError,
    Alphabet,
    Bracket,
    Gen,
    Prod,
    Sum,
    Var,
    scalar,
    scalar_str,
)
from .elements import (
    Element,
    UNIT_MONOMIAL,
    combine,
    factor_of,
    monomial_factor_count,
    monomial_parity,
)
from .liebasis import WordSpace
from .speedups import merge_factors

GENP = "genp"
JB = "jb"

_ONE = Fraction(1)


class DegreeGuardError(AlgebraError):
    """An intermediate monomial exceeded the configured degree bound."""


class FreeAlgebra:
    """The free unital algebra of one of the two bracket theories."""

    def __init__(self, alphabet: Alphabet, theory: str = GENP, max_degree=None):
        if theory not in (GENP, JB):
            raise AlgebraError(f"unknown theory {theory!r}")
        self.space = WordSpace(alphabet)
        self.theory = theory
        self.max_degree = max_degree
        self._mono_bracket_cache = {}
        self._jb_cache = {}

    @property
    def alphabet(self) -> Alphabet:
        return self.space.alphabet

    def describe(self) -> str:
        return self.theory

    # -- constructors ---------------------------------------------------

    def zero(self) -> Element:
        return Element(self, {})

    def one(self) -> Element:
        return Element(self, {UNIT_MONOMIAL: _ONE})

    def gen(self, name: str) -> Element:
        return self.word_element(self.space.leaf(name))

    def word_element(self, w) -> Element:
        """The basis word as an element; the bare unit letter is the unit."""
        if isinstance(w.word, int) and w.word == 0:
            return self.one()
        return Element(self, {(factor_of(w),): _ONE})

    def element(self, pairs) -> Element:
        """Element from (coefficient, monomial) pairs."""
        out = {}
        for c, m in pairs:
            c = scalar(c)
            if not c:
                continue
            val = out.get(m)
            val = c if val is None else val + c
            if val:
                out[m] = val
            elif m in out:
                del out[m]
        return Element(self, out)

    # -- structure ---------------------------------------------------------

    def monomial_degrees(self, m) -> tuple:
        degs = [0] * self.alphabet.size
        for key, _, exp in m:
            for i, d in enumerate(self.space.by_key[key].degrees):
                degs[i] += exp * d
        return tuple(degs)

    def mul(self, a: Element, b: Element) -> Element:
        """Supercommutative associative product, bilinear monomial merge."""
        self._claim(a, b)
        out = {}
        guard = self.max_degree
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                sign, merged = merge_factors(m1, m2)
                if sign == 0:
                    continue
                if guard is not None and _word_degree(merged) > guard:
                    raise DegreeGuardError(
                        f"monomial degree exceeds guard ({guard}); "
                        "raise JB_MAX_DEGREE if intended"
                    )
                c = c1 * c2 if sign == 1 else -c1 * c2
                val = out.get(merged)
                val = c if val is None else val + c
                if val:
                    out[merged] = val
                elif merged in out:
                    del out[merged]
        return Element(self, out)

    def bracket(self, a: Element, b: Element) -> Element:
        """The superbracket, bilinear over monomials."""
        self._claim(a, b)
        pieces = []
        for m1, c1 in a.terms.items():
            for m2, c2 in b.terms.items():
                pieces.append((c1 * c2, self._bracket_mono(m1, m2)))
        return combine(self, pieces)

    def _claim(self, a: Element, b: Element):
        if a.algebra is not self or b.algebra is not self:
            raise AlgebraError("elements belong to a different algebra/theory")

    def deriv(self, a: Element) -> Element:
        """The distinguished even derivation: bracketing with the unit."""
        return self.bracket(a, self.one())

    # -- monomial-level bracket ---------------------------------------------

    def _bracket_mono(self, m1, m2) -> Element:
        key = (m1, m2)
        cached = self._mono_bracket_cache.get(key)
        if cached is None:
            cached = self._bracket_mono_uncached(m1, m2)
            self._mono_bracket_cache[key] = cached
        return cached

    def _bracket_mono_uncached(self, m1, m2) -> Element:
        n2 = monomial_factor_count(m2)
        if n2 >= 2:
            return self._leibniz_expand(m1, m2)
        n1 = monomial_factor_count(m1)
        if n1 >= 2:
            sign = _ONE if (monomial_parity(m1) & monomial_parity(m2)) else -_ONE
            return self._bracket_mono(m2, m1).scale(sign)
        if n1 == 0 and n2 == 0:
            return self.zero()
        space = self.space
        w1 = space.by_key[m1[0][0]] if n1 else space.unit_word
        w2 = space.by_key[m2[0][0]] if n2 else space.unit_word
        if self.theory == GENP:
            combo = space.bracket_words(w1, w2)
            return self.element((c, (factor_of(w),)) for w, c in combo.items())
        return self._jb_bracket_words(w1, w2)

    def _leibniz_expand(self, m1, m2) -> Element:
        """Bracket against a product monomial via the deformed Leibniz rule.

        Closed form of iterating ``{a,bc} = {a,b}c + (-1)^{|a||b|} b{a,c}
        - D(a)bc`` over the factors of m2: each factor block is pulled to the
        front with its Koszul sign, and a single derivation term with
        multiplicity (number of factors - 1) remains.
        """
        total = monomial_factor_count(m2)
        a_elem = Element(self, {m1: _ONE})
        pieces = []
        prefix = 0
        for idx, (key, par, exp) in enumerate(m2):
            q = par & exp & 1
            sign = -_ONE if (prefix & q) else _ONE
            rest = _decrement(m2, idx)
            single = Element(self, {((key, par, 1),): _ONE})
            br = self.bracket(a_elem, single)
            pieces.append((sign * exp, self.mul(br, Element(self, {rest: _ONE}))))
            prefix ^= q
        d_part = self.mul(self.deriv(a_elem), Element(self, {m2: _ONE}))
        pieces.append((-Fraction(total - 1), d_part))
        return combine(self, pieces)

    def _jb_bracket_words(self, u, v) -> Element:
        pair = (u.word, v.word)
        cached = self._jb_cache.get(pair)
        if cached is not None:
            return cached
        result = self._jb_bracket_uncached(u, v)
        self._jb_cache[pair] = result
        return result

    def _jb_bracket_uncached(self, u, v) -> Element:
        space = self.space
        if u.key == v.key:
            if u.parity == 0:
                return self.zero()
            return self.word_element(space.get((u.word, v.word)))
        if u.key < v.key:
            sign = _ONE if (u.parity & v.parity) else -_ONE
            return self._jb_bracket_words(v, u).scale(sign)
        if isinstance(u.word, int):
            return self.word_element(space.get((u.word, v.word)))
        a, b = space.components(u)
        if not u.square and not v.square and b.key <= v.key:
            return self.word_element(space.get((u.word, v.word)))
        if u.square and a.key == v.key:
            # {{a,a},a} for odd a: the deformed Jacobi identity gives
            # 3{{a,a},a} = -3 D(a){a,a}.
            return self.mul(self.deriv(self.word_element(a)), self.word_element(u)).scale(-1)
        # Solve the Jordan-bracket Jacobi deformation for the left-nested
        # bracket: {{a,b},v} = {a,{b,v}} + (-1)^{|b||v|}{{a,v},b}
        #   - D(a){b,v} - (-1)^{|a|(|b|+|v|)} D(b){v,a}
        #   - (-1)^{|v|(|a|+|b|)} D(v){a,b}.
        A = self.word_element(a)
        B = self.word_element(b)
        V = self.word_element(v)
        bv = self.bracket(B, V)
        s2 = -_ONE if (b.parity & v.parity) else _ONE
        s4 = -_ONE if (a.parity & ((b.parity + v.parity) & 1)) else _ONE
        s5 = -_ONE if (v.parity & ((a.parity + b.parity) & 1)) else _ONE
        pieces = [
            (_ONE, self.bracket(A, bv)),
            (s2, self.bracket(self.bracket(A, V), B)),
            (-_ONE, self.mul(self.deriv(A), bv)),
            (-s4, self.mul(self.deriv(B), self.bracket(V, A))),
            (-s5, self.mul(self.deriv(V), self.word_element(u))),
        ]
        return combine(self, pieces)

    # -- evaluation of term trees -------------------------------------------

    def normal_form(self, term) -> Element:
        """Evaluate a raw term tree into the monomial basis."""
        return self._eval(term, None)

    def substitute(self, term, bindings: dict) -> Element:
        """Evaluate a term tree whose Var leaves are bound to elements.

        Bound elements must belong to this algebra and be parity-homogeneous
        (identity templates carry parity-dependent signs fixed in advance).
        """
        checked = {}
        for name, el in bindings.items():
            if not isinstance(el, Element) or el.algebra is not self:
                raise AlgebraError(f"binding for ?{name} is not an element here")
            el.parity()  # raises when not homogeneous
            checked[str(name)] = el
        return self._eval(term, checked)

    def _eval(self, t, bindings) -> Element:
        if isinstance(t, Gen):
            return self.gen(t.name)
        if isinstance(t, Var):
            if bindings is None or t.name not in bindings:
                raise AlgebraError(f"unbound variable ?{t.name}")
            return bindings[t.name]
        if isinstance(t, Prod):
            return self.mul(self._eval(t.left, bindings), self._eval(t.right, bindings))
        if isinstance(t, Bracket):
            return self.bracket(self._eval(t.left, bindings), self._eval(t.right, bindings))
        if isinstance(t, Sum):
            return combine(
                self, ((c, self._eval(sub, bindings)) for c, sub in t.terms)
            )
        raise AlgebraError(f"not a term: {t!r}")

    def element_to_term(self, e: Element):
        """Rebuild a raw term tree that normalizes back to the element."""
        parts = []
        for m, c in e.monomials():
            factors = []
            for key, _, exp in m:
                wt = _word_term(self.alphabet, self.space.by_key[key].word)
                factors.extend([wt] * exp)
            if not factors:
                t = Gen(self.alphabet.unit.name)
            else:
                t = factors[0]
                for f in factors[1:]:
                    t = Prod(t, f)
            parts.append((c, t))
        return Sum(tuple(parts))

    # -- twist ----------------------------------------------------------------

    def twisted_bracket(self, a: Element, b: Element) -> Element:
        """Derivation twist of a Jordan bracket into a generalized Poisson one.

        ``{a,b} - (aD(b) - D(a)b)``, whose distinguished derivation is 2D,
        satisfies the generalized Poisson identities exactly (the Jacobi
        deformation terms cancel against the correction).
        """
        if self.theory != JB:
            raise AlgebraError("the twist is defined on the Jordan-bracket theory")
        corr = self.mul(a, self.deriv(b)) - self.mul(self.deriv(a), b)
        return self.bracket(a, b) - corr

    def twisted_deriv(self, a: Element) -> Element:
        """Distinguished derivation of the twisted bracket: twice the original."""
        return self.deriv(a).scale(2)

    def untwist_bracket(self, a: Element, b: Element, deriv_op, base_bracket=None) -> Element:
        """Inverse twist: ``{a,b} + (a E(b) - E(a) b)/2`` for a derivation E.

        Applied to a generalized Poisson bracket with distinguished
        derivation E, this produces a Jordan bracket whose distinguished
        derivation is E/2; composing with :meth:`twisted_bracket` gives the
        original bracket back.  E is spot-checked to be an even derivation
        of the product on generator pairs.
        """
        self._check_derivation(deriv_op)
        bracket = base_bracket if base_bracket is not None else self.bracket
        corr = self.mul(a, deriv_op(b)) - self.mul(deriv_op(a), b)
        return bracket(a, b) + corr.scale(Fraction(1, 2))

    def _check_derivation(self, deriv_op):
        gens = [self.one()] + [self.gen(n) for n in self.alphabet.names()]
        for x in gens:
            for y in gens:
                lhs = deriv_op(self.mul(x, y))
                rhs = self.mul(deriv_op(x), y) + self.mul(x, deriv_op(y))
                if lhs != rhs:
                    raise AlgebraError("operation is not a derivation of the product")

    # -- enumeration ----------------------------------------------------------

    def basis(self, degrees) -> tuple:
        """All basis monomials of the exact multidegree (unit occurrences count)."""
        degrees = tuple(degrees)
        if len(degrees) != self.alphabet.size:
            raise AlgebraError("multidegree length does not match the alphabet")
        words = self._words_within(degrees)
        out = []
        self._fill(words, 0, degrees, [], out)
        monos = [tuple(reversed(m)) for m in out]
        monos.sort(key=lambda m: (sum(e * k[0] for k, _, e in m), tuple((k, e) for k, _, e in m)))
        return tuple(monos)

    def _words_within(self, degrees):
        found = []
        for sub in _subdegrees(degrees):
            if sum(sub) == 0:
                continue
            for w in self.space.basis_words(sub):
                if isinstance(w.word, int) and w.word == 0:
                    continue  # the bare unit is never a factor
                found.append(w)
        # descending: the DFS assigns exponents from the largest word down
        found.sort(key=lambda w: w.key, reverse=True)
        return found

    def _fill(self, words, i, remaining, acc, out):
        if not any(remaining):
            out.append(tuple(acc))
            return
        if i >= len(words):
            return
        w = words[i]
        self._fill(words, i + 1, remaining, acc, out)
        max_exp = 1 if w.parity else min(
            (r // d) for r, d in zip(remaining, w.degrees) if d
        )
        exp = 0
        rem = list(remaining)
        while exp < max_exp:
            exp += 1
            ok = True
            for t, d in enumerate(w.degrees):
                rem[t] -= d
                if rem[t] < 0:
                    ok = False
            if not ok:
                break
            acc.append((w.key, w.parity, exp))
            self._fill(words, i + 1, tuple(rem), acc, out)
            acc.pop()

    # -- serialization ----------------------------------------------------------

    def element_to_json(self, e: Element) -> list:
        out = []
        for m, c in e.monomials():
            mono = [
                {"word": self.space.render(self.space.by_key[key].word), "exp": exp}
                for key, _, exp in m
            ]
            out.append({"coeff": scalar_str(c), "monomial": mono})
        return out

    def element_from_json(self, data) -> Element:
        from .cli import parse_word  # deferred: the word grammar lives with the parser

        pairs = []
        for item in data:
            m = UNIT_MONOMIAL
            for f in item["monomial"]:
                w = self.space.get(parse_word(self.alphabet, f["word"]))
                exp = int(f.get("exp", 1))
                sign, m = merge_factors(m, ((w.key, w.parity, exp),))
                if sign != 1:
                    raise AlgebraError("monomial factors not in canonical order")
            pairs.append((scalar(item["coeff"]), m))
        return self.element(pairs)


def dim_multilinear(n: int, theory: str = GENP) -> int:
    """Dimension of the component multilinear in the unit and n even letters."""
    if n < 1:
        raise AlgebraError("n must be at least 1")
    alg = FreeAlgebra(Alphabet([(f"x{i}", 0) for i in range(1, n + 1)]), theory)
    return len(alg.basis((1,) * (n + 1)))


def _decrement(m, idx):
    key, par, exp = m[idx]
    if exp == 1:
        return m[:idx] + m[idx + 1:]
    return m[:idx] + ((key, par, exp - 1),) + m[idx + 1:]


def _word_degree(m) -> int:
    return sum(key[0] * exp for key, _, exp in m)


def _word_term(alphabet, word):
    if isinstance(word, int):
        return Gen(alphabet.generators[word].name)
    return Bracket(_word_term(alphabet, word[0]), _word_term(alphabet, word[1]))


def _subdegrees(degrees):
    if not degrees:
        yield ()
        return
    head = degrees[0]
    for rest in _subdegrees(degrees[1:]):
        for x in range(head + 1):
            yield (x,) + rest
