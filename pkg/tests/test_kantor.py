from fractions import Fraction
from itertools import product

import pytest

from superbracket.core import AlgebraError, Alphabet
from superbracket.engine import GENP, JB, FreeAlgebra
from superbracket.concrete import (
    StructureAlgebra,
    adjoin_unit,
    euler_wronskian_algebra,
    nonlie_example_algebra,
    untwisted_algebra,
    wronskian_algebra,
    zero_bracket_poisson,
)
from superbracket.kantor import (
    DoubleElement,
    criteria_check,
    double_is_jordan,
    double_of,
    super_jordan_check,
)

ONE = Fraction(1)


class TestDoubleElement:
    def test_plain_times_plain(self, jb):
        a, b = jb.gen("x1"), jb.gen("x2")
        p = DoubleElement.plain(jb, a) * DoubleElement.plain(jb, b)
        assert p.a == jb.mul(a, b) and p.b.is_zero()

    def test_shifted_times_shifted_is_signed_bracket(self, jb):
        a, b = jb.gen("x1"), jb.gen("th")
        p = DoubleElement.shifted(jb, a) * DoubleElement.shifted(jb, b)
        # (ax)(bx) = (-1)^{|b|} {a,b}; |th| = 1
        assert p.a == jb.bracket(a, b).scale(-1)
        assert p.b.is_zero()

    def test_unit_shifted_squares_to_zero(self, jb):
        u = DoubleElement.shifted(jb, jb.one())
        assert (u * u).is_zero()

    def test_plain_times_shifted(self, jb):
        a, b = jb.gen("x1"), jb.gen("x2")
        p = DoubleElement.plain(jb, a) * DoubleElement.shifted(jb, b)
        assert p.b == jb.mul(a, b) and p.a.is_zero()
        q = DoubleElement.shifted(jb, a) * DoubleElement.plain(jb, b)
        assert q.b == jb.mul(a, b)  # |x2| = 0, no sign

    def test_k_grading(self, jb):
        for name in ("x1", "th"):
            g = jb.gen(name)
            assert DoubleElement.plain(jb, g).parity() == g.parity()
            assert DoubleElement.shifted(jb, g).parity() == (g.parity() ^ 1)
        for p, q in product((0, 1), repeat=2):
            x = DoubleElement.plain(jb, jb.gen("th" if p else "x1"))
            y = DoubleElement.shifted(jb, jb.gen("th" if q else "x1"))
            assert (x * y).is_zero() or (x * y).parity() == (x.parity() + y.parity()) & 1

    def test_supercommutative_in_k_grading(self, jb):
        elems = [
            DoubleElement.plain(jb, jb.gen("x1")),
            DoubleElement.plain(jb, jb.gen("th")),
            DoubleElement.shifted(jb, jb.gen("x1")),
            DoubleElement.shifted(jb, jb.gen("th")),
            DoubleElement.shifted(jb, jb.one()),
        ]
        for x in elems:
            for y in elems:
                sign = -1 if (x.parity() & y.parity()) else 1
                diff = (x * y) - (y * x).scale(sign)
                assert diff.is_zero()

    def test_mixed_backends_rejected(self, jb, genp):
        with pytest.raises(AlgebraError):
            DoubleElement.plain(jb, jb.gen("x1")) * DoubleElement.plain(genp, genp.gen("x1"))


class TestDoubleOf:
    def test_dimension_doubles(self):
        assert double_of(nonlie_example_algebra()).dim == 6

    def test_double_is_supercommutative(self):
        dbl = double_of(wronskian_algebra(3))
        report = dbl.validate()
        failed = {c["identity"] for c in report.failed()}
        assert "supercommutativity" not in failed

    def test_parities_shift(self):
        dbl = double_of(wronskian_algebra(2))
        assert dbl.parities == (0, 0, 1, 1)

    def test_unit_carries_over(self):
        dbl = double_of(wronskian_algebra(2))
        assert dbl.unit == (ONE, 0, 0, 0)


class TestChecks:
    def test_free_jb_engine_passes_criteria(self):
        algebra = FreeAlgebra(Alphabet([("x1", 0), ("x2", 0), ("th", 1)]), JB)
        report = criteria_check(algebra)
        assert report.ok, report.failed()

    def test_free_genp_engine_fails_criteria(self):
        # two generators are too few for the obstruction to show on
        # generator tuples; three suffice
        algebra = FreeAlgebra(Alphabet([("x1", 0), ("x2", 0), ("x3", 0)]), GENP)
        report = criteria_check(algebra)
        assert not report.ok
        assert [c["identity"] for c in report.failed()] == ["jorskob1"]

    def test_wronskian_fails_with_witness(self):
        report = criteria_check(wronskian_algebra(3))
        assert not report.ok
        failing = report.failed()
        assert failing and all(set(c["witness"]) == {"indices", "parities", "residual"}
                               for c in failing)

    def test_untwisted_euler_wronskian_passes(self):
        report = criteria_check(untwisted_algebra(euler_wronskian_algebra(3)))
        assert report.ok, report.failed()

    def test_zero_product_example_passes_both(self):
        algebra = nonlie_example_algebra()
        crit, direct, agree = double_is_jordan(algebra)
        assert crit.ok and direct.ok and agree

    def test_unital_non_poisson_gp_fails_both(self):
        algebra = adjoin_unit(nonlie_example_algebra())
        crit, direct, agree = double_is_jordan(algebra)
        assert not crit.ok and not direct.ok and agree

    def test_zero_bracket_poisson_double_is_jordan(self):
        crit, direct, agree = double_is_jordan(zero_bracket_poisson(2))
        assert crit.ok and direct.ok and agree

    def test_super_jordan_check_rejects_noncommutative(self):
        bad = StructureAlgebra(
            2, [0, 0], {(0, 1): [(0, ONE)]}, {}, None, "none"
        )
        with pytest.raises(AlgebraError):
            super_jordan_check(bad)

    def test_report_wire_format(self):
        report = criteria_check(wronskian_algebra(2))
        names = [c["identity"] for c in report.to_json()]
        assert names == ["jorskob1", "jorskob2", "jorskob3"]
        for c in report.to_json():
            assert c["status"] in ("pass", "fail")


class TestAgreement:
    CORPUS = [
        ("wronskian2", lambda: wronskian_algebra(2), False),
        ("wronskian3", lambda: wronskian_algebra(3), False),
        ("wronskian4", lambda: wronskian_algebra(4), False),
        ("zero-product example", nonlie_example_algebra, True),
        ("zero-bracket poisson", lambda: zero_bracket_poisson(3), True),
        ("untwisted euler-wronskian", lambda: untwisted_algebra(euler_wronskian_algebra(3)), True),
        ("unital non-poisson gp", lambda: adjoin_unit(nonlie_example_algebra()), False),
        ("euler-wronskian", lambda: euler_wronskian_algebra(3), True),
    ]

    @pytest.mark.parametrize("name,factory,expected", CORPUS, ids=[c[0] for c in CORPUS])
    def test_verdicts_and_agreement(self, name, factory, expected):
        crit, direct, agree = double_is_jordan(factory())
        assert agree
        assert crit.ok is expected
        assert direct.ok is expected
