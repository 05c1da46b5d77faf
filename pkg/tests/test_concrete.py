import json
from fractions import Fraction
from itertools import product

import pytest

from superbracket.core import AlgebraError, Alphabet, Bracket, Gen, Prod, Sum, Var
from superbracket.engine import GENP, FreeAlgebra
from superbracket.concrete import (
    StructureAlgebra,
    adjoin_unit,
    dump_algebra,
    euler_wronskian_algebra,
    load_algebra,
    nonlie_example_algebra,
    untwisted_algebra,
    vbasis,
    wronskian_algebra,
    zero_bracket_poisson,
    zero_product_algebra,
)

ONE = Fraction(1)


class TestValidate:
    def test_euler_wronskian_is_validated_genp(self):
        report = euler_wronskian_algebra(3).validate()
        assert report.ok, report.failed()

    def test_truncated_wronskian_fails_only_the_deformed_leibniz(self):
        # the truncation ideal is not d/dt-stable: the deformed Leibniz rule
        # fails at the boundary
        report = wronskian_algebra(3).validate()
        failed = {c["identity"] for c in report.failed()}
        assert failed == {"deformed-leibniz"}
        (witness,) = [c["witness"] for c in report.failed()]
        assert witness["indices"] in ([0, 1, 2], [0, 2, 1])

    def test_wronskian_claimed_poisson_fails_plain_leibniz(self):
        base = wronskian_algebra(3)
        claimed = StructureAlgebra(
            base.dim, base.parities, base.product, base.bracket_table, base.unit, "poisson"
        )
        report = claimed.validate()
        failed = {c["identity"] for c in report.failed()}
        assert "leibniz" in failed
        witness = [c for c in report.failed() if c["identity"] == "leibniz"][0]["witness"]
        assert witness["residual"]

    def test_non_anticommutative_bracket_detected(self):
        bad = StructureAlgebra(
            2, [0, 0], {(0, 0): [(0, ONE)]}, {(0, 1): [(0, ONE)]}, None, "none"
        )
        report = bad.validate()
        assert {c["identity"] for c in report.failed()} == {"anticommutativity"}

    def test_report_json_shape(self):
        report = wronskian_algebra(3).validate()
        data = report.to_json()
        for entry in data:
            assert entry["status"] in ("pass", "fail")
            if entry["status"] == "fail":
                assert set(entry["witness"]) == {"indices", "parities", "residual"}

    def test_claims_needing_unit(self):
        with pytest.raises(AlgebraError):
            StructureAlgebra(2, [0, 0], {}, {}, None, "genp").validate()


class TestEvaluate:
    def test_wronskian_bracket_of_t_and_t_squared(self):
        # {t, t^2} = D(t)t^2 - tD(t^2) = t^2 - 2t^2 = -t^2
        algebra = wronskian_algebra(3)
        t = vbasis(3, 1)
        t2 = vbasis(3, 2)
        got = algebra.evaluate(Bracket(Var("a"), Var("b")), {"a": t, "b": t2})
        assert got == (0, 0, Fraction(-1))

    def test_wronskian_derivation_of_t(self):
        algebra = wronskian_algebra(2)
        assert algebra.deriv(vbasis(2, 1)) == (ONE, Fraction(0))

    def test_unit_multiplication(self):
        algebra = wronskian_algebra(3)
        v = (Fraction(1), Fraction(2), Fraction(3))
        got = algebra.evaluate(Prod(Gen("1"), Var("v")), {"v": v})
        assert got == v

    def test_defining_identity_on_random_vectors(self, rng):
        algebra = euler_wronskian_algebra(4)
        for _ in range(15):
            vecs = {
                name: tuple(Fraction(rng.randint(-3, 3)) for _ in range(4))
                for name in ("a", "b", "c")
            }
            # the deformed Leibniz rule as a term tree, all even
            t = Sum((
                (ONE, Bracket(Var("a"), Prod(Var("b"), Var("c")))),
                (-ONE, Prod(Bracket(Var("a"), Var("b")), Var("c"))),
                (-ONE, Prod(Var("b"), Bracket(Var("a"), Var("c")))),
                (ONE, Prod(Prod(Bracket(Var("a"), Gen("1")), Var("b")), Var("c"))),
            ))
            assert algebra.evaluate(t, vecs) == (0,) * 4

    def test_evaluate_commutes_with_normal_form(self, rng):
        # in a validated generalized Poisson algebra the engine normal form
        # evaluates to the same vector as the raw term
        from helpers import random_term

        algebra = euler_wronskian_algebra(3)
        engine = FreeAlgebra(Alphabet([("a", 0), ("b", 0)]), GENP)
        for _ in range(20):
            t = random_term(engine.alphabet, rng, depth=3)
            bindings = {
                "a": tuple(Fraction(rng.randint(-2, 2)) for _ in range(3)),
                "b": tuple(Fraction(rng.randint(-2, 2)) for _ in range(3)),
            }
            direct = algebra.evaluate(t, bindings)
            via_nf = algebra.evaluate(
                engine.element_to_term(engine.normal_form(t)), bindings
            )
            assert direct == via_nf

    def test_unbound_leaf(self):
        algebra = wronskian_algebra(2)
        with pytest.raises(AlgebraError):
            algebra.evaluate(Var("missing"), {})

    def test_unit_needed_for_derivation(self):
        algebra = nonlie_example_algebra()
        with pytest.raises(AlgebraError):
            algebra.evaluate(Bracket(Var("a"), Gen("1")), {"a": vbasis(3, 0)})


class TestIsIdentity:
    def jordan_gp_term(self):
        return Sum((
            (ONE, Prod(Bracket(Bracket(Var("a"), Var("b")), Var("c")), Var("d"))),
            (-ONE, Prod(Bracket(Bracket(Var("a"), Var("c")), Var("b")), Var("d"))),
            (-ONE, Prod(Bracket(Var("a"), Bracket(Var("b"), Var("c"))), Var("d"))),
        ))

    def test_jordan_criterion_on_zero_product_example(self):
        holds, _ = nonlie_example_algebra().is_identity(self.jordan_gp_term())
        assert holds

    def test_jordan_criterion_fails_on_unital_gp(self):
        unital = adjoin_unit(nonlie_example_algebra())
        holds, witness = unital.is_identity(self.jordan_gp_term())
        assert not holds
        assert witness["assignment"]["d"] == 0  # the unit witnesses the failure

    def test_zero_polynomial(self):
        algebra = nonlie_example_algebra()
        holds, _ = algebra.is_identity(Sum(()))
        assert holds

    def test_multilinearization_detects_cube(self):
        # x^3 is not an identity of Q[t]/(t^3): the unit cubes to itself
        algebra = zero_bracket_poisson(3)
        holds, witness = algebra.is_identity(Prod(Prod(Var("x"), Var("x")), Var("x")))
        assert not holds

    def test_multilinearization_accepts_square_on_zero_product(self):
        algebra = nonlie_example_algebra()
        holds, _ = algebra.is_identity(Prod(Var("x"), Var("x")))
        assert holds

    def test_inhomogeneous_input_rejected(self):
        algebra = zero_bracket_poisson(2)
        t = Sum(((ONE, Var("x")), (ONE, Prod(Var("x"), Var("x")))))
        with pytest.raises(AlgebraError):
            algebra.is_identity(t)


class TestBuiltins:
    def test_wronskian_table_values(self):
        algebra = wronskian_algebra(2)
        # {t, 1} = D(t) = 1
        assert algebra.bracket(vbasis(2, 1), vbasis(2, 0)) == (ONE, Fraction(0))
        # {1, t} = -1
        assert algebra.bracket(vbasis(2, 0), vbasis(2, 1)) == (-ONE, Fraction(0))

    def test_wronskian_angle_bracket_vanishes(self):
        # <a,b> = {a,b} - (D(a)b - aD(b)) is identically zero on the tables
        algebra = wronskian_algebra(3)
        for i in range(3):
            for j in range(3):
                a, b = vbasis(3, i), vbasis(3, j)
                corr = tuple(
                    x - y
                    for x, y in zip(
                        algebra.mul(algebra.deriv(a), b), algebra.mul(a, algebra.deriv(b))
                    )
                )
                got = tuple(x - y for x, y in zip(algebra.bracket(a, b), corr))
                assert all(x == 0 for x in got)

    def test_zero_product_requires_anticommutative_table(self):
        with pytest.raises(AlgebraError):
            zero_product_algebra({(0, 1): [(0, ONE)], (1, 0): [(0, ONE)]}, dim=2)

    def test_zero_bracket_poisson_validates(self):
        assert zero_bracket_poisson(3).validate().ok

    def test_nonlie_example_is_gp_but_not_lie(self):
        algebra = nonlie_example_algebra()
        assert algebra.validate().ok
        jac = Sum((
            (ONE, Bracket(Bracket(Var("a"), Var("b")), Var("c"))),
            (ONE, Bracket(Bracket(Var("b"), Var("c")), Var("a"))),
            (ONE, Bracket(Bracket(Var("c"), Var("a")), Var("b"))),
        ))
        holds, witness = algebra.is_identity(jac)
        assert not holds

    def test_adjoined_unit_keeps_gp(self):
        assert adjoin_unit(nonlie_example_algebra()).validate().ok

    def test_untwisted_euler_wronskian_is_jordan_bracket_algebra(self):
        got = untwisted_algebra(euler_wronskian_algebra(3))
        assert got.claim == "jb"
        assert got.validate().ok

    def test_untwist_needs_a_derivation(self):
        with pytest.raises(AlgebraError):
            untwisted_algebra(wronskian_algebra(3))  # d/dt does not descend

    def test_untwist_halves_derivation_type_brackets(self):
        # a bracket of the shape D(a)b - aD(b) untwists to half of itself
        base = euler_wronskian_algebra(3)
        got = untwisted_algebra(base)
        for i in range(3):
            for j in range(3):
                a, b = vbasis(3, i), vbasis(3, j)
                assert got.bracket(a, b) == tuple(
                    Fraction(1, 2) * x for x in base.bracket(a, b)
                )


class TestJson:
    def test_round_trip(self, tmp_path):
        algebra = euler_wronskian_algebra(3)
        path = tmp_path / "euler3.json"
        dump_algebra(algebra, path)
        data = json.loads(path.read_text())
        assert data["dim"] == 3
        assert data["claim"] == "genp"
        assert data["parity"] == [0, 0, 0]
        assert all("," in key for key in data["product"])
        back = load_algebra(path)
        assert back.validate().ok
        assert back.product == algebra.product
        assert back.bracket_table == algebra.bracket_table
        assert back.unit == algebra.unit

    def test_bad_index_rejected(self):
        with pytest.raises(AlgebraError):
            StructureAlgebra(2, [0, 0], {(0, 5): [(0, ONE)]}, {}, None, "none")
        with pytest.raises(AlgebraError):
            StructureAlgebra(2, [0, 0], {(0, 1): [(7, ONE)]}, {}, None, "none")
