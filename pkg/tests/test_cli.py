import json
import os
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest

from superbracket.core import Alphabet, Bracket, Gen, Prod
from superbracket.cli import ParseError, main, parse, parse_word, print_element
from superbracket.concrete import dump_algebra, euler_wronskian_algebra
from helpers import random_homogeneous

ALPHABET = Alphabet([("x1", 0), ("x2", 0), ("x3", 0), ("th", 1)])


class TestParse:
    def test_nested_bracket(self):
        t = parse(ALPHABET, "{x1,{x2,x3}}")
        assert t == Bracket(Gen("x1"), Bracket(Gen("x2"), Gen("x3")))

    def test_derivation_desugars(self):
        t = parse(ALPHABET, "D(x1)*x2")
        assert t == Prod(Bracket(Gen("x1"), Gen("1")), Gen("x2"))

    def test_angle_desugars(self, genp):
        t = parse(genp.alphabet, "<x1,x2>")
        want = (
            genp.bracket(genp.gen("x1"), genp.gen("x2"))
            - genp.mul(genp.deriv(genp.gen("x1")), genp.gen("x2"))
            + genp.mul(genp.gen("x1"), genp.deriv(genp.gen("x2")))
        )
        assert genp.normal_form(t) == want

    def test_unterminated_bracket_reports_offset(self):
        with pytest.raises(ParseError) as err:
            parse(ALPHABET, "{x1")
        assert "offset 3" in str(err.value)

    def test_undeclared_identifier(self):
        with pytest.raises(ParseError):
            parse(ALPHABET, "{x1,zz}")

    def test_vars_only_in_identity_mode(self):
        with pytest.raises(ParseError):
            parse(ALPHABET, "?a")
        from superbracket.core import Var

        assert parse(ALPHABET, "?a", allow_vars=True) == Var("a")

    def test_juxtaposition_and_star_agree(self, genp):
        a = genp.normal_form(parse(genp.alphabet, "x1 x2"))
        b = genp.normal_form(parse(genp.alphabet, "x1*x2"))
        assert a == b

    def test_rational_coefficients(self, genp):
        e = genp.normal_form(parse(genp.alphabet, "3/2 x1 - 1/2 x1"))
        assert e == genp.gen("x1")

    def test_unit_literal(self, genp):
        assert genp.normal_form(parse(genp.alphabet, "1")) == genp.one()
        assert genp.normal_form(parse(genp.alphabet, "2")) == genp.one().scale(2)

    def test_parse_word(self):
        assert parse_word(ALPHABET, "{{x2,x1},x1}") == ((2, 1), 1)
        assert parse_word(ALPHABET, "x1") == 1
        with pytest.raises(ParseError):
            parse_word(ALPHABET, "{x1,x2")


class TestPrint:
    def test_unit(self, genp):
        assert print_element(genp, genp.one()) == "1"

    def test_zero(self, genp):
        assert print_element(genp, genp.zero()) == "0"

    def test_single_negative_term_with_ascending_factors(self, genp):
        w21 = genp.word_element(genp.space.get((2, 1)))
        e = genp.mul(w21, genp.gen("x3")).scale(-1)
        assert print_element(genp, e) == "-1/1 x3 {x2,x1}"

    def test_sign_joined_terms(self, genp):
        e = genp.gen("x1") - genp.gen("x2").scale(Fraction(1, 2))
        assert print_element(genp, e) == "1/1 x1 - 1/2 x2"

    def test_exponents_print_as_repeats(self, genp):
        e = genp.mul(genp.gen("x1"), genp.gen("x1"))
        assert print_element(genp, e) == "1/1 x1 x1"

    def test_round_trip(self, genp, rng):
        for _ in range(40):
            e = random_homogeneous(genp, rng, max_degree=4)
            back = genp.normal_form(parse(genp.alphabet, print_element(genp, e)))
            assert back == e


class TestDispatch:
    def run(self, capsys, *argv):
        code = main(list(argv))
        out = capsys.readouterr()
        return code, out.out, out.err

    def test_dim(self, capsys):
        code, out, _ = self.run(capsys, "dim", "--theory", "genp", "3")
        assert code == 0 and out.strip() == "18"

    def test_dim_json(self, capsys):
        code, out, _ = self.run(capsys, "dim", "--theory", "jb", "2", "--json")
        assert code == 0
        assert json.loads(out) == {"n": 2, "theory": "jb", "dim": 4}

    def test_nf(self, capsys):
        code, out, _ = self.run(capsys, "nf", "--gens", "x1,x2", "{x1,x2}")
        assert code == 0 and out.strip() == "-1/1 {x2,x1}"

    def test_nf_json_schema(self, capsys):
        code, out, _ = self.run(capsys, "nf", "--gens", "x1,x2", "--json", "{x1,x2*x2}")
        assert code == 0
        data = json.loads(out)
        for item in data:
            assert set(item) == {"coeff", "monomial"}

    def test_nf_gp(self, capsys):
        code, out, _ = self.run(
            capsys, "nf", "--theory", "gp", "--gens", "x1,x2,x3", "--json", "{{x1,x2},x3}"
        )
        assert code == 0
        data = json.loads(out)
        assert data["gp"] is True

    def test_basis(self, capsys):
        code, out, _ = self.run(
            capsys, "basis", "--gens", "x1,x2", "--multidegree", "1:1,x1:1,x2:1"
        )
        assert code == 0 and out.strip().endswith("count 4")

    def test_check_identity_free_true(self, capsys):
        code, out, _ = self.run(
            capsys, "check-identity", "--free", "--gens", "x1,x2",
            "{?x1,?x2} + {?x2,?x1}",
        )
        assert code == 0 and out.strip() == "true"

    def test_check_identity_free_false_with_witness(self, capsys):
        code, out, _ = self.run(
            capsys, "check-identity", "--free", "--gens", "x1,x2", "{?x1,?x2}"
        )
        assert code == 1 and out.startswith("false")

    def test_check_identity_algebra(self, capsys, tmp_path):
        path = tmp_path / "euler.json"
        dump_algebra(euler_wronskian_algebra(3), path)
        expr = "{?a,?b*?c} - {?a,?b}*?c - ?b*{?a,?c} + D(?a)*?b*?c"
        code, out, _ = self.run(capsys, "check-identity", "--algebra", str(path), expr)
        assert code == 0 and out.strip() == "true"

    def test_validate_builtin_pass_and_fail(self, capsys):
        code, out, _ = self.run(capsys, "validate", "builtin:euler-wronskian3")
        assert code == 0
        code, out, _ = self.run(capsys, "validate", "builtin:wronskian3")
        assert code == 1 and "deformed-leibniz: fail" in out

    def test_validate_json(self, capsys):
        code, out, _ = self.run(capsys, "validate", "builtin:nonlie", "--json")
        assert code == 0
        data = json.loads(out)
        assert all(c["status"] == "pass" for c in data)

    def test_kantor_check_modes(self, capsys):
        code, out, _ = self.run(capsys, "kantor-check", "--algebra", "builtin:nonlie")
        assert code == 0
        code, out, _ = self.run(
            capsys, "kantor-check", "--algebra", "builtin:wronskian3", "--jorskob", "--json"
        )
        assert code == 1
        data = json.loads(out)
        assert {c["identity"] for c in data} == {"jorskob1", "jorskob2", "jorskob3"}
        failing = [c for c in data if c["status"] == "fail"]
        assert failing and all("witness" in c for c in failing)

    def test_kantor_check_direct(self, capsys):
        code, out, _ = self.run(
            capsys, "kantor-check", "--algebra", "builtin:untwisted-euler3", "--direct"
        )
        assert code == 0 and "super-jordan-linearized: pass" in out

    def test_eval(self, capsys, tmp_path):
        path = tmp_path / "w3.json"
        from superbracket.concrete import wronskian_algebra

        dump_algebra(wronskian_algebra(3), path)
        code, out, _ = self.run(
            capsys, "eval", "--algebra", str(path),
            "--bind", "a=0,1,0", "--bind", "b=0,0,1", "{?a,?b}",
        )
        assert code == 0
        assert out.split() == ["0/1", "0/1", "-1/1"]

    def test_farkas_command(self, capsys):
        code, out, _ = self.run(
            capsys, "farkas", "--gens", "x,y", "--letters", "x,y",
            "--input", "<x,y>", "--trace",
        )
        assert code == 0
        first = out.splitlines()[0]
        data = json.loads(first)
        assert data["terms"] == [{"coeff": "1/1", "pairs": [[1, 2]], "D": []}]

    def test_usage_error_exit_code(self, capsys):
        assert main(["nonsense-command"]) == 2

    def test_syntax_error_exit_code(self, capsys):
        assert main(["nf", "--gens", "x1", "{x1"]) == 2

    def test_degree_guard_exit_code(self, capsys, monkeypatch):
        monkeypatch.setenv("JB_MAX_DEGREE", "6")
        expr = "*".join(["D(x1)"] * 4)  # degree 8 exceeds the guard
        assert main(["nf", "--gens", "x1", expr]) == 3

    def test_guard_default_allows_moderate_terms(self, capsys, monkeypatch):
        monkeypatch.delenv("JB_MAX_DEGREE", raising=False)
        assert main(["nf", "--gens", "x1", "*".join(["D(x1)"] * 5)]) == 0


class TestConsoleEntry:
    def test_module_invocation(self):
        env = dict(os.environ)
        root = Path(__file__).resolve().parent.parent
        env["PYTHONPATH"] = str(root / "src")
        proc = subprocess.run(
            [sys.executable, "-m", "superbracket", "dim", "--theory", "jb", "3"],
            capture_output=True, text=True, env=env, cwd=root,
        )
        assert proc.returncode == 0
        assert proc.stdout.strip() == "18"
