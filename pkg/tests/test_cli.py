import json
from fractions import Fraction as F
from importlib import resources

import jsonschema
import pytest

from ndstab.cli import ProblemError, bench_rows, main, parse_system_text
from ndstab.textform import UndeclaredVariableError

SCHEMA = json.loads(resources.files("ndstab").joinpath("report.schema.json").read_text())

EXAMPLE = "vars: z1 z2\nz1^2 - 2*z1 - 2\nz1 + z2 - 2\n"


@pytest.fixture
def write(tmp_path):
    def _write(text, name="sys.txt"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestParseSystem:
    def test_worked_example(self):
        prob = parse_system_text(EXAMPLE)
        assert prob.variables == ("z1", "z2")
        assert [str(p) for p in prob.polynomials] == ["z1^2 - 2*z1 - 2", "z1 + z2 - 2"]

    def test_rational_coefficient(self):
        prob = parse_system_text("vars: z1 z2\n3/2*z1 - z2\n")
        assert prob.polynomials[0].terms[(1, 0)] == F(3, 2)

    def test_undeclared(self):
        with pytest.raises(UndeclaredVariableError):
            parse_system_text("vars: z1 z2\nz1 + z3\n")

    def test_comments_and_options(self):
        prob = parse_system_text("# header\nvars: z1\ninitial-eps: 1/4\nz1 - 3  # the point 3\n")
        assert prob.options == {"initial-eps": "1/4"}
        assert len(prob.polynomials) == 1

    def test_empty(self):
        with pytest.raises(ProblemError):
            parse_system_text("vars: z1 z2\n# nothing\n")

    def test_inferred_variables(self):
        prob = parse_system_text("z2 - 1\nz1*z2\n")
        assert prob.variables == ("z1", "z2")


class TestIsStabilizableCommand:
    def test_example_exit_zero(self, write, capsys):
        code, out, _ = run(["is-stabilizable", write(EXAMPLE)], capsys)
        assert code == 0 and "stabilizable: true" in out.lower()

    def test_origin_exit_one(self, write, capsys):
        code, out, _ = run(["is-stabilizable", "--json", write("vars: z1 z2\nz1\nz2\n")], capsys)
        assert code == 1
        rep = json.loads(out)
        jsonschema.validate(rep, SCHEMA)
        (w,) = rep["witnesses"]
        for box in w["coordinates"]:
            lo_re, hi_re, lo_im, hi_im = (F(x) for x in box["exact"])
            assert lo_re <= 0 <= hi_re and lo_im <= 0 <= hi_im

    def test_positive_dimension_exit_two(self, write, capsys):
        code, out, err = run(["is-stabilizable", "--json", write("vars: z1 z2\nz1\n")], capsys)
        assert code == 2
        rep = json.loads(out)
        jsonschema.validate(rep, SCHEMA)
        assert rep["error"] == "ideal not zero-dimensional"

    def test_syntax_error(self, write, capsys):
        code, _, err = run(["is-stabilizable", write("vars: z1\nz1 +* 2\n")], capsys)
        assert code == 2 and "line 2" in err

    def test_missing_file(self, capsys):
        code, _, err = run(["is-stabilizable", "/nonexistent/sys.txt"], capsys)
        assert code == 2 and "cannot read" in err

    def test_json_schema(self, write, capsys):
        code, out, _ = run(["is-stabilizable", "--json", write(EXAMPLE)], capsys)
        rep = json.loads(out)
        jsonschema.validate(rep, SCHEMA)
        assert rep["stabilizable"] is True
        assert rep["univariate_representation"]["f"] == "t^2 - 2*t - 2"


class TestStablePolyCommand:
    def test_golden(self, write, capsys):
        code, out, _ = run(["stable-poly", "--initial-eps", "1/2", write(EXAMPLE)], capsys)
        assert code == 0
        assert "s = z1*z2 - 3*z1 - 3*z2 + 8" in out
        assert "cofactors: [-1, z1 - 3]" in out

    def test_golden_json(self, write, capsys):
        code, out, _ = run(["stable-poly", "--json", "--initial-eps", "1/2", write(EXAMPLE)], capsys)
        rep = json.loads(out)
        jsonschema.validate(rep, SCHEMA)
        assert rep["stable_polynomial"] == "z1*z2 - 3*z1 - 3*z2 + 8"
        assert rep["cofactors"] == ["-1", "z1 - 3"]
        assert rep["h0"] == "-1"
        assert rep["certificate"] == {"L": "56/37", "N": "1", "eps": "1/2", "ok": True}
        assert rep["identity_check"] is True

    def test_eps_from_file(self, write, capsys):
        code, out, _ = run(["stable-poly", "--json", write("initial-eps: 1/2\n" + EXAMPLE)], capsys)
        assert json.loads(out)["certificate"]["eps"] == "1/2"

    def test_point_zero_correction(self, write, capsys):
        code, out, _ = run(["stable-poly", "--json", write("vars: z1 z2\nz1 - 2\nz2 - 3\n")], capsys)
        rep = json.loads(out)
        assert code == 0 and rep["correction"] == "0" and rep["stable_polynomial"] == "z1 - 2"

    def test_not_stabilizable(self, write, capsys):
        code, out, err = run(["stable-poly", "--json", write("vars: z1 z2\nz1\nz2\n")], capsys)
        assert code == 2
        rep = json.loads(out)
        jsonschema.validate(rep, SCHEMA)
        assert rep["error"] == "system not stabilizable"

    def test_bad_eps(self, write, capsys):
        with pytest.raises(SystemExit):
            main(["stable-poly", "--initial-eps", "abc", write(EXAMPLE)])


def _strip_timing(rows):
    return [{k: v for k, v in r.items() if not k.startswith("t_")} for r in rows]


class TestBench:
    def test_deterministic(self):
        a, ra = bench_rows(2, 3, "2", 100, 5, scale=F(1, 10))
        b, rb = bench_rows(2, 3, "2", 100, 5, scale=F(1, 10))
        assert _strip_timing(a) == _strip_timing(b) and ra == rb

    def test_csv(self, tmp_path, capsys):
        out = tmp_path / "b.csv"
        code = main(["bench", "--nvars", "2", "--count", "2", "--seed", "1", "--scale", "1/10", "-o", str(out)])
        assert code == 0
        lines = out.read_text().splitlines()
        assert lines[0] == "seed,nvars,nsols,is_stabilizable,t_stab_ms,stable_found,t_poly_ms,eps_final"
        assert len(lines) == 3
        assert "resampled" in capsys.readouterr().err

    def test_three_vars(self):
        rows, _ = bench_rows(3, 2, "2", 100, 2, scale=F(1, 10))
        assert all(r["nsols"] == 8 for r in rows)

    def test_no_stable(self):
        rows, _ = bench_rows(2, 2, "2", 100, 9, stable=False)
        assert all(r["stable_found"] == "" for r in rows)
