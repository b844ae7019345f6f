"""End-to-end CLI behaviour: exit codes, output formats, determinism."""
import json

import pytest

from lieverify import cli
from lieverify.dsl import render_algebra
from lieverify.catalog import builtin

WITT_CANONICAL = (
    "algebra witt\n"
    "family L integer degree-offset 0\n"
    "bracket L(m) L(n) = (n-m)*L(m+n)\n"
)

BAD_JACOBI = (
    "algebra bad\n"
    "family L integer degree-offset 0\n"
    "family M integer degree-offset 0\n"
    "bracket L(m) L(n) = (n-m)*L(m+n)\n"
    "bracket L(m) M(n) = (2*n)*M(m+n)\n"
)


def run(capsys, argv):
    code = cli.run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestList:
    def test_text(self, capsys):
        code, out, _ = run(capsys, ["list", "--format", "text"])
        assert code == 0
        assert "witt\n" in out and "Ltilde4 (parameters: lambda, mu)" in out

    def test_json(self, capsys):
        code, out, _ = run(capsys, ["list"])
        data = json.loads(out)
        assert code == 0
        entries = {e["name"]: e for e in data["algebras"]}
        assert entries["virasoro"]["parameters"] == []
        assert entries["L"]["parameters"] == ["lambda", "mu"]


class TestValidate:
    def test_builtin_ok(self, capsys):
        code, out, _ = run(capsys, ["validate", "builtin:witt", "--neq", "6"])
        assert code == 0
        data = json.loads(out)
        assert all(r["passed"] for r in data["checks"])

    def test_builtin_with_params(self, capsys):
        code, _, _ = run(
            capsys, ["validate", "builtin:Ltilde3?lambda=-1,mu=1/2", "--neq", "4"]
        )
        assert code == 0

    def test_file_violation_exit_1(self, capsys, tmp_path):
        path = tmp_path / "bad.liealg"
        path.write_text(BAD_JACOBI)
        code, out, _ = run(capsys, ["validate", str(path), "--format", "text"])
        assert code == 1
        assert "jacobi" in out and "L(" in out  # named witness triple

    def test_parse_error_exit_2(self, capsys, tmp_path):
        path = tmp_path / "broken.liealg"
        path.write_text("algebra x\nfamly L integer\n")
        code, _, err = run(capsys, ["validate", str(path)])
        assert code == 2
        assert "line 2" in err

    def test_missing_file_exit_2(self, capsys):
        code, _, _ = run(capsys, ["validate", "/nonexistent/x.liealg"])
        assert code == 2

    def test_case_guard_exit_3(self, capsys):
        # lambda=1, mu=1/4 belongs to the generic case, not the lambda=-3 one
        code, _, err = run(capsys, ["validate", "builtin:Ltilde2?lambda=1,mu=1/4"])
        assert code == 3
        assert "Ltilde2" in err

    def test_bad_usage_exit_2(self, capsys):
        code, _, _ = run(capsys, ["validate", "builtin:witt", "--neq", "pony"])
        assert code == 2


class TestSolveDeriv:
    ARGS = [
        "solve-deriv", "builtin:so_hat",
        "--degrees", "-1..1", "--step", "integer",
        "--neq", "4", "--ncore", "1",
    ]

    def test_expect_ok(self, capsys):
        code, out, _ = run(capsys, self.ARGS + ["--expect", "-1=0,0=1,1=0"])
        assert code == 0
        data = json.loads(out)
        assert data["dims"] == {"-1": 0, "0": 1, "1": 0}
        assert data["expect_ok"] is True
        assert all(d["residual_checked"] for d in data["degrees"])

    def test_expect_mismatch_exit_1(self, capsys):
        code, _, err = run(capsys, self.ARGS + ["--expect", "0=2"])
        assert code == 1
        assert "0" in err

    def test_half_degrees_and_delta(self, capsys):
        code, out, _ = run(capsys, [
            "solve-deriv", "builtin:Ltilde1?lambda=1,mu=1/4",
            "--degrees", "-1/2..1/2", "--neq", "4", "--ncore", "1",
            "--delta", "1/2",
        ])
        assert code == 0
        assert set(json.loads(out)["dims"]) == {"-1/2", "0", "1/2"}

    def test_negative_degree_value_parses(self, capsys):
        code, out, _ = run(capsys, [
            "solve-deriv", "builtin:witt",
            "--degrees", "-2,0,2", "--step", "integer",
            "--neq", "4", "--ncore", "1", "--delta", "1",
        ])
        assert code == 0
        # delta=1 picks up the adjoint maps of the Witt algebra
        assert json.loads(out)["dims"] == {"-2": 1, "0": 1, "2": 1}

    def test_window_invariant_exit_2(self, capsys):
        code, _, _ = run(capsys, [
            "solve-deriv", "builtin:witt",
            "--degrees", "0", "--step", "integer",
            "--neq", "4", "--ncore", "3",
        ])
        assert code == 2


class TestCheckTpa:
    def test_theorem_product_ok(self, capsys):
        code, out, _ = run(capsys, [
            "check-tpa", "builtin:Ltilde1?lambda=1,mu=1/4",
            "--product", "builtin:theorem",
            "--alpha", "0:1", "--alpha", "-1:2/3", "--beta", "1:-1",
        ])
        assert code == 0
        data = json.loads(out)
        assert [r["check"] for r in data["checks"]] == [
            "commutativity", "associativity", "compatibility",
        ]
        assert all(r["passed"] for r in data["checks"])

    def test_product_file_violation(self, capsys, tmp_path):
        path = tmp_path / "prod.liealg"
        path.write_text("product L(m) L(n) = (1)*M(m+n)\n")
        code, out, _ = run(capsys, [
            "check-tpa", "builtin:so_hat", "--product", str(path),
        ])
        assert code == 1
        data = json.loads(out)
        failing = [r for r in data["checks"] if not r["passed"]]
        assert [r["check"] for r in failing] == ["compatibility"]

    def test_alpha_with_file_is_usage_error(self, capsys, tmp_path):
        path = tmp_path / "prod.liealg"
        path.write_text("product L(m) L(n) = (1)*M(m+n)\n")
        code, _, _ = run(capsys, [
            "check-tpa", "builtin:so_hat", "--product", str(path), "--alpha", "0:1",
        ])
        assert code == 2

    def test_theorem_needs_lambda_one(self, capsys):
        code, _, _ = run(capsys, [
            "check-tpa", "builtin:Ltilde1?lambda=2,mu=1/4",
            "--product", "builtin:theorem", "--alpha", "0:1",
        ])
        assert code == 2


class TestRender:
    def test_witt_byte_exact(self, capsys):
        code, out, _ = run(capsys, ["render", "builtin:witt"])
        assert code == 0
        assert out == WITT_CANONICAL

    def test_file_roundtrip_is_fixed_point(self, capsys, tmp_path):
        path = tmp_path / "alg.liealg"
        path.write_text(render_algebra(builtin("so_hat")))
        code, out, _ = run(capsys, ["render", str(path)])
        assert code == 0
        assert out == path.read_text()

    def test_out_writes_file(self, capsys, tmp_path):
        target = tmp_path / "witt.liealg"
        code, out, _ = run(capsys, ["render", "builtin:witt", "--out", str(target)])
        assert code == 0
        assert out == ""
        assert target.read_text() == WITT_CANONICAL


class TestDeterminism:
    def test_json_outputs_are_byte_identical(self, capsys):
        argv = [
            "solve-deriv", "builtin:Ltilde1?lambda=1,mu=1/4",
            "--degrees", "0..1", "--neq", "4", "--ncore", "1",
        ]
        _, first, _ = run(capsys, argv)
        _, second, _ = run(capsys, argv)
        assert first == second
        json.loads(first)  # valid JSON
