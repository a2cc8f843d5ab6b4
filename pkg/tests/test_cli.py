# tests/test_cli.py
import io
import json
from fractions import Fraction

import pytest

from commands import run_verify
from main import main
from schemas.cli_schemas import CliConfig, Subcommand
from services.combinatorics_service import StirlingKind, combinatorics_service
from services.family_service import family_service, get_context
from services.render_service import decode_value


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


class TestTable:
    def test_boole_constant_term(self, capsys):
        code, out = run(
            capsys, "table", "--family", "boole1", "--n-max", "0", "--lambda", "1",
            "--x", "0", "--q", "sym", "--format", "json",
        )
        assert code == 0
        assert json.loads(out) == [
            {
                "family": "boole1",
                "n": 0,
                "k": 1,
                "lambda": "1",
                "x": "0",
                "q": "sym",
                "value": {"num": ["1"], "den": ["1", "1"]},
            }
        ]

    def test_key_order_is_stable(self, capsys):
        _, out = run(capsys, "table", "--family", "boole2", "--n-max", "1", "--lambda", "2")
        assert list(json.loads(out)[0]) == ["family", "n", "k", "lambda", "x", "q", "value"]

    def test_classical_euler(self, capsys):
        code, out = run(capsys, "table", "--family", "euler", "--n-max", "1", "--q", "1")
        assert code == 0
        assert [record["value"] for record in json.loads(out)] == ["1", "-1/2"]

    def test_symbolic_x(self, capsys):
        _, out = run(capsys, "table", "--family", "changhee", "--n-max", "1", "--x", "sym", "--q", "1")
        records = json.loads(out)
        assert records[1]["x"] == "sym"
        assert records[1]["value"] == [[0, "-1/2"], [1, "1"]]

    def test_output_is_deterministic(self, capsys):
        argv = ["table", "--family", "boole1", "--order", "2", "--lambda", "-1/2", "--x", "sym", "--n-max", "6"]
        _, first = run(capsys, *argv)
        _, second = run(capsys, *argv)
        assert first == second

    def test_json_round_trip(self, capsys):
        _, out = run(
            capsys, "table", "--family", "boole1", "--order", "2", "--lambda", "3",
            "--x", "sym", "--n-max", "5",
        )
        ctx = get_context(5)
        for record in json.loads(out):
            expected = family_service.q_boole_first(ctx, record["n"], 2, 3)
            assert decode_value(record["value"]) == expected

    def test_paths_give_identical_output(self, capsys):
        base = ["table", "--family", "boole1", "--lambda", "2", "--x", "sym", "--n-max", "5"]
        _, genfunc = run(capsys, *base, "--path", "genfunc")
        _, stirling = run(capsys, *base, "--path", "stirling")
        _, integral = run(capsys, *base, "--path", "integral")
        assert genfunc == stirling == integral

    def test_csv(self, capsys):
        code, out = run(capsys, "table", "--family", "euler-number", "--n-max", "2", "--format", "csv")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "family,n,k,lambda,x,q,degree,num,den"
        # E_2 = (q^2 - q)/(1 + 2q + q^2)
        assert lines[3] == "euler-number,2,1,,,sym,,0;-1;1,1;2;1"

    def test_csv_symbolic_x_has_one_row_per_degree(self, capsys):
        _, out = run(capsys, "table", "--family", "euler", "--n-max", "1", "--x", "sym", "--q", "1", "--format", "csv")
        lines = out.splitlines()
        assert lines[-2:] == ["euler,1,1,,sym,1,0,-1,2", "euler,1,1,,sym,1,1,1,1"]

    def test_pretty(self, capsys):
        code, out = run(capsys, "table", "--family", "changhee", "--n-max", "2", "--format", "pretty")
        assert code == 0
        assert "changhee" in out

    @pytest.mark.parametrize(
        "argv",
        [
            ["table", "--family", "boole1", "--lambda", "0"],
            ["table", "--family", "boole2"],
            ["table", "--family", "boole1", "--lambda", "1", "--n-max", "65"],
            ["table", "--family", "boole1", "--lambda", "x/y"],
            ["table", "--family", "boole1", "--lambda", "1", "--order", "0"],
            ["table", "--family", "euler", "--path", "stirling"],
            ["table", "--family", "hermite"],
            ["verify", "--identity", "no-such-identity"],
            ["verify", "--lambdas", "1,0"],
            ["frobnicate"],
        ],
    )
    def test_usage_errors_exit_2(self, capsys, argv):
        code, out = run(capsys, *argv)
        assert code == 2
        assert out == ""


class TestVerify:
    def test_full_suite(self, capsys):
        code, out = run(capsys, "verify", "--identity", "all", "--n-max", "8", "--order-max", "2")
        assert code == 0
        report = json.loads(out)
        assert report["status"] == "pass"
        assert len(report["identities"]) == 18
        assert all("elapsed_ms" not in item for item in report["identities"])

    def test_second_kind_reflection(self, capsys):
        code, out = run(capsys, "verify", "--identity", "second-kind-reflection", "--n-max", "6")
        assert code == 0
        assert json.loads(out)["identities"][0]["identity_id"] == "second-kind-reflection"

    @pytest.mark.parametrize(
        "selector, identity_id",
        [
            ("eq2.35", "second-kind-reflection"),
            ("thm2.2", "boole-stirling-inversion"),
            ("reflection", "negation-reflection"),
        ],
    )
    def test_short_selectors(self, capsys, selector, identity_id):
        code, out = run(capsys, "verify", "--identity", selector, "--n-max", "6")
        assert code == 0
        assert json.loads(out)["identities"][0]["identity_id"] == identity_id

    def test_timing(self, capsys):
        code, out = run(
            capsys, "verify", "--identity", "changhee-moments", "--n-max", "4", "--timing"
        )
        assert code == 0
        assert "elapsed_ms" in json.loads(out)["identities"][0]

    def test_sampled_mode_is_reproducible(self, capsys):
        argv = ["verify", "--identity", "negation-reflection", "--n-max", "5", "--x", "sampled", "--seed", "4"]
        first = run(capsys, *argv)
        second = run(capsys, *argv)
        assert first == second
        assert first[0] == 0

    def test_pretty_report(self, capsys):
        code, out = run(capsys, "verify", "--identity", "stirling-orthogonality", "--n-max", "6", "--format", "pretty")
        assert code == 0
        assert "stirling-orthogonality" in out

    def test_corrupted_table_exits_1(self):
        cfg = CliConfig(
            subcommand=Subcommand.VERIFY,
            identity="thm2.1",
            n_max=6,
            order_max=1,
            lambdas="1,2",
        )
        table = combinatorics_service.table(7).with_entry(StirlingKind.FIRST, 3, 1, 3)
        out = io.StringIO()
        code = run_verify(cfg, context=get_context(6, stirling=table), out=out)
        assert code == 1
        report = json.loads(out.getvalue())
        assert report["status"] == "fail"
        counterexample = report["identities"][0]["first_counterexample"]
        assert counterexample["params"]["n"] == "3"
        assert counterexample["lhs"] != counterexample["rhs"]

    def test_version(self, capsys):
        assert main(["--version"]) == 0
        assert "0.1.0" in capsys.readouterr().out


class TestCliConfig:
    def test_parses_rationals(self):
        cfg = CliConfig.model_validate(
            {"subcommand": "table", "family": "boole1", "lambda": "-3/6", "x": "sym", "q": "2"}
        )
        assert cfg.lambda_ == Fraction(-1, 2)
        assert cfg.x is None
        assert cfg.q == 2

    def test_csv_is_for_tables_only(self):
        with pytest.raises(ValueError):
            CliConfig(subcommand=Subcommand.VERIFY, format="csv")

    def test_identity_selection(self):
        assert CliConfig(subcommand=Subcommand.VERIFY).identities is None
        cfg = CliConfig(subcommand=Subcommand.VERIFY, identity="changhee-moments")
        assert [i.value for i in cfg.identities] == ["changhee-moments"]

    def test_short_selector_resolves(self):
        cfg = CliConfig(subcommand=Subcommand.VERIFY, identity="EQ2.13")
        assert cfg.identity == "changhee-reduction"
        assert [i.value for i in cfg.identities] == ["changhee-reduction"]
        with pytest.raises(ValueError):
            CliConfig(subcommand=Subcommand.VERIFY, identity="thm3.1")
