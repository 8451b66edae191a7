"""The imprand command-line tool: contracts, exit codes, determinism."""

import json
from fractions import Fraction

import pytest

from imprand import Situation, StationaryForecast, IntervalForecast, write_path_file
from imprand.cli import main
from imprand.generate import canonical_path

F = Fraction


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def quarters(tmp_path):
    return write_json(
        tmp_path / "forecast.json",
        {"kind": "stationary", "lower": "1/4", "upper": "3/4"},
    )


@pytest.fixture
def kelly(tmp_path):
    return write_json(
        tmp_path / "kelly.json",
        {
            "kind": "multiplicative",
            "initial": "1",
            "multiplier": {
                "kind": "kelly_buy",
                "interval": {"lower": "1/4", "upper": "3/4"},
                "stake": "1/2",
            },
        },
    )


@pytest.fixture
def fair_bet(tmp_path):
    return write_json(
        tmp_path / "fair.json",
        {
            "kind": "additive",
            "initial": "1",
            "increments": {"kind": "constant", "gamble": ["-1", "1"]},
        },
    )


class TestCoherence:
    def test_passes_on_seeded_data(self, capsys):
        code, out, _ = run(capsys, "coherence", "--trials", "500", "--seed", "11")
        doc = json.loads(out)
        assert code == 0
        assert doc["ok"] is True
        assert doc["trials"] == 500

    def test_zero_trials_is_usage_error(self, capsys):
        code, _, err = run(capsys, "coherence", "--trials", "0")
        assert code == 64
        assert "trials" in err

    @pytest.mark.parametrize("fault", ["C1", "C2", "C3", "C4", "C5", "conjugacy", "cone"])
    def test_injected_fault_found(self, capsys, fault):
        code, out, _ = run(
            capsys, "coherence", "--trials", "5", "--seed", "1", "--inject-fault", fault
        )
        doc = json.loads(out)
        assert code == 2
        assert doc["ok"] is False
        assert doc["counterexample"]["property"] == fault

    def test_manifest_has_no_timestamps(self, capsys):
        _, out, _ = run(capsys, "coherence", "--trials", "10", "--seed", "3")
        manifest = json.loads(out)["manifest"]
        assert set(manifest) == {"command", "argv", "inputs", "config", "seed", "tool"}
        assert manifest["seed"] == 3


class TestVerify:
    def test_kelly_passes(self, capsys, quarters, kelly):
        code, out, _ = run(
            capsys, "verify", "--strategy", kelly, "--forecast", quarters, "--depth", "12"
        )
        doc = json.loads(out)
        assert code == 0
        assert doc["ok"] is True and doc["violations"] == []

    def test_fair_bet_fails_with_rows(self, capsys, tmp_path, quarters, fair_bet):
        out_csv = tmp_path / "violations.csv"
        code, out, _ = run(
            capsys, "verify", "--strategy", fair_bet, "--forecast", quarters,
            "--depth", "2", "--out", str(out_csv),
        )
        doc = json.loads(out)
        assert code == 1
        assert [v["situation"] for v in doc["violations"]] == ["", "0", "1"]
        assert all(v["excess"] == "1/2" for v in doc["violations"])
        lines = out_csv.read_text().splitlines()
        assert lines[0] == "situation,level,excess"
        assert lines[1] == ",0,1/2"
        assert len(lines) == 4

    def test_malformed_json_is_usage_error(self, capsys, tmp_path, quarters):
        broken = tmp_path / "broken.json"
        broken.write_text('{"kind": ')
        code, _, err = run(
            capsys, "verify", "--strategy", str(broken), "--forecast", quarters, "--depth", "2"
        )
        assert code == 64
        assert "malformed" in err

    def test_depth_overflow_for_nontemporal(self, capsys, tmp_path, quarters):
        table = write_json(
            tmp_path / "table.json",
            {
                "kind": "multiplicative",
                "initial": "1",
                "multiplier": {"kind": "explicit_table", "depth": 1, "table": {"": ["1", "1"]}},
            },
        )
        code, _, err = run(
            capsys, "verify", "--strategy", table, "--forecast", quarters, "--depth", "40"
        )
        assert code == 3
        assert "cap" in err


class TestTest:
    @pytest.fixture
    def alternating(self, tmp_path):
        target = tmp_path / "alt.path"
        write_path_file(target, canonical_path("alternating", 400))
        return str(target)

    @pytest.fixture
    def battery(self, tmp_path, kelly):
        return write_json(
            tmp_path / "battery.json",
            {
                "strategies": [
                    {"kind": "multiplicative", "initial": "1", "multiplier": {"kind": "unit"}},
                    json.loads((tmp_path / "kelly.json").read_text()),
                    {
                        "kind": "additive",
                        "initial": "1",
                        "increments": {"kind": "constant", "gamble": ["-1", "1"]},
                    },
                ]
            },
        )

    @pytest.fixture
    def selections(self, tmp_path):
        return write_json(
            tmp_path / "selections.json",
            {
                "selections": [
                    {"kind": "always"},
                    {"kind": "follow_symbol", "symbol": 1},
                ]
            },
        )

    def test_rows_and_default_exit_zero(self, capsys, tmp_path, alternating, quarters,
                                        battery, selections):
        csv_path = tmp_path / "report.csv"
        code, out, _ = run(
            capsys, "test", "--path", alternating, "--forecast", quarters,
            "--battery", battery, "--selections", selections, "--csv", str(csv_path),
        )
        doc = json.loads(out)
        assert code == 0
        unit_row, kelly_row, fair_row = doc["strategies"]
        assert unit_row["status"] == "ok" and unit_row["max_capital"] == "1/1"
        assert kelly_row["status"] == "ok"
        assert fair_row["status"] == "rejected" and fair_row["situation"] == ""
        always_row, follow_row = doc["selections"]
        assert always_row["verdict"] == "pass"
        assert follow_row["verdict"] == "fail_low"
        assert follow_row["frequency"] == "0/1"
        assert doc["pass"] is False
        header = csv_path.read_text().splitlines()[0]
        assert header.split(",") == [
            "section", "index", "status", "max_capital", "argmax_step",
            "final_capital", "exceedances", "count", "frequency",
            "lower_statistic", "upper_statistic", "verdict", "note",
        ]

    def test_assert_pass_fails_on_rejection(self, capsys, alternating, quarters, battery):
        code, _, _ = run(
            capsys, "test", "--path", alternating, "--forecast", quarters,
            "--battery", battery, "--assert-pass",
        )
        assert code == 1

    def test_assert_pass_with_capital_bound(self, capsys, tmp_path, alternating, quarters, kelly):
        only_kelly = write_json(
            tmp_path / "only_kelly.json",
            {"strategies": [json.loads((tmp_path / "kelly.json").read_text())]},
        )
        code, _, _ = run(
            capsys, "test", "--path", alternating, "--forecast", quarters,
            "--battery", only_kelly, "--assert-pass", "--max-capital", "100",
        )
        assert code == 0
        code, _, _ = run(
            capsys, "test", "--path", alternating, "--forecast", quarters,
            "--battery", only_kelly, "--assert-pass", "--max-capital", "1",
        )
        assert code == 1

    def test_custom_growth_spec(self, capsys, quarters, kelly, tmp_path):
        short = tmp_path / "short.path"
        write_path_file(short, canonical_path("alternating", 4))
        only_kelly = write_json(
            tmp_path / "ok.json", {"strategies": [json.loads((tmp_path / "kelly.json").read_text())]}
        )
        code, out, _ = run(
            capsys, "test", "--path", str(short), "--forecast", quarters,
            "--battery", only_kelly, "--growth", "linear:1/10", "--growth", "table:0,1,2,3,4",
        )
        doc = json.loads(out)
        assert code == 0
        assert doc["growth"] == [
            {"kind": "linear", "slope": "1/10"},
            {"kind": "table", "values": ["0/1", "1/1", "2/1", "3/1", "4/1"]},
        ]

    def test_short_growth_table_is_resource_error(self, capsys, alternating, quarters,
                                                  kelly, tmp_path):
        only_kelly = write_json(
            tmp_path / "ok3.json",
            {"strategies": [json.loads((tmp_path / "kelly.json").read_text())]},
        )
        code, _, err = run(
            capsys, "test", "--path", alternating, "--forecast", quarters,
            "--battery", only_kelly, "--growth", "table:0,1",
        )
        assert code == 3

    def test_long_path_capital_formats_and_reparses(self, capsys, quarters, kelly, tmp_path):
        # On a 6000-step winning streak the exact kelly capital is
        # (7/6)^6000 — thousands of digits on each side of the slash,
        # well past the interpreter's int<->str digit guard.  The report
        # must still format it, and the text must still parse back.
        from imprand.jsonio import rational_from_obj

        long_path = tmp_path / "ones.path"
        write_path_file(long_path, canonical_path("all_one", 6000))
        only_kelly = write_json(
            tmp_path / "ok4.json",
            {"strategies": [json.loads((tmp_path / "kelly.json").read_text())]},
        )
        code, out, _ = run(
            capsys, "test", "--path", str(long_path), "--forecast", quarters,
            "--battery", only_kelly,
        )
        doc = json.loads(out)
        assert code == 0
        row = doc["strategies"][0]
        assert row["status"] == "ok"
        num, den = row["final_capital"].split("/")
        assert len(num) > 4300 and len(den) > 4300
        assert rational_from_obj(row["final_capital"]) == F(7, 6) ** 6000
        assert row["max_capital"] == row["final_capital"]
        assert row["argmax_step"] == 6000

    def test_bad_growth_spec(self, capsys, alternating, quarters, kelly, tmp_path):
        only = write_json(
            tmp_path / "ok2.json", {"strategies": [json.loads((tmp_path / "kelly.json").read_text())]}
        )
        code, _, err = run(
            capsys, "test", "--path", alternating, "--forecast", quarters,
            "--battery", only, "--growth", "cubic",
        )
        assert code == 64
        assert "growth" in err


class TestConstruct:
    def test_witness_levels(self, capsys, tmp_path):
        write_path_file(tmp_path / "w.path", Situation((1, 1, 0)))
        out_file = tmp_path / "fc.json"
        code, out, _ = run(
            capsys, "construct", "--mode", "witness", "--p", "1/4", "--q", "3/4",
            "--witness", str(tmp_path / "w.path"), "--depth", "3", "--out", str(out_file),
        )
        doc = json.loads(out)
        assert code == 0
        assert doc["levels"] == ["3/4", "3/4", "1/4"]
        materialized = json.loads(out_file.read_text())
        assert materialized["kind"] == "explicit_table"
        assert materialized["reference"]["kind"] == "witness"
        assert materialized["table"]["11"] == {"lower": "1/4", "upper": "1/4"}

    def test_witness_shorter_than_depth(self, capsys, tmp_path):
        write_path_file(tmp_path / "w.path", Situation((1, 1, 0)))
        code, _, err = run(
            capsys, "construct", "--mode", "witness", "--p", "1/4", "--q", "3/4",
            "--witness", str(tmp_path / "w.path"), "--depth", "5",
            "--out", str(tmp_path / "fc.json"),
        )
        assert code == 3
        assert "witness" in err

    def test_perfect_levels(self, capsys, tmp_path):
        write_path_file(tmp_path / "r.path", Situation((0, 1, 0)))
        code, out, _ = run(
            capsys, "construct", "--mode", "perfect", "--path", str(tmp_path / "r.path"),
            "--depth", "3", "--out", str(tmp_path / "fc.json"),
        )
        assert code == 0
        assert json.loads(out)["levels"] == ["0/1", "1/1", "0/1"]

    def test_alternating_levels(self, capsys, tmp_path):
        code, out, _ = run(
            capsys, "construct", "--mode", "alternating", "--p", "1/4", "--q", "3/4",
            "--depth", "2", "--out", str(tmp_path / "fc.json"),
        )
        assert code == 0
        assert json.loads(out)["levels"] == ["3/4", "1/4"]

    def test_materialized_file_loads_as_forecast(self, capsys, tmp_path):
        from imprand.jsonio import load_forecast_file
        from imprand import eval_forecast

        out_file = tmp_path / "fc.json"
        run(
            capsys, "construct", "--mode", "alternating", "--p", "1/4", "--q", "3/4",
            "--depth", "3", "--out", str(out_file),
        )
        spec = load_forecast_file(out_file)
        assert eval_forecast(spec, Situation((0, 1))).lower == F(3, 4)

    def test_missing_mode_arguments(self, capsys, tmp_path):
        code, _, err = run(
            capsys, "construct", "--mode", "witness", "--depth", "2",
            "--out", str(tmp_path / "fc.json"),
        )
        assert code == 64


class TestExpect:
    @pytest.fixture
    def matching(self, tmp_path):
        return write_json(
            tmp_path / "gamble.json",
            {"depth": 2, "payoff": {"00": "1", "01": "0", "10": "0", "11": "1"}},
        )

    def test_first_outcome_indicator(self, capsys, tmp_path, quarters):
        gamble = write_json(
            tmp_path / "g1.json", {"depth": 1, "payoff": {"0": "0", "1": "1"}}
        )
        code, out, _ = run(capsys, "expect", "--forecast", quarters, "--gamble", gamble)
        doc = json.loads(out)
        assert code == 0
        assert (doc["upper"], doc["lower"]) == ("3/4", "1/4")

    def test_oracle_agreement(self, capsys, quarters, matching):
        code, out, _ = run(
            capsys, "expect", "--forecast", quarters, "--gamble", matching, "--oracle"
        )
        doc = json.loads(out)
        assert code == 0
        assert doc["oracle"] == doc["upper"] == "3/4"

    def test_constant_gamble(self, capsys, tmp_path, quarters):
        gamble = write_json(
            tmp_path / "gc.json", {"depth": 1, "payoff": {"0": "5/7", "1": "5/7"}}
        )
        code, out, _ = run(
            capsys, "expect", "--forecast", quarters, "--gamble", gamble, "--oracle"
        )
        doc = json.loads(out)
        assert doc["upper"] == doc["lower"] == doc["oracle"] == "5/7"

    def test_oracle_depth_cap(self, capsys, tmp_path, quarters):
        payoff = {format(i, "05b"): "1" for i in range(32)}
        gamble = write_json(tmp_path / "g5.json", {"depth": 5, "payoff": payoff})
        code, _, err = run(
            capsys, "expect", "--forecast", quarters, "--gamble", gamble, "--oracle"
        )
        assert code == 3


class TestSimulate:
    def test_writes_path_meta_and_manifest(self, capsys, tmp_path):
        forecast = write_json(
            tmp_path / "fair.json", {"kind": "stationary", "lower": "1/2", "upper": "1/2"}
        )
        out_file = tmp_path / "run.path"
        code, out, _ = run(
            capsys, "simulate", "--forecast", forecast, "--n", "100", "--seed", "7",
            "--out", str(out_file),
        )
        doc = json.loads(out)
        assert code == 0
        assert out_file.exists()
        meta = json.loads((tmp_path / "run.path.meta.json").read_text())
        assert meta["seed"] == 7 and meta["n"] == 100
        assert meta["generator"] == "numpy-philox4x64"
        assert meta["forecast"]["kind"] == "stationary"
        assert doc["ones"] == sum(
            1 for ch in out_file.read_text() if ch == "1"
        )

    def test_imprecise_forecast_exit_4(self, capsys, tmp_path, quarters):
        code, _, err = run(
            capsys, "simulate", "--forecast", quarters, "--n", "10", "--seed", "1",
            "--out", str(tmp_path / "x.path"),
        )
        assert code == 4
        assert "precise" in err


class TestEstimate:
    def test_alternating_is_vacuous(self, capsys, tmp_path):
        target = tmp_path / "alt.path"
        write_path_file(target, canonical_path("alternating", 200))
        code, out, _ = run(capsys, "estimate", "--path", str(target))
        doc = json.loads(out)
        assert code == 0
        assert doc["display"] == "[0/1, 1/1]"

    def test_custom_battery(self, capsys, tmp_path):
        target = tmp_path / "ones.path"
        write_path_file(target, canonical_path("all_one", 64))
        battery = write_json(
            tmp_path / "sels.json", {"selections": [{"kind": "always"}]}
        )
        code, out, _ = run(
            capsys, "estimate", "--path", str(target), "--battery", battery
        )
        doc = json.loads(out)
        assert doc["interval"] == {"lower": "1/1", "upper": "1/1"}


class TestDeterminism:
    def test_rerun_is_byte_identical(self, capsys, tmp_path):
        forecast = write_json(
            tmp_path / "fair.json", {"kind": "stationary", "lower": "1/2", "upper": "1/2"}
        )
        first = run(
            capsys, "simulate", "--forecast", forecast, "--n", "50", "--seed", "3",
            "--out", str(tmp_path / "a.path"),
        )
        path_a = (tmp_path / "a.path").read_bytes()
        second = run(
            capsys, "simulate", "--forecast", forecast, "--n", "50", "--seed", "3",
            "--out", str(tmp_path / "a.path"),
        )
        assert first == second
        assert (tmp_path / "a.path").read_bytes() == path_a


class TestUsage:
    def test_unknown_command(self, capsys):
        code, _, err = run(capsys, "frobnicate")
        assert code == 64

    def test_missing_required_flag(self, capsys):
        code, _, err = run(capsys, "verify", "--depth", "3")
        assert code == 64
