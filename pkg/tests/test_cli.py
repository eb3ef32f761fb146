import json

import numpy as np
import pytest

from grasschan import io
from grasschan.cli import main
from grasschan.qubit import (
    NonDiagonalBlockError,
    NotTracePreservingError,
    QubitChannel,
)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestChannelCodec:
    def test_canonical_round_trip(self):
        ch = QubitChannel.from_canonical([0.1, -0.05, 0.3], [0.5, 0.4, 0.2])
        back = io.channel_from_json(io.channel_to_json(ch))
        assert np.array_equal(back.t, ch.t) and np.array_equal(back.lam, ch.lam)

    def test_kraus_spec(self):
        n = 0.4
        ops = [
            [[[1, 0], [0, 0]], [[0, 0], [np.sqrt(n), 0]]],
            [[[0, 0], [np.sqrt(1 - n), 0]], [[0, 0], [0, 0]]],
        ]
        ch = io.channel_from_json({"type": "kraus", "matrices": ops})
        assert np.allclose(ch.t, [0, 0, 1 - n])

    def test_named_spec(self):
        ch = io.channel_from_json(
            {"type": "named", "name": "amplitude_damping", "params": {"n": 0.3}}
        )
        assert np.allclose(ch.lam, [np.sqrt(0.3), np.sqrt(0.3), 0.3])

    def test_bad_specs(self):
        with pytest.raises(io.SpecError):
            io.channel_from_json({"type": "mystery"})
        with pytest.raises(io.SpecError):
            io.channel_from_json({"type": "canonical", "t": [0, 0], "lambda": [1, 1, 1]})
        with pytest.raises(io.SpecError):
            io.channel_from_json({"type": "named", "name": "nope", "params": {}})
        with pytest.raises(io.SpecError):
            io.channel_from_json({"type": "canonical", "t": [0, 0, 0], "lambda": [1, 1, 1], "schema_version": 99})

    def test_validation_errors_not_masked(self):
        with pytest.raises(NotTracePreservingError):
            io.channel_from_json({"type": "kraus", "matrices": [[[[0.9, 0], [0, 0]], [[0, 0], [0.9, 0]]]]})
        hadamard = (1 / np.sqrt(2)) * np.array([[1, 1], [1, -1]])
        mats = [[[[hadamard[i, j], 0] for j in range(2)] for i in range(2)]]
        with pytest.raises(NonDiagonalBlockError):
            io.channel_from_json({"type": "kraus", "matrices": mats})


class TestAnalyzeCommand:
    def test_named_amplitude_damping_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "analyze", "--named", "amplitude_damping", "--param", "n=0.75", "--json"
        )
        assert code == 0
        report = json.loads(out)
        assert report["degradability"]["kind"] == "weakly_degradable"
        assert report["gaussian"]["c"] == pytest.approx(0.125)

    def test_identity_spec_file(self, capsys, tmp_path):
        spec = tmp_path / "identity.json"
        spec.write_text(json.dumps({"type": "canonical", "t": [0, 0, 0], "lambda": [1, 1, 1]}))
        code, out, _ = run_cli(capsys, "analyze", str(spec), "--json")
        assert code == 0
        report = json.loads(out)
        assert report["gaussian"] == {"a": [1.0, 0.0], "b": [0.0, 0.0], "c": 0.0}
        assert report["degradability"]["kind"] == "weakly_degradable"
        # degrading witness of the identity is its complement: the reset to |0><0|
        assert np.allclose(report["degradability"]["witness"]["t"], [0, 0, 1])

    def test_depolarizing_note(self, capsys):
        code, out, _ = run_cli(capsys, "analyze", "--named", "depolarizing", "--param", "s=0.3")
        assert code == 0
        assert "gaussian: no" in out
        assert "note:" in out

    def test_report_channel_block_round_trips(self, capsys):
        code, out, _ = run_cli(
            capsys, "analyze", "--named", "generalized_amplitude_damping",
            "--param", "n=0.4", "--param", "s=0.7", "--json",
        )
        assert code == 0
        report = json.loads(out)
        ch = io.channel_from_json(report["channel"])
        assert np.max(np.abs(ch.t - np.array(report["channel"]["t"]))) < 1e-12
        assert np.max(np.abs(ch.lam - np.array(report["channel"]["lambda"]))) < 1e-12

    def test_parse_error_exit_2(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, out, err = run_cli(capsys, "analyze", str(bad))
        assert code == 2

    def test_parse_error_json_payload(self, capsys, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        code, out, _ = run_cli(capsys, "analyze", str(bad), "--json")
        assert code == 2
        assert json.loads(out)["error"]["kind"] == "parse"

    def test_validation_error_exit_3(self, capsys, tmp_path):
        spec = tmp_path / "bad_channel.json"
        spec.write_text(json.dumps({"type": "canonical", "t": [0, 0, 0], "lambda": [1, 1, -1]}))
        code, _, err = run_cli(capsys, "analyze", str(spec))
        assert code == 3

    def test_out_of_range_param_exit_2(self, capsys):
        code, *_ = run_cli(capsys, "analyze", "--named", "bit_flip", "--param", "s=2.0")
        assert code == 2

    def test_requires_exactly_one_source(self, capsys):
        code, *_ = run_cli(capsys, "analyze")
        assert code == 2

    def test_bad_tol_exit_2(self, capsys):
        code, *_ = run_cli(
            capsys, "analyze", "--named", "bit_flip", "--param", "s=0.5", "--tol", "-1"
        )
        assert code == 2

    def test_out_file(self, capsys, tmp_path):
        out_path = tmp_path / "report.json"
        code, out, _ = run_cli(
            capsys, "analyze", "--named", "bit_flip", "--param", "s=0.5",
            "--json", "--out", str(out_path),
        )
        assert code == 0 and out == ""
        report = json.loads(out_path.read_text())
        assert report["name"] == "bit_flip"

    def test_deterministic_output(self, capsys):
        args = ("analyze", "--named", "amplitude_damping", "--param", "n=0.6", "--json")
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second


class TestCatalogCommand:
    def test_lists_six_channels(self, capsys):
        code, out, _ = run_cli(capsys, "catalog")
        assert code == 0
        for name in (
            "bit_flip",
            "phase_flip",
            "bit_phase_flip",
            "depolarizing",
            "amplitude_damping",
            "generalized_amplitude_damping",
        ):
            assert name in out

    def test_json_listing(self, capsys):
        code, out, _ = run_cli(capsys, "catalog", "--json")
        assert code == 0
        payload = json.loads(out)
        assert len(payload["channels"]) == 6

    def test_single_entry(self, capsys):
        code, out, _ = run_cli(capsys, "catalog", "--name", "bit_flip")
        assert code == 0
        assert "lam=(1, 2s-1, 2s-1)" in out

    def test_unknown_entry(self, capsys):
        code, *_ = run_cli(capsys, "catalog", "--name", "nope")
        assert code == 2


class TestVerifyCommand:
    def test_pass(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--trials", "50", "--seed", "42")
        assert code == 0
        assert "verification PASSED" in out

    def test_seed_determinism(self, capsys):
        _, first, _ = run_cli(capsys, "verify", "--trials", "20", "--seed", "7", "--json")
        _, second, _ = run_cli(capsys, "verify", "--trials", "20", "--seed", "7", "--json")
        assert first == second

    def test_zero_trials_vacuous_with_warning(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--trials", "0")
        assert code == 0
        assert "vacuous" in out

    def test_too_tight_tolerance_fails(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--trials", "20", "--tol", "1e-20")
        assert code == 4
        assert "FAIL" in out

    def test_json_payload(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--trials", "10", "--json")
        assert code == 0
        payload = json.loads(out)
        assert payload["passed"] is True
        assert {c["name"] for c in payload["checks"]} == {
            "characteristic_function_closed_form",
            "convolution_vs_dense_oracle",
        }
