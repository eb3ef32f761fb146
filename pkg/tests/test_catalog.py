import numpy as np
import pytest

from grasschan import catalog
from grasschan.degradability import NULL_CAPACITY_CLAIMED, WEAKLY_DEGRADABLE
from grasschan.green import green_from_channel
from grasschan.qubit import is_cptp


def test_channel_names():
    assert set(catalog.CHANNEL_NAMES) == {
        "bit_flip",
        "phase_flip",
        "bit_phase_flip",
        "depolarizing",
        "amplitude_damping",
        "generalized_amplitude_damping",
    }


class TestBuild:
    def test_bit_flip_parameters(self):
        s = 0.3
        ch = catalog.build("bit_flip", {"s": s})
        assert np.allclose(ch.t, 0)
        assert np.allclose(ch.lam, [1, 2 * s - 1, 2 * s - 1])

    def test_phase_flip_parameters(self):
        s = 0.3
        ch = catalog.build("phase_flip", {"s": s})
        assert np.allclose(ch.lam, [2 * s - 1, 2 * s - 1, 1])

    def test_generalized_amplitude_damping_parameters(self):
        n, s = 0.4, 0.7
        ch = catalog.build("generalized_amplitude_damping", {"n": n, "s": s})
        assert np.allclose(ch.t, [0, 0, (1 - n) * (2 * s - 1)])
        assert np.allclose(ch.lam, [np.sqrt(n), np.sqrt(n), n])

    def test_out_of_range(self):
        with pytest.raises(catalog.OutOfRangeError):
            catalog.build("bit_flip", {"s": 1.2})
        with pytest.raises(catalog.OutOfRangeError):
            catalog.build("amplitude_damping", {"n": -0.1})
        with pytest.raises(catalog.OutOfRangeError):
            catalog.build("bit_flip", {"n": 0.5})
        with pytest.raises(KeyError):
            catalog.build("unknown_channel", {})

    @pytest.mark.parametrize("name", catalog.CHANNEL_NAMES)
    def test_cptp_across_parameter_range(self, name):
        info = catalog.channel_info(name)
        grid = np.linspace(0.0, 1.0, 9)
        if len(info.params) == 1:
            samples = [{info.params[0]: v} for v in grid]
        else:
            samples = [{"n": a, "s": b} for a in grid[::2] for b in grid[::2]]
        for params in samples:
            assert is_cptp(catalog.build(name, params)).ok


class TestGoldenTables:
    def test_tables_cover_all_channels_with_twenty_samples(self):
        data = catalog.golden_tables()
        assert set(data["channels"]) == set(catalog.CHANNEL_NAMES)
        for entries in data["channels"].values():
            assert len(entries) == 20

    @pytest.mark.parametrize("name", catalog.CHANNEL_NAMES)
    def test_kernels_match_golden_coefficients(self, name):
        data = catalog.golden_tables()
        for entry in data["channels"][name]:
            ch = catalog.build(name, entry["params"])
            table = green_from_channel(ch).to_table()
            for monomial, (re, im) in entry["table"].items():
                assert table[monomial] == pytest.approx(complex(re, im), abs=1e-12), (
                    name,
                    entry["params"],
                    monomial,
                )


class TestAnalyze:
    def test_depolarizing_report(self):
        report = catalog.analyze("depolarizing", {"s": 0.5})
        assert report["gaussian"] is None
        assert report["gaussian_equivalent"] is None
        assert report["degradability"] is None
        assert any("non-Gaussian" in note for note in report["notes"])

    def test_phase_flip_report_uses_equivalent(self):
        s = 0.3
        report = catalog.analyze("phase_flip", {"s": s})
        assert report["gaussian"] is None
        eq = report["gaussian_equivalent"]
        assert eq["perm"] == [1, 2, 0]
        assert np.allclose(eq["channel"]["lambda"], [1, 2 * s - 1, 2 * s - 1])
        assert eq["degradability"]["kind"] == WEAKLY_DEGRADABLE

    def test_amplitude_damping_boundary_runs_both_directions(self):
        report = catalog.analyze("amplitude_damping", {"n": 0.5})
        degr = report["degradability"]
        assert degr["prediction"]["boundary"]
        assert degr["attempts"]["weak"] is not None
        assert degr["attempts"]["anti"] is not None
        assert any("boundary" in note for note in report["notes"])

    def test_weakly_degradable_amplitude_damping(self):
        report = catalog.analyze("amplitude_damping", {"n": 0.75})
        assert report["degradability"]["kind"] == WEAKLY_DEGRADABLE
        assert report["dilation"]["marginal_ptm_deviation"] < 1e-10

    def test_mixed_environment_null_capacity_note(self):
        report = catalog.analyze("generalized_amplitude_damping", {"n": 0.25, "s": 0.7})
        assert report["degradability"]["prediction"]["kind"] == NULL_CAPACITY_CLAIMED
        assert any("null" in note for note in report["notes"])

    def test_gad_s_equals_one_is_flagged(self):
        report = catalog.analyze("generalized_amplitude_damping", {"n": 0.4, "s": 1.0})
        assert any("s = 1" in note for note in report["notes"])
        assert report["cptp"]["ok"]

    def test_report_expected_block_matches_catalog(self):
        report = catalog.analyze("bit_flip", {"s": 0.4})
        info = catalog.channel_info("bit_flip")
        assert report["expected"]["gaussian"] == info.gaussian
        assert report["expected"]["degradability"] == info.degradability


def test_listing_has_six_entries_with_ranges():
    listing = catalog.list_channels()
    assert len(listing) == 6
    for entry in listing:
        assert all(rng == [0.0, 1.0] for rng in entry["params"].values())
        assert entry["summary"]


class TestVerdictSweep:
    """Analyze verdicts across parameter ranges, away from the 0.5 boundary."""

    grid = np.linspace(0.05, 0.95, 10)

    def test_flip_family_always_weakly_degradable(self):
        for s in self.grid:
            for name in ("bit_flip", "bit_phase_flip"):
                report = catalog.analyze(name, {"s": s})
                assert report["degradability"]["kind"] == WEAKLY_DEGRADABLE, (name, s)
            report = catalog.analyze("phase_flip", {"s": s})
            assert report["gaussian_equivalent"]["degradability"]["kind"] == WEAKLY_DEGRADABLE

    def test_depolarizing_never_classified(self):
        for s in self.grid:
            assert catalog.analyze("depolarizing", {"s": s})["degradability"] is None

    def test_amplitude_damping_split(self):
        for n in self.grid:
            if abs(n - 0.5) < 0.02:
                continue
            kind = catalog.analyze("amplitude_damping", {"n": n})["degradability"]["kind"]
            assert kind == (WEAKLY_DEGRADABLE if n > 0.5 else "anti_degradable"), n

    def test_generalized_amplitude_damping_split(self):
        for n in (0.1, 0.3, 0.7, 0.9):
            for s in (0.25, 0.75):
                report = catalog.analyze("generalized_amplitude_damping", {"n": n, "s": s})
                kind = report["degradability"]["kind"]
                if n > 0.5:
                    assert kind == WEAKLY_DEGRADABLE
                else:
                    assert kind in ("anti_degradable", "neither_certified")
                    assert report["degradability"]["prediction"]["kind"] == NULL_CAPACITY_CLAIMED
