"""CLI behavior: outputs, determinism, config round-trips, error codes."""

import json
import os
import subprocess
import sys

import pytest
import yaml

from lunaprop import cli, config
from lunaprop.errors import ConfigError


def run_cli(args, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(
        [sys.executable, "-m", "lunaprop.cli", *args],
        capture_output=True, text=True, env=full_env,
    )


class TestRun:
    def test_writes_reports_and_exits_zero(self, tmp_path):
        out = tmp_path / "reports"
        result = run_cli(["run", "--study", "BASELINE", "--market", "OPTIMISTIC",
                          "--sep", "--table", "advantage", "-o", str(out)])
        assert result.returncode == 0
        assert (out / "yearly_costs.csv").exists()
        assert (out / "yearly_state.csv").exists()
        assert (out / "advantage_years.csv").exists()

    def test_advantage_table_matches_published_optimistic_column(self, tmp_path):
        out = tmp_path / "adv"
        run_cli(["run", "--study", "BASELINE", "--market", "OPTIMISTIC", "--sep",
                 "--table", "advantage", "-o", str(out)])
        rows = dict(
            line.split(",") for line in
            (out / "advantage_years.csv").read_text().strip().splitlines()[1:]
        )
        assert rows["LS"] == "1" and rows["LLO"] == "1" and rows["EML1"] == "1"
        assert 1 <= int(rows["GEO"]) <= 3
        assert 2 <= int(rows["DRO"]) <= 4
        assert 4 <= int(rows["GTO"]) <= 8
        assert 16 <= int(rows["LEO"]) <= 22

    def test_byte_identical_reruns(self, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        for out in (out1, out2):
            result = run_cli(["run", "--study", "M", "--market", "MODERATE",
                              "--years", "10", "-o", str(out)])
            assert result.returncode == 0
        assert (out1 / "yearly_costs.csv").read_bytes() == \
            (out2 / "yearly_costs.csv").read_bytes()
        assert (out1 / "yearly_state.csv").read_bytes() == \
            (out2 / "yearly_state.csv").read_bytes()

    def test_outdir_env_override(self, tmp_path):
        out = tmp_path / "envdir"
        result = run_cli(["run", "--study", "M", "--years", "3"],
                         env={"LUNAPROP_OUTDIR": str(out)})
        assert result.returncode == 0
        assert (out / "yearly_costs.csv").exists()


class TestReproduce:
    def test_unknown_exhibit(self, tmp_path):
        result = run_cli(["reproduce", "fig99", "-o", str(tmp_path)])
        assert result.returncode == cli.EXIT_MODEL
        report = json.loads(result.stderr)
        assert report["error"] == "MODEL_ERROR"

    def test_table1_runs(self, tmp_path):
        result = run_cli(["reproduce", "table1", "-o", str(tmp_path), "--no-plots"])
        assert result.returncode == 0
        assert (tmp_path / "table1.csv").exists()
        assert not (tmp_path / "table1.svg").exists()


class TestSweep:
    def test_sweep_orders_output(self, tmp_path):
        cfg = {
            "study": "BASELINE", "market": "OPTIMISTIC", "years": 3,
            "sweep": {"parameter": "r0", "values": [0.85, 0.55, 0.70]},
        }
        path = tmp_path / "cfg.yaml"
        path.write_text(yaml.safe_dump(cfg))
        result = run_cli(["sweep", "--config", str(path), "-o", str(tmp_path),
                          "--workers", "2"])
        assert result.returncode == 0
        lines = (tmp_path / "sweep.csv").read_text().strip().splitlines()
        scenarios = [line.split(",")[0] for line in lines[1:]]
        # ordered by sweep value regardless of execution order
        assert scenarios == sorted(scenarios)

    def test_empty_sweep_is_config_error(self, tmp_path):
        path = tmp_path / "cfg.yaml"
        path.write_text(yaml.safe_dump({"sweep": {"parameter": "r0", "values": []}}))
        result = run_cli(["sweep", "--config", str(path), "-o", str(tmp_path)])
        assert result.returncode == cli.EXIT_CONFIG
        assert json.loads(result.stderr)["error"] == "CONFIG_INVALID"


class TestConfig:
    def test_unknown_keys_rejected(self):
        with pytest.raises(ConfigError):
            config.validate({"studyy": "BASELINE"})
        with pytest.raises(ConfigError):
            config.validate({"economics": {"learning": 0.75}})

    def test_study_and_technology_exclusive(self):
        with pytest.raises(ConfigError):
            config.validate({"study": "BASELINE", "technology": {"imf": 0.1}})

    def test_inline_technology(self):
        cfg = config.validate({"technology": {
            "m_k_surface_t": 10.0, "m_k_space_t": 2.0, "payload_capacity_t": 20.0,
            "imf": 0.1, "zeta_d": 100000.0, "zeta_f": 30000.0, "buildup_y": 4.0,
            "annual_ops_musd": 20.0, "life_y": 10.0, "annual_product_t": 100.0,
        }})
        inp = config.build_scenario(cfg)
        assert inp.tech.annual_product_t == 100.0

    def test_dump_effective_config_round_trips(self, tmp_path):
        raw = {"study": "S", "market": "MODERATE", "sep": False, "years": 7}
        cfg = config.validate(raw)
        dumped = config.dump_effective_config(cfg)
        cfg2 = config.validate(yaml.safe_load(dumped))
        from lunaprop import costmodel

        recs1 = costmodel.run_scenario(config.build_scenario(cfg))
        recs2 = costmodel.run_scenario(config.build_scenario(cfg2))
        assert recs1 == recs2

    def test_flags_win_over_config_file(self, tmp_path):
        path = tmp_path / "cfg.yaml"
        path.write_text(yaml.safe_dump({"study": "BASELINE", "market": "OPTIMISTIC"}))
        result = run_cli(["dump-effective-config", "--config", str(path),
                          "--market", "PESSIMISTIC"])
        assert result.returncode == 0
        assert yaml.safe_load(result.stdout)["market"] == "PESSIMISTIC"

    def test_years_bounds(self):
        with pytest.raises(ConfigError):
            config.validate({"years": 0})
        with pytest.raises(ConfigError):
            config.validate({"years": "ten"})
