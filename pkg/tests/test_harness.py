import json
import math

import pytest

from pcf import cli, harness
from pcf.errors import ConfigError
from pcf.harness import CampaignConfig, parse_config_file


def test_config_defaults_and_validation(tmp_path):
    cfg = CampaignConfig(command="verify-lemmas", output_dir=str(tmp_path))
    assert cfg.delta == pytest.approx(math.pi / 6)
    with pytest.raises(ConfigError):
        CampaignConfig(command="nope")
    with pytest.raises(ConfigError):
        CampaignConfig(command="picard", delta=1.0)
    with pytest.raises(ConfigError):
        CampaignConfig(command="picard", lambda_grid=((0.1, 0.0),))
    with pytest.raises(ConfigError):
        CampaignConfig(command="picard", variants=("0", "q"))
    with pytest.raises(ConfigError):
        CampaignConfig(command="picard", ceilings={"estimate_ratio": -1.0})


def test_parse_config_file(tmp_path):
    path = tmp_path / "c.cfg"
    path.write_text(
        "# comment\n"
        "delta = 0.5\n"
        "lambda_grid = 1:0 4:1.0471975511965976\n"
        "x_min = 0.1\nx_max = 4.0\nx_count = 10\n"
        "variants = 0,+\n"
        "seed = 11\njobs = 2\nout = somewhere\n"
        "ceiling.estimate_ratio = 5\n"
        "tol.picard_gap = 0.02\n")
    kw = parse_config_file(str(path))
    cfg = CampaignConfig(command="sweep-estimates", **kw)
    assert cfg.delta == 0.5
    assert cfg.lambda_grid == ((1.0, 0.0), (4.0, 1.0471975511965976))
    assert cfg.variants == ("0", "+")
    assert cfg.ceilings["estimate_ratio"] == 5.0
    assert cfg.tolerances["picard_gap"] == 0.02
    assert cfg.output_dir == "somewhere"


def test_parse_config_errors(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("delta 0.5\n")
    with pytest.raises(ConfigError):
        parse_config_file(str(bad))
    bad.write_text("unknown_key = 3\n")
    with pytest.raises(ConfigError):
        parse_config_file(str(bad))
    bad.write_text("delta = abc\n")
    with pytest.raises(ConfigError):
        parse_config_file(str(bad))


def test_cli_config_error_exit_code(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("delta = 1.0\n")   # > pi/5
    code = cli.main(["verify-lemmas", "--config", str(bad),
                     "--out", str(tmp_path)])
    assert code == 2


def test_verify_lemmas_campaign(tmp_path):
    cfg = CampaignConfig(command="verify-lemmas", output_dir=str(tmp_path))
    manifest, code = harness.run_command(cfg)
    assert code == 0
    assert manifest.all_passed
    data = json.loads((tmp_path / "manifest.json").read_text())
    assert data["config"]["command"] == "verify-lemmas"
    assert (tmp_path / "lemma_suites.csv").exists()
    names = [c["name"] for c in data["checks"]]
    assert len(names) == len(set(names))
    assert "versions" in data and "wallclock_s" in data


def test_sweep_determinism_across_jobs(tmp_path):
    base = dict(command="sweep-estimates", x_count=12, variants=("0", "-"),
                lambda_grid=((1.0, 0.6), (4.0, 0.3)), seed=3)
    out1, out2 = tmp_path / "a", tmp_path / "b"
    harness.run_command(CampaignConfig(output_dir=str(out1), jobs=1, **base))
    harness.run_command(CampaignConfig(output_dir=str(out2), jobs=4, **base))
    for f in sorted(out1.glob("*.csv")):
        assert (out2 / f.name).read_bytes() == f.read_bytes(), f.name


def test_failing_ceiling_exit_code(tmp_path):
    ceil = dict(harness.DEFAULT_CEILINGS)
    ceil["estimate_ratio"] = 1e-9
    cfg = CampaignConfig(command="sweep-estimates", x_count=8,
                         variants=("0",), lambda_grid=((4.0, 1.0),),
                         ceilings=ceil, output_dir=str(tmp_path))
    manifest, code = harness.run_command(cfg)
    assert code == 1
    assert not manifest.all_passed


def test_pcf_out_env(tmp_path, monkeypatch):
    monkeypatch.setenv("PCF_OUT", str(tmp_path / "envout"))
    cfg = CampaignConfig(command="gamma-trace",
                         lambda_grid=((4.0, 0.8),), x_count=8)
    assert cfg.output_dir == str(tmp_path / "envout")
    manifest, code = harness.run_command(cfg)
    assert code == 0
    assert (tmp_path / "envout" / "turning_points.csv").exists()


def test_gamma_trace_artifacts(tmp_path):
    cfg = CampaignConfig(command="gamma-trace", lambda_grid=((4.0, 1.2),),
                         output_dir=str(tmp_path))
    manifest, code = harness.run_command(cfg)
    assert code == 0
    polys = list(tmp_path.glob("gamma_*.csv"))
    assert polys
    header = polys[0].read_text().splitlines()[0]
    assert header == "re,im"
    assert list(tmp_path.glob("domain_*.csv"))


def test_csv_float_round_trip(tmp_path):
    rows = [{"a": 0.1 + 0.2, "b": 1.0 / 3.0}]
    harness.write_csv(tmp_path / "t.csv", ["a", "b"], rows)
    text = (tmp_path / "t.csv").read_text().splitlines()[1]
    a, b = (float(tok) for tok in text.split(","))
    assert a == 0.1 + 0.2 and b == 1.0 / 3.0


def test_cli_parser_covers_commands():
    parser = cli.build_parser()
    for name in harness.COMMANDS:
        args = parser.parse_args([name, "--out", "x"])
        assert args.command == name
