import numpy as np
import pytest

from mixadc.channel import load_channel, save_channel, ChannelMatrix
from mixadc.cli import main
from mixadc.report import (
    csv_to_report,
    load_config,
    parse_bits,
    format_bits,
    report_to_csv,
    sweep_config,
)
from mixadc.allocation import GaParams
from mixadc.quantization import INF
from mixadc.simulation import SweepConfig, run_sweep


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_gen_channel(tmp_path, capsys):
    out = tmp_path / "h.chan"
    code, cap = run(capsys, "gen-channel", "--n", "8", "--kappa", "1000", "--seed", "7",
                    "--out", str(out))
    assert code == 0
    kappa = float(cap.out.split("=")[1])
    assert 990 <= kappa <= 1010
    assert load_channel(out).n == 8
    first = out.read_bytes()
    run(capsys, "gen-channel", "--n", "8", "--kappa", "1000", "--seed", "7", "--out", str(out))
    assert out.read_bytes() == first


def test_gen_channel_bad_n(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["gen-channel", "--n", "0", "--out", str(tmp_path / "x")])
    assert exc.value.code != 0


@pytest.fixture
def scalar_channel(tmp_path):
    path = tmp_path / "one.chan"
    save_channel(ChannelMatrix(np.eye(1)), path)
    return path


def test_allocate_full_scalar(scalar_channel, capsys):
    code, cap = run(capsys, "allocate", "--channel", str(scalar_channel), "--snr-db", "0",
                    "--method", "full", "--format", "csv")
    assert code == 0
    header, row = cap.out.strip().splitlines()
    fields = dict(zip(header.split(","), row.split(",")))
    assert fields["b_star"] == "2"
    assert float(fields["j_star"]) == pytest.approx(0.55875, abs=1e-9)
    assert fields["evaluations"] == "2"


def test_allocate_ga_n8(tmp_path, capsys):
    chan = tmp_path / "h.chan"
    main(["gen-channel", "--n", "8", "--seed", "1", "--out", str(chan)])
    capsys.readouterr()
    argv = ["allocate", "--channel", str(chan), "--snr-db", "10", "--method", "ga",
            "--seed", "4", "--format", "csv"]
    code, first = run(capsys, *argv)
    assert code == 0
    assert first.out.splitlines()[1].split(",")[3] == "324"
    _, second = run(capsys, *argv)
    assert first.out == second.out


def test_allocate_missing_file(tmp_path, capsys):
    code, cap = run(capsys, "allocate", "--channel", str(tmp_path / "nope"), "--snr-db", "0")
    assert code == 1 and "error" in cap.err


def test_allocate_infeasible_budget(scalar_channel, capsys):
    code, _ = run(capsys, "allocate", "--channel", str(scalar_channel), "--snr-db", "0",
                  "--budget", "1")
    assert code == 1


def test_enumerate(capsys):
    assert run(capsys, "enumerate", "--n", "1", "--budget", "4")[1].out.strip() == "2"
    code, cap = run(capsys, "enumerate", "--n", "2", "--budget", "8", "--list")
    assert cap.out.split() == ["1-1", "1-2", "2-1", "2-2", "4"]
    assert run(capsys, "enumerate", "--n", "8")[1].out.strip() == "1896"
    assert run(capsys, "enumerate", "--n", "3", "--budget", "5")[0] == 1


def test_bits_format_round_trip():
    for bits in [(1, 2, 3, 4), (INF, INF), (12,)]:
        assert parse_bits(format_bits(bits)) == bits
    assert format_bits((2, INF)) == "2-inf"


def test_report_csv_round_trip():
    cfg = SweepConfig(n=4, snr_db_grid=[-5, 7.5], trials=2, symbols_per_trial=30, seed=9,
                      ga=GaParams(k=8, l=2))
    rep = run_sweep(cfg)
    text = report_to_csv(rep)
    back = csv_to_report(text)
    assert back.rows == rep.rows
    assert back.n == 4 and back.normalization == "per-stream"
    assert report_to_csv(back) == text


SMALL_CONFIG = """\
schema = 1
n = 4
trials = 3
symbols_per_trial = 40
snr_db_grid = [0.0, 10.0, 20.0]
seed = 21
ga_k = 16
ga_l = 2
"""


def test_sweep_cli(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text(SMALL_CONFIG)
    out, plot = tmp_path / "r.csv", tmp_path / "p.csv"
    code, cap = run(capsys, "sweep", "--config", str(cfg), "--out", str(out),
                    "--plot-out", str(plot))
    assert code == 0
    rep = csv_to_report(out.read_text())
    assert len(rep.rows) == 5 * 3
    lines = plot.read_text().splitlines()
    assert lines[0] == "scheme,snr_db,mse" and len(lines) == 16
    assert "full-search" in cap.out
    code, cap = run(capsys, "verify-report", str(out))
    assert code == 0 and cap.out.startswith("OK")
    # flags override file values
    out2 = tmp_path / "r2.csv"
    run(capsys, "sweep", "--config", str(cfg), "--trials", "1", "--snr-db", "5",
        "--out", str(out2))
    rep2 = csv_to_report(out2.read_text())
    assert {r.snr_db for r in rep2.rows} == {5.0}


def test_sweep_cli_rejects_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "bad.toml"
    cfg.write_text(SMALL_CONFIG + "colour = 'blue'\n")
    out = tmp_path / "r.csv"
    code, cap = run(capsys, "sweep", "--config", str(cfg), "--out", str(out))
    assert code == 1 and "colour" in cap.err
    assert not out.exists()


def test_sweep_failure_leaves_no_files(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text(SMALL_CONFIG + "p_adc = 1.0\n")
    out = tmp_path / "r.csv"
    code, _ = run(capsys, "sweep", "--config", str(cfg), "--out", str(out))
    assert code == 1
    assert list(tmp_path.iterdir()) == [cfg]


def test_verify_report_flags_violation(tmp_path, capsys):
    rep = run_sweep(SweepConfig(n=4, snr_db_grid=[10], trials=1, symbols_per_trial=10,
                                schemes=["one-bit", "two-bit"]))
    text = report_to_csv(rep)
    swapped = text.replace("one-bit", "TMP").replace("two-bit", "one-bit").replace("TMP", "two-bit")
    path = tmp_path / "bad.csv"
    path.write_text(swapped)
    code, cap = run(capsys, "verify-report", str(path))
    assert code == 1 and cap.out.startswith("FAIL")


def test_config_loader(tmp_path):
    p = tmp_path / "c.toml"
    p.write_text(SMALL_CONFIG)
    cfg = sweep_config(load_config(p))
    assert cfg.n == 4 and cfg.ga.k == 16 and cfg.snr_db_grid == (0.0, 10.0, 20.0)
    p.write_text("schema = 2\n")
    with pytest.raises(ValueError):
        load_config(p)


def test_config_defaults_match_setup():
    cfg = sweep_config({"schema": 1})
    assert cfg.n == 8 and cfg.trials == 100 and cfg.symbols_per_trial == 400
    assert cfg.snr_db_grid == tuple(float(s) for s in range(-5, 31, 5))
    assert (cfg.ga.k, cfg.ga.l, cfg.ga.t) == (64, 4, 0.001)
    assert sweep_config({"n": 12}).ga.k == 400


def test_bundled_config_matches_defaults():
    import pathlib
    path = pathlib.Path(__file__).parent.parent / "configs" / "default.toml"
    cfg = sweep_config(load_config(path))
    assert cfg == SweepConfig()
