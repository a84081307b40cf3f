import csv
import io

import pytest

from staircase_fec import cli, sim
from staircase_fec.sim import CSV_COLUMNS, ConfigError, InvariantViolation, SimConfig, run, run_point, sweep_delta, sweep_snr, write_csv

SMALL = dict(code="bch256", blocks_per_stream=4, streams_per_round=2, max_streams=2, min_errors=10**9)


def test_csv_header():
    text = write_csv([])
    assert text.strip() == "mode,code,modulation,snr_db,delta,bits,bit_errors,ber,windows,bdd_calls,eta,seed"
    assert len(CSV_COLUMNS) == 12


def test_rows_are_reproducible():
    cfg = SimConfig(modes=("standard", "sabm"), snr_db=(7.0,), **SMALL)
    assert run(cfg) == run(cfg)


def test_worker_count_does_not_change_results():
    cfg = SimConfig(modes=("sabm",), snr_db=(7.0,), **SMALL)
    assert run(cfg) == run(cfg.replace(workers=2))


def test_noise_is_paired_across_modes_and_deltas():
    cfg = SimConfig(**SMALL)
    seen = set()
    for mode, delta in [("standard", 10.0), ("sabm", 6.0), ("sabm", 16.0), ("genie_mcfree", 10.0)]:
        pr = run_point(cfg, 7.0, delta, mode)
        seen.add(tuple(s.extra["channel_errors"] for s in pr.streams))
    assert len(seen) == 1
    other_seed = run_point(cfg.replace(seed=2), 7.0, 10.0, "standard")
    assert tuple(s.extra["channel_errors"] for s in other_seed.streams) not in seen


def test_standard_eta_zero_and_counts():
    rows = run(SimConfig(modes=("standard",), snr_db=(7.0,), **SMALL))
    (row,) = rows
    assert row["eta"] == "0.000000"
    assert row["windows"] == 8
    assert row["bdd_calls"] == 8 * 7168
    assert row["bits"] == 8 * 128 * 111
    assert row["delta"] == ""


def test_stop_rule_by_errors():
    cfg = SimConfig(snr_db=(6.9,), code="bch256", blocks_per_stream=3, streams_per_round=1, min_errors=1)
    pr = run_point(cfg, 6.9, None, "standard")
    assert len(pr.streams) == 1 and pr.counter.bit_errors >= 1


def test_eight_pam_with_padding():
    # 128*128 bits is not a multiple of 3
    cfg = SimConfig(modulation=8, snr_db=(30.0,), **SMALL)
    (row,) = run(cfg)
    assert row["bit_errors"] == 0


def test_product_code_rows():
    cfg = SimConfig(**{**SMALL, "code": "bch128"}, scheme="pc", modes=("standard", "sabm"), snr_db=(6.2,))
    rows = run(cfg)
    assert [r["mode"] for r in rows] == ["standard", "sabm"]
    assert rows[0]["bdd_calls"] == 2 * 4 * 2 * 128 * 7


@pytest.mark.parametrize("kw", [
    dict(modes=()), dict(snr_db=()), dict(delta=()), dict(scheme="ldpc"), dict(modulation=3),
    dict(modes=("magic",)), dict(code="bch999"), dict(scheme="pc", modes=("genie_mcfree",)),
    dict(L=1), dict(delta=(0.0,)),
])
def test_bad_config(kw):
    with pytest.raises(ConfigError):
        SimConfig(**kw)


def test_sweeps_reject_empty_grids():
    with pytest.raises(ConfigError):
        sweep_delta(SimConfig(), [])
    with pytest.raises(ConfigError):
        sweep_snr(SimConfig(), [])


def test_custom_code_string():
    spec = sim.resolve_code("5,21,2,0,1")
    assert (spec.n_c, spec.k_c) == (32, 21)


def test_invariant_violation_stops_run(monkeypatch):
    real = sim.simulate_stream

    def broken(*args):
        res = real(*args)
        res.extra["violations"] = 1
        return res

    monkeypatch.setattr(sim, "simulate_stream", broken)
    with pytest.raises(InvariantViolation):
        run(SimConfig(**SMALL))
    assert cli.main(["run", "--code", "toy32", "--max-streams", "1", "--blocks-per-stream", "2"]) == 3


def test_cli_run_and_config_file(tmp_path, capsys):
    conf = tmp_path / "sim.conf"
    conf.write_text("# toy run\ncode = toy32\nmodes = standard, sabm\nsnr_db = 6:7:0.5\nmax_streams = 1\nblocks_per_stream = 3\n")
    out = tmp_path / "out.csv"
    assert cli.main(["run", "--config", str(conf), "--seed", "5", "-o", str(out)]) == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert len(rows) == 6
    assert {r["seed"] for r in rows} == {"5"}
    assert cli.main(["sweep-delta", "4,8", "--code", "toy32", "--max-streams", "1", "--blocks-per-stream", "2"]) == 0
    text = capsys.readouterr().out
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    assert cli.main(["run", "--modes", ""]) == 2


def test_cli_selftest():
    assert cli.main(["selftest"]) == 0


def test_parse_grid():
    assert cli.parse_grid("6.9:7.1:0.1") == (6.9, 7.0, 7.1)
    assert cli.parse_grid("1, 2") == (1.0, 2.0)
    with pytest.raises(ValueError):
        cli.parse_grid("1:2:0")


def test_noiseless_smoke():
    cfg = SimConfig(modes=("standard", "sabm"), snr_db=(40.0,), **SMALL)
    for row in run(cfg):
        assert row["bit_errors"] == 0 and row["eta"] == "0.000000"


def test_standard_ber_falls_with_snr():
    cfg = SimConfig(code="bch256", blocks_per_stream=20, max_streams=2, min_errors=10**9)
    bers = [float(r["ber"]) for r in sweep_snr(cfg, [6.9, 7.1, 7.4])]
    assert bers[0] >= bers[1] >= bers[2]


def test_unwritable_output(tmp_path):
    target = tmp_path / "missing" / "out.csv"
    assert cli.main(["run", "--code", "toy32", "--max-streams", "1", "--blocks-per-stream", "2", "-o", str(target)]) == 1
