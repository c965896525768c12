import io
import json
import subprocess
import sys

import numpy as np
import pytest

from fftsim.cli import main
from fftsim.fft2d import TRACE_HEADER, read_trace_csv
from fftsim.frame_io import CSV_COMPLEX, InputSpec, load_frame, load_vector, write_pgm


def test_fft2d_impulse_float(tmp_path, capsys):
    out = tmp_path / "spec.csv"
    rc = main(["fft2d", "--n", "8", "--mode", "float", "--signal", "impulse",
               "--output", str(out)])
    assert rc == 0
    assert np.array_equal(load_frame(InputSpec(out, CSV_COMPLEX)).data, np.ones((8, 8)))
    text = capsys.readouterr().out
    assert "cycles=48" in text and "frame_latency=48" in text


def test_fft2d_pgm_fixed(tmp_path, capsys):
    img = tmp_path / "in.pgm"
    rng = np.random.default_rng(3)
    write_pgm(img, rng.integers(0, 256, (8, 8)), 255)
    out = tmp_path / "mag.csv"
    rc = main(["fft2d", "--input", str(img), "--format", "pgm", "--output", str(out),
               "--layout", "magnitude"])
    assert rc == 0
    assert np.loadtxt(out, delimiter=",").shape == (8, 8)
    assert "overflow=0" in capsys.readouterr().out


def test_fft2d_n_mismatch(tmp_path, capsys):
    img = tmp_path / "in.pgm"
    write_pgm(img, np.zeros((8, 8)), 255)
    assert main(["fft2d", "--input", str(img), "--n", "4"]) == 2
    assert "ConfigurationError" in capsys.readouterr().err


def test_missing_input(tmp_path, capsys):
    rc = main(["fft2d", "--input", str(tmp_path / "absent.pgm")])
    assert rc != 0
    assert "no such file" in capsys.readouterr().err


def test_fft2d_requires_n_without_input(capsys):
    assert main(["fft2d"]) == 2


def test_fft1d_roundtrip(tmp_path):
    out = tmp_path / "y.csv"
    assert main(["fft1d", "--n", "8", "--mode", "float", "--signal", "constant",
                 "--output", str(out)]) == 0
    y = load_vector(out)
    assert y[0] == 2.0 and np.abs(y[1:]).max() < 1e-15


def test_verify_float_passes(capsys):
    assert main(["verify", "--n", "8", "--mode", "float", "--seed", "11", "--frames", "2"]) == 0
    assert "PASS" in capsys.readouterr().out


def test_verify_fixed_prints_snr(capsys):
    rc = main(["verify", "--n", "8", "--seed", "5", "--frames", "2"])
    text = capsys.readouterr().out
    assert "snr=" in text
    assert rc == 0


def test_verify_threshold_failure(capsys):
    rc = main(["verify", "--n", "8", "--seed", "5", "--frames", "1", "--snr-threshold", "200"])
    assert rc == 1
    assert "FAIL" in capsys.readouterr().out


def test_verify_bad_n(capsys):
    assert main(["verify", "--n", "6"]) == 2
    assert "power of two" in capsys.readouterr().err


def test_seed_env_fallback(monkeypatch, capsys):
    monkeypatch.setenv("FFTSIM_SEED", "7")
    main(["verify", "--n", "4", "--frames", "1"])
    a = capsys.readouterr().out
    main(["verify", "--n", "4", "--frames", "1", "--seed", "7"])
    assert capsys.readouterr().out == a


def test_trace_single_frame(tmp_path, capsys):
    out = tmp_path / "t.csv"
    assert main(["trace", "--n", "8", "--trace-out", str(out)]) == 0
    with open(out) as fp:
        rows = read_trace_csv(fp)
    assert sum(r["blk1_done"] for r in rows) == 8
    assert "blk1_done=8" in capsys.readouterr().out


def test_trace_two_frames_toggles(tmp_path, capsys):
    out = tmp_path / "t.csv"
    main(["trace", "--n", "4", "--frames", "2", "--trace-out", str(out)])
    assert "sel_toggles=2" in capsys.readouterr().out
    assert out.read_text().splitlines()[0] == ",".join(TRACE_HEADER)


def test_trace_n2_stage_bus(tmp_path):
    out = tmp_path / "t.csv"
    main(["trace", "--n", "2", "--trace-out", str(out)])
    with open(out) as fp:
        assert {r["blk1_sb"] for r in read_trace_csv(fp)} == {0}


def test_resources(tmp_path, capsys):
    js = tmp_path / "r.json"
    sweep = tmp_path / "s.csv"
    assert main(["resources", "--n", "8", "--output", str(js),
                 "--sweep", "8..64", "--sweep-out", str(sweep)]) == 0
    text = capsys.readouterr().out
    assert "alpha=1/3" in text
    payload = json.loads(js.read_text())
    bus = {(r["design"], r["scope"]): r["butterfly_units"] for r in payload["reports"]}
    assert bus[("proposed", "fft2d")] == 8 and bus[("traditional", "fft2d")] == 24
    lines = sweep.read_text().splitlines()[1:]
    assert [ln.split(",")[-1] for ln in lines] == ["1/3", "1/4", "1/5", "1/6"]


def test_resources_1024(capsys):
    assert main(["resources", "--n", "1024"]) == 0
    assert "alpha=1/10" in capsys.readouterr().out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "fftsim", "resources", "--n", "16"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "alpha=1/4" in proc.stdout
