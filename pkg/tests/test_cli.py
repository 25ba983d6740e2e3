import json

import numpy as np
import pytest

from ccpt.cli import (EXIT_NUMERIC, EXIT_OK, EXIT_PARSE, EXIT_USAGE,
                      band_filter, main, read_signal_csv, write_signal_csv)
from ccpt.signals import make_x1, make_x2, synthetic_ecg, tone
from ccpt.transform import analyze, coefficients_to_dict, occpt_analysis, synthesize

from oracles import brute_dft


def _write(tmp_path, name, samples):
    path = tmp_path / name
    write_signal_csv(path, samples)
    return str(path)


def test_csv_roundtrip(tmp_path):
    x = np.random.default_rng(0).standard_normal(16)
    path = _write(tmp_path, "x.csv", x)
    np.testing.assert_allclose(read_signal_csv(path), x, atol=1e-11)


def test_csv_parse_error_reports_line(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("value\n1.0\nnot-a-number\n2.0\n")
    with pytest.raises(Exception) as exc_info:
        read_signal_csv(path)
    assert "3" in str(exc_info.value)
    assert main(["transform", "--input", str(path)]) == EXIT_PARSE


def test_transform_wrapper_matches_library(tmp_path):
    from ccpt.foccpt import foccpt

    # power-of-two input: the wrapper auto-selects the fast path
    x = np.arange(8.0)
    path = _write(tmp_path, "ramp.csv", x)
    out = tmp_path / "coeffs.json"
    assert main(["transform", "--input", path, "--family", "occpt",
                 "--out", str(out)]) == EXIT_OK
    payload = json.loads(out.read_text())
    expected = coefficients_to_dict(foccpt(read_signal_csv(path))[0])
    assert payload == json.loads(json.dumps(expected, sort_keys=True))

    # non-power-of-two input: the wrapper uses the direct transform
    x = np.arange(12.0)
    path = _write(tmp_path, "ramp12.csv", x)
    out = tmp_path / "coeffs12.json"
    assert main(["transform", "--input", path, "--family", "occpt",
                 "--out", str(out)]) == EXIT_OK
    payload = json.loads(out.read_text())
    expected = coefficients_to_dict(occpt_analysis(read_signal_csv(path)))
    assert payload == json.loads(json.dumps(expected, sort_keys=True))


def test_transform_all_families(tmp_path):
    x = np.random.default_rng(1).standard_normal(54)
    path = _write(tmp_path, "x.csv", x)
    for family in ("ccpt1", "ccpt2", "occpt", "rpt", "dft-npm"):
        out = tmp_path / f"{family}.json"
        assert main(["transform", "--input", path, "--family", family,
                     "--out", str(out)]) == EXIT_OK
        payload = json.loads(out.read_text())
        assert len(payload["flat"]) == 54


def test_periods_fixture_x1(tmp_path):
    path = _write(tmp_path, "x1.csv", make_x1().samples)
    out = tmp_path / "report.json"
    csv_out = tmp_path / "strengths.csv"
    assert main(["periods", "--input", path, "--family", "occpt",
                 "--out", str(out), "--strengths-csv", str(csv_out)]) == EXIT_OK
    payload = json.loads(out.read_text())
    assert payload["estimated_period"] == 18
    assert payload["significant"] == [3, 9, 18]
    rows = csv_out.read_text().strip().splitlines()
    assert rows[0] == "period,strength"
    assert len(rows) == 9  # 8 divisors of 54


def test_periods_fixture_x2_matrix_vs_dictionary(tmp_path):
    path = _write(tmp_path, "x2.csv", make_x2().samples)
    out = tmp_path / "m.json"
    assert main(["periods", "--input", path, "--out", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["estimated_period"] == 54  # 40 is not a divisor
    out2 = tmp_path / "d.json"
    assert main(["periods", "--input", path, "--method", "dictionary",
                 "--pmax", "50", "--penalty", "p2", "--out", str(out2)]) == EXIT_OK
    payload = json.loads(out2.read_text())
    assert payload["estimated_period"] == 40
    assert payload["method"] == "dictionary"


def test_periods_constant_input(tmp_path):
    path = _write(tmp_path, "c.csv", np.ones(12))
    out = tmp_path / "r.json"
    assert main(["periods", "--input", path, "--out", str(out)]) == EXIT_OK
    assert json.loads(out.read_text())["estimated_period"] == 1


def test_filter_band_full_band_roundtrip(tmp_path):
    x = synthetic_ecg()
    path = _write(tmp_path, "ecg.csv", x.samples)
    out = tmp_path / "flt.csv"
    assert main(["filter-band", "--input", path, "--fs", "62.5",
                 "--band", "0:31.25", "--out", str(out)]) == EXIT_OK
    np.testing.assert_allclose(read_signal_csv(out), x.samples, atol=1e-9)


def test_filter_band_selects_single_tone(tmp_path):
    fs = 54.0
    lo_tone = tone(1.0, 3.0, fs, 54)          # subspace (18, 1)
    hi_tone = tone(0.7, 12.0, fs, 54, 0.4)    # subspace (9, 2)
    path = _write(tmp_path, "two.csv", lo_tone + hi_tone)
    out = tmp_path / "one.csv"
    assert main(["filter-band", "--input", path, "--fs", "54",
                 "--band", "10:14", "--out", str(out)]) == EXIT_OK
    np.testing.assert_allclose(read_signal_csv(out), hi_tone, atol=1e-9)


def test_filter_band_equals_dft_filter():
    x = synthetic_ecg()
    fs = x.sample_rate
    filtered = synthesize(band_filter(occpt_analysis(x.samples), fs, 8.0, 20.0))
    N = len(x)
    X = brute_dft(x.samples)
    keep = np.zeros(N)
    for k in range(N):
        f = min(k, N - k) / N * fs
        keep[k] = 1.0 if 8.0 <= f <= 20.0 else 0.0
    y = np.real(np.array([np.sum(keep * X * np.exp(2j * np.pi * k * np.arange(N) / N))
                          for k in range(N)])) / N
    np.testing.assert_allclose(filtered, y, atol=1e-8)


def test_filter_band_rejects_bad_bands(tmp_path):
    path = _write(tmp_path, "x.csv", np.ones(8))
    assert main(["filter-band", "--input", path, "--fs", "10",
                 "--band", "2:9", "--out", str(tmp_path / "o.csv")]) == EXIT_USAGE
    assert main(["filter-band", "--input", path,
                 "--band", "1:2", "--out", str(tmp_path / "o.csv")]) == EXIT_USAGE


def test_benchmark_report(tmp_path):
    out = tmp_path / "bench.json"
    assert main(["benchmark", "--sizes", "1,7,8", "--out", str(out)]) == EXIT_OK
    payload = json.loads(out.read_text())["benchmark"]
    by_n = {e["N"]: e for e in payload}
    assert by_n[8]["measured"] == {"mults": 17, "adds": 25}
    assert by_n[8]["measured_equals_predicted"] is True
    table7 = {r["transform"]: r for r in by_n[7]["table"]}
    assert table7["dft-npm"]["mults"] == 196
    assert table7["occpt"]["mults"] == 98
    assert "measured" not in by_n[7]
    assert all(r["mults"] == 0 for r in by_n[1]["table"])


def test_fixture_command(tmp_path):
    out = tmp_path / "x1.csv"
    assert main(["fixture", "--name", "x1", "--out", str(out)]) == EXIT_OK
    np.testing.assert_allclose(read_signal_csv(out), make_x1().samples, atol=1e-11)


def test_cli_determinism(tmp_path):
    path = _write(tmp_path, "x.csv", make_x1().samples)
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    for out in (out1, out2):
        assert main(["periods", "--input", path, "--out", str(out)]) == EXIT_OK
    assert out1.read_bytes() == out2.read_bytes()


def test_missing_input_and_bad_args(tmp_path):
    assert main(["transform", "--input", str(tmp_path / "missing.csv")]) == EXIT_PARSE
    with pytest.raises(SystemExit) as exc_info:
        main(["transform", "--input", "x.csv", "--family", "walsh"])
    assert exc_info.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as exc_info:
        main(["no-such-command"])
    assert exc_info.value.code == EXIT_USAGE


def test_benchmark_invalid_sizes():
    assert main(["benchmark", "--sizes", "0,4"]) == EXIT_USAGE
