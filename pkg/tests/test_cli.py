import json
import math
import subprocess
import sys

import numpy as np
import pytest

from lagfrac import cli
from lagfrac.specfun import phi_hermite_type


def _run(argv, tmp_path, capsys=None):
    code = cli.run([*argv, "--out-dir", str(tmp_path)])
    text = capsys.readouterr().out if capsys is not None else ""
    return code, text


def test_admissible_prints_predicate(tmp_path, capsys):
    code, text = _run(["admissible", "--system", "convolution", "--p", "2", "--q", "2", "--sigma", "0.5",
                       "--alpha", "0.5"], tmp_path, capsys)
    assert code == 0 and text.splitlines()[0] == "true"
    code, text = _run(["admissible", "--system", "convolution", "--p", "3", "--q", "inf", "--sigma", "0.5",
                       "--alpha", "0.5"], tmp_path, capsys)
    assert code == 0 and text.splitlines()[0] == "false" and "violated" in text
    code, text = _run(["admissible", "--system", "oscillator", "--n", "2", "--p", "1", "--q", "2",
                       "--sigma", "0.5"], tmp_path, capsys)
    assert code == 0 and text.startswith("false")


def test_apply_frac_ground_state(tmp_path, capsys):
    code, text = _run(["apply-frac", "--system", "hermite", "--alpha", "0", "--sigma", "1", "--f", "phi:0",
                       "--x", "1"], tmp_path, capsys)
    assert code == 0
    assert float(text.splitlines()[0]) == pytest.approx(phi_hermite_type(0, 0.0, 1.0) / 2, rel=1e-8)
    rows = (tmp_path / "apply-frac.csv").read_text().splitlines()
    assert rows[0] == "x,value" and len(rows) == 2
    manifest = json.loads((tmp_path / "apply-frac.manifest.json").read_text())
    assert manifest["exit_status"] == 0 and manifest["config"]["sigma"] == 1.0
    assert set(manifest["versions"]) >= {"lagfrac", "numpy", "scipy", "backend"}


def test_apply_frac_spectral_matches(tmp_path, capsys):
    base = ["apply-frac", "--system", "convolution", "--alpha", "0.5", "--sigma", "0.5", "--f", "gauss:2:0.4",
            "--x", "0.5,1,2"]
    vals = []
    for extra in ([], ["--method", "potential"], ["--method", "spectral", "--M", "160"]):
        _, text = _run(base + extra, tmp_path, capsys)
        vals.append(np.array([float(v) for v in text.splitlines()[:3]]))
    assert np.allclose(vals[0], vals[1], rtol=1e-9)
    assert np.allclose(vals[0], vals[2], rtol=1e-9)


def test_precondition_exit_writes_nothing(tmp_path, capsys):
    code, _ = _run(["certify-mathk", "--alpha", "0.5", "--sigma", "1.6"], tmp_path, capsys)
    assert code == 2
    assert list(tmp_path.iterdir()) == []
    assert _run(["apply-frac", "--f", "bogus:1"], tmp_path)[0] == 2
    assert _run(["apply-frac", "--x", "0,1"], tmp_path)[0] == 2
    assert _run(["oscillator", "--p", "1", "--q", "2", "--sigma", "0.5"], tmp_path)[0] == 2
    assert _run(["certify-heat-bound", "--grid", "hexagonal:1"], tmp_path)[0] == 2
    assert list(tmp_path.iterdir()) == []


def test_numerical_failure_exit(tmp_path):
    data = tmp_path / "f.csv"
    # finite samples whose spline and integrals overflow
    data.write_text("x,value\n0.1,1e308\n0.5,1.7e308\n1.0,1.7e308\n2.0,1e308\n3.0,0\n")
    out = tmp_path / "out"
    code = cli.run(["apply-frac", "--f", f"csv:{data}", "--x", "1", "--out-dir", str(out)])
    assert code == 3 and not out.exists()
    data.write_text("x,value\n0.1,1\n0.5,nan\n1.0,2\n2.0,1\n3.0,0\n")
    assert cli.run(["apply-frac", "--f", f"csv:{data}", "--x", "1", "--out-dir", str(out)]) == 2


def test_failed_certificate_exit(tmp_path, capsys):
    code, text = _run(["certify-overline", "--cases", "0.5:0.7", "--x-n", "4", "--ceiling", "0.01"],
                      tmp_path, capsys)
    assert code == 4 and "verdict: fail" in text
    manifest = json.loads((tmp_path / "certify-overline.manifest.json").read_text())
    assert manifest["exit_status"] == 4
    assert (tmp_path / "certify-overline.csv").read_text().rstrip().endswith("false")


def test_config_precedence_and_env(tmp_path, monkeypatch, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"sigma": 0.5, "x": "2", "f": "phi:1", "output": "fromjson"}))
    out = tmp_path / "env"
    monkeypatch.setenv(cli.OUTPUT_ENV, str(out))
    code = cli.run(["apply-frac", "--config", str(cfg), "--sigma", "1"])
    assert code == 0
    manifest = json.loads((out / "fromjson.manifest.json").read_text())
    assert manifest["config"]["sigma"] == 1.0  # flag wins
    assert manifest["config"]["x"] == "2" and manifest["config"]["f"] == "phi:1"  # config fills the rest
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"no_such_key": 1}))
    assert cli.run(["apply-frac", "--config", str(bad)]) == 2
    assert cli.run(["apply-frac", "--config", str(tmp_path / "missing.json")]) == 2


def test_lemma_csv_bytes_deterministic(tmp_path):
    for sub, threads in (("one", "1"), ("two", "2")):
        assert cli.run(["certify-lemmas", "--lemma", "ns,logeq,gamma", "--threads", threads,
                        "--out-dir", str(tmp_path / sub)]) == 0
    names = sorted(p.name for p in (tmp_path / "one").glob("*.csv"))
    assert names == sorted(p.name for p in (tmp_path / "two").glob("*.csv")) and len(names) == 4
    for n in names:
        assert (tmp_path / "one" / n).read_bytes() == (tmp_path / "two" / n).read_bytes()
    line = (tmp_path / "one" / names[0]).read_text().splitlines()[1]
    assert "e-" in line or "e+" in line  # %.17e floats


def test_certify_lemmas_intlambda_seeded(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    assert cli.run(["certify-lemmas", "--lemma", "intlambda", "--count", "10", "--seed", "5",
                    "--out-dir", str(a)]) == 0
    assert cli.run(["certify-lemmas", "--lemma", "intlambda", "--count", "10", "--seed", "5",
                    "--out-dir", str(b)]) == 0
    for p in a.glob("*.csv"):
        assert p.read_bytes() == (b / p.name).read_bytes()
    assert cli.run(["certify-lemmas", "--lemma", "nope", "--out-dir", str(a)]) == 2


def test_oscillator_ground(tmp_path, capsys):
    code, text = _run(["oscillator", "--n", "2", "--sigma", "1", "--p", "2", "--q", "2", "--family", "ground"],
                      tmp_path, capsys)
    assert code == 0
    ratio = float(text.split("ratio=")[1].split()[0])
    assert ratio == pytest.approx(0.5, rel=1e-8)


def test_certify_mathk_small(tmp_path):
    assert cli.run(["certify-mathk", "--sigma", "0.3", "--jmax", "4", "--grid", "geometric:0.2:5:6",
                    "--out-dir", str(tmp_path)]) == 0
    lines = (tmp_path / "certify-mathk.csv").read_text().splitlines()
    assert lines[0].startswith("certificate,") and len(lines) == 6


def test_parsers():
    g = cli.parse_grid("geometric:0.1:10:5")
    assert g.n == 5
    assert np.allclose(cli.parse_grid("explicit:1,2,3").nodes(), [1, 2, 3])
    assert cli.parse_pairs("2:inf,1.5:3") == [(2.0, math.inf), (1.5, 3.0)]
    assert np.allclose(cli.parse_points("0.5,1"), [0.5, 1.0])
    with pytest.raises(cli.ConfigError):
        cli.parse_grid("geometric:1:2")
    with pytest.raises(cli.ConfigError):
        cli.parse_function("gauss:x", "hermite", 0.5)


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "lagfrac.cli", "admissible", "--out-dir", str(tmp_path)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("true")
