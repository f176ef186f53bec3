import json
import subprocess
import sys

import pytest

from symconvex.cli import build_parser, config_from_args, main


def test_flags_override_file(tmp_path):
    cfg_file = tmp_path / "c.ini"
    cfg_file.write_text("preset = split\nn = 3\nbase_point = 0.5\nsamples = 77\nseed = 9\n")
    args = build_parser().parse_args(
        ["verify", "--config", str(cfg_file), "--samples", "10", "--base-point", "0.8"])
    cfg = config_from_args(args)
    assert (cfg.preset, cfg.n, cfg.samples, cfg.seed, cfg.base_point) == ("split", 3, 10, 9, (0.8,))


def test_main_writes_json(tmp_path, capsys):
    out = tmp_path / "r.json"
    code = main(["verify", "--preset", "supq", "--n", "3", "--p", "2", "--q", "1",
                 "--base-point", "2,1", "--samples", "50", "--checks", "membership,vertices",
                 "--out", str(out)])
    assert code == 0
    d = json.loads(out.read_text())
    assert d["membership"]["inside_count"] == 50
    assert "membership    pass" in capsys.readouterr().out


def test_main_csv(tmp_path):
    out = tmp_path / "r.csv"
    assert main(["verify", "--samples", "20", "--checks", "membership", "--out", str(out),
                 "--format", "csv"]) == 0
    assert len(out.read_text().splitlines()) == 21
    assert (tmp_path / "r.model.json").exists()


def test_bad_input_exit_code(capsys):
    assert main(["verify", "--preset", "supq", "--n", "3", "--p", "3", "--q", "1"]) == 1
    assert main(["verify", "--checks", "nope"]) == 1
    assert "symconvex:" in capsys.readouterr().err


def test_argparse_rejects_preset():
    with pytest.raises(SystemExit):
        main(["verify", "--preset", "hyperbolic"])


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "symconvex", "verify", "--samples", "5",
                          "--checks", "membership"], capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    assert "membership" in res.stdout
