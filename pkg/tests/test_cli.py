import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from scldpc.cli import main
from scldpc.codeconstruct import SCCodeSpec, SparseParityMatrix, assemble_sc
from scldpc.presets import PRESETS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_presets(capsys):
    code, out, _ = run(capsys, "presets")
    rows = {r["name"]: r for r in csv.DictReader(io.StringIO(out))}
    assert code == 0
    assert set(rows) == {"block-code-1", "sc-code-1", "sc-code-2", "sc-code-3"}
    r = rows["sc-code-3"]
    assert (r["kappa"], r["gamma"], r["z"], r["m"], r["L"]) == ("29", "6", "61", "2", "6")
    assert rows["sc-code-1"]["length"] == "8670"


def test_construct_triplets(tmp_path, capsys):
    out = tmp_path / "h.txt"
    code, _, _ = run(capsys, "construct", "--preset", "sc-code-1", "--out", str(out))
    assert code == 0
    assert SparseParityMatrix.read_triplets(out) == assemble_sc(PRESETS["sc-code-1"])


def test_construct_stdout(capsys):
    code, out, _ = run(capsys, "construct", "--preset", "block-code-1")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "51 289 867" and len(lines) == 868


def test_construct_json_and_protograph(tmp_path, capsys):
    p = tmp_path / "spec.json"
    assert run(capsys, "construct", "--preset", "sc-code-3", "--json", "--out", str(p))[0] == 0
    assert SCCodeSpec.load(p) == PRESETS["sc-code-3"]
    code, out, _ = run(capsys, "construct", "--spec", str(p), "--protograph")
    grid = np.loadtxt(io.StringIO(out), dtype=int)
    assert code == 0 and grid.shape == (6 * 8, 29 * 6)


def test_partition_example(tmp_path, capsys):
    grid = tmp_path / "pm.txt"
    code, out, _ = run(capsys, "partition", "--gamma", "4", "--kappa", "12", "--m", "1", "--out", str(grid))
    assert code == 0
    assert "t=2" in out.splitlines() and "tmin=2" in out.splitlines()
    assert np.loadtxt(grid, dtype=int).shape == (4, 12)


def test_partition_bruteforce(capsys):
    code, out, _ = run(capsys, "partition", "--gamma", "4", "--kappa", "7", "--m", "1", "--bruteforce")
    assert code == 0 and "t=2" in out


def test_partition_bad_gamma(capsys):
    code, _, err = run(capsys, "partition", "--gamma", "5", "--kappa", "7", "--m", "1")
    assert code == 1 and err.startswith("error:")


def test_analyze(tmp_path, capsys):
    out = tmp_path / "a.csv"
    code, _, _ = run(capsys, "analyze", "--preset", "block-code-1", "--out", str(out))
    rows = list(csv.DictReader(out.open()))
    assert code == 0 and rows == [{"name": "block-code-1", "z": "17", "cycles6": "4624", "as3": "4624"}]


def test_analyze_needs_input(capsys):
    assert run(capsys, "analyze")[0] == 1


def test_interleave_sc1(capsys):
    code, out, _ = run(capsys, "interleave", "--preset", "sc-code-1")
    lines = out.splitlines()
    assert code == 0 and "mu=450" in lines and lines[-1] == "pass"


def test_interleave_identity_fails(capsys):
    code, out, _ = run(capsys, "interleave", "--preset", "sc-code-1", "--interleaver", "none")
    assert code == 0 and out.splitlines()[-1] == "fail"


def test_interleave_block(tmp_path, capsys):
    p = tmp_path / "perm.txt"
    code, out, _ = run(capsys, "interleave", "--preset", "block-code-1", "--interleaver", "block", "--out", str(p))
    assert code == 0 and "mu=900" in out
    assert sorted(np.loadtxt(p, dtype=int).tolist()) == list(range(30 * 289))


def test_interleave_print_permutation(capsys):
    code, out, _ = run(capsys, "interleave", "--preset", "block-code-1", "--interleaver", "block",
                       "--sections", "2", "--print-permutation")
    assert code == 0 and len(out.splitlines()) == 2 + 578


def test_interleave_mismatch(capsys):
    assert run(capsys, "interleave", "--preset", "block-code-1", "--interleaver", "sc")[0] == 1


def test_simulate_config(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({
        "code": "sc-code-1",
        "channel": {"snr_abs_db": [4.5], "seed": 3},
        "interleaver": "sc",
        "frames": 3,
        "min_frame_errors": 100,
    }))
    out = tmp_path / "r.csv"
    code, _, err = run(capsys, "simulate", "--config", str(cfg), "--out", str(out))
    assert code == 0 and "frames=3" in err
    rows = list(csv.DictReader(out.open()))
    assert len(rows) == 1 and rows[0]["frames_sent"] == "3"


def test_simulate_threads_identical(tmp_path, capsys):
    base = ["simulate", "--preset", "block-code-1", "--snr", "4.0,4.5", "--frames", "3",
            "--interleaver", "block", "--seed", "5", "--quiet"]
    outs = []
    for t in ("1", "2"):
        p = tmp_path / f"t{t}.csv"
        assert run(capsys, *base, "--threads", t, "--out", str(p))[0] == 0
        outs.append(p.read_bytes())
    assert outs[0] == outs[1]


def test_simulate_overrides_stdout(capsys):
    code, out, err = run(capsys, "simulate", "--preset", "block-code-1", "--snr", "inf", "--frames", "1",
                         "--max-iters", "5", "--min-frame-errors", "1", "--uniform", "--quiet")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and err == "" and rows[0]["bit_errors"] == "0"


def test_simulate_needs_snr(capsys):
    assert run(capsys, "simulate", "--preset", "sc-code-1")[0] == 1


def test_simulate_missing_config(tmp_path, capsys):
    code, _, err = run(capsys, "simulate", "--config", str(tmp_path / "absent.json"))
    assert code == 2 and err.startswith("error:")


def test_simulate_bad_threads(capsys):
    assert run(capsys, "simulate", "--preset", "sc-code-1", "--snr", "5", "--threads", "0")[0] == 1


def test_unwritable_output(tmp_path, capsys):
    code, _, _ = run(capsys, "analyze", "--preset", "block-code-1", "--out", str(tmp_path / "no" / "x.csv"))
    assert code == 2


def test_bad_spec_file(tmp_path, capsys):
    p = tmp_path / "s.json"
    p.write_text(json.dumps(dict(PRESETS["block-code-1"].to_dict(), z=0)))
    assert run(capsys, "construct", "--spec", str(p))[0] == 1


def test_unknown_flag():
    with pytest.raises(SystemExit) as exc:
        main(["presets", "--bogus"])
    assert exc.value.code != 0


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "scldpc.cli", "presets"], capture_output=True, text=True)
    assert res.returncode == 0 and "sc-code-2" in res.stdout
    res = subprocess.run([sys.executable, "-m", "scldpc.cli", "nope"], capture_output=True, text=True)
    assert res.returncode != 0
