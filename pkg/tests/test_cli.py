"""CLI behaviour: JSON payloads, exit codes, reproducible output."""
from __future__ import annotations

import io
import json
import subprocess
import sys

import pytest

from flaghom.cli import FIELDS, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_subprocess_json():
    done = subprocess.run(
        [sys.executable, "-m", "flaghom", "homology", "--type", "A", "--rank", "1", "--theta", ""],
        check=True, capture_output=True, text=True,
    )
    payload = json.loads(done.stdout)
    assert list(payload) == list(FIELDS)
    assert payload["betti"] == [1, 1]
    assert payload["mode"] == "exact"


def test_point_flag():
    code, out = run("homology", "--type", "A", "--rank", "2", "--theta", "1,2")
    assert code == 0
    assert json.loads(out)["betti"] == [1]


def test_f4_maximal():
    code, out = run("homology", "--type", "F4", "--theta", "", "--no-timing")
    payload = json.loads(out)
    assert code == 0
    assert payload["poincare"][0] == 1 and len(payload["poincare"]) == 25
    assert sum(payload["poincare"]) == 16
    assert payload["orientable"] is True and payload["dim"] == 24
    assert payload["elapsed_ms"] == 0


def test_theta_removed_convention():
    _, a = run("homology", "--type", "B", "--rank", "3", "--theta", "1,3", "--no-timing")
    _, b = run("homology", "--type", "B", "--rank", "3", "--theta-removed", "2", "--no-timing")
    assert a == b


def test_poincare_match_and_unsupported():
    code, out = run("poincare", "--type", "E", "--rank", "6", "--theta", "2,3,4,5,6")
    rec = json.loads(out)
    assert code == 0 and rec["match"] == "equal"
    assert rec["computed"] == rec["closed_form"] == [1] + [0] * 7 + [1] + [0] * 7 + [1]
    code, out = run("poincare", "--type", "D", "--rank", "4", "--theta", "1,3,4")
    rec = json.loads(out)
    assert code == 0 and rec["closed_form"] is None
    assert rec["computed"] == [1, 0, 0, 0, 2, 0, 0, 3]
    code, out = run("poincare", "--type", "A", "--rank", "3", "--theta", "1,2,3")
    assert json.loads(out)["match"] == "equal"


def test_orientability_all_theta():
    code, out = run("orientability", "--type", "F4", "--all-theta")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 16
    assert all(r["orientable_by_betti"] == r["orientable_by_sum"] for r in rows)


def test_csv_and_text():
    code, out = run("homology", "--type", "A", "--rank", "2", "--output", "csv", "--no-timing")
    lines = out.strip().splitlines()
    assert code == 0 and lines[0].split(",") == list(FIELDS)
    assert "1 0 0 1" in lines[1]
    code, out = run("homology", "--type", "A", "--rank", "2", "--output", "text")
    assert "poincare: t^3 + 1" in out


def test_verify_suite():
    code, out = run("verify", "smallgroup-oracles")
    assert code == 0 and "3/3 rows pass" in out


@pytest.mark.parametrize("argv,code", [
    (["homology", "--type", "G", "--rank", "2"], 1),
    (["homology", "--type", "A", "--rank", "0"], 1),
    (["homology", "--type", "A", "--rank", "3", "--theta", "1,7"], 1),
    (["homology", "--type", "A", "--rank", "2", "--threads", "0"], 1),
    (["nonsense"], 1),
    (["homology", "--type", "E", "--rank", "7"], 3),
    (["homology", "--type", "F4", "--max-order", "10"], 3),
])
def test_exit_codes(argv, code, capsys):
    try:
        got = main(argv, io.StringIO())
    except SystemExit as exc:  # argparse errors
        got = exc.code
    assert got == code
    assert capsys.readouterr().err


def test_cache_roundtrip(tmp_path):
    path = str(tmp_path / "b3.wgc")
    code, out = run("cache", "--type", "B", "--rank", "3", "--write", path)
    assert code == 0 and json.loads(out)["elements"] == 48
    code, out = run("cache", "--read", path)
    assert json.loads(out)["length_profile"] == [1, 3, 5, 7, 8, 8, 7, 5, 3, 1]
    code, a = run("homology", "--type", "B", "--rank", "3", "--cache", path, "--no-timing")
    _, b = run("homology", "--type", "B", "--rank", "3", "--no-timing")
    assert code == 0 and a == b


def test_bad_cache_file(tmp_path):
    p = tmp_path / "junk.wgc"
    p.write_bytes(b"not a cache at all, definitely")
    assert run("cache", "--read", str(p))[0] == 1


@pytest.mark.parametrize("threads", [1, 4, 8])
def test_threads_do_not_change_output(threads):
    argv = ["homology", "--type", "D", "--rank", "5", "--theta", "", "--no-timing"]
    base = run(*argv, "--threads", "1")[1]
    assert run(*argv, "--threads", str(threads))[1] == base
