import json
import subprocess
import sys

import pytest

from hyperint.cli import (
    EXIT_BUDGET,
    EXIT_DOMAIN,
    EXIT_INAPPLICABLE,
    EXIT_OK,
    EXIT_USAGE,
    execute,
    normalize_argv,
    parse_int,
)
from hyperint.intarith import clear_factor_cache
from hyperint.solvers import SolutionSet


def test_parse_int():
    assert parse_int("-2^80") == -(2**80)
    assert parse_int("+17") == 17
    with pytest.raises(Exception):
        parse_int("2**3")


def test_normalize_argv():
    assert normalize_argv(["family2", "1", "-2^80", "1", "--json"]) == [
        "family2", "--c=1", "--a=-2^80", "--b=1", "--json",
    ]
    assert normalize_argv(["family1", "--a", "-3", "--b", "2", "--k", "1"]) == [
        "family1", "--a=-3", "--b=2", "--k=1",
    ]


def test_family1_text_output():
    code, out, err = execute(["family1", "--a", "1", "--b", "2", "--k", "41", "--verify"])
    assert code == EXIT_OK and err == ""
    assert "points (7):" in out and "(-51, 420)" in out
    assert "oracle: agree on [-6724, 6724]" in out


def test_json_roundtrip():
    code, out, _ = execute(["family2", "1", "-2^80", "1", "--json"])
    assert code == EXIT_OK
    data = json.loads(out)
    back = SolutionSet.from_dict(data)
    assert [(p.x, p.y) for p in back.points] == [(-(2**40), 1), (0, 1), (2**40, 1)]
    assert data["points"][0]["x"] == str(-(2**40))
    assert "elapsed_ms" not in data["meta"]


def test_json_output_is_deterministic():
    argv = ["family1", "3", "-2", "9", "--json"]
    assert execute(argv) == execute(argv)


def test_timing_flag():
    code, out, _ = execute(["sextic", "7", "--json", "--timing"])
    assert code == EXIT_OK and "elapsed_ms" in json.loads(out)["meta"]


def test_verify_json_section():
    code, out, _ = execute(["family3", "6", "13", "2", "--json", "--verify"])
    data = json.loads(out)
    assert code == EXIT_OK and data["oracle"]["agree"] is True


@pytest.mark.parametrize(
    "argv,code",
    [
        (["family1", "2", "2", "1"], EXIT_DOMAIN),
        (["sextic", "0"], EXIT_DOMAIN),
        (["family1", "1", "2"], EXIT_USAGE),
        (["family1", "1", "x", "3"], EXIT_USAGE),
        (["nosuch"], EXIT_USAGE),
        ([], EXIT_USAGE),
        (["quartic", "--coeffs", "1,2,3"], EXIT_USAGE),
        (["quartic", "--coeffs", "225,0,0,49"], EXIT_INAPPLICABLE),
        (["oracle", "--coeffs", "1,0,0", "--lo", "5", "--hi", "1"], EXIT_DOMAIN),
    ],
)
def test_exit_codes(argv, code):
    got, out, err = execute(argv)
    assert got == code
    if code != EXIT_OK:
        assert err


def test_budget_exhaustion_exit_code():
    clear_factor_cache()
    p, q = 2**89 - 1, 2**107 - 1
    code, _, err = execute(["family2", "1", str(p * q * 1000000007), "1", "--budget", "0.01"])
    assert code == EXIT_BUDGET and "budget" in err


def test_oracle_command():
    code, out, _ = execute(["oracle", "--coeffs", "1,0,-5,0,4", "--lo", "-3", "--hi", "3", "--json"])
    pts = [(int(p["x"]), int(p["y"])) for p in json.loads(out)["points"]]
    assert code == EXIT_OK
    assert pts == [(-2, 0), (-1, 0), (0, 2), (1, 0), (2, 0)]


def test_batch_empty_file(tmp_path):
    path = tmp_path / "empty.txt"
    path.write_text("# nothing here\n\n")
    code, out, _ = execute(["batch", str(path)])
    assert code == EXIT_OK and out.startswith("0 instances")


def test_batch_one_bad_line(tmp_path):
    path = tmp_path / "jobs.txt"
    path.write_text("family1 1 2 41\nfamily1 2 2 1   # degenerate\nsextic 3\n")
    code, out, _ = execute(["batch", str(path)])
    assert code == EXIT_USAGE
    assert out.index("[line 1]") < out.index("[line 2]") < out.index("[line 3]")
    assert "3 instances: 2 solved, 1 errored (1 domain error)" in out


def test_batch_json_and_jobs(tmp_path):
    path = tmp_path / "sweep.txt"
    path.write_text("".join(f"family2 1 -2^{ell} 1\n" for ell in range(20, 31)))
    code, out, _ = execute(["batch", str(path), "--json", "--jobs", "2"])
    assert code == EXIT_OK
    lines = [json.loads(line) for line in out.splitlines()]
    assert [entry["line"] for entry in lines[:-1]] == list(range(1, 12))
    for ell, entry in zip(range(20, 31), lines):
        assert entry["status"] == "solved"
        for p in entry["result"]["points"]:
            x, y = int(p["x"]), int(p["y"])
            assert y * y == x**4 - 2**ell * x**2 + 1
    assert lines[-1]["summary"]["solved"] == 11


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hyperint", "family3", "12", "-30", "-24"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert "(-2, 2)" in proc.stdout and "(2, 2)" in proc.stdout
