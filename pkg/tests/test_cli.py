import json
import os
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from discroot import cli
from discroot.series import IDENTITIES, TruncatedSeries

GOLDEN = Path(__file__).parent / "golden"
UPDATE = bool(os.environ.get("DISCROOT_UPDATE_GOLDEN"))


def run(capsys, *argv):
    try:
        code = cli.main(list(argv))
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


CASES = [
    ("solve_cubic_example.json", ["solve-cubic", "--p", "-15", "--q", "-4"], 0),
    ("solve_cubic_trig.txt", ["solve-cubic", "--p", "-15", "--q", "-4", "--method", "trig", "--format", "text"], 0),
    ("solve_cubic_general.json", ["solve-cubic", "--c1", "3", "--c2", "-12", "--c3", "-4", "--method", "trinomial"], 0),
    ("solve_cubic_refused.json", ["solve-cubic", "--p", "1", "--q", "1", "--method", "discriminant"], 2),
    ("expand_char0_both.txt", ["expand-generic", "--order", "2", "--engine", "both"], 0),
    ("expand_char2_general.json", ["expand-generic", "--char", "2", "--form", "general", "--order", "3", "--format", "json"], 0),
    ("expand_char3_refused.json", ["expand-generic", "--char", "3", "--format", "json"], 2),
    ("factor_quartic_order1.json", ["factor-quartic", "--order", "1", "--format", "json"], 0),
    ("identities_power_law.json", ["verify-identities", "--identity", "power_law", "--param", "n=4", "--param", "r=-2", "--order", "30"], 0),
    ("census_areas.json", ["census", "--samples", "20000", "--seed", "3"], 0),
    ("census_trend.json", ["census", "--what", "trend"], 0),
    ("census_quartic.json", ["census", "--what", "quartic", "--samples", "500", "--seed", "2"], 0),
    ("quilt_naive_h10_g4.csv", ["census", "--what", "quilt", "--grid", "4"], 0),
    ("curves_naive_h10_g4.csv", ["census", "--what", "curves", "--grid", "4"], 0),
]


@pytest.mark.parametrize("name,argv,code", CASES, ids=[c[0] for c in CASES])
def test_golden(capsys, name, argv, code):
    got, out, _ = run(capsys, *argv)
    assert got == code
    path = GOLDEN / name
    if UPDATE:
        path.write_text(out)
    assert out == path.read_text()
    if name.endswith(".json"):
        payload = json.loads(out)
        jsonschema.validate(payload, cli.load_schema(payload["command"]))


def test_output_is_byte_identical_across_runs(capsys):
    argv = ["census", "--samples", "30000", "--seed", "9", "--mode", "max"]
    assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


@pytest.mark.parametrize(
    "argv",
    [
        ["solve-cubic"],
        ["solve-cubic", "--p", "1"],
        ["solve-cubic", "--p", "1", "--q", "1", "--c1", "2"],
        ["solve-cubic", "--p", "x", "--q", "1"],
        ["expand-generic", "--order", "0"],
        ["expand-generic", "--char", "5"],
        ["verify-identities"],
        ["verify-identities", "--identity", "nope"],
        ["verify-identities", "--identity", "power_law", "--param", "n=x"],
        ["verify-identities", "--identity", "char3_cubic", "--ring", "GF4"],
        ["census", "--what", "quilt", "--grid", "1"],
        ["census", "--h", "-1"],
        ["frobnicate"],
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert "error" in err


def test_verification_failure_exits_3(capsys, monkeypatch):
    def broken(order, ring, **_):
        z = TruncatedSeries.variable(order, ring)
        return z, z * 2

    monkeypatch.setitem(IDENTITIES, "broken", broken)
    code, out, _ = run(capsys, "verify-identities", "--identity", "broken", "--order", "5")
    assert code == 3
    payload = json.loads(out)
    assert payload["all_hold"] is False
    assert payload["results"][0]["first_mismatch"] == 1


def test_verify_all_includes_char2(capsys):
    code, out, _ = run(capsys, "verify-identities", "--all", "--order", "20")
    assert code == 0
    payload = json.loads(out)
    jsonschema.validate(payload, cli.load_schema("verify-identities"))
    names = [r["name"] for r in payload["results"]]
    assert names[-1] == "char2_congruence"
    assert len(names) == 30


def test_floats_have_17_significant_digits():
    assert cli.to_json(0.1) == "0.10000000000000001"
    assert cli.to_json(float("inf")) == '"inf"'
    assert cli.to_json({"a": [1, 2.5, None, True]}) == '{\n  "a": [\n    1,\n    2.5,\n    null,\n    true\n  ]\n}'


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "discroot", "expand-generic", "--char", "3"], capture_output=True, text=True)
    assert res.returncode == 2
    assert "no root" in res.stdout
