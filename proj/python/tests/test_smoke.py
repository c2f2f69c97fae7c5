import json
import os
from pathlib import Path

import pytest

import tamlab

FIXTURES = Path(os.environ.get("TAMLAB_FIXTURES", Path(__file__).resolve().parents[2] / "fixtures"))


def load(name):
    return tamlab.System.load(str(FIXTURES / name))


def test_sierpinski_run_matches_fractal():
    system = load("sierpinski.tas")
    assert system.temperature == 2
    r = system.run((0, 0, 31, 31))
    assert not r["exhausted"]
    assert len(r["cells"]) == 32 * 32
    assert sorted(r["black"]) == sorted(tamlab.fractal_points((0, 0, 31, 31)))


def test_directed_verdicts():
    assert load("sierpinski.tas").check_directed((0, 0, 15, 15))["verdict"] == "Directed"
    v = load("two_choice.tas").check_directed((0, 0, 3, 3))
    assert v["verdict"] == "ConflictWitness"
    assert v["tile_a"] != v["tile_b"]


def test_pump_scan_on_row():
    r = load("row.tas").pump_scan(6)
    assert r["violation_count"] == 0
    assert r["paths_scanned"] > 0


def test_sdp_membership_and_fit():
    part = ((0, 0), (2, 0), (0, 3))
    assert tamlab.contains_sdp(part, (4, 6))
    assert not tamlab.contains_sdp(part, (1, 0))
    w = (0, 0, 9, 9)
    sample = tamlab.window_points([part], w)
    fit = tamlab.fit_union(sample, w, 1, 3)
    assert fit["parts"] is not None
    assert sorted(tamlab.window_points(fit["parts"], w)) == sorted(sample)


def test_sierpinski_has_no_small_fit():
    r = tamlab.mismatch_witness((0, 0, 15, 15), 1, 4)
    assert not r["fit_found"]
    assert r["exhaustive"]


def test_parse_error_is_raised():
    with pytest.raises(tamlab.ParseError):
        tamlab.System("temperature 1\nbogus\n")


def test_cli_json_report():
    code, out, _ = tamlab.run_cli(
        ["directed", "--tas", str(FIXTURES / "row.tas"), "--window", "0", "0", "4", "0"])
    assert code == 0
    report = json.loads(out)
    assert report["version"] == "tamlab-report/1"
    assert report["command"] == "directed"
