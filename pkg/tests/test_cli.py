import io
import json
import os
from pathlib import Path

import numpy as np
import pytest

from zerocap.cli import CsvTable, ParseError, main, parse_grid, parse_n_range

GOLDEN_DIR = Path(__file__).parent / "golden"

GOLDEN = {
    "curve_t_rayleigh_m5_10.csv": ["curve-t", "--dist", "rayleigh:snr_db=-5", "--dist", "rayleigh:snr_db=10",
                                   "--t-grid", "0:1:21"],
    "curve_t_nakagami5_0_5.csv": ["curve-t", "--dist", "nakagami:m=5,snr_db=0", "--dist",
                                  "nakagami:m=5,snr_db=5", "--t-grid", "0:1:21"],
    "snr_grid_rayleigh_t05.csv": ["snr-grid", "--family", "rayleigh", "--t", "0.5", "--snr1-grid=-10:10:5"],
    "bounds_rayleigh_0db.csv": ["bounds", "--dist", "rayleigh:snr_db=0", "--n-range", "2:10"],
    "bounds_nakagami5_0db.csv": ["bounds", "--dist", "nakagami:m=5,snr_db=0", "--n-range", "2:10"],
    "sc_nakagami2_10db.csv": ["sc", "--dist", "nakagami:m=2,snr_db=10", "--n-range", "2:10"],
}


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(GOLDEN))
def test_golden_byte_stable(name):
    code, text, _ = run(GOLDEN[name])
    assert code == 0
    path = GOLDEN_DIR / name
    if os.environ.get("ZEROCAP_REGEN_GOLDEN"):
        path.write_bytes(text.encode())
    assert path.read_bytes() == text.encode()


def test_csv_and_json_agree():
    argv = ["bounds", "--dist", "nakagami:m=5,snr_db=0", "--n-range", "2:4"]
    _, csv_text, _ = run(argv)
    _, json_text, _ = run(argv + ["--format", "json"])
    records = json.loads(json_text)
    lines = csv_text.strip().split("\n")
    header = lines[0].split(",")
    assert list(records[0]) == header
    for line, rec in zip(lines[1:], records):
        for key, cell in zip(header, line.split(",")):
            assert float(cell) == rec[key]


def test_curve_t_values():
    _, text, _ = run(["curve-t", "--dist", "rayleigh:snr_db=0", "--dist", "rayleigh:snr_db=0", "--t-grid", "1"])
    assert text == "t,capacity_bits\n1,1.25477202\n"


def test_short_columns():
    _, text, _ = run(["curve-t", "--dist", "rayleigh:snr_db=0", "--dist", "rayleigh:snr_db=0", "--t-grid", "0.5",
                      "--short-columns"])
    assert text.startswith("t,capac\n")


def test_sc_heterogeneous_record():
    code, text, _ = run(["sc", "--dist", "rayleigh:snr_db=10", "--dist", "nakagami:m=5,snr_db=10",
                         "--format", "json"])
    assert code == 0
    rec = json.loads(text)
    assert list(rec) == ["n", "p_star", "s_star", "rate"]
    assert rec["p_star"] == pytest.approx(0.575, abs=1e-3)


def test_output_file(tmp_path):
    target = tmp_path / "out.csv"
    code, text, _ = run(["sc", "--dist", "rayleigh:snr_db=0", "--n-range", "2:3", "-o", str(target)])
    assert code == 0 and text == ""
    assert target.read_bytes().startswith(b"n,capacity_bits\n2,")


def test_verify_pass_and_fail():
    code, text, _ = run(["verify", "--copula", "shifted_w:t=0.9", "--dist", "rayleigh:snr_db=0",
                         "--samples", "5000"])
    assert code == 0
    rep = json.loads(text)
    assert rep["passed"] and rep["at_claim"]["outage_count"] == 0
    code, text, err = run(["verify", "--copula", "shifted_w:t=0.9", "--dist", "rayleigh:snr_db=0",
                           "--samples", "5000", "--claim", "2.0"])
    assert code == 4 and not json.loads(text)["passed"]


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "--coupling", "rotation", "--n", "5", "--dist", "nakagami:m=5,snr_db=0", "--combiner", "sc"],
        ["verify", "--coupling", "hetero_sc", "--dist", "rayleigh:snr_db=10", "--dist", "nakagami:m=5,snr_db=10",
         "--combiner", "sc"],
        ["verify", "--copula", "arch_lower:n=3", "--dist", "rayleigh:snr_db=0"],
        ["verify", "--copula", "clayton:theta=-0.75", "--dist", "rayleigh:snr_db=0"],
    ],
)
def test_verify_couplings(argv):
    code, text, _ = run(argv + ["--samples", "5000"])
    assert code == 0 and json.loads(text)["passed"]


def test_bsym_report():
    code, text, _ = run(["bsym", "--dist", "weibull:scale=1,shape=6", "--n", "2"])
    assert code == 0
    rep = json.loads(text)
    assert rep["w_boundary"]["holds"] is False
    assert rep["w_boundary"]["condition_value"] == pytest.approx(1.98, abs=0.05)
    assert "cdf_at_mode" in rep["arch_boundary"]


def test_sample_csv():
    code, text, _ = run(["sample", "--copula", "clayton:theta=-0.75", "--dist", "rayleigh:snr_db=0",
                         "--samples", "10", "--seed", "1"])
    assert code == 0
    arr = np.loadtxt(io.StringIO(text), delimiter=",", skiprows=1)
    assert arr.shape == (10, 2)
    assert run(["sample", "--copula", "clayton:theta=-0.75", "--dist", "rayleigh:snr_db=0",
                "--samples", "10", "--seed", "1"])[1] == text


@pytest.mark.parametrize(
    "argv",
    [
        ["curve-t", "--dist", "rayleigh:snr_db=0"],
        ["curve-t", "--dist", "bogus", "--dist", "rayleigh:snr_db=0"],
        ["curve-t", "--dist", "rayleigh:snr_db=0", "--dist", "rayleigh:snr_db=0", "--t-grid", "0:2:3"],
        ["bounds", "--dist", "rayleigh:snr_db=0", "--n-range", "1:5"],
        ["sc", "--dist", "rayleigh:snr_db=0"],
        ["verify", "--dist", "rayleigh:snr_db=0"],
        ["verify", "--copula", "shifted_w:t=0.5", "--dist", "rayleigh:snr_db=0", "--samples", "10"],
        ["verify", "--copula", "indep", "--coupling", "rotation", "--dist", "rayleigh:snr_db=0"],
        ["verify", "--coupling", "rotation", "--dist", "rayleigh:snr_db=0", "--n", "3"],
        ["bsym", "--dist", "rayleigh:snr_db=0", "--n", "1"],
        ["nonsense"],
    ],
)
def test_parse_errors_exit_2(argv):
    assert run(argv)[0] == 2


def test_solver_failure_exit_3(monkeypatch):
    from zerocap import cli
    from zerocap.errors import NoConvergence

    def boom(*args, **kwargs):
        raise NoConvergence("forced")

    monkeypatch.setattr(cli, "mrc_two_link_ct", boom)
    code, _, err = run(["curve-t", "--dist", "rayleigh:snr_db=0", "--dist", "rayleigh:snr_db=0"])
    assert code == 3 and "forced" in err


def test_grid_helpers():
    np.testing.assert_allclose(parse_grid("0:1:5"), [0, 0.25, 0.5, 0.75, 1])
    np.testing.assert_allclose(parse_grid("0.3"), [0.3])
    assert list(parse_n_range("2:4")) == [2, 3, 4]
    assert list(parse_n_range("7")) == [7]
    for bad in ("0:1", "a:b:c", "0:1:0"):
        with pytest.raises(ParseError):
            parse_grid(bad)
    with pytest.raises(ParseError):
        parse_n_range("5:2")


def test_table_formatting():
    t = CsvTable(["a", "b", "c"], [[1, 0.1234567891234, True]])
    assert t.to_csv() == "a,b,c\n1,0.123456789,1\n"
    assert t.to_records() == [{"a": 1, "b": 0.123456789, "c": 1}]
    with pytest.raises(ValueError):
        CsvTable(["a"], [[1, 2]])
