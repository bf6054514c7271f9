import math

import pytest

import conslaw


def test_canonical():
    assert conslaw.canonical("(u^2 - 1)/(u - 1)") == "u + 1"


def test_case_ids():
    ids = conslaw.case_ids()
    assert "1" in ids and "4.1" in ids
    assert len(ids) == 13


def test_verify_and_table1():
    [v] = conslaw.verify("1")
    assert v["passed"] and v["residual"] == "0"
    assert [r["case"] for r in conslaw.verify("3", {"eps": -1})] == ["3 [eps=-1]"]
    verdicts = conslaw.table1(jobs=2)
    assert len(verdicts) == 17 and all(r["passed"] for r in verdicts)
    stripped = conslaw.table1(strip=["v_t"])
    assert sum(not r["passed"] for r in stripped) == 11


def test_input_errors():
    with pytest.raises(ValueError):
        conslaw.verify("9")
    with pytest.raises(ValueError):
        conslaw.transform("1", "0,0,0,0,1,1,0")


def test_galilean_transform():
    r = conslaw.transform("4", "0,0,0,1,1,1,1")
    assert (r["d"], r["k"]) == ("1", "-1")
    assert r["residual"] == "0" and r["compatible"]
    # Arbitrary parts stay arbitrary under the shear.
    assert conslaw.transform("1", "0,0,0,1,1,1,1")["k"] == "k"


def test_sample():
    reports = conslaw.sample("1.6", n=200, jobs=2)
    assert len(reports) == 2
    assert all(r["max_residual"] < 1e-9 for r in reports)


def test_simulate_and_heat():
    run = conslaw.simulate("1", lambda x: 1 + 0.5 * math.sin(x), n=100, t_end=0.02)
    assert run["relative"] and run["drift"] < 1e-4
    assert len(run["u"]) == 100
    assert conslaw.heat_gaussian_error(100, 0.5) / conslaw.heat_gaussian_error(200, 0.5) > 3.5
