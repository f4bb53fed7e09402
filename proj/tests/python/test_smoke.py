import csv
import io
import math
import os
import subprocess
from fractions import Fraction

import numpy as np
import pytest

import lmmrgre


def test_names():
    assert "bdf7" in lmmrgre.method_names()
    assert set(lmmrgre.problem_names()) >= {"dahlquist", "lotka-volterra", "van-der-pol"}


def test_gamma_exact():
    assert lmmrgre.gamma(2, 2) == [Fraction(1, 21), Fraction(-12, 21), Fraction(32, 21)]
    assert sum(lmmrgre.gamma(4, 3)) == 1


def test_solve_dahlquist():
    out = lmmrgre.solve("ab2", "dahlquist", 200)
    assert out["y"].shape == (201, 1)
    assert out["t"][-1] == pytest.approx(1.0)
    assert out["y"][-1, 0] == pytest.approx(math.exp(-5.0), rel=5e-3)


def test_rgre_work_ratio():
    out = lmmrgre.rgre("ab2", "lotka-volterra", 512, 2)
    assert out["work_ratio"] == pytest.approx(7.0, rel=0.1)
    assert np.all(np.isfinite(out["y"]))


def test_converge_orders():
    rows = lmmrgre.converge("ab2", 2, "dahlquist", [32, 64, 128], error="final")
    assert rows[0]["estimated_order"] is None
    assert rows[-1]["estimated_order"] == pytest.approx(4.0, abs=0.15)


def test_stability():
    assert lmmrgre.stability_angle("bdf5") == pytest.approx(51.839, abs=0.05)
    assert not lmmrgre.root_condition("bdf7")
    assert lmmrgre.is_stable("bdf2", -1.0 + 0j, ell=1)
    assert not lmmrgre.is_stable("ab2", -3.0 + 0j)


def test_errors():
    with pytest.raises(ValueError):
        lmmrgre.solve("xyz9", "dahlquist", 10)
    with pytest.raises(lmmrgre.NumericalError):
        lmmrgre.solve("bdf3", "van-der-pol", 10)


def check_converge_csv(text):
    rows = list(csv.DictReader(io.StringIO(text)))
    assert list(rows[0].keys()) == ["n", "max_error", "estimated_order", "f_evals"]
    assert rows[0]["estimated_order"] == ""
    ns = [int(r["n"]) for r in rows]
    assert all(b == 2 * a for a, b in zip(ns, ns[1:]))
    for r in rows:
        assert float(r["max_error"]) > 0
        assert int(r["f_evals"]) > 0
    for r in rows[1:]:
        float(r["estimated_order"])
    return rows


def test_converge_csv_schema_module():
    check_converge_csv(lmmrgre.converge_csv("am2", 1, "dahlquist", [64, 128, 256]))


def test_converge_csv_schema_cli():
    code, out, _ = lmmrgre.run_cli(["converge", "--method", "bdf2", "--ell", "1",
                                    "--problem", "dahlquist", "--n", "64,128,256"])
    assert code == 0
    check_converge_csv(out)


@pytest.mark.skipif("LMMRGRE_EXE" not in os.environ, reason="CLI executable not provided")
def test_cli_executable_csv():
    proc = subprocess.run([os.environ["LMMRGRE_EXE"], "converge", "--method", "ab2", "--ell", "2",
                           "--problem", "dahlquist", "--n", "32,64,128"],
                          capture_output=True, text=True, check=True)
    rows = check_converge_csv(proc.stdout)
    assert float(rows[-1]["estimated_order"]) == pytest.approx(4.0, abs=0.3)
