import json
import os
import subprocess
from fractions import Fraction

import pytest

import lcivt

CLI = os.environ.get("LCIVT_CLI")


def test_number_arithmetic():
    x = lcivt.Number("1 + eps^(1/2)")
    assert str(x * x) == "1 + 2*eps^(1/2) + eps"
    assert (x - lcivt.Number("1")).valuation() == "1/2"
    assert x.sign() == 1 and x.is_exact
    assert lcivt.Number("eps^2") < lcivt.Number("eps")


def test_sqrt_two_root():
    s = lcivt.Series("poly: -2, 0, 1")
    assert s.sign_at("1") == -1 and s.sign_at("2") == 1
    r = lcivt.ivt_root(s, "1", "2", "20")
    assert r["root"] == "root(x^2 - 2, 0, 4)"
    assert r["multiplicity"] == "1"
    assert r["certificate"]["sign_a"] == "-1"


def test_count_and_multiplicity():
    s = lcivt.Series("poly: -2, 0, 1")
    assert len(lcivt.count_zeros(s, "-2", "2", "20")) == 2
    assert lcivt.multiplicity_at(lcivt.Series("poly: 1, -2, 1"), "1", "20") == 2


def test_nilpotent_root_is_infinitesimally_close():
    # x^2 - (1 + eps): root 1 + eps/2 - eps^2/8 + ...
    s = lcivt.Series("poly: -1 - eps, 0, 1")
    r = lcivt.ivt_root(s, "0", "2", "6")
    root = lcivt.Number(r["root"])
    diff = root - lcivt.Number("1 + eps/2")
    assert Fraction(diff.valuation()) >= 2


def test_factor_shape():
    f = lcivt.factor(lcivt.Series("ratfun: (X - 1)/(1 - eps*X)"), "8")
    assert f["N"] == 1 and f["P"][-1] == "1"


def test_errors_are_typed():
    with pytest.raises(lcivt.ParseError):
        lcivt.Series("poly: eps[2]")
    with pytest.raises(lcivt.DomainError):
        lcivt.ivt_root(lcivt.Series("poly: 1"), "0", "1", "10")
    assert issubclass(lcivt.UndecidableError, lcivt.LcivtError)


def test_example_report():
    rep = lcivt.run("example", example="nilpotent-signs")
    assert set(rep) >= {"config", "results", "certificates", "failures"}
    assert rep["failures"] == []


@pytest.mark.skipif(not CLI, reason="CLI path not provided")
@pytest.mark.parametrize(
    "args,code",
    [
        (["example", "nilpotent-signs"], 0),
        (["eval", "--inline", "poly: eps[1]", "--at", "1"], 2),
        (["ivt", "--inline", "poly: 1", "--interval", "0, 1"], 3),
        (["bogus"], 2),
    ],
)
def test_cli_exit_codes(args, code):
    p = subprocess.run([CLI, *args], capture_output=True, text=True)
    assert p.returncode == code
    if code == 0:
        json.loads(p.stdout)
    elif code == 3:
        assert json.loads(p.stderr.strip().splitlines()[-1])["error"]
    else:
        assert p.stderr
