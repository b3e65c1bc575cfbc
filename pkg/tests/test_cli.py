import io
import json

import pytest

from toeplitz_gft import cli


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_bounds_halfplane():
    code, out, _ = run("bounds", "--phi", "halfplane")
    rec = json.loads(out)
    assert code == 0
    assert set(rec) >= {"command", "config", "results", "residuals", "pass"}
    r = rec["results"]
    assert (r["B22"], r["B31"], r["thm1_ok"], r["thm2_ok"]) == (13.0, 24.0, True, True)


def test_bounds_condition_not_met():
    code, out, err = run("bounds", "--phi", "alpha=0.8")
    assert code == cli.EXIT_CONDITION
    r = json.loads(out)["results"]
    assert r["B31"] is None and r["B22"] == pytest.approx(0.04 * (4 * 0.64 - 9.6 + 13))
    e = json.loads(err)
    assert e["error"] == "condition-not-met" and e["bound"] == "B31"


def test_bounds_force_warns():
    code, out, _ = run("bounds", "--phi", "alpha=0.8", "--force")
    rec = json.loads(out)
    assert code == cli.EXIT_FAIL and rec["pass"] is False and rec["warnings"]
    assert rec["results"]["B31"] is not None


def test_verify_extremal_one_variable():
    code, out, _ = run("verify-extremal", "--phi", "halfplane", "--n", "1")
    rec = json.loads(out)
    assert code == 0 and rec["pass"]
    r = rec["results"]
    assert r["b2"] == {"re": pytest.approx(0, abs=1e-12), "im": pytest.approx(2)}
    assert r["abs_det_T22"] == pytest.approx(13) and r["abs_det_T31"] == pytest.approx(24)


def test_verify_extremal_membership():
    code, out, _ = run("verify-extremal", "--phi", "beta=0.6", "--n", "3", "--p", "3",
                       "--membership", "--dirs", "8", "--radii", "4")
    assert code == 0 and json.loads(out)["results"]["membership"]["ok"]


def test_sweep_csv():
    assert run("sweep-alpha", "--from", "0", "--to", "1", "--step", "0.1")[0] == cli.EXIT_USAGE
    code, out, _ = run("sweep-alpha", "--from", "0", "--to", "0.9", "--step", "0.1")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "parameter,B22,B31,thm1_ok,thm2_ok"
    assert len(lines) == 11
    assert lines[8].startswith("0.7,") and lines[8].endswith("true,false")
    code, out, _ = run("sweep-beta", "--from", "0.3", "--to", "0.4", "--step", "0.05",
                       "--format", "json")
    rows = json.loads(out)["results"]["rows"]
    assert [r["thm2_ok"] for r in rows] == [False, True, True]


def test_search_and_seed_env(monkeypatch):
    args = ("search", "--phi", "halfplane", "--functional", "t31", "--samples", "200")
    code, a, _ = run(*args, "--seed", "4")
    assert code == 0 and json.loads(a)["pass"]
    monkeypatch.setenv("SEED", "4")
    _, b, _ = run(*args, "--seed", "99")
    assert a == b
    monkeypatch.delenv("SEED")
    _, c, _ = run(*args, "--seed", "99")
    assert c != a


def test_search_with_sweep_and_refine():
    code, out, _ = run("search", "--phi", "alpha=0.25", "--functional", "t22", "--samples", "50",
                       "--sweep", "72", "--refine", "100")
    r = json.loads(out)["results"]
    assert code == 0
    assert r["local_refine"]["gap"] <= 1e-6


def test_byte_identical_outputs():
    for argv in (("bounds", "--phi", "beta=0.5"), ("domain-check", "--points", "20"),
                 ("slice-check", "--phi", "alpha=0.3", "--dirs", "5")):
        assert run(*argv) == run(*argv)


def test_slice_and_domain_checks():
    code, out, _ = run("slice-check", "--phi", "beta=0.6", "--dirs", "10")
    rec = json.loads(out)
    assert code == 0 and "conjugate_pairing_vs_gradient" in rec["residuals"]
    code, out, _ = run("domain-check", "--n", "2", "--p", "1.5", "--points", "50")
    assert code == 0 and json.loads(out)["pass"]


@pytest.mark.parametrize("argv", [("bounds",), ("bounds", "--phi", "halfplane", "--bogus"),
                                  ("bounds", "--phi", "gamma=1"), ("frobnicate",),
                                  ("bounds", "--phi", "halfplane", "--order", "4"),
                                  ("bounds", "--phi", "halfplane", "--format", "csv")])
def test_usage_errors(argv):
    code, out, err = run(*argv)
    assert code == cli.EXIT_USAGE and out == ""
    assert json.loads(err)["error"] in ("usage", "invalid-input")


def test_violation_exit_code(monkeypatch):
    from toeplitz_gft import search

    monkeypatch.setattr(search.Functional, "bound", lambda self, phi: (0.5, True))
    code, _, err = run("search", "--phi", "halfplane", "--samples", "20")
    assert code == cli.EXIT_VIOLATION
    assert json.loads(err)["error"] == "bound-violation"
