import json

import pytest

from swapoly.cli import EXIT_BUDGET, EXIT_FAIL, EXIT_OK, EXIT_USAGE, main, read_assignment


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_list_checks(capsys):
    code, out, _ = run(capsys, "--list-checks")
    assert code == EXIT_OK
    ids = [line.split("\t")[0] for line in out.splitlines()]
    assert "regev.F.d2" in ids and ids == sorted(ids)


def test_weingarten_scaled(capsys):
    code, out, _ = run(capsys, "weingarten", "--n", "4", "--d", "3", "--scaled")
    assert code == EXIT_OK
    assert out.splitlines() == ["(4)\t37/15", "(3,1)\t-3/5", "(2,2)\t-11/5", "(2,1,1)\t-7/3", "(1,1,1,1)\t61/5"]


def test_odd_coefficient_range(capsys):
    code, out, _ = run(capsys, "odd-coefficient", "--h-range", "2..6", "--format", "json")
    assert code == EXIT_OK
    (rep,) = json.loads(out)
    nz = [m for m in rep["measured"] if m["name"].endswith("nonzero")]
    assert len(nz) == 5 and all(m["value"] == "true" for m in nz)


@pytest.mark.parametrize(
    "argv",
    [
        ["verify", "bogus"],
        ["odd-coefficient", "--h-range", "5..2"],
        ["weingarten", "--n", "3"],
        ["--threads", "0", "verify", "goldman"],
        [],
    ],
)
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == EXIT_USAGE


def test_budget_refusal(capsys):
    code, _, err = run(capsys, "construct", "regev", "--d", "4")
    assert code == EXIT_BUDGET
    assert "estimated cost" in err


def test_verify_goldman_seed_placement(capsys):
    a = run(capsys, "--seed", "3", "verify", "goldman", "--format", "json")
    b = run(capsys, "verify", "goldman", "--seed", "3", "--format", "json")
    assert a[0] == EXIT_OK and a[1] == b[1]
    assert all(r["seed"] == 3 for r in json.loads(a[1]))


def test_verify_all_d2(capsys):
    code, out, _ = run(capsys, "verify", "all", "--d", "2", "--seed", "7", "--format", "tsv")
    assert code == EXIT_OK
    statuses = {line.split("\t")[1] for line in out.splitlines()[1:]}
    assert statuses <= {"pass", "finding"}


def test_construct_p_prints_polynomial(capsys):
    code, out, _ = run(capsys, "construct", "p", "--print-poly")
    assert code == EXIT_OK
    assert "|" in out.splitlines()[0]


def test_construct_esss_refuses_bad_parameters(capsys):
    assert run(capsys, "construct", "esss", "--h", "1", "--k", "1")[0] == EXIT_USAGE


def test_verify_polynomial_file(tmp_path, capsys):
    bad = tmp_path / "x1x1.txt"
    bad.write_text("1 x1 | x1\n")
    assert run(capsys, "verify", "swap", "--poly", str(bad))[0] == EXIT_FAIL
    good = tmp_path / "p.txt"
    run(capsys, "construct", "p", "--print-poly", "--format", "tsv")
    from swapoly.ncpoly import format_poly
    from swapoly.twobytwo import P_xy

    good.write_text(format_poly(P_xy()))
    assert run(capsys, "verify", "swap", "--poly", str(good))[0] == EXIT_OK
    assert run(capsys, "verify", "central", "--poly", str(good))[0] == EXIT_OK


def test_eval(tmp_path, capsys):
    poly = tmp_path / "c.txt"
    poly.write_text("1 x1.x2\n-1 x2.x1\n")
    at = tmp_path / "m.txt"
    at.write_text("2 2\n0 1\n0 0\n0 0\n1 0\n")
    code, out, _ = run(capsys, "eval", "--poly", str(poly), "--at", str(at))
    assert code == EXIT_OK
    assert out.splitlines() == ["1 0", "0 -1"]
    at.write_text("2 3\n1 2 3\n")
    assert run(capsys, "eval", "--poly", str(poly), "--at", str(at))[0] == EXIT_USAGE


def test_read_assignment():
    d, mats = read_assignment("2 1\n1/2 0 0 -3")
    assert d == 2 and mats[0].entries()[0] == pytest.approx(0.5)
    with pytest.raises(ValueError):
        read_assignment("2")
