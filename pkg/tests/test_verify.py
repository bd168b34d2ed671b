import json

import pytest

from swapoly import constructions as C
from swapoly import twobytwo as B
from swapoly import verify as V
from swapoly.ncpoly import NcPoly, TensorPoly2, xs

x1, x2 = xs(2)


def catalog():
    return {
        "P": B.P_xy(),
        "Q": B.Q_xy(),
        "Qprime": B.balanced_Q_prime(),
        "balanced family (1,2)": B.balanced_family(1, 2),
        "capelli H": C.capelli_swap(2).H,
    }


@pytest.mark.parametrize("name", list(catalog()))
def test_swap_implies_central(name):
    t = catalog()[name]
    assert V.verify_swap(t, 2, 3, seed=1).status == V.PASS
    assert V.verify_central(t, 2, 3, seed=1).status == V.PASS


def test_verify_swap_rejects_non_swap():
    t = TensorPoly2.tensor(NcPoly.letter(x1), NcPoly.letter(x1))
    assert V.verify_swap(t, 2, 3).status == V.FAIL
    ident = TensorPoly2.tensor(NcPoly.one(), NcPoly.one())
    assert V.verify_swap(ident, 2, 3).status == V.FAIL


def test_verify_swap_zero_polynomial_fails():
    # a = 0 everywhere but b is never nonzero
    assert V.verify_swap(TensorPoly2(), 2, 3).status == V.FAIL


def test_verify_swap_wrong_scalar_fails():
    rep = V.verify_swap(B.P_xy(), 2, 3, scalar=lambda asg: 1)
    assert rep.status == V.FAIL


def test_verify_central_capelli_h():
    cs = C.capelli_swap(2)
    rep = V.verify_central(cs.h, 2, 3, zeta=cs.y0)
    assert rep.status == V.PASS
    with pytest.raises(ValueError):
        V.verify_central(cs.h, 2, 3)


def test_verify_central_rejects_non_central():
    p = NcPoly({(x1, V.ZETA): 1})
    assert V.verify_central(p, 2, 3, zeta=V.ZETA).status == V.FAIL


def test_too_few_trials():
    with pytest.raises(ValueError):
        V.verify_swap(B.P_xy(), 2, 2)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_goldman(d):
    rep = V.goldman_properties(d)
    assert rep.status == V.PASS
    assert {"name": "tr(swap)", "value": str(d)} in rep.measured


def test_report_schema():
    rep = V.check_odd_coefficient()
    data = rep.to_dict()
    assert list(data) == ["check", "anchor", "status", "seed", "points", "measured", "expected"]
    assert data["status"] in (V.PASS, V.FAIL, V.FINDING)
    assert all(e["provenance"] in V.PROVENANCES for e in data["expected"])
    json.dumps(data)


def test_bad_provenance():
    with pytest.raises(ValueError):
        V.CheckReport("x", "y").expect("v", 1, "guess")


def test_registry_ids_unique_and_sorted():
    ids = list(V.CHECKS)
    assert ids == sorted(ids) and len(set(ids)) == len(ids)
    assert all(s.anchor for s in V.CHECKS.values())


def test_select_by_dimension():
    ids = {s.id for s in V.select_checks("all", 2)}
    assert "weingarten.table.d2" in ids and "weingarten.table.d3" not in ids
    assert "odd.swap.d3" not in ids


def test_runs_are_reproducible():
    specs = V.select_checks("goldman")
    a = V.reports_json(V.run_checks(specs, seed=5))
    b = V.reports_json(V.run_checks(specs, seed=5))
    assert a == b


def test_identity_suite_passes():
    reports = V.identity_suite(seed=2)
    assert reports and all(r.status == V.PASS for r in reports)


def test_findings_do_not_fail():
    for cid in ("even.lines.d2", "twobytwo.lambda", "twobytwo.traced-split", "odd.coefficient.notes"):
        assert V._run_one((cid, 0, 1)).status == V.FINDING
