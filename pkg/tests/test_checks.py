import pytest

from mbrace.checks import SUITES, Options, Tally, run
from mbrace.checks import graded_space
from mbrace.cochains import Cochain

SMALL = Options(seed=3, cases=4)


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suite_has_no_failures(name):
    rep = run([name], SMALL)
    assert rep["totals"]["fail"] == 0, rep
    assert rep["checks"][0]["anchor"]
    for it in rep["checks"][0]["items"]:
        assert set(it) == {"label", "instance", "status", "cases", "detail"}
        assert it["status"] in ("pass", "discrepancy")


def test_report_shape_and_totals():
    rep = run(["signs", "triple"], SMALL)
    assert rep["version"] == 1 and rep["seed"] == 3
    n = sum(len(c["items"]) for c in rep["checks"])
    assert sum(rep["totals"].values()) == n
    assert rep["ok"]


def test_deterministic():
    assert run(["pre-jacobi", "homotopy-g"], SMALL) == run(["pre-jacobi", "homotopy-g"], SMALL)


def test_seed_changes_cases():
    a = run(["pre-jacobi"], Options(seed=1, cases=4))
    b = run(["pre-jacobi"], Options(seed=2, cases=4))
    assert a["seed"] != b["seed"]


def test_discrepancies_are_reported():
    bv = run(["bv"], SMALL)["checks"][0]["items"]
    claim = next(it for it in bv if it["label"] == "order-2-claim")
    assert claim["status"] == "discrepancy"
    assert claim["detail"]["phi3(x,x,th)"] == {"x": "-2"}
    bor = run(["bor"], SMALL)["checks"][0]["items"]
    claim = next(it for it in bor if it["label"] == "factor-j!(n-j)!-claim")
    assert claim["status"] == "discrepancy" and claim["detail"]["failures"] > 0


def test_mutants_rejected():
    for name in ("ainf", "linf", "bor"):
        rep = run([name], Options(seed=5, cases=3, mutate=True))
        labels = [(it["label"], it["instance"]) for it in rep["checks"][0]["items"]]
        assert any("mutated" in inst for _, inst in labels)
        assert rep["totals"]["fail"] == 0


def test_bialg_single_instance():
    rep = run(["bialg"], Options(instance="z3", cases=2))
    insts = {it["instance"] for it in rep["checks"][0]["items"]}
    assert "z3" in insts and "sweedler" not in insts


def test_tally_keeps_first_defect():
    S = graded_space(1)
    t = Tally()
    t.case = 2
    t.zero(Cochain.zero(S))
    t.eq(Cochain(S, {(0,): {(0,): 1}}), Cochain.zero(S))
    t.case = 3
    t.eq(Cochain(S, {(0,): {(0,): 2}}), Cochain.zero(S))
    it = t.item("x", "y", 4)
    assert it.status == "fail"
    assert it.detail["case"] == 2 and it.detail["defect"]
