import pytest

from gckit import instances, suites
from gckit.errors import NotAssociative, SizeLimit, UnknownSuite
from gckit.report import FAIL, PASS, SKIP, Check, IsoReport, SuiteReport


@pytest.fixture(scope="module")
def pack():
    return instances.load("pack:all")


@pytest.mark.parametrize("name", list(suites.SUITES))
def test_each_suite_passes_on_pack(pack, name):
    rep = suites.run_suite(pack, name)
    assert rep.ok, [c.line() for c in rep.checks if c.status == FAIL]
    assert rep.counts()[PASS] > 0


def test_unknown_suite(pack):
    with pytest.raises(UnknownSuite):
        suites.run_suite(pack, "nope")


def test_size_limit_becomes_skip(monkeypatch):
    monkeypatch.setenv("GCKIT_SIZE_LIMIT", "8")
    reg = instances.load("pack:all")
    rep = suites.run_suite(reg, "center")
    assert rep.ok
    assert any(c.status == SKIP and c.subject == "pair2/Z2" for c in rep.checks)


def test_run_check_statuses():
    def boom():
        raise NotAssociative("bad", witness=(1, 2, 3))

    def big():
        raise SizeLimit("too big")

    def broken():
        assert False, "nope"

    assert suites.run_check("s", "x", lambda: "fine").status == PASS
    assert suites.run_check("s", "x", lambda: (False, "no", 7)).witness == 7
    c = suites.run_check("s", "x", boom)
    assert c.status == FAIL and c.witness == (1, 2, 3)
    assert suites.run_check("s", "x", big).status == SKIP
    assert suites.run_check("s", "x", broken).status == FAIL


def test_report_records():
    rep = IsoReport("t", 4, 4, True, True, True)
    assert rep.ok and rep.to_dict()["sizes"] == {"lhs": 4, "rhs": 4}
    assert not IsoReport("t", 4, 2, True, True, False).ok
    assert not IsoReport("t", 4, 4, True, True, True, [("w",)]).ok
    s = SuiteReport("x", [Check("x", "a", PASS), Check("x", "b", FAIL, "d", (1,))])
    assert s.counts() == {PASS: 1, FAIL: 1, SKIP: 0} and not s.ok
    assert s.to_dict()["checks"][1]["witness"] == "(1,)"
    assert Check("x", "b", FAIL, "d", (1,)).line() == "[FAIL   ] x: b (d) witness=(1,)"
