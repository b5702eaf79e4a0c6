import pytest

import ncinv

INVERSE_SUM = "4*inv(x + y - (x - y)^2*inv((x - y)*(x + y)*(x - y))*(x - y)^2)"


def test_inverse_sum_identity():
    r = ncinv.equal("inv(x) + inv(y)", INVERSE_SUM)
    assert r["verdict"] == "EqualProven"


def test_distinct_has_witness():
    r = ncinv.equal("x*y", "y*x")
    assert r["verdict"] == "Distinct"
    assert set(r["witness"]) == {"x", "y"}


def test_evaluate():
    point = {"x": [["1", "2"], ["0", "1"]], "y": [["0", "1"], ["1", "0"]]}
    assert ncinv.evaluate("x*y - y*x", point) == [["2", "0"], ["0", "-2"]]


def test_group_info():
    s4 = ncinv.group_info("S4")
    assert s4["order"] == 24
    assert s4["totally_unramified"]
    assert len(s4["character_table"]) == 5
    assert not ncinv.group_info("SL23")["totally_unramified"]


@pytest.mark.parametrize("family,kind,count", [("S2", "perm", 3), ("Z3", "diagonal", 4), ("S3", "perm", 13)])
def test_generator_counts(family, kind, count):
    basis = ncinv.invariants(family, kind=kind)
    assert basis["count"] == count
    assert basis["expected"] == count


def test_rewrite_inverse_sum():
    r = ncinv.rewrite("inv(x) + inv(y)", "S2")
    assert r["verdict"] == "EqualProven"
    assert len(r["generators"]) == 3


def test_not_invariant():
    with pytest.raises(ncinv.NcinvError) as e:
        ncinv.rewrite("x", "S2")
    assert e.value.kind == "NotInvariant"


def test_certify_entire_space():
    c = ncinv.certify("S2", "entire")
    assert c["QG"][0] == ["1", "0"]
    assert c["QG"][1][0] == "0"
    assert c["QG"][1][1] == "x^2 - x*y - y*x + y^2"


def test_certify_custom_matrix():
    c = ncinv.certify("S2", [["1 - x^2", "0"], ["0", "1 - y^2"]])
    assert len(c["QG"]) == 4


def test_bad_family():
    with pytest.raises(ncinv.NcinvError):
        ncinv.group_info("NoSuchGroup")
