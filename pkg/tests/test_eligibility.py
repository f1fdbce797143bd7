import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import h_index_oracle
from normcite import (
    BaselineTable,
    DocType,
    DocTypeGroup,
    EligibilityPolicy,
    PolicyError,
    Publication,
    SourceDb,
    check_guarantor,
    compare_reference,
    h_index,
    highly_cited_count,
    load_references,
)
from normcite.eligibility import parse_references


def pubs_with(cites, year=2013):
    return [Publication(f"P{i}", year, DocType.ARTICLE, c, ("X",), SourceDb.WOS) for i, c in enumerate(cites)]


def test_somm_four_years_fails_threshold(four_years):
    pubs, table = four_years
    report = check_guarantor(pubs, table, EligibilityPolicy(method="somm"))
    assert report.value == pytest.approx(0.7635, abs=5e-5)
    assert not report.passes_threshold
    assert report.passes_min_works
    assert report.failed_checks == ["threshold"]


def test_boundary_inclusive_by_default():
    table = BaselineTable.from_means(SourceDb.WOS, DocTypeGroup.AR, {(2013, "X"): 2.0})
    pubs = pubs_with([3] * 10)        # every ratio is exactly 1.5
    report = check_guarantor(pubs, table, EligibilityPolicy(method="mncs"))
    assert report.value == 1.5 and report.passes_threshold and report.eligible
    strict = check_guarantor(pubs, table, EligibilityPolicy(method="mncs", strict=True))
    assert not strict.passes_threshold


def test_three_works_fail_min_works():
    table = BaselineTable.from_means(SourceDb.WOS, DocTypeGroup.AR, {(2013, "X"): 2.0})
    report = check_guarantor(pubs_with([10, 10, 10]), table, EligibilityPolicy(method="crown", min_works=10))
    assert report.passes_threshold
    assert not report.passes_min_works
    assert report.failed_checks == ["min_works"]


def test_supplementary_indicators(trio):
    pubs, table = trio
    report = check_guarantor(pubs, table, EligibilityPolicy(method="mncs", min_works=1))
    assert report.h_index == 2
    assert report.highly_cited_count == 0


@pytest.mark.parametrize("kwargs", [dict(threshold=0), dict(min_works=0), dict(highly_cited_ratio=1.0),
                                    dict(method="rcr")])
def test_policy_validation(kwargs):
    with pytest.raises(PolicyError):
        EligibilityPolicy(**kwargs)


@pytest.mark.parametrize("cites, h", [([9, 5, 2], 2), ([], 0), ([10, 10, 10, 10], 4), ([0, 0], 0), ([1], 1)])
def test_h_index_examples(cites, h):
    assert h_index(cites) == h == h_index_oracle(cites)


@given(st.lists(st.integers(0, 300), max_size=60), st.randoms())
def test_h_index_properties(cites, rnd):
    h = h_index(cites)
    assert h == h_index_oracle(cites)
    assert h <= len(cites)
    shuffled = list(cites)
    rnd.shuffle(shuffled)
    assert h_index(shuffled) == h
    assert h_index(cites + [rnd.randint(0, 300)]) >= h


@pytest.mark.parametrize("ratios, count", [([1.5, 1.0, 0.5], 0), ([4.0], 1), ([8.0, 0.1, 5.0], 2)])
def test_highly_cited_examples(ratios, count):
    assert highly_cited_count(ratios, 4.0) == count


@given(st.lists(st.floats(0, 20), max_size=30), st.floats(0, 20))
def test_highly_cited_never_decreases(ratios, extra):
    assert highly_cited_count(ratios + [extra]) >= highly_cited_count(ratios)


def test_bundled_eu_references():
    refs = dict(load_references())
    assert refs == {"PHYSICS": 1.66, "MEDICINE, GENERAL & INTERNAL": 1.48,
                    "ENGINEERING - INDUSTRIAL": 1.19, "PHILOSOPHY": 1.14}


def test_compare_reference():
    refs = load_references()
    status = {c.category: c.status for c in compare_reference(1.5, refs)}
    assert status["PHYSICS"] == "below"
    assert status["PHILOSOPHY"] == "above"
    assert compare_reference(1.66, [("PHYSICS", 1.66)])[0].status == "meets"


def test_parse_references_errors():
    from normcite import ParseError
    with pytest.raises(ParseError):
        parse_references("cat,val\nX,1\n")
    with pytest.raises(ParseError):
        parse_references("category,reference_value\nX,abc\n")


@given(st.lists(st.integers(0, 50), min_size=1, max_size=15), st.floats(0.1, 5), st.floats(0.1, 5))
def test_threshold_monotone(cites, t1, t2):
    lo, hi = sorted((t1, t2))
    table = BaselineTable.from_means(SourceDb.WOS, DocTypeGroup.AR, {(2013, "X"): 3.0})
    pubs = pubs_with(cites)
    r_hi = check_guarantor(pubs, table, EligibilityPolicy(threshold=hi, method="mncs"))
    r_lo = check_guarantor(pubs, table, EligibilityPolicy(threshold=lo, method="mncs"))
    if r_hi.passes_threshold:
        assert r_lo.passes_threshold
