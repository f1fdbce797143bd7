import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from normcite import (
    DocType,
    DocTypeGroup,
    EmptySetError,
    ParseError,
    Publication,
    SourceDb,
    YearWindow,
    dump_publications,
    parse_publications,
    scan_publications,
    validate_set,
)
from normcite.records import dump_publications_jsonl

HEADER = "id,year,doc_type,citations,categories,source\n"


def parse_one(row):
    (pub,) = parse_publications(HEADER + row + "\n")
    return pub


def test_parse_trio_row():
    pub = parse_one("P1,2014,article,9,COMMUNICATION,wos")
    assert pub == Publication("P1", 2014, DocType.ARTICLE, 9, ("COMMUNICATION",), SourceDb.WOS)


def test_zero_citations_is_valid():
    assert parse_one("P2,2015,review,0,EDUCATION,wos").citations == 0


def test_two_categories():
    pub = parse_one("P3,2013,article,38,INFORMATION SCIENCE & LIBRARY SCIENCE;CS INTERDISCIPLINARY APPLICATIONS,wos")
    assert pub.categories == ("INFORMATION SCIENCE & LIBRARY SCIENCE", "CS INTERDISCIPLINARY APPLICATIONS")


def test_negative_citations_rejected():
    with pytest.raises(ParseError) as exc:
        parse_one("P4,2014,article,-1,X,wos")
    (err,) = exc.value.errors
    assert (err.line, err.field) == (2, "citations")


def test_tokens_case_insensitive_and_categories_normalized():
    pub = parse_one('P5,2013,REVIEW,3," neurosciences ; Psychology ",Scopus')
    assert pub.doc_type is DocType.REVIEW
    assert pub.source is SourceDb.SCOPUS
    assert pub.categories == ("NEUROSCIENCES", "PSYCHOLOGY")


@pytest.mark.parametrize("row, field", [
    ("P,2014,article,9,X", "row"),
    ("P,20x4,article,9,X,wos", "year"),
    ("P,2014,letter,9,X,wos", "doc_type"),
    ("P,2014,article,9.5,X,wos", "citations"),
    ("P,2014,article,9,X,pubmed", "source"),
    ("P,2014,article,9,,wos", "categories"),
    ("P,2014,article,9,X;;Y,wos", "categories"),
    ("P,2014,article,9,X;x,wos", "categories"),
    (",2014,article,9,X,wos", "id"),
])
def test_bad_rows_are_positioned(row, field):
    pubs, errors = scan_publications(HEADER + "OK,2014,article,1,X,wos\n" + row + "\n")
    assert len(pubs) == 1
    assert [(e.line, e.field) for e in errors] == [(3, field)]


def test_duplicate_id_flags_second_occurrence():
    text = HEADER + "A,2014,article,1,X,wos\nA,2015,article,2,X,wos\n"
    pubs, errors = scan_publications(text)
    assert [p.year for p in pubs] == [2014]
    assert errors[0].line == 3 and errors[0].field == "id"


def test_bad_header():
    with pytest.raises(ParseError):
        parse_publications("id,year,type\nA,2014,article\n")


def test_quoted_category_with_comma(data_dir):
    pubs = parse_publications((data_dir / "four_years_publications.csv").read_text())
    assert pubs[0].categories == ("MEDICAL INFORMATICS", "COMPUTER SCIENCE, INFORMATION SYSTEMS")


def test_jsonl_matches_csv(data_dir):
    pubs = parse_publications((data_dir / "four_years_publications.csv").read_text())
    assert parse_publications(dump_publications_jsonl(pubs)) == pubs


def test_jsonl_errors_positioned():
    text = ('{"id":"A","year":2014,"doc_type":"article","citations":1,"categories":["X"],"source":"wos"}\n'
            'not json\n'
            '{"id":"B","year":2014,"doc_type":"article","citations":-2,"categories":["X"],"source":"wos"}\n')
    pubs, errors = scan_publications(text)
    assert [p.id for p in pubs] == ["A"]
    assert [(e.line, e.field) for e in errors] == [(2, "row"), (3, "citations")]


# round trip over generated records
category = st.text(alphabet="ABCDEFGHIJ &,-", min_size=1, max_size=12).map(str.strip).filter(bool)
publication = st.builds(
    Publication,
    id=st.text(alphabet="abcXYZ0123-_", min_size=1, max_size=8),
    year=st.integers(1950, 2030),
    doc_type=st.sampled_from(list(DocType)),
    citations=st.integers(0, 10_000),
    categories=st.lists(category, min_size=1, max_size=4, unique_by=str.upper).map(tuple),
    source=st.sampled_from(list(SourceDb)),
)


@settings(max_examples=200)
@given(st.lists(publication, max_size=20, unique_by=lambda p: p.id))
def test_round_trip(pubs):
    text = dump_publications(pubs)
    again = parse_publications(text, "csv")
    assert again == pubs
    assert dump_publications(again) == text


# -- validate_set ------------------------------------------------------------

def _pub(pid, year, doc_type=DocType.ARTICLE):
    return Publication(pid, year, doc_type, 1, ("X",), SourceDb.WOS)


def test_window_retains_all_four_years():
    pubs = [_pub(f"P{y}", y) for y in range(2012, 2016)]
    vset = validate_set(pubs, YearWindow(2012, 2015))
    assert list(vset) == pubs and not vset.excluded


def test_all_filtered_out_is_empty_set():
    with pytest.raises(EmptySetError):
        validate_set([_pub("old", 2011)], YearWindow(2012, 2015))


def test_doc_type_filter():
    pubs = [_pub("a", 2013), _pub("p", 2013, DocType.PROCEEDING)]
    vset = validate_set(pubs, YearWindow(2012, 2015), DocTypeGroup.AR)
    assert [p.id for p in vset] == ["a"]
    assert vset.excluded == (("p", "doc_type"),)
    assert validate_set(pubs, YearWindow(2012, 2015), DocTypeGroup.ARP).excluded == ()


def test_other_excluded_by_every_group():
    pubs = [_pub("a", 2013), _pub("o", 2013, DocType.OTHER)]
    for group in DocTypeGroup:
        assert validate_set(pubs, YearWindow(2013, 2013), group).excluded_counts == {"doc_type": 1}


@given(st.lists(publication, min_size=1, max_size=30), st.integers(1950, 2030), st.integers(0, 20),
       st.sampled_from(list(DocTypeGroup)))
def test_validate_partitions_input(pubs, start, span, group):
    window = YearWindow(start, start + span)
    try:
        vset = validate_set(pubs, window, group)
    except EmptySetError:
        assert not any(p.year in window and group.covers(p.doc_type) for p in pubs)
        return
    assert len(vset) + len(vset.excluded) == len(pubs)
    assert all(p in pubs for p in vset)


def test_window_parse():
    assert YearWindow.parse("2012:2015") == YearWindow(2012, 2015)
    assert YearWindow.parse("2013") == YearWindow(2013, 2013)
    with pytest.raises(ValueError):
        YearWindow.parse("2015:2012")
    with pytest.raises(ValueError):
        YearWindow.parse("twenty")
