import json

import pytest
from hypothesis import given, strategies as st

from isnad_sna.corpus_model import Chain, HadithRecord, Narrator, NarratorTable
from isnad_sna.errors import DomainError, ParseError, ValidationError
from isnad_sna.ingest import (
    ChainOrder,
    accepted_records,
    dumps_hadith_records,
    dumps_narrators,
    parse_hadith_records,
    parse_narrators,
    read_hadith_records,
    read_narrators,
    validate_corpus,
)

HEADER = "id,name,generation,city\n"


def test_parse_narrator_row(tmp_path):
    path = tmp_path / "n.csv"
    path.write_text(HEADER + "20020,Shu'bah bin al-Hajjaj,7,Basra\n", encoding="utf-8")
    table = parse_narrators(path)
    n = table["20020"]
    assert (n.name, n.generation, n.city, n.era) == ("Shu'bah bin al-Hajjaj", 7, "Basra", 3)


def test_header_only_gives_empty_table():
    assert len(read_narrators(HEADER)) == 0


def test_generation_13_is_domain_error():
    with pytest.raises(DomainError, match="13"):
        read_narrators(HEADER + "x,X,13,Kufa\n")


def test_quoted_fields_and_empty_city():
    table = read_narrators(HEADER + '1,"Ibn Umar, Abdullah",0,\n')
    assert table["1"].name == "Ibn Umar, Abdullah"
    assert table["1"].city == ""


def test_malformed_narrator_rows_carry_line_number():
    with pytest.raises(ParseError, match=":3"):
        read_narrators(HEADER + "1,a,0,x\n2,b,zero,y\n")
    with pytest.raises(ParseError, match=":2"):
        read_narrators(HEADER + "1,a,0\n")
    with pytest.raises(ParseError):
        read_narrators("id,name\n")


def test_duplicate_narrator_id():
    with pytest.raises(ValidationError, match="duplicate"):
        read_narrators(HEADER + "1,a,0,x\n1,b,0,y\n")


REVELATION_1 = {
    "collection": "bukhari", "book": "Revelation", "number": "1",
    "chains": [["Abdullah bin al-Zubair", "Sufyan bin 'Uyaynah", "Yahya bin Sa'id",
                "Muhammad bin Ibrahim", "Alqama", "Umar"]],
}


def test_compiler_first_is_reversed():
    (rec,) = read_hadith_records([json.dumps(REVELATION_1)], ChainOrder.COMPILER_FIRST)
    assert rec.chains[0].narrators == (
        "Umar", "Alqama", "Muhammad bin Ibrahim", "Yahya bin Sa'id",
        "Sufyan bin 'Uyaynah", "Abdullah bin al-Zubair",
    )


def test_jihad_133_has_two_chains(sample_records):
    jihad = next(r for r in sample_records if r.book == "Jihad")
    assert len(jihad.chains) == 2
    for chain in jihad.chains:
        assert chain.narrators[:3] == ("anas_malik", "qatada", "20297")


def test_single_narrator_chain_accepted():
    line = json.dumps({"collection": "c", "book": "b", "number": "1", "chains": [["X"]]})
    (rec,) = read_hadith_records([line])
    assert rec.chains[0].narrators == ("X",)


@pytest.mark.parametrize("line, exc", [
    ("{not json", ParseError),
    ('["a"]', ParseError),
    ('{"collection": "c", "book": "b", "chains": [["a"]]}', ParseError),
    ('{"collection": "c", "book": "b", "number": "1", "chains": "a"}', ParseError),
    ('{"collection": "c", "book": "b", "number": "1", "chains": []}', ValidationError),
    ('{"collection": "c", "book": "b", "number": "1", "chains": [[]]}', ValidationError),
])
def test_bad_hadith_lines(line, exc):
    with pytest.raises(exc):
        read_hadith_records(["", line])


def test_parse_error_reports_line(tmp_path):
    path = tmp_path / "h.jsonl"
    path.write_text(json.dumps(REVELATION_1) + "\n{oops\n", encoding="utf-8")
    with pytest.raises(ParseError) as info:
        parse_hadith_records(path)
    assert info.value.line == 2


def test_unknown_chain_order():
    with pytest.raises(DomainError):
        read_hadith_records([], "backwards")


ids = st.sampled_from([f"n{i}" for i in range(8)])
chains = st.lists(ids, min_size=1, max_size=6, unique=True)
records = st.lists(
    st.tuples(st.text("abc", min_size=1, max_size=3), st.lists(chains, min_size=1, max_size=3)),
    max_size=6,
)


def _records(raw):
    return [HadithRecord("c", b, str(i), tuple(Chain(tuple(c)) for c in cs))
            for i, (b, cs) in enumerate(raw)]


@given(records)
def test_source_first_equals_reversed_compiler_first(raw):
    recs = _records(raw)
    source_text = dumps_hadith_records(recs, ChainOrder.SOURCE_FIRST)
    compiler_lines = []
    for line in source_text.splitlines():
        obj = json.loads(line)
        obj["chains"] = [c[::-1] for c in obj["chains"]]
        compiler_lines.append(json.dumps(obj))
    a = read_hadith_records(source_text.splitlines(), ChainOrder.SOURCE_FIRST)
    b = read_hadith_records(compiler_lines, ChainOrder.COMPILER_FIRST)
    assert a == b == recs


@given(records, st.sampled_from(list(ChainOrder)))
def test_round_trip(raw, order):
    recs = _records(raw)
    assert read_hadith_records(dumps_hadith_records(recs, order).splitlines(), order) == recs


def test_narrator_round_trip():
    table = NarratorTable([Narrator("b", 'has "quotes", commas', 3, "Kufa"),
                           Narrator("a", "A", None, "")])
    again = read_narrators(dumps_narrators(table))
    assert dict(again.entries) == dict(table.entries)


def _table(*ids):
    return NarratorTable(Narrator(i, i, 1) for i in ids)


def test_validate_clean_corpus(sample_records, sample_table):
    report = validate_corpus(sample_records, sample_table)
    assert report.is_clean
    assert report.record_count == 2 and report.multi_chain_count == 1


def test_validate_reports_unknown_id():
    recs = [HadithRecord("c", "b", "1", (Chain(("a", "99999")),))]
    report = validate_corpus(recs, _table("a"))
    assert report.unknown_narrator_refs == [(("c", "b", "1"), "99999")]
    assert not report.is_clean
    assert accepted_records(recs, report) == []


def test_validate_duplicates_and_repeats():
    recs = [
        HadithRecord("c", "b", "1", (Chain(("a", "b")),)),
        HadithRecord("c", "b", "1", (Chain(("b", "a")),)),
        HadithRecord("c", "b", "2", (Chain(("a", "b", "a")),)),
        HadithRecord("c", "b", "3", (Chain(("a",)),)),
    ]
    report = validate_corpus(recs, _table("a", "b"))
    assert report.duplicate_records == [("c", "b", "1")]
    assert report.intra_chain_repeats == [(("c", "b", "2"), "a")]
    assert [r.number for r in accepted_records(recs, report)] == ["3"]
    assert len(report.defect_lines()) == 2


def test_multi_chain_count_on_ten_record_fixture():
    # hand count: records 3 and 7 carry two chains
    recs = []
    for i in range(10):
        chains = [Chain(("a", "b"))]
        if i in (3, 7):
            chains.append(Chain(("c", "b")))
        recs.append(HadithRecord("c", "b", str(i), tuple(chains)))
    report = validate_corpus(recs, _table("a", "b", "c"))
    assert report.multi_chain_count == 2
    assert report.record_count == 10


def test_report_dict_round_trip():
    recs = [HadithRecord("c", "b", "1", (Chain(("a", "zz")),))]
    report = validate_corpus(recs, _table("a"))
    from isnad_sna.ingest import ValidationReport
    assert ValidationReport.from_dict(report.to_dict()) == report
