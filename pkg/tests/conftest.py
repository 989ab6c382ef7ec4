import pytest

from isnad_sna.datasets import sample_corpus
from isnad_sna.ingest import ChainOrder, parse_hadith_records, parse_narrators

FIG5_NARRATORS = """id,name,generation,city
A,Abdullah bin al-Zubair bin 'Isa,10,Makkah
B,Sufyan bin 'Uyaynah,8,Makkah
C,Yahya bin Sa'id al-Ansari,5,Madinah
D,Muhammad bin Ibrahim bin al-Harith,4,Madinah
E,Alqama bin Waqqas,2,Madinah
F,Umar ibn al-Khattab,0,Madinah
"""
# compiler-first, as the sanad is written
FIG5_HADITH = '{"collection": "bukhari", "book": "Revelation", "number": "1", "chains": [["A", "B", "C", "D", "E", "F"]]}\n'


@pytest.fixture
def fig5_files(tmp_path):
    narrators = tmp_path / "fig5_narrators.csv"
    hadith = tmp_path / "fig5_hadith.jsonl"
    narrators.write_text(FIG5_NARRATORS, encoding="utf-8")
    hadith.write_text(FIG5_HADITH, encoding="utf-8")
    return narrators, hadith


@pytest.fixture
def fig5_graph(fig5_files):
    from isnad_sna.graph_build import build_graph

    narrators, hadith = fig5_files
    table = parse_narrators(narrators)
    return build_graph(parse_hadith_records(hadith), table)


@pytest.fixture
def sample_files():
    return sample_corpus()


@pytest.fixture
def sample_table(sample_files):
    return parse_narrators(sample_files[0])


@pytest.fixture
def sample_records(sample_files):
    return parse_hadith_records(sample_files[1], ChainOrder.COMPILER_FIRST)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
