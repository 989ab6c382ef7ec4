"""Reading, writing and validating the offline corpus files.

Narrator file: CSV with header ``id,name,generation,city``.
Hadith file: JSON Lines, one record per line::

    {"collection": "bukhari", "book": "Revelation", "number": "1",
     "chains": [["A", "B", "C"]]}

Sanad text lists the compiler's teacher first, so chains in hadith files are
compiler-first by default and get reversed on the way in.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import os
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .corpus_model import Chain, HadithRecord, Narrator, NarratorTable
from .errors import DomainError, ParseError, ValidationError

NARRATOR_HEADER = ("id", "name", "generation", "city")
RecordKey = tuple[str, str, str]


class ChainOrder(enum.Enum):
    SOURCE_FIRST = "source-first"
    COMPILER_FIRST = "compiler-first"

    @classmethod
    def parse(cls, value: "str | ChainOrder") -> "ChainOrder":
        if isinstance(value, cls):
            return value
        try:
            return cls(value)
        except ValueError:
            raise DomainError(
                f"chain order must be 'source-first' or 'compiler-first', got {value!r}"
            ) from None


def _format_key(key: RecordKey) -> str:
    return "/".join(key)


@dataclass
class ValidationReport:
    unknown_narrator_refs: list[tuple[RecordKey, str]] = field(default_factory=list)
    duplicate_records: list[RecordKey] = field(default_factory=list)
    intra_chain_repeats: list[tuple[RecordKey, str]] = field(default_factory=list)
    record_count: int = 0
    multi_chain_count: int = 0

    @property
    def is_clean(self) -> bool:
        return not (
            self.unknown_narrator_refs or self.duplicate_records or self.intra_chain_repeats
        )

    @property
    def excluded_keys(self) -> set[RecordKey]:
        """Keys of records quarantined from graph building."""
        return (
            {k for k, _ in self.unknown_narrator_refs}
            | {k for k, _ in self.intra_chain_repeats}
            | set(self.duplicate_records)
        )

    def defect_lines(self) -> list[str]:
        lines = []
        for key, nid in self.unknown_narrator_refs:
            lines.append(f"unknown narrator {nid!r} in record {_format_key(key)}")
        for key in self.duplicate_records:
            lines.append(f"duplicate record {_format_key(key)}")
        for key, nid in self.intra_chain_repeats:
            lines.append(f"narrator {nid!r} repeated within a chain of {_format_key(key)}")
        return lines

    def render(self) -> str:
        lines = [
            f"records: {self.record_count}",
            f"multi-chain records: {self.multi_chain_count}",
            f"defects: {len(self.defect_lines())}",
        ]
        lines += ["  " + line for line in self.defect_lines()]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "unknown_narrator_refs": [[list(k), n] for k, n in self.unknown_narrator_refs],
            "duplicate_records": [list(k) for k in self.duplicate_records],
            "intra_chain_repeats": [[list(k), n] for k, n in self.intra_chain_repeats],
            "record_count": self.record_count,
            "multi_chain_count": self.multi_chain_count,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ValidationReport":
        return cls(
            unknown_narrator_refs=[(tuple(k), n) for k, n in data["unknown_narrator_refs"]],
            duplicate_records=[tuple(k) for k in data["duplicate_records"]],
            intra_chain_repeats=[(tuple(k), n) for k, n in data["intra_chain_repeats"]],
            record_count=data["record_count"],
            multi_chain_count=data["multi_chain_count"],
        )


def _parse_generation(raw: str, path, line: int) -> int | None:
    raw = raw.strip()
    if not raw:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"generation {raw!r} is not an integer", path, line) from None


def read_narrators(text: str, path=None) -> NarratorTable:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("missing header row", path, 1) from None
    if tuple(h.strip().lower() for h in header) != NARRATOR_HEADER:
        raise ParseError(f"expected header {','.join(NARRATOR_HEADER)}", path, 1)
    narrators = []
    seen: set[str] = set()
    for row in reader:
        line = reader.line_num
        if not row:
            continue
        if len(row) != len(NARRATOR_HEADER):
            raise ParseError(f"expected 4 fields, got {len(row)}", path, line)
        nid, name, generation, city = (v.strip() for v in row)
        if not nid:
            raise ParseError("empty narrator id", path, line)
        if nid in seen:
            raise ValidationError(f"{path or '<text>'}:{line}: duplicate narrator id {nid!r}")
        seen.add(nid)
        gen = _parse_generation(generation, path, line)
        try:
            narrators.append(Narrator(nid, name, gen, city))
        except DomainError as exc:
            raise DomainError(f"{path or '<text>'}:{line}: {exc}") from None
    return NarratorTable(narrators)


def parse_narrators(path: str | os.PathLike) -> NarratorTable:
    """Load a narrator CSV; era is derived from generation."""
    with open(path, encoding="utf-8", newline="") as fh:
        return read_narrators(fh.read(), path)


def _as_str(value, what: str, path, line: int) -> str:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ParseError(f"field {what!r} must be a string", path, line)
    return str(value)


def read_hadith_records(
    lines: Iterable[str], order: "ChainOrder | str" = ChainOrder.COMPILER_FIRST, path=None
) -> list[HadithRecord]:
    order = ChainOrder.parse(order)
    records = []
    for lineno, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", path, lineno) from None
        if not isinstance(obj, dict):
            raise ParseError("record must be a JSON object", path, lineno)
        missing = [f for f in ("collection", "book", "number", "chains") if f not in obj]
        if missing:
            raise ParseError(f"missing field(s): {', '.join(missing)}", path, lineno)
        collection = _as_str(obj["collection"], "collection", path, lineno)
        book = _as_str(obj["book"], "book", path, lineno)
        number = _as_str(obj["number"], "number", path, lineno)
        raw_chains = obj["chains"]
        if not isinstance(raw_chains, list) or not all(isinstance(c, list) for c in raw_chains):
            raise ParseError("'chains' must be an array of arrays", path, lineno)
        if not raw_chains:
            raise ValidationError(
                f"{path or '<text>'}:{lineno}: record {collection}/{book}/{number} has no chains"
            )
        chains = []
        for raw_chain in raw_chains:
            if not raw_chain:
                raise ValidationError(f"{path or '<text>'}:{lineno}: empty chain")
            ids = [_as_str(n, "chains", path, lineno).strip() for n in raw_chain]
            if order is ChainOrder.COMPILER_FIRST:
                ids.reverse()
            chains.append(Chain(tuple(ids)))
        records.append(HadithRecord(collection, book, number, tuple(chains)))
    return records


def parse_hadith_records(
    path: str | os.PathLike, order: "ChainOrder | str" = ChainOrder.COMPILER_FIRST
) -> list[HadithRecord]:
    """Load a JSON Lines hadith file, normalising every chain to source-first."""
    with open(path, encoding="utf-8") as fh:
        return read_hadith_records(fh, order, path)


def dumps_hadith_records(
    records: Iterable[HadithRecord], order: "ChainOrder | str" = ChainOrder.COMPILER_FIRST
) -> str:
    """Inverse of :func:`read_hadith_records` for the given chain order."""
    order = ChainOrder.parse(order)
    out = []
    for rec in records:
        chains = [
            list(c.narrators[::-1] if order is ChainOrder.COMPILER_FIRST else c.narrators)
            for c in rec.chains
        ]
        out.append(
            json.dumps(
                {"collection": rec.collection, "book": rec.book, "number": rec.number,
                 "chains": chains},
                ensure_ascii=False,
            )
        )
    return "".join(line + "\n" for line in out)


def dumps_narrators(table: NarratorTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(NARRATOR_HEADER)
    for nid in sorted(table):
        n = table[nid]
        writer.writerow([n.id, n.name, "" if n.generation is None else n.generation, n.city])
    return buf.getvalue()


def validate_corpus(records: Sequence[HadithRecord], table: NarratorTable) -> ValidationReport:
    """Collect every defect in the corpus; nothing is raised."""
    report = ValidationReport(record_count=len(records))
    counts = Counter(r.key for r in records)
    report.duplicate_records = sorted(k for k, c in counts.items() if c > 1)
    for rec in records:
        if len(rec.chains) >= 2:
            report.multi_chain_count += 1
        unknown: list[str] = []
        repeated: list[str] = []
        for chain in rec.chains:
            for nid in chain:
                if nid not in table and nid not in unknown:
                    unknown.append(nid)
            for nid, c in Counter(chain.narrators).items():
                if c > 1 and nid not in repeated:
                    repeated.append(nid)
        report.unknown_narrator_refs += [(rec.key, nid) for nid in unknown]
        report.intra_chain_repeats += [(rec.key, nid) for nid in repeated]
    return report


def accepted_records(
    records: Sequence[HadithRecord], report: ValidationReport
) -> list[HadithRecord]:
    """Records that survive quarantine and may be folded into the graph."""
    excluded = report.excluded_keys
    return [r for r in records if r.key not in excluded]
