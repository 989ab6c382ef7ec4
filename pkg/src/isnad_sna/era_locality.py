"""Narrator counts by city and era."""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .corpus_model import NarratorTable

ERAS = (1, 2, 3, 4)
OTHER = "other"
UNKNOWN = "unknown"


def _city_key(city: str) -> str:
    return city.strip().casefold()


@dataclass
class EraCityTable:
    rows: dict[str, dict[int, int]]
    excluded: list[str] = field(default_factory=list)
    """Ids of narrators left out for lack of a generation."""

    def total(self, city: str) -> int:
        return sum(self.rows[city].values())

    def column_sums(self) -> dict[int, int]:
        sums = {era: 0 for era in ERAS}
        for row in self.rows.values():
            for era in ERAS:
                sums[era] += row[era]
        return sums


def era_city_table(table: NarratorTable, min_row_total: int = 0) -> EraCityTable:
    """Group narrators by (city, era).

    Cities are compared after trimming and case folding; the label shown is
    the first spelling met in id order. Rows below ``min_row_total`` are merged
    into an ``"other"`` row, and narrators without a city go to ``"unknown"``.
    """
    counts: dict[str, Counter[int]] = defaultdict(Counter)
    labels: dict[str, str] = {}
    excluded = []
    for nid in sorted(table):
        narrator = table[nid]
        if narrator.era is None:
            excluded.append(nid)
            continue
        key = _city_key(narrator.city)
        if not key:
            key = labels[UNKNOWN] = UNKNOWN
        labels.setdefault(key, narrator.city.strip())
        counts[key][narrator.era] += 1

    rows: dict[str, dict[int, int]] = {}
    residual: Counter[int] = Counter()
    for key, counter in counts.items():
        if key != UNKNOWN and sum(counter.values()) < min_row_total:
            residual.update(counter)
            continue
        label = labels[key]
        if label in rows:  # a city literally spelled "other" or "unknown" folds into that row
            for era in ERAS:
                rows[label][era] += counter[era]
        else:
            rows[label] = {era: counter[era] for era in ERAS}
    if residual:
        row = rows.setdefault(OTHER, {era: 0 for era in ERAS})
        for era in ERAS:
            row[era] += residual[era]

    ordered = sorted(rows.items(), key=lambda kv: (-sum(kv[1].values()), kv[0]))
    return EraCityTable(dict(ordered), excluded)


def per_era_counts(table: NarratorTable) -> dict[int, int]:
    counts = Counter(n.era for n in table.values() if n.era is not None)
    return dict(sorted(counts.items()))
