"""Domain types for narrators, chains and hadith records.

All types are frozen; a chain is stored source-first, i.e. the narrator who
heard the hadith first (closest to the Prophet) comes first and the last
transmitter (the compiler's teacher) comes last.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import DomainError, UnknownNarratorError, ValidationError

MIN_GENERATION = 0
MAX_GENERATION = 12

# generation -> era; companions, Tabioon, Tabi-Tabioon, Tabi-Tabi-Tabioon
_ERA_BY_GENERATION = (1, 2, 2, 2, 2, 2, 2, 3, 3, 3, 4, 4, 4)


def era_of_generation(generation: int) -> int:
    """Map a generation number (0..12) to its transmission era (1..4).

    >>> [era_of_generation(g) for g in (0, 1, 6, 7, 9, 10, 12)]
    [1, 2, 2, 3, 3, 4, 4]
    """
    if isinstance(generation, bool) or not isinstance(generation, int):
        raise DomainError(f"generation must be an integer, got {generation!r}")
    if not MIN_GENERATION <= generation <= MAX_GENERATION:
        raise DomainError(
            f"generation {generation} outside {MIN_GENERATION}..{MAX_GENERATION}"
        )
    return _ERA_BY_GENERATION[generation]


@dataclass(frozen=True)
class Narrator:
    id: str
    name: str
    generation: int | None
    city: str = ""
    era: int | None = field(init=False)

    def __post_init__(self) -> None:
        if not self.id:
            raise ValidationError("narrator id must be non-empty")
        # unknown generation is tolerated and reported by the era tables
        era = None if self.generation is None else era_of_generation(self.generation)
        object.__setattr__(self, "era", era)


class NarratorTable(Mapping[str, Narrator]):
    """Read-only id -> Narrator lookup."""

    def __init__(self, narrators: Iterable[Narrator] = ()):
        entries: dict[str, Narrator] = {}
        for narrator in narrators:
            if narrator.id in entries:
                raise ValidationError(f"duplicate narrator id {narrator.id!r}")
            entries[narrator.id] = narrator
        self._entries = MappingProxyType(entries)

    def __getitem__(self, narrator_id: str) -> Narrator:
        try:
            return self._entries[narrator_id]
        except KeyError:
            raise UnknownNarratorError(narrator_id) from None

    def __iter__(self) -> Iterator[str]:
        return iter(self._entries)

    def __len__(self) -> int:
        return len(self._entries)

    def __repr__(self) -> str:
        return f"NarratorTable({len(self)} narrators)"

    @property
    def entries(self) -> Mapping[str, Narrator]:
        return self._entries

    def restricted_to(self, ids: Iterable[str]) -> "NarratorTable":
        return NarratorTable(self._entries[i] for i in ids if i in self._entries)


@dataclass(frozen=True)
class Chain:
    """Ordered narrator ids, source first.

    Repeated ids are not rejected here: ingestion must be able to hold a
    defective chain long enough for ``validate_corpus`` to report it.
    Use :meth:`is_simple` to check the simple-path invariant.
    """

    narrators: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "narrators", tuple(self.narrators))
        if not self.narrators:
            raise ValidationError("a chain needs at least one narrator")

    def __len__(self) -> int:
        return len(self.narrators)

    def __iter__(self) -> Iterator[str]:
        return iter(self.narrators)

    def is_simple(self) -> bool:
        return len(set(self.narrators)) == len(self.narrators)

    def pairs(self) -> list[tuple[str, str]]:
        """Adjacent (teacher, student) pairs along the chain."""
        return list(zip(self.narrators, self.narrators[1:]))

    def reversed(self) -> "Chain":
        return Chain(self.narrators[::-1])


@dataclass(frozen=True)
class HadithRecord:
    collection: str
    book: str
    number: str
    chains: tuple[Chain, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "chains", tuple(self.chains))
        if not self.chains:
            raise ValidationError(f"record {self.key} has no chains")

    @property
    def key(self) -> tuple[str, str, str]:
        return (self.collection, self.book, self.number)

    @property
    def narrator_ids(self) -> set[str]:
        return {n for chain in self.chains for n in chain}
