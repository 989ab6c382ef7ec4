"""Bundled two-hadith sample corpus (Revelation 1 and Jihad 133).

Only the ids 20005 and 20297 are real muslimscholars.info identifiers; the
other ids are readable slugs, and generations/cities are illustrative.
"""

from importlib import resources
from pathlib import Path


def sample_corpus() -> tuple[Path, Path]:
    """Paths of the sample ``(narrators.csv, hadith.jsonl)``; chains are compiler-first."""
    root = resources.files("isnad_sna") / "data"
    return Path(str(root / "narrators.csv")), Path(str(root / "hadith.jsonl"))
