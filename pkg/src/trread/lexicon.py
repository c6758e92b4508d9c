"""Lexical resources: frequency lexicons and word-familiarity lists."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .corpus import turkish_lower
from .errors import ConfigError


@dataclass(frozen=True)
class Lexicon:
    """Lemma -> frequency map with Turkish-lowercased keys.

    Familiarity word lists are lexicons whose entries all have frequency 1.
    """

    name: str
    entries: dict[str, int]

    def __contains__(self, lemma: str) -> bool:
        return turkish_lower(lemma) in self.entries

    def frequency(self, lemma: str) -> int:
        return self.entries.get(turkish_lower(lemma), 0)

    def __len__(self) -> int:
        return len(self.entries)


def load_frequency_lexicon(path: str | Path, name: str | None = None) -> Lexicon:
    """Load a UTF-8 TSV ``lemma<TAB>count`` file; repeated lemmas sum."""
    path = Path(path)
    entries: dict[str, int] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise ConfigError(
                    f"{path}:{lineno}: expected lemma<TAB>count")
            lemma = turkish_lower(parts[0].strip())
            try:
                count = int(parts[1])
            except ValueError:
                raise ConfigError(
                    f"{path}:{lineno}: non-integer count {parts[1]!r}") from None
            if count < 0:
                raise ConfigError(f"{path}:{lineno}: negative count")
            entries[lemma] = entries.get(lemma, 0) + count
    return Lexicon(name=name or path.stem, entries=entries)


def load_word_list(path: str | Path, name: str | None = None) -> Lexicon:
    """Load a one-lemma-per-line list; every entry gets frequency 1."""
    path = Path(path)
    entries: dict[str, int] = {}
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            lemma = turkish_lower(line.strip())
            if lemma and not lemma.startswith("#"):
                entries[lemma] = 1
    return Lexicon(name=name or path.stem, entries=entries)
