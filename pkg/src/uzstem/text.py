"""Orthographic normalization for Uzbek Latin text."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass

from .exceptions import EmptyInput

#: Canonical apostrophe used in o‘ and g‘ (and the tutuq sign).
APOSTROPHE = "‘"

_APOSTROPHE_VARIANTS = "‘’ʻʼ`'"
_APOSTROPHE_TABLE = str.maketrans({ch: APOSTROPHE for ch in _APOSTROPHE_VARIANTS})

#: Letters a word may contain and still be considered for stripping.
ALPHABET = frozenset("abcdefghijklmnopqrstuvxyz" + APOSTROPHE)


@dataclass(frozen=True)
class NormalizedWord:
    text: str
    original: str

    def __str__(self) -> str:
        return self.text


def canonical_apostrophes(text: str) -> str:
    return text.translate(_APOSTROPHE_TABLE)


def normalize_text(raw: str) -> str:
    """NFC, canonical apostrophes, case-folded, trimmed. May return ''."""
    text = unicodedata.normalize("NFC", raw)
    return canonical_apostrophes(text).casefold().strip()


def normalize(raw: str) -> NormalizedWord:
    """Normalize a single token.

    >>> normalize("  Yaxshi ").text
    'yaxshi'
    >>> normalize("O'qi").text == "o‘qi"
    True
    """
    text = normalize_text(raw)
    if not text:
        raise EmptyInput("empty word")
    return NormalizedWord(text=text, original=raw)


def letter_count(text: str) -> int:
    # o‘ and g‘ are single letters; the apostrophe itself never counts
    return len(text) - text.count(APOSTROPHE)


def is_strippable(text: str) -> bool:
    return bool(text) and all(ch in ALPHABET for ch in text)
