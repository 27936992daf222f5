"""Affix lexicon: XML parsing, generic-name expansion and count validation.

The lexicon file has the layout::

    <suffixes>
      <item fsm_id="2" suff_id="8" group="case" pos="noun" class="inflectional">
        <suffix allomorph="false">
          <name>-Ga</name>
          <exception_cut></exception_cut>
          <exception_pass></exception_pass>
        </suffix>
        <definition>dative case</definition>
        <old_pos>noun</old_pos>
        <new_pos>noun</new_pos>
      </item>
    </suffixes>

With ``allomorph="true"`` the ``<suffix>`` element instead holds a list of
``<allomorph>`` children, each carrying its own ``<name>`` and exception lists.
Optional ``<class_info>`` elements under the root declare or override the
affix class table (name, type, declared counts).
"""

from __future__ import annotations

import itertools
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .exceptions import (
    DuplicateEntry,
    EmptySurface,
    LexiconError,
    MalformedXml,
    SchemaViolation,
    UnbalancedParentheses,
    UnknownPlaceholder,
)
from .text import APOSTROPHE, canonical_apostrophes, normalize_text

INFLECTIONAL = "Inflectional"
DERIVATIONAL = "Derivational"

#: Placeholder capitals used in generic affix names, with their letters in order.
PLACEHOLDERS: dict[str, tuple[str, ...]] = {
    "G": ("g", "k", "q"),
    "Y": ("a", "y"),
    "K": ("k", "g"),
    "Q": ("k", "g", "g" + APOSTROPHE, "q"),
    "T": ("t", "d"),
    "A": ("a", "o"),
}

ITEM_ATTRS = ("fsm_id", "suff_id", "group", "pos", "class")


@dataclass(frozen=True)
class AffixClassInfo:
    fsm_id: int
    name: str
    kind: str
    declared_affix_count: int
    declared_allomorph_count: int


def _table(rows) -> dict[int, AffixClassInfo]:
    return {row[0]: AffixClassInfo(*row) for row in rows}


#: The fifteen affix classes of the Uzbek lexicon with their declared sizes.
CLASS_TABLE: dict[int, AffixClassInfo] = _table(
    [
        (1, "Particle suffixes", INFLECTIONAL, 10, 12),
        (2, "Declension suffixes", INFLECTIONAL, 21, 29),
        (3, "Conjugation suffixes", INFLECTIONAL, 34, 15),
        (4, "Participle & Gerund suffixes", INFLECTIONAL, 12, 19),
        (5, "Verbal Adverb suffixes", INFLECTIONAL, 10, 20),
        (6, "Relative verb suffixes", INFLECTIONAL, 15, 25),
        (7, "Derivational [from verb to noun]", DERIVATIONAL, 8, 13),
        (8, "Noun & Adjective suffixes", INFLECTIONAL, 11, 12),
        (9, "Number suffixes", INFLECTIONAL, 11, 12),
        (10, "Pronouns suffixes", INFLECTIONAL, 2, 2),
        (11, "Prefixes", DERIVATIONAL, 7, 7),
        (12, "Derivational [Verb] suffixes", DERIVATIONAL, 67, 73),
        (13, "Derivational [Adjective] suffixes", DERIVATIONAL, 113, 137),
        (14, "Derivational [Noun] suffixes", DERIVATIONAL, 106, 124),
        (15, "Derivational [Adverb] suffixes", DERIVATIONAL, 27, 33),
    ]
)


@dataclass(frozen=True)
class Allomorph:
    surface: str
    exception_cut: tuple[str, ...] = ()
    exception_pass: tuple[str, ...] = ()


@dataclass(frozen=True)
class AffixEntry:
    fsm_id: int
    suff_id: int
    generic_name: str
    allomorphs: tuple[Allomorph, ...]
    group: str = ""
    pos: str = ""
    class_attr: str = ""
    definition: str = ""
    old_pos: str = ""
    new_pos: str = ""
    explicit: bool = False
    extra_attrs: tuple[tuple[str, str], ...] = ()

    @property
    def key(self) -> tuple[int, int]:
        return (self.fsm_id, self.suff_id)

    @property
    def surfaces(self) -> tuple[str, ...]:
        return tuple(a.surface for a in self.allomorphs)

    @property
    def display_name(self) -> str:
        if self.fsm_id == PREFIX_CLASS_ID:
            return self.generic_name + "-"
        return "-" + self.generic_name


PREFIX_CLASS_ID = 11


@dataclass(frozen=True)
class Lexicon:
    """Read-only affix inventory keyed by ``(fsm_id, suff_id)``."""

    classes: Mapping[int, AffixClassInfo]
    entries: Mapping[tuple[int, int], AffixEntry]

    def class_entries(self, fsm_id: int) -> dict[int, AffixEntry]:
        return {
            suff_id: entry
            for (fid, suff_id), entry in sorted(self.entries.items())
            if fid == fsm_id
        }

    def class_by_name(self, name: str) -> AffixClassInfo:
        wanted = _name_key(name)
        for info in self.classes.values():
            if _name_key(info.name) == wanted:
                return info
        raise KeyError(name)


def _name_key(name: str) -> str:
    key = " ".join(name.lower().split())
    for tail in (" suffixes", " suffix"):
        if key.endswith(tail):
            key = key[: -len(tail)]
    return key


# --------------------------------------------------------------------------
# Expansion
# --------------------------------------------------------------------------


def _strip_hyphens(name: str) -> str:
    return name.strip().strip("-").strip()


def _segments(name: str) -> list[list[str]]:
    segments: list[list[str]] = []
    i = 0
    while i < len(name):
        ch = name[i]
        if ch == "(":
            close = name.find(")", i + 1)
            if close < 0:
                raise UnbalancedParentheses(f"unclosed '(' in {name!r}")
            inner = name[i + 1 : close]
            if "(" in inner:
                raise UnbalancedParentheses(f"nested '(' in {name!r}")
            segments.append(_expand_plain(inner, name) + [""])
            i = close + 1
        elif ch == ")":
            raise UnbalancedParentheses(f"unmatched ')' in {name!r}")
        else:
            segments.append(_letter_options(ch, name))
            i += 1
    return segments


def _letter_options(ch: str, name: str) -> list[str]:
    if ch in PLACEHOLDERS:
        return list(PLACEHOLDERS[ch])
    if ch.isupper():
        raise UnknownPlaceholder(f"unknown placeholder {ch!r} in {name!r}")
    return [ch]


def _expand_plain(text: str, name: str) -> list[str]:
    options = [_letter_options(ch, name) for ch in text]
    return ["".join(combo) for combo in itertools.product(*options)]


def expand_generic(generic_name: str) -> list[str]:
    """Expand a generic affix name into its concrete surfaces.

    Placeholders are replaced by each of their letters and every
    parenthesized segment is both kept and dropped, keeping before dropping.
    Duplicates are removed, first occurrence wins.

    >>> expand_generic("-Ga")
    ['ga', 'ka', 'qa']
    >>> expand_generic("-(i)m")
    ['im', 'm']
    """
    name = canonical_apostrophes(_strip_hyphens(generic_name))
    seen: dict[str, None] = {}
    for combo in itertools.product(*_segments(name)):
        seen.setdefault(normalize_text("".join(combo)), None)
    return list(seen)


# --------------------------------------------------------------------------
# Parsing
# --------------------------------------------------------------------------


def _split_words(text: str | None) -> tuple[str, ...]:
    if not text:
        return ()
    words = (normalize_text(w) for w in text.split(","))
    return tuple(dict.fromkeys(w for w in words if w))


def _int_attr(elem: ET.Element, attr: str, where: str) -> int:
    value = elem.get(attr)
    if value is None or not value.strip():
        raise SchemaViolation(f"{where}: missing attribute {attr!r}")
    try:
        return int(value)
    except ValueError:
        raise SchemaViolation(f"{where}: attribute {attr!r} is not an integer: {value!r}")


def _text(elem: ET.Element, tag: str) -> str:
    child = elem.find(tag)
    if child is None or child.text is None:
        return ""
    return child.text.strip()


def _allomorph_from(elem: ET.Element, where: str) -> Allomorph:
    name_elem = elem.find("name")
    if name_elem is None:
        raise SchemaViolation(f"{where}: missing <name>")
    raw = _strip_hyphens(name_elem.text or "")
    if "(" in raw or ")" in raw:
        raise SchemaViolation(f"{where}: explicit allomorph {raw!r} contains parentheses")
    surface = normalize_text(raw)
    if not surface:
        raise EmptySurface(f"{where}: empty allomorph name")
    return Allomorph(
        surface=surface,
        exception_cut=_split_words(_text(elem, "exception_cut")),
        exception_pass=_split_words(_text(elem, "exception_pass")),
    )


def _parse_item(item: ET.Element, index: int) -> AffixEntry:
    where = f"item #{index}"
    fsm_id = _int_attr(item, "fsm_id", where)
    suff_id = _int_attr(item, "suff_id", where)
    where = f"item #{index} (fsm_id={fsm_id}, suff_id={suff_id})"

    suffix = item.find("suffix")
    if suffix is None:
        raise SchemaViolation(f"{where}: missing <suffix>")
    flag = (suffix.get("allomorph") or "false").strip().lower()
    if flag not in ("true", "false"):
        raise SchemaViolation(f"{where}: allomorph attribute must be true or false, got {flag!r}")

    if flag == "false":
        name_elem = suffix.find("name")
        if name_elem is None:
            raise SchemaViolation(f"{where}: missing <name>")
        generic = canonical_apostrophes(_strip_hyphens(name_elem.text or ""))
        if not generic:
            raise EmptySurface(f"{where}: empty <name>")
        cut = _split_words(_text(suffix, "exception_cut"))
        keep = _split_words(_text(suffix, "exception_pass"))
        surfaces = expand_generic(generic)
        if any(not s for s in surfaces):
            raise EmptySurface(f"{where}: {generic!r} expands to an empty surface")
        allomorphs = tuple(Allomorph(s, cut, keep) for s in surfaces)
    else:
        children = suffix.findall("allomorph")
        if not children:
            raise SchemaViolation(f"{where}: allomorph=\"true\" but no <allomorph> children")
        allomorphs = tuple(
            _allomorph_from(child, f"{where} allomorph #{n}")
            for n, child in enumerate(children, 1)
        )
        name_elem = suffix.find("name")
        if name_elem is not None and _strip_hyphens(name_elem.text or ""):
            generic = canonical_apostrophes(_strip_hyphens(name_elem.text))
        else:
            generic = "/".join(a.surface for a in allomorphs)

    extras = tuple(sorted((k, v) for k, v in item.attrib.items() if k not in ITEM_ATTRS))
    return AffixEntry(
        fsm_id=fsm_id,
        suff_id=suff_id,
        generic_name=generic,
        allomorphs=allomorphs,
        group=item.get("group", ""),
        pos=item.get("pos", ""),
        class_attr=item.get("class", ""),
        definition=_text(item, "definition"),
        old_pos=_text(item, "old_pos"),
        new_pos=_text(item, "new_pos"),
        explicit=flag == "true",
        extra_attrs=extras,
    )


def _parse_class_info(elem: ET.Element, index: int) -> AffixClassInfo:
    where = f"class_info #{index}"
    fsm_id = _int_attr(elem, "fsm_id", where)
    base = CLASS_TABLE.get(fsm_id)
    name = elem.get("name") or (base.name if base else "")
    if not name:
        raise SchemaViolation(f"{where}: missing attribute 'name'")
    kind = elem.get("type") or (base.kind if base else "")
    if kind not in (INFLECTIONAL, DERIVATIONAL):
        raise SchemaViolation(f"{where}: type must be {INFLECTIONAL} or {DERIVATIONAL}")
    affixes = elem.get("affixes")
    allomorphs = elem.get("allomorphs")
    return AffixClassInfo(
        fsm_id=fsm_id,
        name=name,
        kind=kind,
        declared_affix_count=(
            _int_attr(elem, "affixes", where) if affixes else (base.declared_affix_count if base else 0)
        ),
        declared_allomorph_count=(
            _int_attr(elem, "allomorphs", where)
            if allomorphs
            else (base.declared_allomorph_count if base else 0)
        ),
    )


def parse_lexicon(xml_bytes: bytes) -> Lexicon:
    """Parse a ``Suffixes.xml`` document into a :class:`Lexicon`."""
    try:
        root = ET.fromstring(xml_bytes)
    except ET.ParseError as exc:
        raise MalformedXml(f"not well-formed XML: {exc}") from exc
    if root.tag != "suffixes":
        raise SchemaViolation(f"root element must be <suffixes>, got <{root.tag}>")

    classes: dict[int, AffixClassInfo] = {}
    for n, elem in enumerate(root.findall("class_info"), 1):
        info = _parse_class_info(elem, n)
        if info.fsm_id in classes:
            raise DuplicateEntry(f"class_info #{n}: fsm_id {info.fsm_id} declared twice")
        classes[info.fsm_id] = info

    entries: dict[tuple[int, int], AffixEntry] = {}
    for n, item in enumerate(root.findall("item"), 1):
        entry = _parse_item(item, n)
        if entry.key in entries:
            raise DuplicateEntry(
                f"item #{n}: duplicate (fsm_id={entry.fsm_id}, suff_id={entry.suff_id})"
            )
        if entry.fsm_id not in classes:
            if entry.fsm_id not in CLASS_TABLE:
                raise SchemaViolation(
                    f"item #{n}: fsm_id {entry.fsm_id} is not a known class and has no <class_info>"
                )
            classes[entry.fsm_id] = CLASS_TABLE[entry.fsm_id]
        entries[entry.key] = entry

    return Lexicon(
        classes=dict(sorted(classes.items())),
        entries=dict(sorted(entries.items())),
    )


def load_lexicon(path: str | Path) -> Lexicon:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise SchemaViolation(f"{path}: cannot read lexicon: {exc}") from exc
    try:
        return parse_lexicon(data)
    except LexiconError as exc:
        raise type(exc)(f"{path}: {exc}") from exc


# --------------------------------------------------------------------------
# Serialization
# --------------------------------------------------------------------------


def _sub(parent: ET.Element, tag: str, text: str) -> ET.Element:
    elem = ET.SubElement(parent, tag)
    elem.text = text
    return elem


def _exceptions_into(parent: ET.Element, allomorph: Allomorph) -> None:
    _sub(parent, "exception_cut", ",".join(allomorph.exception_cut))
    _sub(parent, "exception_pass", ",".join(allomorph.exception_pass))


def serialize_lexicon(lexicon: Lexicon) -> bytes:
    """Canonical XML for ``lexicon``; ``parse_lexicon`` inverts it."""
    root = ET.Element("suffixes")
    for info in lexicon.classes.values():
        ET.SubElement(
            root,
            "class_info",
            {
                "fsm_id": str(info.fsm_id),
                "name": info.name,
                "type": info.kind,
                "affixes": str(info.declared_affix_count),
                "allomorphs": str(info.declared_allomorph_count),
            },
        )
    for entry in lexicon.entries.values():
        attrs = {
            "fsm_id": str(entry.fsm_id),
            "suff_id": str(entry.suff_id),
            "group": entry.group,
            "pos": entry.pos,
            "class": entry.class_attr,
        }
        attrs.update(entry.extra_attrs)
        item = ET.SubElement(root, "item", attrs)
        suffix = ET.SubElement(item, "suffix", {"allomorph": "true" if entry.explicit else "false"})
        if entry.explicit:
            if entry.generic_name != "/".join(entry.surfaces):
                _sub(suffix, "name", entry.display_name)
            for allomorph in entry.allomorphs:
                child = ET.SubElement(suffix, "allomorph")
                _sub(child, "name", allomorph.surface)
                _exceptions_into(child, allomorph)
        else:
            _sub(suffix, "name", entry.display_name)
            _exceptions_into(suffix, entry.allomorphs[0])
        _sub(item, "definition", entry.definition)
        _sub(item, "old_pos", entry.old_pos)
        _sub(item, "new_pos", entry.new_pos)
    ET.indent(root, space="  ")
    body = ET.tostring(root, encoding="unicode")
    return ("<?xml version='1.0' encoding='UTF-8'?>\n" + body + "\n").encode("utf-8")


# --------------------------------------------------------------------------
# Count validation
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassCount:
    fsm_id: int
    name: str
    expected: tuple[int, int]
    actual: tuple[int, int]

    @property
    def match(self) -> bool:
        return self.expected == self.actual


@dataclass(frozen=True)
class CountReport:
    rows: tuple[ClassCount, ...] = field(default_factory=tuple)

    @property
    def all_match(self) -> bool:
        return all(row.match for row in self.rows)

    @property
    def expected_total(self) -> tuple[int, int]:
        return (sum(r.expected[0] for r in self.rows), sum(r.expected[1] for r in self.rows))

    @property
    def actual_total(self) -> tuple[int, int]:
        return (sum(r.actual[0] for r in self.rows), sum(r.actual[1] for r in self.rows))

    def row(self, fsm_id: int) -> ClassCount:
        for row in self.rows:
            if row.fsm_id == fsm_id:
                return row
        raise KeyError(fsm_id)


def validate_counts(lexicon: Lexicon, classes: Iterable[int] | None = None) -> CountReport:
    """Compare per-class affix and allomorph counts with the declared sizes.

    Mismatches are reported, never raised.
    """
    ids = sorted(lexicon.classes) if classes is None else sorted(classes)
    rows = []
    for fsm_id in ids:
        info = lexicon.classes.get(fsm_id) or CLASS_TABLE[fsm_id]
        entries = lexicon.class_entries(fsm_id).values()
        actual = (len(entries), sum(len(e.allomorphs) for e in entries))
        rows.append(
            ClassCount(
                fsm_id=fsm_id,
                name=info.name,
                expected=(info.declared_affix_count, info.declared_allomorph_count),
                actual=actual,
            )
        )
    return CountReport(tuple(rows))
