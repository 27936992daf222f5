import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from uzstem.exceptions import (
    DuplicateEntry,
    EmptySurface,
    LexiconError,
    MalformedXml,
    SchemaViolation,
    UnbalancedParentheses,
    UnknownPlaceholder,
)
from uzstem.lexicon import (
    CLASS_TABLE,
    expand_generic,
    load_lexicon,
    parse_lexicon,
    serialize_lexicon,
    validate_counts,
)
from uzstem.text import normalize_text

from oracles import expansion_oracle, random_generic


def xml(*items: str) -> bytes:
    return ("<suffixes>" + "".join(items) + "</suffixes>").encode()


def item(fsm_id=2, suff_id=1, name="-(i)m", extra=""):
    return (
        f'<item fsm_id="{fsm_id}" suff_id="{suff_id}"{extra}><suffix allomorph="false">'
        f"<name>{name}</name></suffix></item>"
    )


# expansion ----------------------------------------------------------------


@pytest.mark.parametrize(
    "name, expected",
    [
        ("-Ga", ["ga", "ka", "qa"]),
        ("-(i)m", ["im", "m"]),
        ("-liK", ["lik", "lig"]),
        ("-dan", ["dan"]),
        ("-(s)i", ["si", "i"]),
        ("-Qa", ["ka", "ga", "g‘a", "qa"]),
        ("-(a)yotgan", ["ayotgan", "yotgan"]),
    ],
)
def test_expand_fixed(name, expected):
    assert expand_generic(name) == expected


def test_expand_removes_duplicates():
    # both optional groups dropped or either kept can coincide
    assert expand_generic("-(a)(a)b") == ["aab", "ab", "b"]


@pytest.mark.parametrize(
    "name, error",
    [("-Xa", UnknownPlaceholder), ("-((a))b", UnbalancedParentheses), ("-(ab", UnbalancedParentheses), ("-a)b", UnbalancedParentheses)],
)
def test_expand_errors(name, error):
    with pytest.raises(error):
        expand_generic(name)


def test_expand_against_oracle_50_names():
    rng = random.Random(1234)
    for _ in range(50):
        name = random_generic(rng)
        got = expand_generic(name)
        assert len(got) == len(set(got)), name
        assert set(got) == expansion_oracle(name), name


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=2**32))
def test_expand_against_oracle_property(seed):
    name = random_generic(random.Random(seed))
    assert set(expand_generic(name)) == expansion_oracle(name)


@given(st.text(alphabet="abdeilmnorstuxyzGYKQTA()", max_size=8))
def test_expand_is_total_or_raises_expansion_error(name):
    try:
        out = expand_generic(name)
    except (UnknownPlaceholder, UnbalancedParentheses):
        return
    assert len(out) == len(set(out))


# normalization ------------------------------------------------------------


@given(st.text(max_size=20))
def test_normalize_text_fixed_point(s):
    once = normalize_text(s)
    assert normalize_text(once) == once


# parsing ------------------------------------------------------------------


def test_shipped_lexicon_loads(lexicon):
    assert set(lexicon.classes) == set(CLASS_TABLE)
    assert lexicon.entries[(2, 10)].surfaces == ("dan",)
    assert lexicon.entries[(2, 3)].explicit


def test_count_law(lexicon):
    for entry in lexicon.entries.values():
        if not entry.explicit:
            assert entry.surfaces == tuple(expand_generic(entry.generic_name))
    for row in validate_counts(lexicon).rows:
        entries = lexicon.class_entries(row.fsm_id).values()
        assert row.actual == (len(entries), sum(len(e.allomorphs) for e in entries))


def test_counts_full_classes(lexicon):
    report = validate_counts(lexicon)
    assert report.row(2).actual == (21, 29)
    assert report.row(8).actual == (11, 12)
    assert report.row(14).actual == (106, 124)
    assert report.expected_total == (454, 533)
    assert not report.all_match


def test_round_trip(lexicon):
    data = serialize_lexicon(lexicon)
    again = parse_lexicon(data)
    assert again == lexicon
    assert serialize_lexicon(again) == data


def test_exceptions_are_normalized(lexicon):
    i = next(a for a in lexicon.entries[(2, 3)].allomorphs if a.surface == "i")
    assert "o‘qi" in i.exception_pass


def test_unknown_attribute_preserved():
    lex = parse_lexicon(xml(item(extra=' seed="partial"')))
    assert ("seed", "partial") in lex.entries[(2, 1)].extra_attrs
    assert b'seed="partial"' in serialize_lexicon(lex)


def test_explicit_allomorphs():
    lex = parse_lexicon(
        xml(
            '<item fsm_id="2" suff_id="3"><suffix allomorph="true">'
            "<allomorph><name>-si</name></allomorph>"
            "<allomorph><name>-i</name><exception_pass>kishi, O'qi</exception_pass></allomorph>"
            "</suffix></item>"
        )
    )
    entry = lex.entries[(2, 3)]
    assert entry.generic_name == "si/i"
    assert entry.allomorphs[1].exception_pass == ("kishi", "o‘qi")


@pytest.mark.parametrize(
    "data, error",
    [
        (b"<suffixes><item>", MalformedXml),
        (b"<affixes/>", SchemaViolation),
        (xml('<item fsm_id="2"><suffix><name>-a</name></suffix></item>'), SchemaViolation),
        (xml('<item fsm_id="2" suff_id="1"><suffix allomorph="false"/></item>'), SchemaViolation),
        (xml('<item fsm_id="2" suff_id="1"/>'), SchemaViolation),
        (xml('<item fsm_id="x" suff_id="1"><suffix><name>a</name></suffix></item>'), SchemaViolation),
        (xml(item(fsm_id=99)), SchemaViolation),
        (xml(item(), item()), DuplicateEntry),
        (xml(item(name="-")), EmptySurface),
        (xml(item(name="-(a)")), EmptySurface),
        (xml(item(name="-Za")), UnknownPlaceholder),
        (xml('<item fsm_id="2" suff_id="1"><suffix allomorph="true"></suffix></item>'), SchemaViolation),
        (xml('<item fsm_id="2" suff_id="1"><suffix allomorph="maybe"><name>a</name></suffix></item>'), SchemaViolation),
    ],
)
def test_parse_errors(data, error):
    with pytest.raises(error):
        parse_lexicon(data)


def test_all_errors_are_lexicon_errors():
    for error in (MalformedXml, SchemaViolation, DuplicateEntry, EmptySurface, UnknownPlaceholder):
        assert issubclass(error, LexiconError)


def test_load_names_file(tmp_path):
    bad = tmp_path / "bad.xml"
    bad.write_text("<suffixes><item fsm_id='2'/></suffixes>")
    with pytest.raises(SchemaViolation, match="bad.xml"):
        load_lexicon(bad)
    with pytest.raises(SchemaViolation, match="cannot read"):
        load_lexicon(tmp_path / "missing.xml")


def test_class_info_override():
    lex = parse_lexicon(
        xml(
            '<class_info fsm_id="16" name="Test suffixes" type="Derivational" affixes="1" allomorphs="2"/>',
            item(fsm_id=16, name="-Ta"),
        )
    )
    assert lex.class_by_name("test").fsm_id == 16
    assert validate_counts(lex, [16]).all_match
    assert parse_lexicon(serialize_lexicon(lex)) == lex


def test_display_name(lexicon):
    assert lexicon.entries[(11, 1)].display_name == "be-"
    assert lexicon.entries[(2, 10)].display_name == "-dan"
