from datetime import datetime, timezone

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from panast.normalize import (
    MOOD_MARKERS,
    TweetRecord,
    is_mood_statement,
    load_stopwords,
    normalize,
    normalize_text,
    parse_record,
    parse_timestamp,
    record_to_json,
    stem,
    tokenize,
)

T0 = datetime(2009, 6, 1, tzinfo=timezone.utc)


def rec(text, **kw):
    return TweetRecord("1", T0, text, **kw)


@pytest.mark.parametrize("text, expected", [
    ("I am so scared about swine flu", True),
    ("Breaking news: earthquake hits the coast", False),
    ("Nobody understands me", True),
    ("I'm done", True),
    ("i’m done", True),
    ("feeling blue", True),
    ("FEELING BLUE", True),
    ("'me' too", True),
    ("Imagine amazing memes", False),
    ("myselfish", False),
    ("http://i.am/me", False),
    ("", False),
])
def test_mood_filter(text, expected):
    assert is_mood_statement(text) is expected
    assert oracle.mood(text) is expected


@pytest.mark.parametrize("text, expected", [
    ("I am so scared about swine flu", ["i", "am", "so", "scared", "about", "swine", "flu"]),
    ("check http://t.co/xyz NOW!!", ["check", "now"]),
    ("", []),
    ("Port-au-Prince, Haiti", ["port", "au", "prince", "haiti"]),
    ("don't @you #sad www.x.com https://a.b", ["dont", "you", "sad"]),
    ("snake_case  tabs\tand\nnewlines", ["snake", "case", "tabs", "and", "newlines"]),
])
def test_tokenize(text, expected):
    assert tokenize(text) == expected


def test_stem_examples():
    assert stem("scared") == "scare"
    assert stem("flu") == "flu"


def test_stem_idempotent_on_lexicon_vocabulary(lexicon):
    words = {w for t in lexicon.terms() for w in t.tokens}
    words |= {w for aux in lexicon.auxiliary.values() for term in aux for w in term.split()}
    stems = {stem(w) for w in words}
    for w in words | stems:
        assert len(w) <= 20
        assert stem(stem(w)) == stem(w), w


def test_worked_example():
    t = normalize(rec("I am so scared about swine flu"), load_stopwords())
    assert t.word_tokens == ("i", "am", "scare", "swine", "flu")
    assert t.phrase_tokens == ("i", "am", "so", "scare", "about", "swine", "flu")
    assert t.word_positions == (0, 1, 3, 5, 6)


@pytest.mark.parametrize("text", ["Stock prices fell sharply", ""])
def test_rejected(text):
    assert normalize(rec(text), load_stopwords()) is None


def test_stopwords_keep_markers_and_phrase_words(lexicon):
    stop = load_stopwords()
    assert not MOOD_MARKERS & stop
    assert not {"at", "with", "self"} & stop
    lexicon_words = {w for t in lexicon.terms() for w in t.tokens}
    assert not lexicon_words & stop
    assert {"the", "so", "about", "and"} <= stop


def test_stopword_override(tmp_path):
    p = tmp_path / "stop.txt"
    p.write_text("# mine\nSwine\nDon't\n", encoding="utf-8")
    assert load_stopwords(p) == {"swine", "dont"}


words = st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=40)


@settings(max_examples=300, deadline=None)
@given(words)
def test_tokens_lowercase_alnum(text):
    for tok in tokenize(text):
        assert tok and tok.isalnum() and tok == tok.casefold()
    assert tokenize(text) == oracle.tokens(text)
    assert is_mood_statement(text) == oracle.mood(text)


@settings(max_examples=300, deadline=None)
@given(words)
def test_normalize_idempotent_on_tokens(text):
    stop = load_stopwords()
    phrase, word, pos = normalize_text(text, stop)
    assert [phrase[i] for i in pos] == list(word)
    again = normalize_text(" ".join(word), stop)
    assert again[1] == word


def test_parse_record_variants():
    r = parse_record('{"id": 7, "created_at": "2009-06-01T10:00:00+02:00", "text": "x", "region": "US"}')
    assert r.id == "7" and r.region == "US"
    assert r.created_at == datetime(2009, 6, 1, 8, 0, tzinfo=timezone.utc)
    assert parse_record(b'{"id": "a", "created_at": "2009-06-01T10:00:00", "text": "x"}').created_at.tzinfo
    for bad in ['{"id": "", "created_at": "2009-06-01T00:00:00Z", "text": "x"}',
                '{"id": true, "created_at": "2009-06-01T00:00:00Z", "text": "x"}',
                '{"id": "a", "created_at": "yesterday", "text": "x"}',
                '{"id": "a", "created_at": "2009-06-01T00:00:00Z", "text": 5}',
                '{"id": "a", "created_at": "2009-06-01T00:00:00Z", "text": "x", "lang": 1}',
                '[1]', 'not json', '']:
        assert parse_record(bad) is None, bad
    assert parse_record('{"id": "a", "created_at": "2009-06-01T00:00:00Z", "text": "' + "x" * 4097 + '"}') is None


def test_record_json_round_trip():
    r = TweetRecord("9", datetime(2009, 6, 1, 1, 2, 3, tzinfo=timezone.utc), "I’m ok ✓", "en", "EU")
    assert parse_record(record_to_json(r)) == r


def test_parse_timestamp_truncates():
    assert parse_timestamp("2009-06-01T00:00:00.900Z").microsecond == 0
    with pytest.raises(ValueError):
        parse_timestamp(None)
