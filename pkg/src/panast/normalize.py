"""Mood-statement filter and the tweet cleaning pipeline.

Token views produced for every accepted tweet:

* ``phrase_tokens``: case-folded, URLs dropped, apostrophes removed, split on
  every other non-alphanumeric character, then stemmed. Stop words retained.
* ``word_tokens``: ``phrase_tokens`` minus tokens whose unstemmed form is a
  stop word.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from datetime import date, datetime, timezone
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable

import snowballstemmer

MOOD_MARKERS = frozenset({"i'm", "i", "am", "feeling", "me", "myself"})
URL_PREFIXES = ("http://", "https://", "ftp://", "www.")
MAX_TEXT_BYTES = 4096
STEMMER_NAME = f"porter-fixpoint (snowballstemmer {getattr(snowballstemmer, '__version__', '3')})"

_APOSTROPHES = str.maketrans({"’": "'", "‘": "'"})
_ALNUM_RUN = re.compile(r"[^\W_]+")
_MOOD_RUN = re.compile(r"(?:[^\W_]|')+")

_porter = snowballstemmer.stemmer("porter")


@dataclass(frozen=True)
class TweetRecord:
    id: str
    created_at: datetime
    text: str
    lang: str | None = None
    region: str | None = None

    @property
    def day(self) -> date:
        return self.created_at.date()


@dataclass(frozen=True)
class NormalizedTweet:
    id: str
    created_at: datetime | None
    region: str | None
    phrase_tokens: tuple[str, ...]
    word_tokens: tuple[str, ...]
    word_positions: tuple[int, ...]  # index of each word token inside phrase_tokens


def parse_timestamp(value: str) -> datetime:
    """Parse an ISO-8601 timestamp into an aware UTC datetime, truncated to seconds.

    Naive timestamps are taken to be UTC. Raises ValueError on anything else.
    """
    if not isinstance(value, str):
        raise ValueError("timestamp must be a string")
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    dt = datetime.fromisoformat(text)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc).replace(microsecond=0)


def record_from_obj(obj) -> TweetRecord | None:
    """Build a TweetRecord from a decoded JSON object, or None if it is malformed."""
    if not isinstance(obj, dict):
        return None
    rid = obj.get("id")
    if isinstance(rid, bool) or not isinstance(rid, (str, int)):
        return None
    rid = str(rid)
    text = obj.get("text")
    if not rid or not isinstance(text, str):
        return None
    if len(text.encode("utf-8", "surrogatepass")) > MAX_TEXT_BYTES:
        return None
    lang = obj.get("lang")
    region = obj.get("region")
    if lang is not None and not isinstance(lang, str):
        return None
    if region is not None and not isinstance(region, str):
        return None
    try:
        created = parse_timestamp(obj.get("created_at"))
    except (ValueError, OverflowError):
        return None
    return TweetRecord(rid, created, text, lang, region)


def parse_record(line: bytes | str) -> TweetRecord | None:
    """Decode one newline-delimited JSON record; None when the line is malformed."""
    if isinstance(line, bytes):
        line = line.decode("utf-8", "replace")
    try:
        obj = json.loads(line)
    except ValueError:
        return None
    return record_from_obj(obj)


def record_to_json(record: TweetRecord) -> str:
    obj = {
        "id": record.id,
        "created_at": record.created_at.strftime("%Y-%m-%dT%H:%M:%SZ"),
        "text": record.text,
    }
    if record.lang is not None:
        obj["lang"] = record.lang
    if record.region is not None:
        obj["region"] = record.region
    return json.dumps(obj, ensure_ascii=False)


def _chunks(text: str) -> list[str]:
    """Whitespace-delimited, case-folded pieces with URLs dropped."""
    return [w for w in text.casefold().translate(_APOSTROPHES).split() if not w.startswith(URL_PREFIXES)]


def is_mood_statement(text: str) -> bool:
    for chunk in _chunks(text):
        for piece in _MOOD_RUN.findall(chunk):
            if piece.strip("'") in MOOD_MARKERS:
                return True
    return False


def tokenize(text: str) -> list[str]:
    tokens = []
    for chunk in _chunks(text):
        tokens.extend(_ALNUM_RUN.findall(chunk.replace("'", "")))
    return tokens


@lru_cache(maxsize=1 << 16)
def stem(token: str) -> str:
    """Porter stem iterated to a fixed point, so that stem(stem(w)) == stem(w).

    A single Porter pass is not idempotent ("ease" -> "eas" -> "ea"). A pass
    that would empty the token ("s") leaves it unchanged.
    """
    while True:
        out = _porter.stemWord(token)
        if out == token or not out:
            return token
        token = out


def normalize_text(text: str, stopwords: frozenset[str]):
    """Token views of ``text`` without the mood filter: (phrase, word, word_positions)."""
    raw = tokenize(text)
    phrase = tuple(stem(t) for t in raw)
    positions = tuple(i for i, t in enumerate(raw) if t not in stopwords)
    return phrase, tuple(phrase[i] for i in positions), positions


def normalize(record: TweetRecord, stopwords: frozenset[str]) -> NormalizedTweet | None:
    """Return the normalized tweet, or None (rejected) when it is not a mood statement."""
    if not record.text or not is_mood_statement(record.text):
        return None
    phrase, words, positions = normalize_text(record.text, stopwords)
    return NormalizedTweet(record.id, record.created_at, record.region, phrase, words, positions)


def parse_wordlist(lines: Iterable[str]) -> frozenset[str]:
    words = set()
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.casefold().translate(_APOSTROPHES).replace("'", ""))
    return frozenset(words)


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    if path is None:
        text = resources.files("panast.data").joinpath("stopwords.txt").read_text(encoding="utf-8")
        return parse_wordlist(text.splitlines())
    with open(path, encoding="utf-8") as f:
        return parse_wordlist(f)
