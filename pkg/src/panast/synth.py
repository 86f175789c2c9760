"""Synthetic corpora with known sentiment proportions.

``planted_event`` builds an event sample whose per-sentiment proportions are
exact (up to rounding to whole tweets), so scores can be checked against hand
arithmetic. ``random_lines`` produces messy input (malformed records,
escapes, URLs, unicode, CRLF) for equivalence testing.
"""
from __future__ import annotations

import json
import random
from datetime import date, datetime, time, timedelta, timezone
from typing import Iterator, Mapping

from .lexicon import SENTIMENTS, Lexicon, Sentiment, load_default
from .normalize import TweetRecord

# Words that neither stem to a lexicon key nor act as mood markers.
FILLER = (
    "today tomorrow morning coffee train office weather music phone city street news window garden "
    "paper river table friend dinner movie bus lunch rain snow road book film team game song "
    "school market bridge park beach airport ticket laptop kitchen dog cat tree cloud email"
).split()
NEUTRAL_STOP = "the of and to in is that it was for on are as this have from or by but".split()
MARKERS = ("I", "I'm", "i am", "me", "myself", "feeling", "I am")


def _ts(day: date, second: int) -> datetime:
    return datetime.combine(day, time(0, 0), tzinfo=timezone.utc) + timedelta(seconds=second % 86400)


def planted_counts(n: int, beta: Mapping[Sentiment, float]) -> dict[Sentiment, int]:
    counts = {s: int(round(beta.get(s, 0.0) * n)) for s in SENTIMENTS}
    if sum(counts.values()) > n:
        raise ValueError("target proportions exceed the sample size")
    return counts


def planted_event(n: int, beta: Mapping[Sentiment, float], keyword: str = "swine",
                  days: list[date] | None = None, seed: int = 0, lexicon: Lexicon | None = None,
                  region: str | None = None) -> list[TweetRecord]:
    """``n`` mood-statement tweets mentioning ``keyword``; round(beta[s]*n) carry one term of s.

    Tweets are spread round-robin over ``days``.
    """
    rng = random.Random(seed)
    lexicon = lexicon or load_default()
    days = days or [date(2009, 6, 1)]
    labels: list[Sentiment | None] = []
    for s, c in planted_counts(n, beta).items():
        labels.extend([s] * c)
    labels.extend([None] * (n - len(labels)))
    rng.shuffle(labels)
    out = []
    for i, s in enumerate(labels):
        words = rng.sample(FILLER, 4)
        if s is not None:
            words.insert(rng.randrange(len(words) + 1), rng.choice(lexicon.surfaces(s)))
        words.insert(rng.randrange(len(words) + 1), keyword)
        text = "I am " + " ".join(words)
        out.append(TweetRecord(f"p{seed}-{i}", _ts(days[i % len(days)], i), text, "en", region))
    return out


def noise_records(n: int, seed: int = 0, day: date = date(2009, 6, 1), keyword: str | None = None) -> list[TweetRecord]:
    """Mood statements that carry no lexicon term; include ``keyword`` when given."""
    rng = random.Random(seed)
    out = []
    for i in range(n):
        words = rng.sample(FILLER, 5)
        if keyword:
            words.append(keyword)
        out.append(TweetRecord(f"n{seed}-{i}", _ts(day, i), "me " + " ".join(words)))
    return out


def _decorate(word: str, rng: random.Random) -> str:
    r = rng.random()
    if r < 0.1:
        return word.upper()
    if r < 0.2:
        return word.capitalize()
    if r < 0.27:
        return "#" + word
    if r < 0.34:
        return word + rng.choice("!?.,;:")
    if r < 0.38:
        return f'"{word}"'
    if r < 0.41:
        return word + "-" + rng.choice(FILLER)
    return word


def random_text(rng: random.Random, lexicon: Lexicon, p_term: float = 0.35, p_marker: float = 0.6) -> str:
    words = [rng.choice(FILLER + NEUTRAL_STOP) for _ in range(rng.randint(0, 12))]
    terms = [t.surface for t in lexicon.terms()]
    extras = []
    while rng.random() < p_term:
        extras.append(rng.choice(terms))
    if rng.random() < p_marker:
        extras.append(rng.choice(MARKERS))
    r = rng.random()
    if r < 0.05:
        extras.append("http://t.co/" + rng.choice(FILLER))
    elif r < 0.08:
        extras.append("www.example.com/" + rng.choice(terms).replace(" ", ""))
    elif r < 0.11:
        extras.append(rng.choice(["café", "naïve", "😀", "i’m", "Ⅻ", "ｈａｐｐｙ", "straße"]))
    elif r < 0.14:
        extras.append(rng.choice(["don't", "it's", "'me'", "i'm'", "sad'", "''", "rock'n'roll"]))
    elif r < 0.16:
        extras.append(rng.choice(["\n", "\t", "\f", "\\", "/", "\"", "\b", "\u001c", "\x7f"]))
    for e in extras:
        words.insert(rng.randrange(len(words) + 1), e)
    return " ".join(_decorate(w, rng) for w in words)


def _random_timestamp(rng: random.Random) -> object:
    day = date(2008, 1, 1) + timedelta(days=rng.randrange(900))
    base = f"{day.isoformat()}T{rng.randrange(24):02d}:{rng.randrange(60):02d}:{rng.randrange(60):02d}"
    r = rng.random()
    if r < 0.6:
        return base + "Z"
    if r < 0.75:
        return base
    if r < 0.82:
        return base + "+00:00"
    if r < 0.86:
        return base + "+02:00"
    if r < 0.89:
        return day.isoformat()
    if r < 0.92:
        return base.replace("T", " ") + ".123Z"
    return rng.choice(["2009-02-29T10:00:00Z", "2009-13-01T00:00:00Z", "yesterday", 12345, None, "",
                       "2008-02-29T23:59:59Z", "0000-01-01T00:00:00Z", "2009-06-01T24:00:00Z"])


def random_lines(rng: random.Random, n: int, lexicon: Lexicon | None = None, p_bad: float = 0.08) -> list[str]:
    """Mostly well-formed JSON lines with a sprinkling of edge cases."""
    lexicon = lexicon or load_default()
    lines = []
    for i in range(n):
        obj = {"id": str(i), "created_at": _random_timestamp(rng), "text": random_text(rng, lexicon)}
        if rng.random() < 0.3:
            obj["region"] = rng.choice(["US", "EU", None])
        if rng.random() < 0.2:
            obj["lang"] = "en"
        if rng.random() < 0.1:
            obj["retweets"] = rng.choice([0, 17, -3, 2.5, 1e3, True, False, None, "x"])
        if rng.random() < 0.02:
            obj["user"] = {"name": "x"}
        if rng.random() < 0.02:
            obj["id"] = rng.choice([42, "", None, True])
        if rng.random() < 0.01:
            obj["text"] = rng.choice([None, 5, ""])
        line = json.dumps(obj, ensure_ascii=rng.random() < 0.3)
        r = rng.random()
        if r < p_bad:
            kind = rng.randrange(6)
            if kind == 0:
                line = line[: rng.randrange(len(line))]
            elif kind == 1:
                line = line + " x"
            elif kind == 2:
                line = "[" + line + "]"
            elif kind == 3:
                line = ""
            elif kind == 4:
                line = line.replace('"text"', '"te\\u0078t"')
            else:
                line = line.replace(",", ", ,", 1)
        elif r < p_bad + 0.03:
            line = "  " + line + " \r"
        lines.append(line)
    return lines


def corpus_lines(n: int, seed: int = 0, lexicon: Lexicon | None = None, p_term: float = 0.3) -> Iterator[str]:
    """Fast generator of well-formed benchmark records spread over 2009."""
    rng = random.Random(seed)
    lexicon = lexicon or load_default()
    terms = [t.surface for t in lexicon.terms()]
    pool = FILLER + NEUTRAL_STOP
    days = [(date(2009, 1, 1) + timedelta(days=d)).isoformat() for d in range(365)]
    rand, randint, randrange, choice, choices = rng.random, rng.randint, rng.randrange, rng.choice, rng.choices
    for i in range(n):
        words = choices(pool, k=randint(4, 14))
        if rand() < 0.5:
            words.insert(randrange(len(words) + 1), choice(MARKERS))
        if rand() < p_term:
            words.insert(randrange(len(words) + 1), choice(terms))
        sec = randrange(86400)
        stamp = f"{choice(days)}T{sec // 3600:02d}:{sec // 60 % 60:02d}:{sec % 60:02d}Z"
        yield f'{{"id": "{i}", "created_at": "{stamp}", "text": {json.dumps(" ".join(words))}}}'
