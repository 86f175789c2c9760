"""Event definitions, event tweet extraction and per-day score series."""
from __future__ import annotations

import configparser
import itertools
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from datetime import date
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from . import corpus
from .corpus import Pipeline
from .errors import DegenerateEventWarning, EmptyEvent
from .lexicon import SENTIMENTS
from .normalize import TweetRecord, tokenize
from .score import PROSE, BaselineTable, ScoreVector, SentimentCounts, score_vector

DEFAULT_MIN_EVENT_SIZE = 100


@dataclass(frozen=True)
class EventSpec:
    name: str
    keywords: tuple[str, ...]
    start: date
    end: date
    regions: frozenset[str] | None = None

    def __post_init__(self):
        if not self.keywords:
            raise ValueError(f"event {self.name!r} has no keywords")
        for k in self.keywords:
            if k != k.lower() or not k.strip():
                raise ValueError(f"event {self.name!r}: keyword {k!r} must be non-empty lowercase")
            if not tokenize(k):
                raise ValueError(f"event {self.name!r}: keyword {k!r} has no word characters")
        if self.start > self.end:
            raise ValueError(f"event {self.name!r}: window starts after it ends")
        object.__setattr__(self, "_phrases", tuple(tuple(tokenize(k)) for k in self.keywords))

    @property
    def phrases(self) -> tuple[tuple[str, ...], ...]:
        return self._phrases

    def in_window(self, day: date) -> bool:
        return self.start <= day <= self.end

    def restricted(self, regions: Iterable[str] | None) -> "EventSpec":
        return replace(self, regions=None if regions is None else frozenset(regions))


def _contains_phrase(tokens: list[str], phrase: tuple[str, ...]) -> bool:
    n = len(phrase)
    if n == 1:
        return phrase[0] in tokens
    first = phrase[0]
    for i in range(len(tokens) - n + 1):
        if tokens[i] == first and tuple(tokens[i:i + n]) == phrase:
            return True
    return False


def matches_event(record: TweetRecord, event: EventSpec) -> bool:
    if not event.in_window(record.created_at.date()):
        return False
    if event.regions is not None and record.region not in event.regions:
        return False
    tokens = tokenize(record.text)
    return any(_contains_phrase(tokens, p) for p in event.phrases)


# --------------------------------------------------------------------------
# event files


def parse_events(text: str, source: str = "<memory>") -> dict[str, EventSpec]:
    """Parse the INI event grammar: one section per event with keywords/start/end/regions."""
    cp = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"))
    try:
        cp.read_string(text, source=source)
    except configparser.Error as exc:
        raise ValueError(f"{source}: {exc}") from None
    events = {}
    for name in cp.sections():
        sec = cp[name]
        try:
            keywords = tuple(k.strip().lower() for k in sec["keywords"].split(",") if k.strip())
            start = date.fromisoformat(sec["start"].strip())
            end = date.fromisoformat(sec["end"].strip())
        except KeyError as exc:
            raise ValueError(f"{source}: event {name!r} lacks {exc.args[0]!r}") from None
        regions = [r.strip() for r in sec.get("regions", "").split(",") if r.strip()]
        events[name] = EventSpec(name, keywords, start, end, frozenset(regions) if regions else None)
    return events


def load_events(path: str | Path | None = None) -> dict[str, EventSpec]:
    if path is None:
        text = resources.files("panast.data").joinpath("table4.ini").read_text(encoding="utf-8")
        return parse_events(text, "table4.ini")
    path = Path(path)
    return parse_events(path.read_text(encoding="utf-8"), str(path))


def resolve_event(ref: str) -> EventSpec:
    """``name`` of a bundled event, ``file.ini`` with one event, or ``file.ini:name``."""
    bundled = load_events()
    if ref in bundled:
        return bundled[ref]
    path, _, name = ref.partition(":") if not Path(ref).exists() else (ref, "", "")
    if not Path(path).exists():
        raise ValueError(f"unknown event {ref!r}; bundled events: {', '.join(bundled)}")
    events = load_events(path)
    if name:
        if name not in events:
            raise ValueError(f"{path} defines no event {name!r}")
        return events[name]
    if len(events) != 1:
        raise ValueError(f"{path} defines {len(events)} events; pick one with {path}:<name>")
    return next(iter(events.values()))


# --------------------------------------------------------------------------
# extraction


def _records(stream) -> Iterator[TweetRecord]:
    if isinstance(stream, (str, Path)) or hasattr(stream, "read"):
        return corpus.read_stream(stream)
    it = iter(stream)
    first = next(it, None)
    if first is None:
        return iter(())
    if isinstance(first, TweetRecord):
        return itertools.chain([first], it)
    return corpus.read_stream(itertools.chain([first], it))


def _classify_event_batch(records: list[TweetRecord], event: EventSpec, pipe: Pipeline, backend):
    hits = [r for r in records if matches_event(r, event)]
    codes, _ = pipe.classify_records(hits, backend)
    days = [r.created_at.date().toordinal() for r in hits]
    return np.asarray(days, np.int64), codes


def _worker_batch(args):
    records, event, backend = args
    return _classify_event_batch(records, event, corpus._WORKER_PIPE, backend)


def daily_counts(stream, event: EventSpec, pipeline: Pipeline | None = None, workers: int = 1,
                 backend: str | None = None, batch: int = 4096) -> tuple[dict[date, SentimentCounts], int]:
    """Per-day SentimentCounts of the event's tweets and the number of matching records.

    Days whose matching tweets are all rejected by the mood filter still get
    an entry (with ``total_normalized == 0``); callers decide whether to keep it.
    """
    pipe = pipeline if pipeline is not None else Pipeline()
    n_sent = len(SENTIMENTS)
    per_day: dict[int, np.ndarray] = {}  # ordinal -> [per sentiment..., mood, seen]

    def absorb(days, codes):
        for d, c in zip(days.tolist(), codes.tolist()):
            row = per_day.get(d)
            if row is None:
                row = per_day[d] = np.zeros(n_sent + 2, np.int64)
            row[n_sent + 1] += 1
            if c != corpus.REJECTED:
                row[n_sent] += 1
                if c >= 0:
                    row[c] += 1

    batches = _batched(_records(stream), batch)
    if workers == 1:
        for b in batches:
            absorb(*_classify_event_batch(b, event, pipe, backend))
    else:
        with ProcessPoolExecutor(workers, initializer=corpus._init_process, initargs=(pipe,)) as ex:
            tasks = ((b, event, backend) for b in batches)
            for days, codes in corpus._bounded_map(ex, _worker_batch, tasks, 2 * workers):
                absorb(days, codes)

    out = {}
    matched = 0
    for d in sorted(per_day):
        row = per_day[d]
        matched += int(row[n_sent + 1])
        out[date.fromordinal(d)] = SentimentCounts(tuple(int(x) for x in row[:n_sent]), int(row[n_sent]),
                                                   int(row[n_sent + 1]))
    return out, matched


def _batched(it, n):
    it = iter(it)
    while True:
        chunk = list(itertools.islice(it, n))
        if not chunk:
            return
        yield chunk


def _total(counts: Iterable[SentimentCounts]) -> SentimentCounts:
    total = SentimentCounts()
    for c in counts:
        total = total + c
    return total


def extract_and_score(stream, event: EventSpec, baseline: BaselineTable, pipeline: Pipeline | None = None,
                      convention: str = PROSE, min_event_size: int = DEFAULT_MIN_EVENT_SIZE, workers: int = 1,
                      backend: str | None = None) -> ScoreVector:
    days, matched = daily_counts(stream, event, pipeline, workers, backend)
    if matched == 0:
        raise EmptyEvent(f"no tweets match event {event.name!r}")
    counts = _total(days.values())
    if counts.total_normalized == 0:
        raise EmptyEvent(f"no mood statements among the {matched} tweets of event {event.name!r}")
    _warn_if_small(event, counts, min_event_size)
    return score_vector(baseline, counts, convention)


def _warn_if_small(event, counts, min_event_size):
    if counts.total_normalized < min_event_size:
        warnings.warn(
            f"event {event.name!r} has only {counts.total_normalized} mood-filtered tweets "
            f"(minimum {min_event_size})",
            DegenerateEventWarning,
            stacklevel=3,
        )


@dataclass(frozen=True)
class TimePoint:
    day: date
    vector: ScoreVector

    @property
    def counts(self) -> SentimentCounts:
        return self.vector.counts

    @property
    def event_size(self) -> int:
        return self.vector.event_size


@dataclass(frozen=True)
class TimeSeries:
    """One score vector per UTC calendar day that had matching mood statements."""

    event: EventSpec
    points: tuple[TimePoint, ...]

    def __len__(self):
        return len(self.points)

    def days(self) -> list[date]:
        return [p.day for p in self.points]

    def total_counts(self) -> SentimentCounts:
        return _total(p.counts for p in self.points)


def timeseries(stream, event: EventSpec, baseline: BaselineTable, pipeline: Pipeline | None = None,
               convention: str = PROSE, min_event_size: int = DEFAULT_MIN_EVENT_SIZE, workers: int = 1,
               backend: str | None = None) -> TimeSeries:
    days, matched = daily_counts(stream, event, pipeline, workers, backend)
    if matched == 0:
        raise EmptyEvent(f"no tweets match event {event.name!r}")
    points = tuple(
        TimePoint(d, score_vector(baseline, c, convention)) for d, c in days.items() if c.total_normalized > 0
    )
    if not points:
        raise EmptyEvent(f"no mood statements among the {matched} tweets of event {event.name!r}")
    series = TimeSeries(event, points)
    _warn_if_small(event, series.total_counts(), min_event_size)
    return series
