"""Streaming ingestion, parallel classification and count aggregation."""
from __future__ import annotations

import gzip
import io
import itertools
import sys
import threading
import time
from collections import deque
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

from . import kernels
from ._accel import NUMBA, resolve_backend
from .lexicon import SENTIMENTS, Lexicon, LexiconTerm, Sentiment, load_default, stem_lexicon
from .normalize import (
    STEMMER_NAME,
    NormalizedTweet,
    TweetRecord,
    load_stopwords,
    normalize,
    parse_record,
    stem,
)
from .score import SentimentCounts, merge_counts

__all__ = [
    "IngestReport",
    "Pipeline",
    "ReadStats",
    "TermFrequencyTable",
    "count_sentiments",
    "ingest",
    "merge_counts",
    "read_stream",
    "term_frequencies",
]

BLOCK_BYTES = 1 << 20
REJECTED = -2
UNCLASSIFIED = -1


# --------------------------------------------------------------------------
# sources


def open_source(source):
    """Binary file object for a path, ``-`` (stdin) or an already open stream.

    Paths ending in ``.gz`` are decompressed transparently.
    """
    if isinstance(source, (str, Path)):
        if str(source) == "-":
            return sys.stdin.buffer
        path = Path(source)
        if path.suffix == ".gz":
            return gzip.open(path, "rb")
        return path.open("rb")
    if hasattr(source, "read"):
        if isinstance(source, io.TextIOBase):
            return getattr(source, "buffer", None) or _EncodedReader(source)
        return source
    raise TypeError(f"cannot read records from {type(source).__name__}")


class _EncodedReader:
    """Byte view of a text stream that has no underlying buffer (e.g. StringIO)."""

    def __init__(self, text_stream):
        self._f = text_stream

    def read(self, n: int = -1) -> bytes:
        return self._f.read(n).encode("utf-8", "surrogatepass")


def iter_blocks(f, block_bytes: int = BLOCK_BYTES) -> Iterator[bytes]:
    """Yield blocks of whole lines; only the final block may lack a newline."""
    tail = b""
    while True:
        data = f.read(block_bytes)
        if not data:
            break
        data = tail + data
        cut = data.rfind(b"\n")
        if cut < 0:
            tail = data
            continue
        tail = data[cut + 1:]
        yield data[:cut + 1]
    if tail:
        yield tail


def _line_blocks(lines: Iterable, block_lines: int = 4096) -> Iterator[bytes]:
    it = iter(lines)
    while True:
        batch = list(itertools.islice(it, block_lines))
        if not batch:
            return
        parts = []
        for line in batch:
            if isinstance(line, str):
                line = line.encode("utf-8", "surrogatepass")
            parts.append(line.rstrip(b"\n") + b"\n")
        yield b"".join(parts)


def _blocks(source, block_bytes):
    if isinstance(source, (str, Path)) or hasattr(source, "read"):
        f = open_source(source)
        try:
            yield from iter_blocks(f, block_bytes)
        finally:
            if isinstance(source, (str, Path)) and f is not sys.stdin.buffer:
                f.close()
    else:
        yield from _line_blocks(source)


@dataclass
class ReadStats:
    seen: int = 0
    parsed: int = 0

    @property
    def malformed(self) -> int:
        return self.seen - self.parsed


def read_stream(source, stats: ReadStats | None = None, block_bytes: int = BLOCK_BYTES) -> Iterator[TweetRecord]:
    """Lazily parse newline-delimited JSON records in input order.

    Blank lines are ignored; malformed lines are tallied in ``stats`` and
    skipped. ``source`` is a path, ``-``, a binary stream, or an iterable of
    lines.
    """
    stats = stats if stats is not None else ReadStats()
    for block in _blocks(source, block_bytes):
        for line in block.split(b"\n"):
            if not line.strip():
                continue
            stats.seen += 1
            rec = parse_record(line)
            if rec is not None:
                stats.parsed += 1
                yield rec


# --------------------------------------------------------------------------
# pipeline context


class Pipeline:
    """Immutable lexicon/stop word context plus per-thread scanner state."""

    def __init__(self, lexicon: Lexicon | None = None, stopwords: frozenset[str] | None = None):
        self.lexicon = lexicon if lexicon is not None else load_default()
        self.stopwords = stopwords if stopwords is not None else load_stopwords()
        self.stemmed = stem_lexicon(self.lexicon, stem, STEMMER_NAME)
        self.tables = kernels.MatchTables(self.stemmed)
        self._local = threading.local()

    def __getstate__(self):
        return {"lexicon": self.lexicon, "stopwords": self.stopwords}

    def __setstate__(self, state):
        self.__init__(state["lexicon"], state["stopwords"])

    @property
    def terms(self) -> list[LexiconTerm]:
        return self.tables.terms

    def vocab(self) -> kernels.VocabTable:
        v = getattr(self._local, "vocab", None)
        if v is None:
            v = self._local.vocab = kernels.VocabTable(self.tables, self.stopwords)
        return v

    def normalize(self, record: TweetRecord) -> NormalizedTweet | None:
        return normalize(record, self.stopwords)

    def classify_normalized(self, tweets: list[NormalizedTweet], backend: str | None = None):
        """Sentiment codes (-1 unclassified) and per-term hit counts for a batch."""
        stem_ids = self.tables.stem_ids
        offsets = np.zeros(len(tweets) + 1, np.int64)
        ids: list[int] = []
        nonstop = []
        for r, t in enumerate(tweets):
            ids.extend(stem_ids.get(s, 0) for s in t.phrase_tokens)
            flags = np.zeros(len(t.phrase_tokens), bool)
            flags[list(t.word_positions)] = True
            nonstop.append(flags)
            offsets[r + 1] = len(ids)
        flat_stop = np.concatenate(nonstop) if nonstop else np.zeros(0, bool)
        return kernels.first_match(np.asarray(ids, np.int32), flat_stop, offsets, self.tables, backend)

    def classify_records(self, records: list[TweetRecord], backend: str | None = None):
        """Per-record codes: REJECTED, UNCLASSIFIED, or a sentiment ordinal."""
        codes = np.full(len(records), REJECTED, np.int32)
        kept, tweets = [], []
        for i, rec in enumerate(records):
            t = self.normalize(rec)
            if t is not None:
                kept.append(i)
                tweets.append(t)
        sent, hits = self.classify_normalized(tweets, backend)
        codes[kept] = sent
        return codes, hits


# --------------------------------------------------------------------------
# per-block work


@dataclass
class _Tally:
    seen: int
    parsed: int
    mood: int
    per: np.ndarray
    hits: np.ndarray

    def __add__(self, other: "_Tally") -> "_Tally":
        return _Tally(self.seen + other.seen, self.parsed + other.parsed, self.mood + other.mood,
                      self.per + other.per, self.hits + other.hits)


def _empty_tally(n_terms: int) -> _Tally:
    return _Tally(0, 0, 0, np.zeros(len(SENTIMENTS), np.int64), np.zeros(n_terms, np.int64))


def _tally_lines(lines: Iterable[bytes], pipe: Pipeline, backend: str | None) -> _Tally:
    seen = 0
    records = []
    for line in lines:
        if not line.strip():
            continue
        seen += 1
        rec = parse_record(line)
        if rec is not None:
            records.append(rec)
    codes, hits = pipe.classify_records(records, backend)
    return _tally_codes(codes, hits, seen)


def _tally_codes(codes: np.ndarray, hits: np.ndarray, seen: int) -> _Tally:
    mood = int(np.count_nonzero(codes != REJECTED))
    per = np.bincount(codes[codes >= 0], minlength=len(SENTIMENTS)).astype(np.int64)
    return _Tally(seen, len(codes), mood, per, hits.astype(np.int64))


def _tally_block_python(block: bytes, pipe: Pipeline, backend: str) -> _Tally:
    return _tally_lines(block.split(b"\n"), pipe, backend)


def _tally_block_numba(block: bytes, pipe: Pipeline) -> _Tally:
    starts, ends, status, sent, hits = kernels.scan_chunk(block, pipe.vocab(), pipe.tables)
    mood = status == kernels.MOOD
    classified = sent[mood]
    per = np.bincount(classified[classified >= 0], minlength=len(SENTIMENTS)).astype(np.int64)
    n_mood = int(np.count_nonzero(mood))
    tally = _Tally(
        seen=int(np.count_nonzero(status != kernels.BLANK)),
        parsed=int(np.count_nonzero(status == kernels.PLAIN)) + n_mood,
        mood=n_mood,
        per=per,
        hits=hits,
    )
    fallback = np.flatnonzero(status == kernels.FALLBACK)
    if len(fallback):
        lines = [block[starts[i]:ends[i]] for i in fallback]
        rest = _tally_lines(lines, pipe, NUMBA)
        # every fallback line was already counted as seen
        tally = tally + _Tally(0, rest.parsed, rest.mood, rest.per, rest.hits)
    return tally


_WORKER_PIPE: Pipeline | None = None


def _init_process(pipe: Pipeline) -> None:
    global _WORKER_PIPE
    _WORKER_PIPE = pipe


def _process_block(block: bytes, backend: str) -> _Tally:
    return _tally_block_python(block, _WORKER_PIPE, backend)


def _bounded_map(executor: Executor, fn, items: Iterable, window: int) -> Iterator:
    """executor.map with at most ``window`` tasks in flight; results in input order."""
    pending: deque = deque()
    for item in items:
        pending.append(executor.submit(fn, item))
        if len(pending) >= window:
            yield pending.popleft().result()
    while pending:
        yield pending.popleft().result()


# --------------------------------------------------------------------------
# public aggregation API


@dataclass(frozen=True)
class IngestReport:
    total_seen: int
    total_parsed: int
    total_mood_filtered: int
    total_classified: int
    per_sentiment: tuple[int, ...]
    elapsed: float
    backend: str = ""
    workers: int = 1
    stemmer: str = STEMMER_NAME

    @property
    def malformed(self) -> int:
        return self.total_seen - self.total_parsed

    @property
    def records_per_second(self) -> float:
        return self.total_seen / self.elapsed if self.elapsed > 0 else float("inf")

    @property
    def mood_pass_rate(self) -> float:
        return self.total_mood_filtered / self.total_parsed if self.total_parsed else 0.0

    def as_dict(self) -> dict:
        return {
            "total_seen": self.total_seen,
            "total_parsed": self.total_parsed,
            "malformed": self.malformed,
            "total_mood_filtered": self.total_mood_filtered,
            "mood_pass_rate": round(self.mood_pass_rate, 7),
            "total_classified": self.total_classified,
            "per_sentiment": {s.label: c for s, c in zip(SENTIMENTS, self.per_sentiment)},
            "elapsed_seconds": round(self.elapsed, 6),
            "records_per_second": round(self.records_per_second, 1),
            "backend": self.backend,
            "workers": self.workers,
            "stemmer": self.stemmer,
        }

    def summary(self) -> str:
        return (
            f"seen={self.total_seen} parsed={self.total_parsed} malformed={self.malformed} "
            f"mood={self.total_mood_filtered} ({self.mood_pass_rate:.1%}) classified={self.total_classified} "
            f"elapsed={self.elapsed:.3f}s rate={self.records_per_second:,.0f} rec/s "
            f"[{self.backend}, workers={self.workers}]"
        )


@dataclass(frozen=True)
class TermFrequencyTable:
    """Number of mood-filtered tweets containing each lexicon term."""

    counts: dict[LexiconTerm, int] = field(default_factory=dict)

    def __getitem__(self, surface: str) -> int:
        for term, c in self.counts.items():
            if term.surface == surface:
                return c
        raise KeyError(surface)

    def by_sentiment(self) -> dict[Sentiment, list[tuple[LexiconTerm, int]]]:
        """Terms grouped per sentiment, most frequent first (ties keep lexicon order)."""
        out: dict[Sentiment, list[tuple[LexiconTerm, int]]] = {s: [] for s in SENTIMENTS}
        for term, c in self.counts.items():
            out[term.sentiment].append((term, c))
        for rows in out.values():
            rows.sort(key=lambda tc: -tc[1])
        return out


@dataclass(frozen=True)
class IngestResult:
    counts: SentimentCounts
    report: IngestReport
    terms: TermFrequencyTable


def ingest(source, lexicon: Lexicon | None = None, stopwords: frozenset[str] | None = None, workers: int = 1,
           backend: str | None = None, block_bytes: int = BLOCK_BYTES, pipeline: Pipeline | None = None,
           ) -> IngestResult:
    """One pass over a corpus producing sentiment counts, term frequencies and a report.

    ``source`` may be a path, ``-``, a binary stream, an iterable of raw
    lines, or an iterable of TweetRecord objects. Results are identical for
    every ``workers`` value and backend.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    backend = resolve_backend(backend)
    pipe = pipeline if pipeline is not None else Pipeline(lexicon, stopwords)
    t0 = time.perf_counter()
    total = _empty_tally(pipe.tables.n_entries)

    first = None
    if not (isinstance(source, (str, Path)) or hasattr(source, "read")):
        source = iter(source)
        first = next(source, None)
        if isinstance(first, TweetRecord):
            total = _ingest_records(itertools.chain([first], source), pipe, backend)
            source = None
        elif first is not None:
            source = itertools.chain([first], source)
        else:
            source = None

    if source is not None:
        blocks = _blocks(source, block_bytes)
        if backend == NUMBA:
            tally = lambda b: _tally_block_numba(b, pipe)  # noqa: E731
            if workers == 1:
                results = map(tally, blocks)
                for r in results:
                    total = total + r
            else:
                with ThreadPoolExecutor(workers) as ex:
                    for r in _bounded_map(ex, tally, blocks, 2 * workers):
                        total = total + r
        elif workers == 1:
            for b in blocks:
                total = total + _tally_block_python(b, pipe, backend)
        else:
            with ProcessPoolExecutor(workers, initializer=_init_process, initargs=(pipe,)) as ex:
                fn = _ProcessTask(backend)
                for r in _bounded_map(ex, fn, blocks, 2 * workers):
                    total = total + r

    elapsed = time.perf_counter() - t0
    per = tuple(int(x) for x in total.per)
    counts = SentimentCounts(per, total.mood, total.seen)
    report = IngestReport(total.seen, total.parsed, total.mood, sum(per), per, elapsed, backend, workers)
    terms = TermFrequencyTable({t: int(c) for t, c in zip(pipe.terms, total.hits)})
    return IngestResult(counts, report, terms)


class _ProcessTask:
    def __init__(self, backend):
        self.backend = backend

    def __call__(self, block):
        return _process_block(block, self.backend)


def _ingest_records(records: Iterable[TweetRecord], pipe: Pipeline, backend: str, batch: int = 4096) -> _Tally:
    total = _empty_tally(pipe.tables.n_entries)
    it = iter(records)
    while True:
        chunk = list(itertools.islice(it, batch))
        if not chunk:
            return total
        codes, hits = pipe.classify_records(chunk, backend)
        total = total + _tally_codes(codes, hits, len(chunk))


def count_sentiments(source, lexicon: Lexicon | None = None, stopwords: frozenset[str] | None = None,
                     workers: int = 1, **kwargs) -> tuple[SentimentCounts, IngestReport]:
    result = ingest(source, lexicon, stopwords, workers, **kwargs)
    return result.counts, result.report


def term_frequencies(source, lexicon: Lexicon | None = None, stopwords: frozenset[str] | None = None,
                     workers: int = 1, **kwargs) -> TermFrequencyTable:
    return ingest(source, lexicon, stopwords, workers, **kwargs).terms
