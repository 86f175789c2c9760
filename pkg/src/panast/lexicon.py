"""PANAS-x word scales, their validation, and the stemmed lookup used for matching."""
from __future__ import annotations

import enum
import types
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Mapping

from .errors import LexiconError


class Sentiment(enum.IntEnum):
    FEAR = 0
    SADNESS = 1
    GUILT = 2
    HOSTILITY = 3
    SHYNESS = 4
    FATIGUE = 5
    SURPRISE = 6
    JOVIALITY = 7
    SELF_ASSURANCE = 8
    ATTENTIVENESS = 9
    SERENITY = 10

    @property
    def label(self) -> str:
        return self.name.lower().replace("_", "-")

    @classmethod
    def parse(cls, name: str) -> "Sentiment":
        key = name.strip().lower().replace("-", "_").replace(" ", "_")
        try:
            return cls[key.upper()]
        except KeyError:
            raise ValueError(f"unknown sentiment {name!r}") from None

    def __str__(self) -> str:
        return self.label


SENTIMENTS = tuple(Sentiment)
AUX_SCALES = ("positive-affect", "negative-affect")

# Item counts per scale as published with the PANAS-x checklist.
SCALE_SIZES = {
    Sentiment.FEAR: 6,
    Sentiment.HOSTILITY: 6,
    Sentiment.GUILT: 6,
    Sentiment.SADNESS: 5,
    Sentiment.JOVIALITY: 8,
    Sentiment.SELF_ASSURANCE: 6,
    Sentiment.ATTENTIVENESS: 4,
    Sentiment.SHYNESS: 4,
    Sentiment.FATIGUE: 4,
    Sentiment.SERENITY: 3,
    Sentiment.SURPRISE: 3,
}

MAX_TERM_TOKENS = 4


@dataclass(frozen=True)
class LexiconTerm:
    surface: str
    tokens: tuple[str, ...]
    sentiment: Sentiment

    @classmethod
    def from_surface(cls, surface: str, sentiment: Sentiment) -> "LexiconTerm":
        tokens = tuple(surface.lower().split())
        return cls(" ".join(tokens), tokens, sentiment)

    def __str__(self) -> str:
        return self.surface


@dataclass(frozen=True)
class Lexicon:
    scales: Mapping[Sentiment, tuple[LexiconTerm, ...]]
    auxiliary: Mapping[str, tuple[str, ...]] = field(default_factory=dict)
    source: str = "bundled"

    def __reduce__(self):
        return _rebuild_lexicon, (dict(self.scales), dict(self.auxiliary), self.source)

    def terms(self) -> list[LexiconTerm]:
        """All scored terms, grouped by sentiment ordinal, file order within a scale."""
        return [t for s in SENTIMENTS for t in self.scales.get(s, ())]

    def surfaces(self, sentiment: Sentiment) -> list[str]:
        return [t.surface for t in self.scales.get(sentiment, ())]


def _rebuild_lexicon(scales, auxiliary, source):
    return Lexicon(types.MappingProxyType(scales), types.MappingProxyType(auxiliary), source)


def parse_lexicon(lines: Iterable[str], source: str = "<memory>") -> Lexicon:
    scales: dict[Sentiment, list[LexiconTerm]] = {s: [] for s in SENTIMENTS}
    aux: dict[str, list[str]] = {name: [] for name in AUX_SCALES}
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        try:
            scale, term = line.split("\t")
        except ValueError:
            raise LexiconError(f"{source}:{lineno}: expected '<scale>\\t<term>'") from None
        scale = scale.strip().lower()
        if scale in aux:
            aux[scale].append(" ".join(term.lower().split()))
            continue
        try:
            sentiment = Sentiment.parse(scale)
        except ValueError:
            raise LexiconError(f"{source}:{lineno}: unknown scale {scale!r}") from None
        scales[sentiment].append(LexiconTerm.from_surface(term, sentiment))
    return Lexicon(
        scales=types.MappingProxyType({s: tuple(v) for s, v in scales.items()}),
        auxiliary=types.MappingProxyType({k: tuple(v) for k, v in aux.items()}),
        source=source,
    )


def validate(lexicon: Lexicon, expected_counts: Mapping[Sentiment, int] | None = SCALE_SIZES) -> list[str]:
    """Return human-readable invariant violations; an empty list means valid.

    ``expected_counts=None`` skips the per-scale cardinality check, which only
    makes sense for the bundled checklist.
    """
    problems = []
    seen: dict[str, Sentiment] = {}
    for s in SENTIMENTS:
        terms = lexicon.scales.get(s, ())
        if not terms:
            problems.append(f"{s.label}: scale has no terms")
        if expected_counts is not None and len(terms) != expected_counts[s]:
            problems.append(f"{s.label}: expected {expected_counts[s]} terms, found {len(terms)}")
        for t in terms:
            if not t.tokens:
                problems.append(f"{s.label}: empty term")
                continue
            if t.surface != " ".join(t.tokens):
                problems.append(f"{s.label}: surface {t.surface!r} does not match its tokens")
            if len(t.tokens) > MAX_TERM_TOKENS:
                problems.append(f"{s.label}: {t.surface!r} is longer than {MAX_TERM_TOKENS} tokens")
            if any(not tok.isalnum() or tok != tok.lower() for tok in t.tokens):
                problems.append(f"{s.label}: {t.surface!r} must be lowercase alphanumeric words")
            if t.sentiment is not s:
                problems.append(f"{s.label}: {t.surface!r} is tagged {t.sentiment.label}")
            if t.surface in seen:
                problems.append(
                    f"duplicate term {t.surface!r} in {seen[t.surface].label} and {s.label}"
                )
            else:
                seen[t.surface] = s
    return problems


def load_lexicon(path: str | Path, expected_counts=None) -> Lexicon:
    path = Path(path)
    with path.open(encoding="utf-8") as f:
        lexicon = parse_lexicon(f, source=str(path))
    _check(lexicon, expected_counts)
    return lexicon


def load_default() -> Lexicon:
    text = resources.files("panast.data").joinpath("lexicon.tsv").read_text(encoding="utf-8")
    lexicon = parse_lexicon(text.splitlines(), source="bundled")
    _check(lexicon, SCALE_SIZES)
    return lexicon


def _check(lexicon, expected_counts):
    problems = validate(lexicon, expected_counts)
    if problems:
        raise LexiconError(f"invalid lexicon {lexicon.source}: " + "; ".join(problems))


@dataclass(frozen=True)
class StemmedLexicon:
    """Stemmed token sequence -> (sentiment, original term)."""

    entries: Mapping[tuple[str, ...], tuple[Sentiment, LexiconTerm]]
    max_phrase_len: int
    stemmer_name: str = ""

    def lookup(self, key) -> tuple[Sentiment, LexiconTerm] | None:
        return self.entries.get(tuple(key))

    def terms(self) -> list[LexiconTerm]:
        return [term for _, term in self.entries.values()]


def stem_lexicon(lexicon: Lexicon, stemmer: Callable[[str], str], stemmer_name: str = "") -> StemmedLexicon:
    entries: dict[tuple[str, ...], tuple[Sentiment, LexiconTerm]] = {}
    for term in lexicon.terms():
        key = tuple(stemmer(tok) for tok in term.tokens)
        if key in entries:
            other = entries[key][1]
            raise LexiconError(
                f"terms {other.surface!r} ({other.sentiment.label}) and {term.surface!r} "
                f"({term.sentiment.label}) share the stemmed key {' '.join(key)!r}"
            )
        entries[key] = (term.sentiment, term)
    longest = max((len(k) for k in entries), default=0)
    return StemmedLexicon(types.MappingProxyType(entries), longest, stemmer_name)
