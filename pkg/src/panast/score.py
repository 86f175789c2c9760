"""Baselines, per-event relative occurrence, and the PANAS-t score."""
from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .errors import DegenerateBaseline, EmptyCorpus, EmptyEvent, InvalidBaseline
from .lexicon import SENTIMENTS, Sentiment

PROSE = "prose"
PRINTED = "printed-eq3"
SIGN_CONVENTIONS = (PROSE, PRINTED)

MAX_COUNT = 2**63 - 1
DECIMALS = 7


def fmt(x: float) -> str:
    return f"{x:.{DECIMALS}f}"


@dataclass(frozen=True)
class SentimentCounts:
    """Mergeable per-sentiment tweet counts.

    ``total_normalized`` counts tweets that passed the mood filter (the
    denominator of both the baseline and the event proportions);
    ``total_seen`` counts raw records read.
    """

    per_sentiment: tuple[int, ...] = (0,) * len(SENTIMENTS)
    total_normalized: int = 0
    total_seen: int = 0

    def __post_init__(self):
        if len(self.per_sentiment) != len(SENTIMENTS):
            raise ValueError("per_sentiment must have one entry per sentiment")
        if min(self.per_sentiment) < 0 or self.total_normalized < 0 or self.total_seen < 0:
            raise ValueError("counts must be non-negative")

    @classmethod
    def from_mapping(cls, counts: Mapping[Sentiment, int], total_normalized: int, total_seen: int | None = None):
        per = tuple(int(counts.get(s, 0)) for s in SENTIMENTS)
        return cls(per, total_normalized, total_normalized if total_seen is None else total_seen)

    def __getitem__(self, s: Sentiment) -> int:
        return self.per_sentiment[s]

    @property
    def total_classified(self) -> int:
        return sum(self.per_sentiment)

    def scaled(self, k: int) -> "SentimentCounts":
        return SentimentCounts(tuple(c * k for c in self.per_sentiment), self.total_normalized * k, self.total_seen * k)

    def __add__(self, other: "SentimentCounts") -> "SentimentCounts":
        return merge_counts(self, other)

    def as_dict(self) -> dict:
        return {
            "per_sentiment": {s.label: c for s, c in zip(SENTIMENTS, self.per_sentiment)},
            "total_normalized": self.total_normalized,
            "total_seen": self.total_seen,
        }


def merge_counts(a: SentimentCounts, b: SentimentCounts) -> SentimentCounts:
    per = tuple(x + y for x, y in zip(a.per_sentiment, b.per_sentiment))
    norm = a.total_normalized + b.total_normalized
    seen = a.total_seen + b.total_seen
    if max(max(per), norm, seen) > MAX_COUNT:
        raise OverflowError("sentiment counter exceeds 64-bit range")
    return SentimentCounts(per, norm, seen)


@dataclass(frozen=True)
class BaselineTable:
    alpha: Mapping[Sentiment, float]
    provenance: str = "bundled-table3"

    def __post_init__(self):
        missing = [s.label for s in SENTIMENTS if s not in self.alpha]
        if missing:
            raise InvalidBaseline(f"baseline lacks: {', '.join(missing)}")
        bad = [s.label for s in SENTIMENTS if not 0 < self.alpha[s] < 1]
        if bad:
            raise InvalidBaseline(f"baseline proportions must lie in (0, 1): {', '.join(bad)}")
        if sum(self.alpha[s] for s in SENTIMENTS) >= 1:
            raise InvalidBaseline("baseline proportions sum to 1 or more")

    def __getitem__(self, s: Sentiment) -> float:
        return self.alpha[s]

    def to_tsv(self) -> str:
        """Baseline file text; values keep full precision so the file round-trips."""
        rows = [f"# provenance: {self.provenance}\n"]
        rows += [f"{s.label}\t{self.alpha[s]!r}\n" for s in SENTIMENTS]
        return "".join(rows)


def parse_baseline(lines: Iterable[str], provenance: str) -> BaselineTable:
    alpha = {}
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if line.startswith("# provenance:"):
            provenance = line.split(":", 1)[1].strip() or provenance
            continue
        if not line or line.startswith("#"):
            continue
        try:
            name, value = line.split("\t")
            s = Sentiment.parse(name)
            x = float(value)
        except ValueError as exc:
            raise InvalidBaseline(f"{provenance}:{lineno}: {exc}") from None
        if s in alpha:
            raise InvalidBaseline(f"{provenance}:{lineno}: duplicate {s.label}")
        alpha[s] = x
    return BaselineTable(alpha, provenance)


def load_bundled_baseline() -> BaselineTable:
    text = resources.files("panast.data").joinpath("baseline.tsv").read_text(encoding="utf-8")
    return parse_baseline(text.splitlines(), "bundled-table3")


def load_baseline(path: str | Path | None = None) -> BaselineTable:
    if path is None:
        return load_bundled_baseline()
    path = Path(path)
    table = parse_baseline(path.read_text(encoding="utf-8").splitlines(), f"file:{path.name}")
    return table


def compute_baseline(counts: SentimentCounts, corpus_id: str = "corpus") -> BaselineTable:
    if counts.total_normalized <= 0:
        raise EmptyCorpus("baseline corpus contains no mood-filtered tweets")
    zero = [s for s in SENTIMENTS if counts[s] == 0]
    if zero:
        raise DegenerateBaseline(zero)
    n = counts.total_normalized
    return BaselineTable({s: counts[s] / n for s in SENTIMENTS}, f"computed:{corpus_id}")


def relative_occurrence(counts: SentimentCounts) -> dict[Sentiment, float]:
    if counts.total_normalized <= 0:
        raise EmptyEvent("event has no mood-filtered tweets")
    n = counts.total_normalized
    return {s: counts[s] / n for s in SENTIMENTS}


def panas_score(alpha: float, beta: float, convention: str = PROSE) -> float:
    """Relative change of an event proportion against its baseline.

    Under the default convention a positive score is an increase: a doubling
    of the proportion scores 0.5 and complete absence scores -1. The
    ``printed-eq3`` convention returns the same magnitudes with the sign
    flipped.
    """
    if not alpha > 0:
        raise InvalidBaseline(f"baseline proportion must be positive, got {alpha!r}")
    if beta < 0:
        raise ValueError(f"relative occurrence must be non-negative, got {beta!r}")
    if convention == PROSE:
        if beta >= alpha:
            return (beta - alpha) / beta
        return -(alpha - beta) / alpha
    if convention == PRINTED:
        if beta <= alpha:
            return (alpha - beta) / alpha
        return -(beta - alpha) / beta
    raise ValueError(f"unknown sign convention {convention!r}")


def implied_beta(alpha: float, p: float, convention: str = PROSE) -> float:
    """Inverse of panas_score in its second argument."""
    if convention == PRINTED:
        p = -p
    elif convention != PROSE:
        raise ValueError(f"unknown sign convention {convention!r}")
    if p >= 0:
        return alpha / (1.0 - p)
    return alpha * (1.0 + p)


@dataclass(frozen=True)
class SentimentScore:
    alpha: float
    beta: float
    p: float


@dataclass(frozen=True)
class ScoreVector:
    scores: Mapping[Sentiment, SentimentScore]
    event_size: int
    provenance: str = "bundled-table3"
    convention: str = PROSE
    counts: SentimentCounts | None = field(default=None, compare=False)

    def __getitem__(self, s: Sentiment) -> SentimentScore:
        return self.scores[s]

    def p(self) -> list[float]:
        return [self.scores[s].p for s in SENTIMENTS]

    def as_dict(self) -> dict:
        return {
            "event_size": self.event_size,
            "provenance": self.provenance,
            "sign_convention": self.convention,
            "scores": [
                {
                    "sentiment": s.label,
                    "alpha": round(self.scores[s].alpha, DECIMALS),
                    "beta": round(self.scores[s].beta, DECIMALS),
                    "p": round(self.scores[s].p, DECIMALS),
                }
                for s in SENTIMENTS
            ],
        }


def score_vector(baseline: BaselineTable, counts: SentimentCounts, convention: str = PROSE) -> ScoreVector:
    beta = relative_occurrence(counts)
    scores = {
        s: SentimentScore(baseline[s], beta[s], panas_score(baseline[s], beta[s], convention))
        for s in SENTIMENTS
    }
    return ScoreVector(scores, counts.total_normalized, baseline.provenance, convention, counts)
