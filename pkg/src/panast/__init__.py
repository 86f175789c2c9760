"""PANAS-t affect scoring for short text updates."""
from .charts import render_kiviat, render_sparklines
from .classify import Match, classify, match_positions
from .corpus import (
    IngestReport,
    Pipeline,
    TermFrequencyTable,
    count_sentiments,
    ingest,
    read_stream,
    term_frequencies,
)
from .errors import (
    DegenerateBaseline,
    DegenerateEventWarning,
    EmptyCorpus,
    EmptyEvent,
    InvalidBaseline,
    LexiconError,
    PanasError,
)
from .events import EventSpec, TimeSeries, extract_and_score, load_events, matches_event, timeseries
from .lexicon import SENTIMENTS, Lexicon, LexiconTerm, Sentiment, StemmedLexicon, load_default, stem_lexicon, validate
from .normalize import NormalizedTweet, TweetRecord, is_mood_statement, normalize, stem, tokenize
from .score import (
    BaselineTable,
    ScoreVector,
    SentimentCounts,
    compute_baseline,
    implied_beta,
    load_baseline,
    load_bundled_baseline,
    merge_counts,
    panas_score,
    relative_occurrence,
    score_vector,
)

__version__ = "0.1.0"
