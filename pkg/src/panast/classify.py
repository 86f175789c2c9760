"""Single-sentiment assignment by first occurrence of a lexicon term."""
from __future__ import annotations

from dataclasses import dataclass

from .lexicon import LexiconTerm, Sentiment, StemmedLexicon
from .normalize import NormalizedTweet


@dataclass(frozen=True)
class Match:
    position: int
    length: int
    sentiment: Sentiment
    term: LexiconTerm

    def sort_key(self):
        # earliest start, then longest term, then lowest sentiment ordinal
        return (self.position, -self.length, int(self.sentiment))


def match_positions(tweet: NormalizedTweet, lex: StemmedLexicon) -> list[Match]:
    """Every lexicon occurrence in the tweet, in classification priority order.

    Multi-word terms match contiguous runs of ``phrase_tokens``; single-word
    terms match ``word_tokens`` and report the phrase index they came from.
    """
    matches = []
    phrase = tweet.phrase_tokens
    for word, pos in zip(tweet.word_tokens, tweet.word_positions):
        hit = lex.entries.get((word,))
        if hit is not None:
            matches.append(Match(pos, 1, hit[0], hit[1]))
    for n in range(2, lex.max_phrase_len + 1):
        for i in range(len(phrase) - n + 1):
            hit = lex.entries.get(phrase[i:i + n])
            if hit is not None:
                matches.append(Match(i, n, hit[0], hit[1]))
    matches.sort(key=Match.sort_key)
    return matches


def classify(tweet: NormalizedTweet, lex: StemmedLexicon) -> Sentiment | None:
    """Sentiment of the earliest match, or None when the tweet is unclassified."""
    matches = match_positions(tweet, lex)
    return matches[0].sentiment if matches else None
