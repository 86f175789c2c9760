"""Exception and warning types raised by the pipeline."""


class PanasError(Exception):
    """Base class for all pipeline errors."""

    exit_code = 1


class LexiconError(PanasError):
    """Lexicon data failed validation or could not be stemmed unambiguously."""

    exit_code = 3


class EmptyCorpus(PanasError):
    exit_code = 4


class DegenerateBaseline(PanasError):
    """A baseline corpus lacks at least one sentiment."""

    exit_code = 5

    def __init__(self, sentiments):
        self.sentiments = tuple(sentiments)
        names = ", ".join(s.label for s in self.sentiments)
        super().__init__(f"baseline corpus has no tweets for: {names}")


class EmptyEvent(PanasError):
    exit_code = 6


class InvalidBaseline(PanasError, ValueError):
    exit_code = 7


class DegenerateEventWarning(UserWarning):
    """Fewer mood-filtered tweets matched an event than the configured minimum."""
