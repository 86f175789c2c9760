import warnings
from datetime import date, datetime, timezone

import pytest

from panast.corpus import count_sentiments
from panast.errors import DegenerateEventWarning, EmptyEvent
from panast.events import (
    EventSpec,
    daily_counts,
    extract_and_score,
    load_events,
    matches_event,
    parse_events,
    resolve_event,
    timeseries,
)
from panast.lexicon import Sentiment
from panast.normalize import TweetRecord
from panast.score import score_vector
from panast.synth import noise_records, planted_event

H1N1 = load_events()["h1n1"]


def rec(text, day=date(2009, 6, 1), region=None):
    return TweetRecord("1", datetime(day.year, day.month, day.day, 12, tzinfo=timezone.utc), text, None, region)


def test_bundled_events():
    events = load_events()
    assert list(events) == ["h1n1", "airfrance", "us-elec", "obama", "michael-jackson", "susan-boyle",
                            "harry-potter", "olympics", "samoa", "haiti"]
    assert "swine" in H1N1.keywords and "world health organization" in H1N1.keywords
    assert events["haiti"].start == date(2010, 1, 11) and events["haiti"].end == date(2010, 1, 17)


def test_matches_event():
    assert matches_event(rec("swine flu panic"), H1N1)
    assert not matches_event(rec("swine flu panic", date(2009, 8, 1)), H1N1)
    assert not matches_event(rec("swineflu panic"), H1N1)
    assert matches_event(rec("The World-Health Organization said"), H1N1)
    assert not matches_event(rec("world organization of health"), H1N1)
    haiti = load_events()["haiti"]
    assert matches_event(rec("Port-au-Prince is devastated", date(2010, 1, 12)), haiti)


def test_region_filter():
    us = H1N1.restricted(["US"])
    assert matches_event(rec("swine", region="US"), us)
    assert not matches_event(rec("swine", region="EU"), us)
    assert not matches_event(rec("swine"), us)


def test_event_validation():
    with pytest.raises(ValueError):
        EventSpec("x", (), date(2009, 1, 1), date(2009, 1, 2))
    with pytest.raises(ValueError):
        EventSpec("x", ("Swine",), date(2009, 1, 1), date(2009, 1, 2))
    with pytest.raises(ValueError):
        EventSpec("x", ("swine",), date(2009, 1, 3), date(2009, 1, 2))


def test_event_files(tmp_path):
    text = "[a]\nkeywords = foo, bar baz\nstart = 2009-01-01\nend = 2009-01-02\nregions = US, EU\n" \
           "[b]\nkeywords = qux\nstart = 2009-01-01\nend = 2009-01-01\n"
    events = parse_events(text)
    assert events["a"].phrases == (("foo",), ("bar", "baz"))
    assert events["a"].regions == {"US", "EU"} and events["b"].regions is None
    p = tmp_path / "ev.ini"
    p.write_text(text, encoding="utf-8")
    assert resolve_event(f"{p}:b").name == "b"
    with pytest.raises(ValueError, match="pick one"):
        resolve_event(str(p))
    with pytest.raises(ValueError, match="lacks"):
        parse_events("[c]\nkeywords = x\nstart = 2009-01-01\n")
    with pytest.raises(ValueError, match="unknown event"):
        resolve_event("nope")


def test_fear_event_score(pipe, baseline):
    recs = planted_event(1000, {Sentiment.FEAR: 0.2}, lexicon=pipe.lexicon)
    vec = extract_and_score(recs, H1N1, baseline, pipe)
    assert vec.event_size == 1000
    assert vec[Sentiment.FEAR].beta == 0.2
    assert abs(vec[Sentiment.FEAR].p - (0.2 - 0.0063791) / 0.2) < 1e-12


def test_empty_window(pipe, baseline):
    recs = planted_event(50, {Sentiment.FEAR: 0.2}, days=[date(2010, 1, 1)], lexicon=pipe.lexicon)
    with pytest.raises(EmptyEvent):
        extract_and_score(recs, H1N1, baseline, pipe)


def test_no_mood_statements(pipe, baseline):
    recs = [TweetRecord(str(i), datetime(2009, 6, 1, tzinfo=timezone.utc), "swine news") for i in range(5)]
    with pytest.raises(EmptyEvent, match="no mood statements"):
        extract_and_score(recs, H1N1, baseline, pipe)


def test_small_event_warns(pipe, baseline):
    recs = planted_event(20, {Sentiment.FEAR: 0.5}, lexicon=pipe.lexicon)
    with pytest.warns(DegenerateEventWarning):
        extract_and_score(recs, H1N1, baseline, pipe)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        extract_and_score(recs, H1N1, baseline, pipe, min_event_size=20)


def test_two_day_series(pipe, baseline):
    d1, d2 = date(2009, 6, 1), date(2009, 6, 3)
    recs = planted_event(100, {Sentiment.FEAR: 1.0}, days=[d1], lexicon=pipe.lexicon)
    recs += planted_event(100, {Sentiment.JOVIALITY: 1.0}, days=[d2], seed=1, lexicon=pipe.lexicon)
    ts = timeseries(recs, H1N1, baseline, pipe)
    assert ts.days() == [d1, d2]
    a, b = ts.points
    assert a.vector[Sentiment.FEAR].p > 0 > a.vector[Sentiment.JOVIALITY].p
    assert b.vector[Sentiment.JOVIALITY].p > 0 > b.vector[Sentiment.FEAR].p
    assert ts.total_counts() == extract_and_score(recs, H1N1, baseline, pipe).counts


def test_series_omits_rejected_days(pipe, baseline):
    recs = planted_event(100, {Sentiment.FEAR: 0.5}, lexicon=pipe.lexicon)
    recs.append(TweetRecord("z", datetime(2009, 6, 2, tzinfo=timezone.utc), "swine news"))
    ts = timeseries(recs, H1N1, baseline, pipe)
    assert ts.days() == [date(2009, 6, 1)]
    days, matched = daily_counts(recs, H1N1, pipe)
    assert matched == 101 and days[date(2009, 6, 2)].total_normalized == 0


def test_single_day_window(pipe, baseline):
    ev = EventSpec("one", ("swine",), date(2009, 6, 2), date(2009, 6, 2))
    recs = planted_event(300, {Sentiment.FEAR: 0.1}, days=[date(2009, 6, 1), date(2009, 6, 2), date(2009, 6, 3)],
                         lexicon=pipe.lexicon)
    ts = timeseries(recs, ev, baseline, pipe, min_event_size=1)
    assert len(ts) == 1 and ts.points[0].event_size == 100


def test_region_series(pipe, baseline):
    recs = planted_event(100, {Sentiment.FEAR: 0.5}, region="US", lexicon=pipe.lexicon)
    recs += planted_event(100, {Sentiment.SADNESS: 0.5}, region="EU", seed=4, lexicon=pipe.lexicon)
    vec = extract_and_score(recs, H1N1.restricted(["US"]), baseline, pipe)
    assert vec.event_size == 100 and vec[Sentiment.SADNESS].beta == 0


def test_process_workers_match(pipe, baseline):
    recs = planted_event(500, {Sentiment.FEAR: 0.3, Sentiment.SERENITY: 0.1},
                         days=[date(2009, 6, d) for d in range(1, 6)], lexicon=pipe.lexicon)
    recs += noise_records(200, keyword="swine")
    one = timeseries(recs, H1N1, baseline, pipe)
    many = timeseries(recs, H1N1, baseline, pipe, workers=3)
    assert one == many


def test_composition(pipe, baseline):
    recs = planted_event(400, {Sentiment.GUILT: 0.25}, lexicon=pipe.lexicon) + noise_records(100, keyword="other")
    vec = extract_and_score(recs, H1N1, baseline, pipe)
    counts, _ = count_sentiments([r for r in recs if matches_event(r, H1N1)], pipeline=pipe)
    assert vec == score_vector(baseline, counts)
