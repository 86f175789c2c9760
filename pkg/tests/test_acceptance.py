"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run just this file with ``pytest tests/test_acceptance.py -v -s`` to see
the verdict lines next to the pytest results (they are also printed without
``-s`` because output capture is disabled around them).
"""
import io
import json
import math
import random
import time
import warnings
from datetime import date, datetime, timedelta, timezone
from pathlib import Path

import pytest

import oracle
from panast.charts import KIVIAT_RIM, kiviat_radius, render_kiviat
from panast.classify import classify
from panast.corpus import count_sentiments, ingest
from panast.errors import EmptyEvent
from panast.events import EventSpec, extract_and_score, timeseries
from panast.lexicon import SENTIMENTS, Sentiment
from panast.normalize import TweetRecord, load_stopwords, normalize
from panast.score import SentimentCounts, implied_beta, load_bundled_baseline, merge_counts, panas_score, score_vector
from panast.synth import FILLER, corpus_lines, planted_event, random_text

ROOT = Path(__file__).resolve().parents[1]
GOLDEN = Path(__file__).parent / "golden"

# Baseline proportions as printed in the source table, kept as strings.
PUBLISHED_BASELINE = {
    "fear": "0.0063791", "sadness": "0.0086279", "guilt": "0.0021756", "hostility": "0.0018225",
    "shyness": "0.0007608", "fatigue": "0.0240757", "surprise": "0.0084612", "joviality": "0.0182421",
    "self-assurance": "0.0036012", "attentiveness": "0.0008997", "serenity": "0.0022914",
}


@pytest.fixture
def verdict(capsys):
    def emit(n, name, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {n}: {name}" + (f" ({detail})" if detail else ""))
        assert ok, f"criterion {n} failed: {detail}"
    return emit


def test_c1_bundled_baseline(verdict):
    base = load_bundled_baseline()
    exact = {s.label: f"{base[s]:.7f}" for s in SENTIMENTS} == PUBLISHED_BASELINE
    ratio = base[Sentiment.FATIGUE] / base[Sentiment.SHYNESS]
    verdict(1, "bundled baseline fidelity", exact and 31.5 <= ratio <= 31.8,
            f"11 values string-equal={exact}, fatigue/shyness={ratio:.4f}")


def test_c2_formula_suite(verdict):
    tol = 1e-12
    failures = []
    for label, text in PUBLISHED_BASELINE.items():
        a = float(text)
        if abs(panas_score(a, a)) > tol:
            failures.append(f"{label}: P(a,a)")
        if abs(panas_score(a, 2 * a) - 0.5) > tol:
            failures.append(f"{label}: P(a,2a)")
        if abs(panas_score(a, 0) + 1) > tol:
            failures.append(f"{label}: P(a,0)")
        grid = [i / 999 for i in range(1000)]
        ps = [panas_score(a, b) for b in grid]
        if not all(x < y for x, y in zip(ps, ps[1:])):
            failures.append(f"{label}: monotonicity")
        for b, p in zip(grid, ps):
            want = (b > a) - (b < a)
            got = (p > tol) - (p < -tol)
            if want != got:
                failures.append(f"{label}: sign at beta={b}")
                break
    verdict(2, "formula suite", not failures, "; ".join(failures) or "11 baselines x 1000-point grid")


def test_c3_worked_example(verdict):
    from panast.corpus import Pipeline

    pipe = Pipeline()
    rec = TweetRecord("1", None, "I am so scared about swine flu")
    t = normalize(rec, load_stopwords())
    words = list(t.word_tokens)
    got = classify(t, pipe.stemmed)
    verdict(3, "worked example", words == ["i", "am", "scare", "swine", "flu"] and got is Sentiment.FEAR,
            f"wordTokens={words}, classify={got}")


def test_c4_oracle_equivalence(verdict, pipe, rows, stop):
    rng = random.Random(2024)
    t0 = time.perf_counter()
    mismatches = []
    runs = 0
    for k in range(100):
        n = rng.randint(1, 1000)
        lines = []
        for i in range(n):
            text = random_text(rng, pipe.lexicon, p_term=rng.random() * 0.6)
            day = date(2009, 1, 1) + timedelta(days=rng.randrange(365))
            lines.append('{"id": "%d", "created_at": "%sT12:00:00Z", "text": %s}'
                         % (i, day.isoformat(), json.dumps(text, ensure_ascii=rng.random() < 0.5)))
            if rng.random() < 0.03:
                lines.append(rng.choice(["{oops", "", '{"id": 1}', "[]"]))
        ref = oracle.count(lines, rows, stop)
        expected = SentimentCounts(tuple(ref["per"]), ref["mood"], ref["seen"])
        data = ("\n".join(lines) + "\n").encode("utf-8", "surrogatepass")
        backends = ["numba", "numpy"] if k % 10 == 0 else [None]
        for backend in backends:
            for workers in (1, 2, 4, 8):
                got = ingest(io.BytesIO(data), pipeline=pipe, workers=workers, backend=backend, block_bytes=8192)
                runs += 1
                if got.counts != expected:
                    mismatches.append(f"corpus {k} backend={backend} workers={workers}")
    laws = 0
    for _ in range(1000):
        a, b, c = (SentimentCounts(tuple(rng.randrange(10**9) for _ in SENTIMENTS), 10**10, 10**11)
                   for _ in range(3))
        laws += (merge_counts(a, SentimentCounts()) == a and merge_counts(a, b) == merge_counts(b, a)
                 and merge_counts(merge_counts(a, b), c) == merge_counts(a, merge_counts(b, c)))
    elapsed = time.perf_counter() - t0
    ok = not mismatches and laws == 1000 and elapsed < 30
    verdict(4, "oracle equivalence", ok,
            f"{runs} pipeline runs over 100 corpora, mismatches={mismatches[:3]}, merge laws {laws}/1000, "
            f"{elapsed:.1f}s")


H1N1 = EventSpec("h1n1", ("swine", "pandemic"), date(2009, 3, 1), date(2009, 7, 31))


def test_c5_round_trip(verdict, pipe):
    base = load_bundled_baseline()
    t0 = time.perf_counter()
    vec = extract_and_score(planted_event(1000, {Sentiment.FEAR: 0.2}, lexicon=pipe.lexicon), H1N1, base, pipe)
    fear = vec[Sentiment.FEAR].p
    ok_fear = abs(fear - 0.9681045) <= 1e-9 and abs(fear - (0.2 - 0.0063791) / 0.2) <= 1e-9

    targets = {Sentiment.ATTENTIVENESS: 0.8774, Sentiment.FEAR: 0.6768}
    betas = {s: implied_beta(base[s], p) for s, p in targets.items()}
    days = [date(2009, 3, 1) + timedelta(days=d) for d in range(10)]
    recs = planted_event(20000, betas, days=days, seed=5, lexicon=pipe.lexicon)
    vec = extract_and_score(recs, H1N1, base, pipe)
    errs = {s.label: abs(vec[s].p - p) for s, p in targets.items()}
    elapsed = time.perf_counter() - t0
    ok = ok_fear and all(e <= 1e-3 for e in errs.values()) and elapsed < 10
    verdict(5, "round-trip event score", ok,
            f"fear={fear:.10f}; regenerated {', '.join(f'{k} err={v:.2e}' for k, v in errs.items())}; "
            f"{elapsed:.1f}s")


def _oracle_filter(rec, event):
    day = rec.created_at.date()
    if not event.start <= day <= event.end:
        return False
    if event.regions is not None and rec.region not in event.regions:
        return False
    toks = oracle.tokens(rec.text)
    for kw in event.keywords:
        ph = oracle.tokens(kw)
        if any(toks[i:i + len(ph)] == ph for i in range(len(toks) - len(ph) + 1)):
            return True
    return False


def test_c6_composition(verdict, pipe):
    base = load_bundled_baseline()
    rng = random.Random(77)
    keywords = FILLER[:12] + ["coffee train", "swine flu"]
    t0 = time.perf_counter()
    problems = []
    scored = 0
    for k in range(20):
        start = date(2009, 6, 1)
        recs = []
        for i in range(rng.randint(100, 600)):
            text = random_text(rng, pipe.lexicon)
            if rng.random() < 0.5:
                text += " " + rng.choice(keywords)
            when = start + timedelta(days=rng.randrange(20))
            recs.append(TweetRecord(f"{k}-{i}", datetime(when.year, when.month, when.day, rng.randrange(24),
                                                       tzinfo=timezone.utc), text, None,
                                    rng.choice(["US", "EU", "BR", None])))
        lo = start + timedelta(days=rng.randrange(15))
        event = EventSpec(f"e{k}", tuple(rng.sample(keywords, rng.randint(1, 3))), lo,
                          lo + timedelta(days=rng.randrange(8)),
                          frozenset(rng.sample(["US", "EU", "BR"], rng.randint(1, 2))) if rng.random() < 0.5 else None)
        subset = [r for r in recs if _oracle_filter(r, event)]
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            try:
                vec = extract_and_score(recs, event, base, pipe)
            except EmptyEvent:
                vec = None
            try:
                counts, _ = count_sentiments(subset, pipeline=pipe)
                expected = score_vector(base, counts) if counts.total_normalized else None
            except EmptyEvent:
                expected = None
            if vec != expected:
                problems.append(f"event {k}: extract_and_score differs from filter->count->score")
                continue
            if vec is None:
                continue
            scored += 1
            series = timeseries(recs, event, base, pipe)
            # days whose event tweets all fail the mood filter are not series points,
            # so compare the score inputs rather than raw records seen
            summed = series.total_counts()
            if (summed.per_sentiment, summed.total_normalized) != (vec.counts.per_sentiment,
                                                                   vec.counts.total_normalized):
                problems.append(f"event {k}: daily counts do not sum to event counts")
            ref = oracle.count([json.dumps({"id": r.id, "created_at": "2009-06-01T00:00:00Z",
                                                          "text": r.text}) for r in subset])
            if list(vec.counts.per_sentiment) != ref["per"] or vec.counts.total_normalized != ref["mood"]:
                problems.append(f"event {k}: counts differ from naive oracle")
    elapsed = time.perf_counter() - t0
    verdict(6, "compositional consistency", not problems and elapsed < 10,
            "; ".join(problems) or f"20 random events, {scored} non-empty, {elapsed:.1f}s")


def test_c7_chart_goldens(verdict):
    fixed = [0.9280, -0.25, 0.5, -1.0, 0.0, 0.1234567, -0.6, 0.75, 0.3, 0.8774, -0.05]
    zero_ok = render_kiviat([0.0] * 11) == (GOLDEN / "kiviat_zero.svg").read_text(encoding="utf-8")
    fixed_ok = render_kiviat(fixed, title="fixed test vector") == (GOLDEN / "kiviat_fixed.svg").read_text(
        encoding="utf-8")
    radii = {p: kiviat_radius(p) / KIVIAT_RIM for p in (-1.0, 0.0, 0.9280)}
    radius_ok = all(math.isclose(r, (p + 1) / 2, abs_tol=1e-12) for p, r in radii.items())
    verdict(7, "chart goldens", zero_ok and fixed_ok and radius_ok,
            f"zero golden={zero_ok}, fixed golden={fixed_ok}, radius fractions="
            + ", ".join(f"{p:+.3f}->{r:.3f}" for p, r in radii.items()))


def test_c8_throughput(verdict, pipe):
    n = 1_000_000
    data = ("\n".join(corpus_lines(n, seed=8)) + "\n").encode()
    ingest(io.BytesIO(data[:2_000_000]), pipeline=pipe, workers=4)  # compile and warm caches
    result = ingest(io.BytesIO(data), pipeline=pipe, workers=4)
    rep = result.report
    verdict(8, "throughput", rep.total_seen == n and rep.records_per_second >= 200_000,
            f"{rep.total_seen:,} records in {rep.elapsed:.2f}s = {rep.records_per_second:,.0f} rec/s, "
            f"backend={rep.backend}, workers={rep.workers}")


def test_c9_non_reproducibility(verdict):
    readme = (ROOT / "README.md").read_text(encoding="utf-8")
    ok = "Not reproducible at desk scale" in readme and "1.8 billion" in readme
    verdict(9, "non-reproducibility statement", ok,
            "absolute event scores and corpus-wide term frequencies need the original tweet corpus; "
            "criteria 1-7 substitute bundled-data fidelity, formula properties, oracle equivalence "
            "and synthetic round trips")
