"""Command-line interface: ``panast <command> [options]``.

Data goes to stdout (or ``--output``); reports, warnings and errors go to
stderr. Exit status is 0 on success, 2 on usage errors, and a
command-specific non-zero code for pipeline errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
import warnings
from datetime import date
from pathlib import Path

from . import __version__
from .charts import render_kiviat, render_sparklines
from .classify import match_positions
from .corpus import Pipeline, ingest
from .errors import EmptyEvent, PanasError
from .events import DEFAULT_MIN_EVENT_SIZE, EventSpec, extract_and_score, resolve_event, timeseries
from .lexicon import SENTIMENTS, Sentiment, load_default, load_lexicon
from .normalize import STEMMER_NAME, TweetRecord, load_stopwords, normalize
from .score import PROSE, SIGN_CONVENTIONS, ScoreVector, SentimentScore, compute_baseline, fmt, load_baseline
from .synth import corpus_lines

DEFAULT_SPARK_SENTIMENTS = "fear,surprise,attentiveness,hostility"


# --------------------------------------------------------------------------
# argument plumbing


def _add_pipeline_args(p: argparse.ArgumentParser, inputs: bool = True) -> None:
    if inputs:
        p.add_argument("--input", "-i", action="append", default=None, metavar="PATH",
                       help="newline-delimited JSON records; '-' for stdin, .gz accepted (repeatable)")
        p.add_argument("--workers", "-w", type=int, default=1, help="worker count (default 1)")
    p.add_argument("--lexicon", metavar="PATH", help="replacement lexicon file (<scale>\\t<term>)")
    p.add_argument("--stopwords", metavar="PATH", help="replacement stop word list (one per line)")


def _add_event_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--event", "-e", required=True,
                   help="bundled event name, an .ini file with one event, or FILE:NAME")
    p.add_argument("--baseline", metavar="PATH", help="baseline file (default: bundled table)")
    p.add_argument("--sign-convention", choices=SIGN_CONVENTIONS, default=PROSE)
    p.add_argument("--min-event-size", type=int, default=DEFAULT_MIN_EVENT_SIZE,
                   help="warn when fewer mood-filtered tweets match (default %(default)s)")
    p.add_argument("--region", action="append", default=None, metavar="CODE",
                   help="keep only records from this region (repeatable)")


def _add_output_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", "-o", metavar="PATH", help="write data here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="panast", description="PANAS-t affect scores for tweet corpora.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("baseline", help="compute per-sentiment baseline proportions of a corpus")
    _add_pipeline_args(p)
    _add_output_arg(p)
    p.add_argument("--corpus-id", default=None, help="label recorded as the baseline provenance")
    p.add_argument("--report", metavar="PATH", help="also write the ingest report as JSON")

    p = sub.add_parser("classify", help="classify texts given as arguments or stdin lines")
    p.add_argument("text", nargs="*", help="texts to classify (default: one per stdin line)")
    p.add_argument("--format", "-f", choices=("table", "json"), default="table")
    _add_pipeline_args(p, inputs=False)
    _add_output_arg(p)

    p = sub.add_parser("score", help="PANAS-t score vector of an event")
    _add_pipeline_args(p)
    _add_event_args(p)
    _add_output_arg(p)
    p.add_argument("--format", "-f", choices=("table", "csv", "json", "svg"), default="table")

    p = sub.add_parser("timeseries", help="daily PANAS-t scores of an event")
    _add_pipeline_args(p)
    _add_event_args(p)
    _add_output_arg(p)
    p.add_argument("--format", "-f", choices=("csv", "json"), default="csv")
    p.add_argument("--split-regions", action="store_true",
                   help="emit one series per --region value instead of one pooled series")

    p = sub.add_parser("termfreq", help="tweets containing each lexicon term")
    _add_pipeline_args(p)
    _add_output_arg(p)
    p.add_argument("--format", "-f", choices=("table", "csv", "json"), default="table")
    p.add_argument("--all", action="store_true", help="include terms that never occur")

    p = sub.add_parser("chart", help="render an SVG chart")
    csub = p.add_subparsers(dest="chart", required=True)
    k = csub.add_parser("kiviat", help="radar chart of one score vector")
    _add_pipeline_args(k)
    k.add_argument("--scores", metavar="PATH", help="score JSON written by 'score --format json'")
    k.add_argument("--event", "-e", help="event to score when --scores is not given")
    k.add_argument("--baseline", metavar="PATH")
    k.add_argument("--sign-convention", choices=SIGN_CONVENTIONS, default=PROSE)
    k.add_argument("--min-event-size", type=int, default=DEFAULT_MIN_EVENT_SIZE)
    k.add_argument("--region", action="append", default=None, metavar="CODE")
    _add_output_arg(k)
    s = csub.add_parser("sparkline", help="stacked daily sparklines for an event")
    _add_pipeline_args(s)
    _add_event_args(s)
    _add_output_arg(s)
    s.add_argument("--sentiments", default=DEFAULT_SPARK_SENTIMENTS,
                   help="comma-separated sentiments (default %(default)s)")
    s.add_argument("--marker", action="append", default=[], metavar="YYYY-MM-DD",
                   help="draw a vertical marker on this date (repeatable)")

    p = sub.add_parser("synth", help="write a synthetic corpus for benchmarking")
    p.add_argument("--records", "-n", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--term-rate", type=float, default=0.3, help="fraction of records carrying a lexicon term")
    _add_output_arg(p)
    return parser


# --------------------------------------------------------------------------
# helpers


def _pipeline(args) -> Pipeline:
    lexicon = load_lexicon(args.lexicon) if args.lexicon else load_default()
    stopwords = load_stopwords(args.stopwords)
    return Pipeline(lexicon, stopwords)


def _inputs(args):
    paths = args.input or ["-"]
    if args.workers < 1:
        raise _Usage("--workers must be >= 1")
    if len(paths) == 1:
        return paths[0]
    from .corpus import read_stream

    return itertools.chain.from_iterable(read_stream(p) for p in paths)


def _event(args) -> EventSpec:
    try:
        event = resolve_event(args.event)
    except ValueError as exc:
        raise _Usage(str(exc)) from None
    if getattr(args, "region", None):
        event = event.restricted(args.region)
    return event


class _Usage(Exception):
    pass


def _write(args, text: str) -> None:
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _score_rows(vector: ScoreVector):
    for s in SENTIMENTS:
        sc = vector[s]
        yield s.label, fmt(sc.alpha), fmt(sc.beta), fmt(sc.p)


def _score_json(vector: ScoreVector, event_name: str) -> dict:
    d = vector.as_dict()
    return {
        "event": event_name,
        "event_size": d["event_size"],
        "provenance": d["provenance"],
        "sign_convention": d["sign_convention"],
        "stemmer": STEMMER_NAME,
        "scores": d["scores"],
    }


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _table_text(header, rows) -> str:
    rows = [list(map(str, r)) for r in rows]
    widths = [max(len(str(h)), *(len(r[i]) for r in rows)) if rows else len(str(h)) for i, h in enumerate(header)]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths)).rstrip()]
    for r in rows:
        lines.append("  ".join(c.ljust(w) if i == 0 else c.rjust(w)
                               for i, (c, w) in enumerate(zip(r, widths))).rstrip())
    return "\n".join(lines) + "\n"


def _vector_from_json(path: str) -> tuple[ScoreVector, str]:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    scores = {}
    for row in data["scores"]:
        scores[Sentiment.parse(row["sentiment"])] = SentimentScore(row["alpha"], row["beta"], row["p"])
    if set(scores) != set(SENTIMENTS):
        raise _Usage(f"{path}: score file must list all {len(SENTIMENTS)} sentiments")
    vec = ScoreVector(scores, data["event_size"], data.get("provenance", ""), data.get("sign_convention", PROSE))
    return vec, data.get("event", "")


# --------------------------------------------------------------------------
# commands


def cmd_baseline(args) -> int:
    pipe = _pipeline(args)
    result = ingest(_inputs(args), workers=args.workers, pipeline=pipe)
    print(result.report.summary(), file=sys.stderr)
    if args.report:
        Path(args.report).write_text(json.dumps(result.report.as_dict(), indent=2) + "\n", encoding="utf-8")
    corpus_id = args.corpus_id or ",".join(Path(p).name for p in (args.input or ["stdin"]))
    table = compute_baseline(result.counts, corpus_id)
    _write(args, table.to_tsv())
    return 0


def cmd_classify(args) -> int:
    pipe = _pipeline(args)
    texts = args.text or [line.rstrip("\r\n") for line in sys.stdin]
    rows = []
    for text in texts:
        rec = TweetRecord("cli", date(1970, 1, 1), text)
        tweet = normalize(rec, pipe.stopwords)
        matches = match_positions(tweet, pipe.stemmed) if tweet is not None else []
        rows.append({
            "text": text,
            "mood_statement": tweet is not None,
            "sentiment": matches[0].sentiment.label if matches else None,
            "matches": [
                {"position": m.position, "length": m.length, "sentiment": m.sentiment.label, "term": m.term.surface}
                for m in matches
            ],
        })
    if args.format == "json":
        _write(args, json.dumps(rows, indent=2, ensure_ascii=False) + "\n")
    else:
        out = []
        for r in rows:
            label = r["sentiment"] or ("unclassified" if r["mood_statement"] else "rejected")
            out.append(f"{label}\t{r['text']}")
        _write(args, "\n".join(out) + ("\n" if out else ""))
    return 0


def _score(args, pipe, event) -> ScoreVector:
    return extract_and_score(_inputs(args), event, load_baseline(args.baseline), pipe,
                             convention=args.sign_convention, min_event_size=args.min_event_size,
                             workers=args.workers)


def cmd_score(args) -> int:
    pipe = _pipeline(args)
    event = _event(args)
    vector = _score(args, pipe, event)
    print(f"event={event.name} event_size={vector.event_size} provenance={vector.provenance} "
          f"sign_convention={vector.convention}", file=sys.stderr)
    header = ("sentiment", "alpha", "beta", "p")
    if args.format == "json":
        text = json.dumps(_score_json(vector, event.name), indent=2) + "\n"
    elif args.format == "csv":
        text = _csv_text(header, _score_rows(vector))
    elif args.format == "svg":
        text = render_kiviat(vector, title=event.name)
    else:
        text = _table_text(header, _score_rows(vector))
    _write(args, text)
    return 0


def _series(args, pipe, event):
    """[(region or None, TimeSeries)]; the input is re-read per region when splitting."""
    baseline = load_baseline(args.baseline)
    kw = dict(convention=args.sign_convention, min_event_size=args.min_event_size, workers=args.workers)
    if getattr(args, "split_regions", False) and args.region:
        if args.input is None or "-" in args.input:
            raise _Usage("--split-regions needs --input files (stdin cannot be re-read)")
        out = []
        for region in args.region:
            try:
                out.append((region, timeseries(_inputs(args), event.restricted([region]), baseline, pipe, **kw)))
            except EmptyEvent as exc:
                print(f"warning: region {region}: {exc}", file=sys.stderr)
        if not out:
            raise EmptyEvent(f"no region of event {event.name!r} has mood statements")
        return out
    return [(None, timeseries(_inputs(args), event, baseline, pipe, **kw))]


def cmd_timeseries(args) -> int:
    pipe = _pipeline(args)
    event = _event(args)
    series = _series(args, pipe, event)
    split = series[0][0] is not None
    if args.format == "json":
        first = series[0][1].points[0].vector
        doc = {
            "event": event.name,
            "provenance": first.provenance,
            "sign_convention": first.convention,
            "stemmer": STEMMER_NAME,
            "series": [
                {
                    "region": region,
                    "points": [
                        {"date": p.day.isoformat(), "event_size": p.event_size, "scores": p.vector.as_dict()["scores"]}
                        for p in ts.points
                    ],
                }
                for region, ts in series
            ],
        }
        _write(args, json.dumps(doc, indent=2) + "\n")
        return 0
    header = (("region",) if split else ()) + ("date", "sentiment", "alpha", "beta", "p", "n")
    rows = []
    for region, ts in series:
        for p in ts.points:
            for label, a, b, sc in _score_rows(p.vector):
                row = (p.day.isoformat(), label, a, b, sc, p.event_size)
                rows.append(((region,) if split else ()) + row)
    _write(args, _csv_text(header, rows))
    return 0


def cmd_termfreq(args) -> int:
    pipe = _pipeline(args)
    result = ingest(_inputs(args), workers=args.workers, pipeline=pipe)
    print(result.report.summary(), file=sys.stderr)
    groups = result.terms.by_sentiment()
    if args.format == "json":
        doc = {
            "total_mood_filtered": result.report.total_mood_filtered,
            "stemmer": STEMMER_NAME,
            "terms": [
                {"sentiment": s.label, "term": t.surface, "count": c}
                for s in SENTIMENTS for t, c in groups[s] if c or args.all
            ],
        }
        _write(args, json.dumps(doc, indent=2) + "\n")
    elif args.format == "csv":
        rows = [(s.label, t.surface, c) for s in SENTIMENTS for t, c in groups[s] if c or args.all]
        _write(args, _csv_text(("sentiment", "term", "count"), rows))
    else:
        out = []
        for s in SENTIMENTS:
            rows = [(t, c) for t, c in groups[s] if c or args.all]
            if not rows:
                continue
            out.append(s.label.capitalize())
            out.extend(f"  {t.surface}: {c:,}" for t, c in rows)
        _write(args, "\n".join(out) + ("\n" if out else ""))
    return 0


def cmd_chart(args) -> int:
    if args.chart == "kiviat":
        if args.scores:
            vector, name = _vector_from_json(args.scores)
        elif args.event:
            event = _event(args)
            vector, name = _score(args, _pipeline(args), event), event.name
        else:
            raise _Usage("chart kiviat needs --scores or --event")
        _write(args, render_kiviat(vector, title=name or None))
        return 0
    pipe = _pipeline(args)
    event = _event(args)
    try:
        sentiments = [Sentiment.parse(s) for s in args.sentiments.split(",") if s.strip()]
        markers = [date.fromisoformat(m) for m in args.marker]
    except ValueError as exc:
        raise _Usage(str(exc)) from None
    ts = timeseries(_inputs(args), event, load_baseline(args.baseline), pipe, convention=args.sign_convention,
                    min_event_size=args.min_event_size, workers=args.workers)
    _write(args, render_sparklines(ts, sentiments, markers, title=event.name))
    return 0


def cmd_synth(args) -> int:
    out = open(args.output, "w", encoding="utf-8") if args.output else sys.stdout
    try:
        for line in corpus_lines(args.records, args.seed, p_term=args.term_rate):
            out.write(line + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


COMMANDS = {
    "baseline": cmd_baseline,
    "classify": cmd_classify,
    "score": cmd_score,
    "timeseries": cmd_timeseries,
    "termfreq": cmd_termfreq,
    "chart": cmd_chart,
    "synth": cmd_synth,
}


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"warning: {message}", file=sys.stderr)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    warnings.showwarning = _show_warning
    try:
        return COMMANDS[args.command](args)
    except _Usage as exc:
        parser.error(str(exc))
    except PanasError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
