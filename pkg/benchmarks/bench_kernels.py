"""Compare the numba and pure-numpy code paths.

    python3 benchmarks/bench_kernels.py --records 200000 --workers 1 4

Two measurements per backend:
  ingest       full NDJSON pass (parse, filter, normalize, classify, tally)
  first_match  the batch matcher alone on pre-tokenized tweets
Each figure is the best of ``--repeat`` runs after one warm-up run, so numba
compile time is excluded.
"""
from __future__ import annotations

import argparse
import io
import time

import numpy as np

from panast._accel import HAVE_NUMBA
from panast.corpus import Pipeline, ingest
from panast.kernels import first_match
from panast.normalize import normalize_text, parse_record
from panast.synth import corpus_lines


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def flatten(pipe, texts):
    ids, flags, offsets = [], [], [0]
    for text in texts:
        phrase, _, positions = normalize_text(text, pipe.stopwords)
        ids.extend(pipe.tables.stem_ids.get(t, 0) for t in phrase)
        mask = np.zeros(len(phrase), bool)
        mask[list(positions)] = True
        flags.append(mask)
        offsets.append(len(ids))
    return np.asarray(ids, np.int32), np.concatenate(flags), np.asarray(offsets, np.int64)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--records", type=int, default=200_000)
    ap.add_argument("--workers", type=int, nargs="+", default=[1, 4])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    backends = ["numba", "numpy"] if HAVE_NUMBA else ["numpy"]
    pipe = Pipeline()
    lines = list(corpus_lines(args.records, seed=args.seed))
    data = ("\n".join(lines) + "\n").encode()
    print(f"corpus: {args.records:,} records, {len(data) / 1e6:.1f} MB")

    print("\ningest")
    print(f"{'backend':<8} {'workers':>7} {'seconds':>9} {'rec/s':>12}")
    for backend in backends:
        for w in args.workers:
            t = best_of(lambda: ingest(io.BytesIO(data), pipeline=pipe, workers=w, backend=backend), args.repeat)
            print(f"{backend:<8} {w:>7} {t:>9.3f} {args.records / t:>12,.0f}")

    texts = [parse_record(line).text for line in lines[:100_000]]
    flat = flatten(pipe, texts)
    print(f"\nfirst_match on {len(texts):,} tweets ({len(flat[0]):,} tokens)")
    print(f"{'backend':<8} {'seconds':>9} {'tweets/s':>12}")
    results = {}
    for backend in backends:
        t = best_of(lambda: first_match(*flat, pipe.tables, backend=backend), args.repeat)
        results[backend] = first_match(*flat, pipe.tables, backend=backend)
        print(f"{backend:<8} {t:>9.4f} {len(texts) / t:>12,.0f}")
    if len(results) == 2:
        (s1, h1), (s2, h2) = results.values()
        print(f"\nbackends agree: {bool(np.array_equal(s1, s2) and np.array_equal(h1, h2))}")


if __name__ == "__main__":
    main()
