"""Hot loops of the ingest path.

Two kernels live here:

* ``first_match`` classifies a batch of tweets that are already encoded as
  integer stem ids. It exists as an njit loop and as a vectorised numpy
  routine; both must agree exactly.
* ``scan_chunk`` is the fused numba scanner over raw newline-delimited JSON
  bytes. It handles the common, unambiguous shape of a record (flat object,
  ASCII text, simple escapes, strict timestamp) completely and marks every
  other line ``FALLBACK`` so the Python reference path decides it. Token
  stems come from a per-worker ``VocabTable`` memo; lines containing tokens
  the memo has not seen are reported as ``NEED_VOCAB`` and re-scanned after
  the caller stems and inserts them.
"""
from __future__ import annotations

import numpy as np

from ._accel import NUMBA, njit, resolve_backend
from .lexicon import StemmedLexicon
from .normalize import MAX_TEXT_BYTES, stem

# per-line status codes reported by the scanner
BLANK = 0
PLAIN = 1  # parsed, not a mood statement
MOOD = 2  # parsed mood statement; sentiment code in ``sent`` (-1 = unclassified)
FALLBACK = 3
NEED_VOCAB = 4

_KEY_ID = np.frombuffer(b"id", np.uint8)
_KEY_CREATED = np.frombuffer(b"created_at", np.uint8)
_KEY_TEXT = np.frombuffer(b"text", np.uint8)
_KEY_LANG = np.frombuffer(b"lang", np.uint8)
_KEY_REGION = np.frombuffer(b"region", np.uint8)
_TS_UTC = np.frombuffer(b"+00:00", np.uint8)

_MARK_I = np.frombuffer(b"i", np.uint8)
_MARK_IM = np.frombuffer(b"i'm", np.uint8)
_MARK_AM = np.frombuffer(b"am", np.uint8)
_MARK_ME = np.frombuffer(b"me", np.uint8)
_MARK_MYSELF = np.frombuffer(b"myself", np.uint8)
_MARK_FEELING = np.frombuffer(b"feeling", np.uint8)

_URL_HTTP = np.frombuffer(b"http://", np.uint8)
_URL_HTTPS = np.frombuffer(b"https://", np.uint8)
_URL_FTP = np.frombuffer(b"ftp://", np.uint8)
_URL_WWW = np.frombuffer(b"www.", np.uint8)

_FNV_OFFSET = np.uint64(14695981039346656037)
_FNV_PRIME = np.uint64(1099511628211)


class MatchTables:
    """Integer encoding of a StemmedLexicon.

    Stems used by any lexicon key get ids from 1; every other token is 0.
    ``first_entries[first_ptr[t]:first_ptr[t + 1]]`` lists the entries whose
    key starts with stem ``t``, longest first, then by sentiment ordinal, so
    the first hit at the earliest position is the classification.
    """

    def __init__(self, stemmed: StemmedLexicon):
        keys = list(stemmed.entries)
        self.terms = [stemmed.entries[k][1] for k in keys]
        self.stem_ids: dict[str, int] = {}
        for key in keys:
            for s in key:
                self.stem_ids.setdefault(s, len(self.stem_ids) + 1)
        n_entries = len(keys)
        width = max(stemmed.max_phrase_len, 1)
        self.entry_tokens = np.zeros((n_entries, width), np.int32)
        self.entry_len = np.zeros(n_entries, np.int32)
        self.entry_sent = np.zeros(n_entries, np.int32)
        for e, key in enumerate(keys):
            self.entry_len[e] = len(key)
            self.entry_sent[e] = int(stemmed.entries[key][0])
            for j, s in enumerate(key):
                self.entry_tokens[e, j] = self.stem_ids[s]
        n_stems = len(self.stem_ids)
        groups: list[list[int]] = [[] for _ in range(n_stems + 1)]
        for e in range(n_entries):
            groups[self.entry_tokens[e, 0]].append(e)
        ptr = [0]
        flat: list[int] = []
        for g in groups:
            g.sort(key=lambda e: (-self.entry_len[e], self.entry_sent[e]))
            flat.extend(g)
            ptr.append(len(flat))
        self.first_ptr = np.asarray(ptr, np.int64)
        self.first_entries = np.asarray(flat, np.int32)

    @property
    def n_entries(self) -> int:
        return len(self.terms)

    def arrays(self):
        return self.entry_tokens, self.entry_len, self.entry_sent, self.first_ptr, self.first_entries


# --------------------------------------------------------------------------
# batch matcher over encoded tokens


@njit(cache=True, nogil=True)
def _match_span(ids, nonstop, lo, hi, entry_tokens, entry_len, entry_sent, first_ptr, first_entries,
                last_seen, tag, term_hits):
    best = -1
    for p in range(lo, hi):
        t = ids[p]
        if t == 0:
            continue
        for k in range(first_ptr[t], first_ptr[t + 1]):
            e = first_entries[k]
            n = entry_len[e]
            if p + n > hi:
                continue
            if n == 1:
                if not nonstop[p]:
                    continue
            else:
                ok = True
                for j in range(1, n):
                    if ids[p + j] != entry_tokens[e, j]:
                        ok = False
                        break
                if not ok:
                    continue
            if best < 0:
                best = entry_sent[e]
            if last_seen[e] != tag:
                last_seen[e] = tag
                term_hits[e] += 1
    return best


@njit(cache=True, nogil=True)
def _first_match_numba(ids, nonstop, offsets, entry_tokens, entry_len, entry_sent, first_ptr, first_entries,
                       out, term_hits):
    last_seen = np.full(entry_len.shape[0], -1, np.int64)
    for r in range(offsets.shape[0] - 1):
        out[r] = _match_span(ids, nonstop, offsets[r], offsets[r + 1], entry_tokens, entry_len, entry_sent,
                             first_ptr, first_entries, last_seen, r, term_hits)


def _first_match_numpy(ids, nonstop, offsets, tables: MatchTables):
    n_rec = len(offsets) - 1
    out = np.full(n_rec, -1, np.int32)
    hits = np.zeros(tables.n_entries, np.int64)
    n_tok = len(ids)
    if n_rec == 0 or n_tok == 0:
        return out, hits
    rec = np.repeat(np.arange(n_rec), np.diff(offsets))
    cand_rec, cand_pos, cand_len, cand_sent = [], [], [], []
    for e in range(tables.n_entries):
        n = int(tables.entry_len[e])
        if n > n_tok:
            continue
        span = n_tok - n + 1
        m = ids[:span] == tables.entry_tokens[e, 0]
        for j in range(1, n):
            m &= ids[j:span + j] == tables.entry_tokens[e, j]
        if n == 1:
            m &= nonstop
        else:
            m &= rec[:span] == rec[n - 1:]
        pos = np.flatnonzero(m)
        if not len(pos):
            continue
        r = rec[pos]
        hits[e] = len(np.unique(r))
        cand_rec.append(r)
        cand_pos.append(pos)
        cand_len.append(np.full(len(pos), -n))
        cand_sent.append(np.full(len(pos), tables.entry_sent[e]))
    if cand_rec:
        r = np.concatenate(cand_rec)
        p = np.concatenate(cand_pos)
        ln = np.concatenate(cand_len)
        s = np.concatenate(cand_sent)
        order = np.lexsort((s, ln, p, r))
        r, s = r[order], s[order]
        first = np.ones(len(r), bool)
        first[1:] = r[1:] != r[:-1]
        out[r[first]] = s[first]
    return out, hits


def first_match(ids, nonstop, offsets, tables: MatchTables, backend: str | None = None):
    """Classify every record of an encoded batch.

    ``ids``/``nonstop`` are flat per-token arrays (stem id, not-a-stop-word),
    record ``r`` spans ``offsets[r]:offsets[r + 1]``. Returns the sentiment
    code per record (-1 when nothing matched) and per-entry counts of records
    containing that entry.
    """
    ids = np.ascontiguousarray(ids, np.int32)
    nonstop = np.ascontiguousarray(nonstop, np.bool_)
    offsets = np.ascontiguousarray(offsets, np.int64)
    if resolve_backend(backend) == NUMBA:
        out = np.empty(len(offsets) - 1, np.int32)
        hits = np.zeros(tables.n_entries, np.int64)
        _first_match_numba(ids, nonstop, offsets, *tables.arrays(), out, hits)
        return out, hits
    return _first_match_numpy(ids, nonstop, offsets, tables)


# --------------------------------------------------------------------------
# token -> stem id memo, shared with the scanner as flat arrays


@njit(cache=True, nogil=True)
def _fnv1a(buf, lo, hi):
    h = _FNV_OFFSET
    for i in range(lo, hi):
        h = (h ^ np.uint64(buf[i])) * _FNV_PRIME
    return h


@njit(cache=True, nogil=True)
def _vocab_find(tok, n, slot_off, slot_len, slot_val, pool):
    mask = slot_off.shape[0] - 1
    i = np.int64(_fnv1a(tok, 0, n) & np.uint64(mask))
    while True:
        off = slot_off[i]
        if off < 0:
            return -1
        if slot_len[i] == n:
            same = True
            for j in range(n):
                if pool[off + j] != tok[j]:
                    same = False
                    break
            if same:
                return slot_val[i]
        i = (i + 1) & mask


@njit(cache=True, nogil=True)
def _vocab_insert(keys, key_off, vals, slot_off, slot_len, slot_val, pool, pool_used):
    mask = slot_off.shape[0] - 1
    for k in range(key_off.shape[0] - 1):
        lo = key_off[k]
        hi = key_off[k + 1]
        n = hi - lo
        i = np.int64(_fnv1a(keys, lo, hi) & np.uint64(mask))
        while slot_off[i] >= 0:
            i = (i + 1) & mask
        for j in range(n):
            pool[pool_used + j] = keys[lo + j]
        slot_off[i] = pool_used
        slot_len[i] = n
        slot_val[i] = vals[k]
        pool_used += n
    return pool_used


class VocabTable:
    """Open-addressing memo of raw token -> (stem id, stop word flag).

    Values are packed as ``stem_id * 2 + is_stop``. Not thread-safe; each
    worker owns one.
    """

    def __init__(self, tables: MatchTables, stopwords: frozenset[str], capacity: int = 1 << 14):
        self.tables = tables
        self.stopwords = stopwords
        self._items: list[tuple[bytes, int]] = []
        self._allocate(capacity, 1 << 16)

    def _allocate(self, capacity, pool_size):
        self.slot_off = np.full(capacity, -1, np.int64)
        self.slot_len = np.zeros(capacity, np.int32)
        self.slot_val = np.zeros(capacity, np.int32)
        self.pool = np.empty(pool_size, np.uint8)
        self.pool_used = 0
        if self._items:
            self._insert(self._items)

    def __len__(self):
        return len(self._items)

    def value(self, token: str) -> int:
        return self.tables.stem_ids.get(stem(token), 0) * 2 + (token in self.stopwords)

    def lookup(self, token: str) -> int:
        tok = np.frombuffer(token.encode("ascii"), np.uint8)
        return _vocab_find(tok, len(tok), self.slot_off, self.slot_len, self.slot_val, self.pool)

    def add(self, tokens) -> None:
        """Insert tokens that are not yet present (ASCII, lowercase, no duplicates)."""
        items = [(t.encode("ascii"), self.value(t)) for t in tokens]
        if not items:
            return
        self._items.extend(items)
        need_bytes = self.pool_used + sum(len(k) for k, _ in items)
        capacity = len(self.slot_off)
        if 2 * len(self._items) > capacity or need_bytes > len(self.pool):
            while 2 * len(self._items) > capacity:
                capacity *= 2
            pool_size = len(self.pool)
            total = sum(len(k) for k, _ in self._items)
            while total > pool_size:
                pool_size *= 2
            self._allocate(capacity, pool_size)
        else:
            self._insert(items)

    def _insert(self, items):
        keys = np.frombuffer(b"".join(k for k, _ in items), np.uint8)
        key_off = np.zeros(len(items) + 1, np.int64)
        np.cumsum([len(k) for k, _ in items], out=key_off[1:])
        vals = np.asarray([v for _, v in items], np.int32)
        self.pool_used = _vocab_insert(keys, key_off, vals, self.slot_off, self.slot_len, self.slot_val,
                                       self.pool, self.pool_used)

    def arrays(self):
        return self.slot_off, self.slot_len, self.slot_val, self.pool


# --------------------------------------------------------------------------
# fused NDJSON scanner


@njit(cache=True, nogil=True)
def _is_json_ws(c):
    return c == 32 or c == 9 or c == 10 or c == 13


@njit(cache=True, nogil=True)
def _skip_ws(buf, i, hi):
    while i < hi and _is_json_ws(buf[i]):
        i += 1
    return i


@njit(cache=True, nogil=True)
def _eq(buf, lo, hi, lit):
    if hi - lo != lit.shape[0]:
        return False
    for j in range(lit.shape[0]):
        if buf[lo + j] != lit[j]:
            return False
    return True


@njit(cache=True, nogil=True)
def _starts(buf, lo, hi, lit):
    if hi - lo < lit.shape[0]:
        return False
    return _eq(buf, lo, lo + lit.shape[0], lit)


@njit(cache=True, nogil=True)
def _key_code(buf, lo, hi):
    if _eq(buf, lo, hi, _KEY_ID):
        return 1
    if _eq(buf, lo, hi, _KEY_CREATED):
        return 2
    if _eq(buf, lo, hi, _KEY_TEXT):
        return 3
    if _eq(buf, lo, hi, _KEY_LANG):
        return 4
    if _eq(buf, lo, hi, _KEY_REGION):
        return 5
    return 0


@njit(cache=True, nogil=True)
def _skip_number(buf, i, hi):
    """End index of a JSON number starting at i, or -1."""
    if i < hi and buf[i] == 45:
        i += 1
    if i >= hi:
        return -1
    if buf[i] == 48:
        i += 1
    elif 49 <= buf[i] <= 57:
        while i < hi and 48 <= buf[i] <= 57:
            i += 1
    else:
        return -1
    if i < hi and buf[i] == 46:
        i += 1
        if i >= hi or not 48 <= buf[i] <= 57:
            return -1
        while i < hi and 48 <= buf[i] <= 57:
            i += 1
    if i < hi and (buf[i] == 101 or buf[i] == 69):
        i += 1
        if i < hi and (buf[i] == 43 or buf[i] == 45):
            i += 1
        if i >= hi or not 48 <= buf[i] <= 57:
            return -1
        while i < hi and 48 <= buf[i] <= 57:
            i += 1
    return i


@njit(cache=True, nogil=True)
def _skip_string(buf, i, hi):
    """Index of the closing quote of an escape-free string body starting at i, or -1."""
    while i < hi:
        c = buf[i]
        if c == 34:
            return i
        if c == 92 or c < 32:
            return -1
        i += 1
    return -1


@njit(cache=True, nogil=True)
def _decode_text(buf, i, hi, out):
    """Decode an ASCII string body with simple escapes into ``out``.

    Returns (closing quote index, decoded length); index -1 means the
    string needs the reference decoder.
    """
    n = 0
    limit = out.shape[0]
    while i < hi:
        c = buf[i]
        if c == 34:
            return i, n
        if c < 32 or c >= 128:
            return -1, 0
        if c == 92:
            if i + 1 >= hi:
                return -1, 0
            e = buf[i + 1]
            if e == 34 or e == 92 or e == 47:
                c = e
            elif e == 110:
                c = 10
            elif e == 116:
                c = 9
            elif e == 114:
                c = 13
            elif e == 98:
                c = 8
            elif e == 102:
                c = 12
            else:
                return -1, 0
            i += 1
        if n >= limit:
            return -1, 0
        out[n] = c
        n += 1
        i += 1
    return -1, 0


@njit(cache=True, nogil=True)
def _digits(buf, lo, n):
    v = 0
    for j in range(lo, lo + n):
        c = buf[j]
        if not 48 <= c <= 57:
            return -1
        v = v * 10 + (c - 48)
    return v


@njit(cache=True, nogil=True)
def _valid_timestamp(buf, lo, hi):
    """Strict YYYY-MM-DDTHH:MM:SS with optional Z or +00:00."""
    n = hi - lo
    if n == 19:
        pass
    elif n == 20:
        if buf[lo + 19] != 90:
            return False
    elif n == 25:
        if not _eq(buf, lo + 19, hi, _TS_UTC):
            return False
    else:
        return False
    if buf[lo + 4] != 45 or buf[lo + 7] != 45 or buf[lo + 10] != 84 or buf[lo + 13] != 58 or buf[lo + 16] != 58:
        return False
    year = _digits(buf, lo, 4)
    month = _digits(buf, lo + 5, 2)
    day = _digits(buf, lo + 8, 2)
    hour = _digits(buf, lo + 11, 2)
    minute = _digits(buf, lo + 14, 2)
    sec = _digits(buf, lo + 17, 2)
    if year < 1 or month < 1 or month > 12 or day < 1 or hour < 0 or hour > 23:
        return False
    if minute < 0 or minute > 59 or sec < 0 or sec > 59:
        return False
    if month == 2:
        leap = (year % 4 == 0 and year % 100 != 0) or year % 400 == 0
        dim = 29 if leap else 28
    elif month == 4 or month == 6 or month == 9 or month == 11:
        dim = 30
    else:
        dim = 31
    return day <= dim


@njit(cache=True, nogil=True)
def _parse_line(buf, lo, hi, text):
    """Returns (status, text length); status is BLANK, FALLBACK or PLAIN (parsed)."""
    blank = True
    for i in range(lo, hi):
        c = buf[i]
        if not (c == 32 or 9 <= c <= 13):
            blank = False
            break
    if blank:
        return BLANK, 0
    i = _skip_ws(buf, lo, hi)
    if i >= hi or buf[i] != 123:
        return FALLBACK, 0
    i += 1
    # value kinds per known key: 0 missing, 1 string, 2 null, 3 other
    kinds = np.zeros(6, np.int8)
    id_lo = 0
    id_hi = 0
    ts_lo = 0
    ts_hi = 0
    text_len = 0
    while True:
        i = _skip_ws(buf, i, hi)
        if i >= hi or buf[i] != 34:
            return FALLBACK, 0
        j = _skip_string(buf, i + 1, hi)
        if j < 0:
            return FALLBACK, 0
        key = _key_code(buf, i + 1, j)
        i = _skip_ws(buf, j + 1, hi)
        if i >= hi or buf[i] != 58:
            return FALLBACK, 0
        i = _skip_ws(buf, i + 1, hi)
        if i >= hi:
            return FALLBACK, 0
        c = buf[i]
        if c == 34:
            if key == 3:
                j, text_len = _decode_text(buf, i + 1, hi, text)
            else:
                j = _skip_string(buf, i + 1, hi)
            if j < 0:
                return FALLBACK, 0
            if key == 1:
                id_lo = i + 1
                id_hi = j
            elif key == 2:
                ts_lo = i + 1
                ts_hi = j
            kinds[key] = 1
            i = j + 1
        elif c == 110:
            if not (i + 4 <= hi and buf[i + 1] == 117 and buf[i + 2] == 108 and buf[i + 3] == 108):
                return FALLBACK, 0
            kinds[key] = 2
            i += 4
        elif c == 116:
            if not (i + 4 <= hi and buf[i + 1] == 114 and buf[i + 2] == 117 and buf[i + 3] == 101):
                return FALLBACK, 0
            kinds[key] = 3
            i += 4
        elif c == 102:
            if not (i + 5 <= hi and buf[i + 1] == 97 and buf[i + 2] == 108 and buf[i + 3] == 115
                    and buf[i + 4] == 101):
                return FALLBACK, 0
            kinds[key] = 3
            i += 5
        elif c == 45 or 48 <= c <= 57:
            i = _skip_number(buf, i, hi)
            if i < 0:
                return FALLBACK, 0
            kinds[key] = 3
        else:
            return FALLBACK, 0
        i = _skip_ws(buf, i, hi)
        if i >= hi:
            return FALLBACK, 0
        if buf[i] == 44:
            i += 1
            continue
        if buf[i] == 125:
            i += 1
            break
        return FALLBACK, 0
    if _skip_ws(buf, i, hi) != hi:
        return FALLBACK, 0
    if kinds[1] != 1 or id_hi == id_lo or kinds[3] != 1 or kinds[2] != 1:
        return FALLBACK, 0
    if kinds[4] == 3 or kinds[5] == 3:
        return FALLBACK, 0
    if not _valid_timestamp(buf, ts_lo, ts_hi):
        return FALLBACK, 0
    return PLAIN, text_len


@njit(cache=True, nogil=True)
def _is_space(c):
    # ASCII characters that str.split() treats as separators
    return c == 32 or 9 <= c <= 13 or 28 <= c <= 31


@njit(cache=True, nogil=True)
def _is_alnum(c):
    return 48 <= c <= 57 or 97 <= c <= 122 or 65 <= c <= 90


@njit(cache=True, nogil=True)
def _is_url(t, lo, hi):
    return (_starts(t, lo, hi, _URL_HTTP) or _starts(t, lo, hi, _URL_HTTPS)
            or _starts(t, lo, hi, _URL_FTP) or _starts(t, lo, hi, _URL_WWW))


@njit(cache=True, nogil=True)
def _is_marker(t, lo, hi):
    return (_eq(t, lo, hi, _MARK_I) or _eq(t, lo, hi, _MARK_AM) or _eq(t, lo, hi, _MARK_ME)
            or _eq(t, lo, hi, _MARK_IM) or _eq(t, lo, hi, _MARK_MYSELF) or _eq(t, lo, hi, _MARK_FEELING))


@njit(cache=True, nogil=True)
def _has_marker(t, n):
    i = 0
    while i < n:
        while i < n and _is_space(t[i]):
            i += 1
        a = i
        while i < n and not _is_space(t[i]):
            i += 1
        b = i
        if b == a or _is_url(t, a, b):
            continue
        k = a
        while k < b:
            while k < b and not (_is_alnum(t[k]) or t[k] == 39):
                k += 1
            pa = k
            while k < b and (_is_alnum(t[k]) or t[k] == 39):
                k += 1
            pb = k
            while pa < pb and t[pa] == 39:
                pa += 1
            while pb > pa and t[pb - 1] == 39:
                pb -= 1
            if pb > pa and _is_marker(t, pa, pb):
                return True
    return False


@njit(cache=True, nogil=True)
def _scan(buf, starts, ends, sel, slot_off, slot_len, slot_val, pool,
          entry_tokens, entry_len, entry_sent, first_ptr, first_entries,
          status, sent, term_hits, unk_pool, unk_off):
    text = np.empty(MAX_TEXT_BYTES, np.uint8)
    tok = np.empty(MAX_TEXT_BYTES, np.uint8)
    ids = np.empty(MAX_TEXT_BYTES, np.int32)
    nonstop = np.empty(MAX_TEXT_BYTES, np.bool_)
    last_seen = np.full(entry_len.shape[0], -1, np.int64)
    n_unk = 0
    unk_used = 0
    for q in range(sel.shape[0]):
        li = sel[q]
        st, n = _parse_line(buf, starts[li], ends[li], text)
        sent[li] = -1
        if st != PLAIN:
            status[li] = st
            continue
        for k in range(n):
            c = text[k]
            if 65 <= c <= 90:
                text[k] = c + 32
        if not _has_marker(text, n):
            status[li] = PLAIN
            continue
        n_tok = 0
        missing = False
        i = 0
        while i < n:
            while i < n and _is_space(text[i]):
                i += 1
            a = i
            while i < n and not _is_space(text[i]):
                i += 1
            b = i
            if b == a or _is_url(text, a, b):
                continue
            tl = 0
            for k in range(a, b + 1):
                c = text[k] if k < b else 32
                if _is_alnum(c):
                    tok[tl] = c
                    tl += 1
                elif c == 39:
                    continue
                elif tl > 0:
                    v = _vocab_find(tok, tl, slot_off, slot_len, slot_val, pool)
                    if v < 0:
                        missing = True
                        for j in range(tl):
                            unk_pool[unk_used + j] = tok[j]
                        unk_used += tl
                        n_unk += 1
                        unk_off[n_unk] = unk_used
                    else:
                        ids[n_tok] = v >> 1
                        nonstop[n_tok] = (v & 1) == 0
                        n_tok += 1
                    tl = 0
        if missing:
            status[li] = NEED_VOCAB
            continue
        status[li] = MOOD
        sent[li] = _match_span(ids, nonstop, 0, n_tok, entry_tokens, entry_len, entry_sent, first_ptr,
                               first_entries, last_seen, li, term_hits)
    return n_unk


def line_bounds(buf: np.ndarray):
    """Start/end offsets of each newline-terminated line (end excludes the newline)."""
    nl = np.flatnonzero(buf == 10)
    starts = np.empty(len(nl) + 1, np.int64)
    starts[0] = 0
    starts[1:] = nl + 1
    ends = np.empty(len(nl) + 1, np.int64)
    ends[:-1] = nl
    ends[-1] = len(buf)
    if starts[-1] == len(buf):
        starts, ends = starts[:-1], ends[:-1]
    return starts, ends


def scan_chunk(data: bytes, vocab: VocabTable, tables: MatchTables):
    """Scan a block of whole lines with the fused kernel.

    Returns (starts, ends, status, sent, term_hits). Lines left in
    ``FALLBACK`` must be handled by the reference parser.
    """
    buf = np.frombuffer(data, np.uint8)
    starts, ends = line_bounds(buf)
    n = len(starts)
    status = np.empty(n, np.int8)
    sent = np.empty(n, np.int8)
    hits = np.zeros(tables.n_entries, np.int64)
    unk_pool = np.empty(len(buf) + 1, np.uint8)
    unk_off = np.zeros(len(buf) // 2 + 2, np.int64)
    sel = np.arange(n, dtype=np.int64)
    for _ in range(2):
        n_unk = _scan(buf, starts, ends, sel, *vocab.arrays(), *tables.arrays(),
                      status, sent, hits, unk_pool, unk_off)
        if not n_unk:
            break
        raw = unk_pool[:unk_off[n_unk]].tobytes()
        fresh = {raw[unk_off[k]:unk_off[k + 1]].decode("ascii") for k in range(n_unk)}
        vocab.add(sorted(fresh))
        sel = np.flatnonzero(status == NEED_VOCAB).astype(np.int64)
    else:  # pragma: no cover - the second pass always finds every token
        raise AssertionError("vocabulary memo did not converge")
    return starts, ends, status, sent, hits
