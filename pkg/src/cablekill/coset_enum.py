"""Todd-Coxeter coset enumeration.

The main use here is certifying that a quotient is trivial: an enumeration
over the trivial subgroup that completes with a single coset proves that
the added relators normally generate the whole group.

Columns of the table are ``2g`` for generator ``g`` and ``2g + 1`` for its
inverse.  Cosets are numbered from 1 in definition order; coset 1 is the
subgroup.  Dead cosets are only removed when the final table is compacted.
"""
from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from typing import Optional, Sequence

from .fpres import Presentation, h1_invariants
from .words import Word, WordError, cyclic_reduce, expand

log = logging.getLogger(__name__)

DEFAULT_MAX_COSETS = 10**6
LOOKAHEAD_GROWTH = 1.25
MAX_COSETS_ENV = "CABLEKILL_MAX_COSETS"


def default_max_cosets() -> int:
    value = os.environ.get(MAX_COSETS_ENV)
    return int(value) if value else DEFAULT_MAX_COSETS


@dataclass(frozen=True)
class EnumStats:
    defined: int
    coincidences: int
    max_live: int


@dataclass(frozen=True)
class EnumResult:
    completed: bool
    index: Optional[int]
    table: Optional[tuple[tuple[int, ...], ...]]
    stats: EnumStats
    max_cosets: int
    transcript: Optional[tuple[str, ...]] = None

    @property
    def overflow(self) -> bool:
        return not self.completed


class _Overflow(Exception):
    pass


def _columns(w: Word) -> list[int]:
    return [2 * g + (0 if e > 0 else 1) for g, e in expand(w)]


def prepare_relators(words: Sequence[Word]) -> list[list[int]]:
    """Cyclically reduce, drop trivial words and duplicates, shortest first."""
    out: list[list[int]] = []
    seen = set()
    for w in words:
        core, _ = cyclic_reduce(w)
        if core.is_identity():
            continue
        cols = _columns(core)
        key = tuple(cols)
        if key not in seen:
            seen.add(key)
            out.append(cols)
    out.sort(key=len)
    return out


class _Enumerator:
    def __init__(self, ngens, relators, subgroup, max_cosets, names=None, strategy="felsch"):
        self.ncols = 2 * ngens
        self.relators = relators
        self.subgroup = subgroup
        self.max_cosets = max_cosets
        self.names = names
        self.strategy = strategy
        self.table: list[list[int]] = [[], [0] * self.ncols]
        self.parent = [0, 1]
        self.defined = 1
        self.live = 1
        self.max_live = 1
        self.coincidences = 0
        self.transcript: Optional[list[str]] = [] if names is not None else None
        self.deductions: list[tuple[int, int]] = []
        if strategy == "felsch":
            self.by_first: list[list[list[int]]] = [[] for _ in range(self.ncols)]
            seen = set()
            for r in relators:
                for word in (r, [c ^ 1 for c in reversed(r)]):
                    for k in range(len(word)):
                        rot = tuple(word[k:] + word[:k])
                        if rot not in seen:
                            seen.add(rot)
                            self.by_first[rot[0]].append(list(rot))

    # -- bookkeeping ------------------------------------------------------

    def _colname(self, x):
        name = self.names[x >> 1]
        return name if not x & 1 else f"{name}^-1"

    def find(self, c):
        parent = self.parent
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(self, c, x):
        if self.defined >= self.max_cosets:
            raise _Overflow
        self.defined += 1
        d = self.defined
        self.table.append([0] * self.ncols)
        self.parent.append(d)
        self.table[c][x] = d
        self.table[d][x ^ 1] = c
        self.live += 1
        if self.live > self.max_live:
            self.max_live = self.live
        if self.transcript is not None:
            self.transcript.append(f"def {c} {self._colname(x)} {d}")
        if self.strategy == "felsch":
            self.deductions.append((c, x))
        return d

    def _merge(self, a, b, queue):
        a, b = self.find(a), self.find(b)
        if a == b:
            return
        lo, hi = (a, b) if a < b else (b, a)
        self.parent[hi] = lo
        queue.append(hi)
        self.live -= 1
        self.coincidences += 1
        if self.transcript is not None:
            self.transcript.append(f"coinc {lo} {hi}")

    def coincidence(self, a, b):
        table = self.table
        queue: list[int] = []
        self._merge(a, b, queue)
        k = 0
        while k < len(queue):
            e = queue[k]
            k += 1
            row = table[e]
            for x in range(self.ncols):
                f = row[x]
                if not f:
                    continue
                ix = x ^ 1
                table[f][ix] = 0
                e1, f1 = self.find(e), self.find(f)
                if table[e1][x]:
                    self._merge(f1, table[e1][x], queue)
                elif table[f1][ix]:
                    self._merge(e1, table[f1][ix], queue)
                else:
                    table[e1][x] = f1
                    table[f1][ix] = e1
                    if self.strategy == "felsch":
                        self.deductions.append((e1, x))

    # -- scanning ---------------------------------------------------------

    def scan_and_fill(self, a, w):
        table = self.table
        f = b = a
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][w[i]]:
                f = table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][w[j] ^ 1]:
                b = table[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][w[i]] = b
                table[b][w[i] ^ 1] = f
                if self.strategy == "felsch":
                    self.deductions.append((f, w[i]))
                return
            self.define(f, w[i])

    def scan(self, a, w):
        """Scan without defining; record a deduction or coincidence if forced."""
        table = self.table
        f = b = a
        i, j = 0, len(w) - 1
        while i <= j and table[f][w[i]]:
            f = table[f][w[i]]
            i += 1
        if i > j:
            if f != b:
                self.coincidence(f, b)
            return
        while j >= i and table[b][w[j] ^ 1]:
            b = table[b][w[j] ^ 1]
            j -= 1
        if j < i:
            self.coincidence(f, b)
        elif i == j:
            table[f][w[i]] = b
            table[b][w[i] ^ 1] = f
            if self.strategy == "felsch":
                self.deductions.append((f, w[i]))

    def process_deductions(self):
        parent, table, by_first = self.parent, self.table, self.by_first
        while self.deductions:
            c, x = self.deductions.pop()
            if parent[c] != c:
                continue
            for w in by_first[x]:
                if parent[c] != c:
                    break
                self.scan(c, w)
            d = table[c][x] if parent[c] == c else 0
            if d and parent[d] == d:
                for w in by_first[x ^ 1]:
                    if parent[d] != d:
                        break
                    self.scan(d, w)

    def lookahead(self):
        parent = self.parent
        for c in range(1, self.defined + 1):
            for w in self.relators:
                if parent[c] != c:
                    break
                self.scan(c, w)

    # -- strategies -------------------------------------------------------

    def run_hlt(self):
        parent, table = self.parent, self.table
        for w in self.subgroup:
            self.scan_and_fill(1, w)
        threshold = 1024
        c = 1
        while c <= self.defined:
            for w in self.relators:
                if parent[c] != c:
                    break
                self.scan_and_fill(c, w)
            if parent[c] == c:
                row = table[c]
                for x in range(self.ncols):
                    if not row[x]:
                        self.define(c, x)
            if self.defined >= threshold:
                self.lookahead()
                threshold = int(threshold * LOOKAHEAD_GROWTH) + 1
            c += 1

    def run_felsch(self):
        parent, table = self.parent, self.table
        for w in self.subgroup:
            self.scan_and_fill(1, w)
            self.process_deductions()
        for w in self.relators:
            self.scan(1, w)
        self.process_deductions()
        c = 1
        while c <= self.defined:
            x = 0
            while parent[c] == c and x < self.ncols:
                if not table[c][x]:
                    self.define(c, x)
                    self.process_deductions()
                x += 1
            c += 1

    def compact(self) -> tuple[tuple[int, ...], ...]:
        alive = [c for c in range(1, self.defined + 1) if self.parent[c] == c]
        renumber = {c: k for k, c in enumerate(alive, 1)}
        return tuple(tuple(renumber[self.find(e)] for e in self.table[c]) for c in alive)


def enumerate_cosets(p: Presentation, subgroup: Sequence[Word] = (), max_cosets: Optional[int] = None,
                     transcript: bool = False, strategy: str = "felsch") -> EnumResult:
    """Enumerate cosets of the subgroup generated by ``subgroup`` in ``p``.

    ``max_cosets`` bounds the total number of cosets ever defined; hitting it
    yields an overflow result rather than an exception.
    """
    if max_cosets is None:
        max_cosets = default_max_cosets()
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    if strategy not in ("hlt", "felsch"):
        raise ValueError(f"unknown strategy {strategy!r}")
    for w in subgroup:
        if w.alphabet != p.alphabet:
            raise WordError("subgroup generator over a different alphabet")
    rels = prepare_relators(p.relators)
    sub = [_columns(w) for w in subgroup if not w.is_identity()]
    names = p.alphabet.symbols if transcript else None
    en = _Enumerator(len(p.alphabet), rels, sub, max_cosets, names, strategy)
    try:
        if strategy == "hlt":
            en.run_hlt()
        else:
            en.run_felsch()
    except _Overflow:
        stats = EnumStats(en.defined, en.coincidences, en.max_live)
        lines = None
        if en.transcript is not None:
            lines = tuple(en.transcript + [f"overflow {max_cosets}"])
        log.debug("overflow after %d cosets", en.defined)
        return EnumResult(False, None, None, stats, max_cosets, lines)
    table = en.compact()
    stats = EnumStats(en.defined, en.coincidences, en.max_live)
    lines = None
    if en.transcript is not None:
        lines = tuple(en.transcript + [f"index {len(table)}"])
    return EnumResult(True, len(table), table, stats, max_cosets, lines)


def validate_table(table, p: Presentation, subgroup: Sequence[Word] = ()) -> bool:
    """Independently re-check a completed coset table.

    Every entry must be defined, each generator column must be inverse to its
    inverse column, every relator must close at every coset and every subgroup
    generator must fix coset 1.
    """
    k = len(table)
    ngens = len(p.alphabet)
    if k == 0:
        return False
    for c, row in enumerate(table, 1):
        if len(row) != 2 * ngens:
            return False
        for g in range(ngens):
            fwd, back = row[2 * g], row[2 * g + 1]
            if not (1 <= fwd <= k and 1 <= back <= k):
                return False
            if table[fwd - 1][2 * g + 1] != c:
                return False

    def walk(c, w):
        for g, e in w.letters:
            col = 2 * g if e > 0 else 2 * g + 1
            for _ in range(abs(e)):
                c = table[c - 1][col]
        return c

    for w in p.relators:
        for c in range(1, k + 1):
            if walk(c, w) != c:
                return False
    return all(walk(1, w) == 1 for w in subgroup)


@dataclass(frozen=True)
class QuotientVerdict:
    status: str  # "certified" | "refuted" | "inconclusive"
    index: Optional[int] = None
    reason: str = ""
    result: Optional[EnumResult] = None
    validated: Optional[bool] = None

    @property
    def certified(self) -> bool:
        return self.status == "certified"

    @property
    def refuted(self) -> bool:
        return self.status == "refuted"

    @property
    def inconclusive(self) -> bool:
        return self.status == "inconclusive"

    def __str__(self):
        extra = f" ({self.reason})" if self.reason else ""
        return f"{self.status}{extra}"


def is_trivial_quotient(p: Presentation, extra: Sequence[Word] = (), max_cosets: Optional[int] = None,
                        transcript: bool = False, strategy: str = "felsch") -> QuotientVerdict:
    """Certify, refute, or give up on ``<< relators, extra >> = whole group``."""
    q = p.with_relators(extra)
    res = enumerate_cosets(q, (), max_cosets, transcript=transcript, strategy=strategy)
    if not res.completed:
        return QuotientVerdict("inconclusive", None, f"overflow at {res.max_cosets} cosets", res)
    ok = validate_table(res.table, q)
    if not ok:
        raise RuntimeError("coset table failed independent validation")
    if res.index == 1:
        return QuotientVerdict("certified", 1, "index 1", res, ok)
    return QuotientVerdict("refuted", res.index, f"quotient has order {res.index}", res, ok)


def nontrivial_by_homology(p: Presentation, extra: Sequence[Word] = ()) -> bool:
    """True when the augmented presentation has nonzero first homology."""
    return not h1_invariants(p.with_relators(extra)).is_trivial
