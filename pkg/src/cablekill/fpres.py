"""Finite presentations, their relation matrices and first homology."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional

from .words import Alphabet, Word, WordError, ab_vector, format_word, parse_word


class PresentationError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: tuple[Word, ...] = ()
    named: tuple[tuple[str, Word], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "relators", tuple(self.relators))
        named = self.named.items() if isinstance(self.named, dict) else self.named
        object.__setattr__(self, "named", tuple(named))
        for w in self.relators + tuple(w for _, w in self.named):
            if w.alphabet != self.alphabet:
                raise PresentationError("word over a different alphabet")
        for w in self.relators:
            if w.is_identity():
                raise PresentationError("relators must be nonempty")
        labels = [k for k, _ in self.named]
        if len(set(labels)) != len(labels):
            raise PresentationError("duplicate label in named words")

    @property
    def generators(self) -> tuple[str, ...]:
        return self.alphabet.symbols

    def word(self, text: str) -> Word:
        return parse_word(text, self.alphabet)

    def get(self, label: str) -> Optional[Word]:
        return dict(self.named).get(label)

    def with_relators(self, extra) -> "Presentation":
        extra = tuple(w for w in extra if not w.is_identity())
        return Presentation(self.alphabet, self.relators + extra, self.named)

    def with_named(self, label: str, w: Word) -> "Presentation":
        named = tuple((k, v) for k, v in self.named if k != label) + ((label, w),)
        return Presentation(self.alphabet, self.relators, named)


def parse_presentation(text: str) -> Presentation:
    """Parse the line oriented ``gens`` / ``rel`` / ``name`` format."""
    alphabet = None
    relators: list[Word] = []
    named: list[tuple[str, Word]] = []
    seen_labels: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        key, _, rest = stripped.partition(" ")
        rest_col = col + len(key) + 1
        if alphabet is None:
            if key != "gens":
                raise PresentationError("expected 'gens' line first", lineno, col)
            try:
                alphabet = Alphabet(tuple(rest.split()))
            except WordError as exc:
                raise PresentationError(str(exc), lineno, rest_col) from None
            continue
        try:
            if key == "rel":
                w = parse_word(rest, alphabet)
                if w.is_identity():
                    raise PresentationError("relator reduces to the identity", lineno, rest_col)
                relators.append(w)
            elif key == "name":
                label, _, wtext = rest.strip().partition(" ")
                if not label:
                    raise PresentationError("missing label", lineno, rest_col)
                if label in seen_labels:
                    raise PresentationError(f"duplicate label {label!r}", lineno, rest_col)
                seen_labels.add(label)
                named.append((label, parse_word(wtext, alphabet)))
            elif key == "gens":
                raise PresentationError("second 'gens' line", lineno, col)
            else:
                raise PresentationError(f"unknown directive {key!r}", lineno, col)
        except WordError as exc:
            raise PresentationError(str(exc), lineno, rest_col) from None
    if alphabet is None:
        raise PresentationError("missing 'gens' line")
    return Presentation(alphabet, tuple(relators), tuple(named))


def format_presentation(p: Presentation) -> str:
    lines = ["gens " + " ".join(p.alphabet.symbols)]
    lines += [f"rel {format_word(w)}" for w in p.relators]
    lines += [f"name {k} {format_word(w)}" for k, w in p.named]
    return "\n".join(lines) + "\n"


def relation_matrix(p: Presentation) -> list[list[int]]:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    return [list(ab_vector(w)) for w in p.relators]


def smith_normal_form(matrix: list[list[int]]) -> tuple[list[int], int]:
    """Invariant factors ``d1 | d2 | ...`` (all >= 1) and the rank of ``matrix``.

    Pivots on the entry of least absolute value in the remaining block.
    """
    a = [list(row) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    diag: list[int] = []
    top = 0
    while top < min(rows, cols):
        # least nonzero entry of the trailing block
        best = None
        for i in range(top, rows):
            for j in range(top, cols):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        a[top], a[pi] = a[pi], a[top]
        for row in a:
            row[top], row[pj] = row[pj], row[top]
        while True:
            piv = a[top][top]
            dirty = False
            for i in range(top + 1, rows):
                if a[i][top]:
                    q = a[i][top] // piv
                    ai, at = a[i], a[top]
                    for j in range(top, cols):
                        ai[j] -= q * at[j]
                    if ai[top]:
                        dirty = True
            for j in range(top + 1, cols):
                if a[top][j]:
                    q = a[top][j] // piv
                    for i in range(top, rows):
                        a[i][j] -= q * a[i][top]
                    if a[top][j]:
                        dirty = True
            if not dirty:
                # pivot must also divide the rest of the block
                bad = next(((i, j) for i in range(top + 1, rows) for j in range(top + 1, cols)
                            if a[i][j] % piv), None)
                if bad is None:
                    break
                i, _ = bad
                for j in range(top, cols):
                    a[top][j] += a[i][j]
                continue
            # move the smallest remainder in row/column top into the pivot
            cand = [(abs(a[i][top]), i, top) for i in range(top, rows) if a[i][top]]
            cand += [(abs(a[top][j]), top, j) for j in range(top, cols) if a[top][j]]
            _, pi, pj = min(cand)
            a[top], a[pi] = a[pi], a[top]
            for row in a:
                row[top], row[pj] = row[pj], row[top]
        diag.append(abs(a[top][top]))
        top += 1
    return diag, len(diag)


@dataclass(frozen=True)
class H1:
    betti: int
    torsion: tuple[int, ...]

    @property
    def is_z(self) -> bool:
        return self.betti == 1 and not self.torsion

    @property
    def is_trivial(self) -> bool:
        return self.betti == 0 and not self.torsion

    def __str__(self):
        parts = ["Z"] * self.betti + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def h1_invariants(p: Presentation) -> H1:
    factors, rank = smith_normal_form(relation_matrix(p))
    return H1(len(p.alphabet) - rank, tuple(d for d in factors if d > 1))


def _rational_nullspace(matrix: list[list[int]], cols: int) -> list[list[Fraction]]:
    a = [[Fraction(v) for v in row] for row in matrix]
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        a[r] = [v / pv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for row, pc in zip(a, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def abelianization_map(p: Presentation, orient: Optional[Word] = None) -> Optional[tuple[int, ...]]:
    """The map ``Z^gens -> Z`` realizing ``H1 = Z``, or None when ``H1 != Z``.

    The map is the primitive integer vector killing every relator. When
    ``orient`` is given the sign is chosen to make its image positive.
    """
    if not h1_invariants(p).is_z:
        return None
    cols = len(p.alphabet)
    (v,) = _rational_nullspace(relation_matrix(p), cols)
    den = 1
    for q in v:
        den = den * q.denominator // gcd(den, q.denominator)
    ints = [int(q * den) for q in v]
    g = 0
    for c in ints:
        g = gcd(g, c)
    vec = tuple(c // g for c in ints)
    if orient is not None and ab_image(orient, vec) < 0:
        vec = tuple(-c for c in vec)
    return vec


def ab_image(w: Word, vec) -> int:
    return sum(c * e for c, e in zip(vec, ab_vector(w)))
