"""Exact arithmetic in finitely generated free groups.

Words are stored run-length encoded as tuples of ``(generator, exponent)``
pairs so that words such as ``x1^l x2^-(l-1)`` stay small for large ``l``.
Every operation returns a freely reduced word.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_.]*\Z")
_TOKEN_RE = re.compile(r"([A-Za-z][A-Za-z0-9_.]*)(?:\^([+-]?\d+))?\Z")


class WordError(ValueError):
    """Raised on malformed words, unknown generators or alphabet mismatch."""


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]

    def __post_init__(self):
        symbols = tuple(self.symbols)
        object.__setattr__(self, "symbols", symbols)
        if not symbols:
            raise WordError("alphabet must be nonempty")
        for name in symbols:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise WordError(f"invalid generator name {name!r}")
        if len(set(symbols)) != len(symbols):
            dup = next(s for s in symbols if symbols.count(s) > 1)
            raise WordError(f"duplicate generator {dup!r}")
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(symbols)})

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise WordError(f"unknown generator {name!r}") from None

    def __contains__(self, name):
        return name in self._index

    def gen(self, name: str) -> "Word":
        """The word consisting of the single generator ``name``."""
        return Word(self, ((self.index(name), 1),))

    @property
    def identity(self) -> "Word":
        return Word(self, ())

    def word(self, text: str) -> "Word":
        return parse_word(text, self)


@dataclass(frozen=True)
class Word:
    """A freely reduced word. Construct through :func:`reduce` or parsing."""

    alphabet: Alphabet
    letters: tuple[tuple[int, int], ...]

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __pow__(self, k: int) -> "Word":
        return power(self, k)

    def inverse(self) -> "Word":
        return invert(self)

    def __len__(self):
        """Letter length (sum of absolute exponents)."""
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self):
        return bool(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def syllables(self) -> int:
        return len(self.letters)

    def __str__(self):
        return format_word(self)

    def __repr__(self):
        return f"Word({format_word(self)!r})"


def _push(stack: list, g: int, e: int) -> None:
    # merge onto the top of a reduced stack, cancelling recursively
    if e == 0:
        return
    if stack and stack[-1][0] == g:
        e += stack.pop()[1]
        if e:
            stack.append((g, e))
    else:
        stack.append((g, e))


def reduce(raw: Iterable[tuple[int, int]], alphabet: Alphabet) -> Word:
    """Freely reduce a sequence of ``(generator index, exponent)`` pairs."""
    n = len(alphabet)
    stack: list[tuple[int, int]] = []
    for g, e in raw:
        if not isinstance(g, int) or not 0 <= g < n:
            raise WordError(f"invalid generator index {g!r}")
        _push(stack, g, int(e))
    return Word(alphabet, tuple(stack))


def _check_same(u: Word, v: Word) -> None:
    if u.alphabet != v.alphabet:
        raise WordError("alphabet mismatch")


def multiply(u: Word, v: Word) -> Word:
    _check_same(u, v)
    stack = list(u.letters)
    for g, e in v.letters:
        _push(stack, g, e)
    return Word(u.alphabet, tuple(stack))


def invert(u: Word) -> Word:
    return Word(u.alphabet, tuple((g, -e) for g, e in reversed(u.letters)))


def power(u: Word, k: int) -> Word:
    if k < 0:
        u, k = invert(u), -k
    result = u.alphabet.identity
    base = u
    while k:
        if k & 1:
            result = multiply(result, base)
        base = multiply(base, base)
        k >>= 1
    return result


def conjugate(u: Word, g: Word) -> Word:
    """Return ``g u g^-1``."""
    return multiply(multiply(g, u), invert(g))


def commutator(u: Word, v: Word) -> Word:
    """Return ``u v u^-1 v^-1``."""
    return multiply(multiply(u, v), invert(multiply(v, u)))


def cyclic_reduce(u: Word) -> tuple[Word, Word]:
    """Split ``u`` as ``g core g^-1`` with ``core`` cyclically reduced.

    Returns ``(core, g)``.
    """
    letters = list(u.letters)
    head: list[tuple[int, int]] = []
    while len(letters) >= 2:
        (g0, e0), (g1, e1) = letters[0], letters[-1]
        if g0 != g1 or (e0 > 0) == (e1 > 0):
            break
        k = min(abs(e0), abs(e1))
        step = k if e0 > 0 else -k
        head.append((g0, step))
        e0 -= step
        e1 += step
        letters = letters[1:-1]
        if e0:
            letters.insert(0, (g0, e0))
        if e1:
            letters.append((g1, e1))
    g = reduce(head, u.alphabet)
    return Word(u.alphabet, tuple(letters)), g


def _cyclic_blocks(core: Word) -> tuple[tuple[tuple[int, int], ...], Word]:
    """Cyclic syllables of a cyclically reduced word.

    Returns ``(blocks, h)`` where ``blocks`` spells ``h core h^-1`` and no two
    cyclically adjacent blocks share a generator (unless only one block).
    """
    letters = core.letters
    if len(letters) >= 2 and letters[0][0] == letters[-1][0]:
        g, e = letters[-1]
        blocks = ((g, e + letters[0][1]),) + letters[1:-1]
        return blocks, Word(core.alphabet, ((g, e),))
    return letters, core.alphabet.identity


def is_conjugate(u: Word, v: Word) -> tuple[bool, Optional[Word]]:
    """Decide whether ``u`` and ``v`` are conjugate in the free group.

    Returns ``(True, g)`` with ``g u g^-1 == v`` when they are, where ``g``
    corresponds to the least block rotation; otherwise ``(False, None)``.
    """
    _check_same(u, v)
    cu, gu = cyclic_reduce(u)
    cv, gv = cyclic_reduce(v)
    bu, hu = _cyclic_blocks(cu)
    bv, hv = _cyclic_blocks(cv)
    if len(bu) != len(bv) or sorted(bu) != sorted(bv):
        return False, None
    k = len(bu)
    alpha = u.alphabet
    for r in range(max(k, 1)):
        if bu[r:] + bu[:r] == bv:
            prefix = Word(alpha, bu[:r])
            # bv = P^-1 bu P, bu = hu cu hu^-1, bv = hv cv hv^-1
            h = multiply(multiply(invert(hv), invert(prefix)), hu)
            witness = multiply(multiply(gv, h), invert(gu))
            assert conjugate(u, witness) == v
            return True, witness
    return False, None


def ab_vector(u: Word) -> tuple[int, ...]:
    """Exponent sums, indexed like the alphabet."""
    coords = [0] * len(u.alphabet)
    for g, e in u.letters:
        coords[g] += e
    return tuple(coords)


def expand(u: Word, limit: int = 10**6) -> list[tuple[int, int]]:
    """Letter-by-letter expansion as ``(generator, +1/-1)`` pairs."""
    if len(u) > limit:
        raise WordError(f"word of length {len(u)} exceeds expansion limit {limit}")
    out = []
    for g, e in u.letters:
        out.extend([(g, 1 if e > 0 else -1)] * abs(e))
    return out


def relabel(u: Word, alphabet: Alphabet, mapping: Sequence[int]) -> Word:
    """Move ``u`` to ``alphabet``, sending generator ``i`` to ``mapping[i]``."""
    return reduce(((mapping[g], e) for g, e in u.letters), alphabet)


def format_word(u: Word) -> str:
    if not u.letters:
        return "1"
    names = u.alphabet.symbols
    return " ".join(names[g] if e == 1 else f"{names[g]}^{e}" for g, e in u.letters)


def parse_word(text: str, alphabet: Alphabet) -> Word:
    """Parse whitespace separated ``name`` / ``name^k`` tokens; ``1`` is the identity."""
    tokens = text.split()
    if not tokens:
        raise WordError("empty word text (spell the identity as '1')")
    if tokens == ["1"]:
        return alphabet.identity
    raw = []
    for tok in tokens:
        m = _TOKEN_RE.match(tok)
        if not m:
            raise WordError(f"malformed token {tok!r}")
        e = int(m.group(2)) if m.group(2) is not None else 1
        if e == 0:
            raise WordError(f"zero exponent in {tok!r}")
        raw.append((alphabet.index(m.group(1)), e))
    return reduce(raw, alphabet)
