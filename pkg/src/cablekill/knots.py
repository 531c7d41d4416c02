"""Presentations of torus knot, cable knot and connected-sum knot groups.

Each builder returns a :class:`Presentation` together with a
:class:`PeripheralPair`, and every pair is checked when built: the
meridian must map to a generator of ``H1 = Z``, the longitude must be
null-homologous, and killing the meridian must give a trivial group (which
coset enumeration certifies).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Optional, Union

from . import cable_space as cs
from .coset_enum import QuotientVerdict, is_trivial_quotient
from .fpres import H1, Presentation, ab_image, abelianization_map, h1_invariants
from .words import Alphabet, Word, invert, multiply, power, reduce, relabel

# budget for the meridian check run at construction time
CHECK_MAX_COSETS = 10**5


class KnotError(ValueError):
    pass


@dataclass(frozen=True)
class Torus:
    p: int
    q: int

    def __str__(self):
        return f"torus({self.p},{self.q})"


@dataclass(frozen=True)
class Cable:
    m: int
    n: int
    companion: "KnotSpec"

    def __str__(self):
        return f"cable({self.m},{self.n}; {self.companion})"


@dataclass(frozen=True)
class Sum:
    parts: tuple["KnotSpec", ...]

    def __str__(self):
        return "sum(" + ", ".join(str(k) for k in self.parts) + ")"


KnotSpec = Union[Torus, Cable, Sum]


@dataclass(frozen=True)
class PeripheralPair:
    meridian: Word
    longitude: Word


# -- knot spec syntax -------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(-?\d+)|([A-Za-z]+)|([(),;]))")


def _tokenize(text):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise KnotError(f"unexpected character at position {pos}: {text[pos:]!r}")
        num, ident, punct = m.groups()
        out.append(("num", int(num)) if num is not None else ("id", ident) if ident else ("p", punct))
        pos = m.end()
    return out


def parse_knotspec(text: str) -> KnotSpec:
    """Parse ``torus(2,3)``, ``cable(3,2; torus(2,3))``, ``sum(a, b, ...)``."""
    toks = _tokenize(text)
    pos = 0

    def expect(kind, value=None):
        nonlocal pos
        if pos >= len(toks):
            raise KnotError("unexpected end of knot spec")
        k, v = toks[pos]
        if k != kind or (value is not None and v != value):
            raise KnotError(f"expected {value or kind}, got {v!r}")
        pos += 1
        return v

    def node():
        name = expect("id").lower()
        expect("p", "(")
        if name == "torus":
            p = expect("num")
            expect("p", ",")
            q = expect("num")
            expect("p", ")")
            return Torus(p, q)
        if name == "cable":
            m = expect("num")
            expect("p", ",")
            n = expect("num")
            expect("p", ";")
            comp = node()
            expect("p", ")")
            return Cable(m, n, comp)
        if name == "sum":
            parts = [node()]
            while toks[pos] == ("p", ","):
                expect("p", ",")
                parts.append(node())
            expect("p", ")")
            return Sum(tuple(parts))
        raise KnotError(f"unknown knot type {name!r}")

    try:
        spec = node()
    except IndexError:
        raise KnotError("unexpected end of knot spec") from None
    if pos != len(toks):
        raise KnotError(f"trailing input in knot spec: {toks[pos][1]!r}")
    validate_spec(spec)
    return spec


def validate_spec(spec: KnotSpec) -> None:
    if isinstance(spec, Torus):
        if spec.p < 2 or spec.q < 2 or gcd(spec.p, spec.q) != 1:
            raise KnotError(f"torus({spec.p},{spec.q}) needs coprime p, q >= 2")
    elif isinstance(spec, Cable):
        if spec.n < 2 or gcd(spec.m, spec.n) != 1:
            raise KnotError(f"cable({spec.m},{spec.n}) needs n >= 2 and gcd(m, n) = 1")
        validate_spec(spec.companion)
    elif isinstance(spec, Sum):
        if len(spec.parts) < 2:
            raise KnotError("a connected sum needs at least two summands")
        for part in spec.parts:
            validate_spec(part)
    else:
        raise KnotError(f"not a knot spec: {spec!r}")


# -- peripheral checks ------------------------------------------------------

@dataclass(frozen=True)
class PeripheralCheck:
    h1: H1
    meridian_generates: bool
    longitude_null: bool
    meridian_quotient: QuotientVerdict

    @property
    def ok(self) -> bool:
        return (self.h1.is_z and self.meridian_generates and self.longitude_null
                and self.meridian_quotient.certified)


def check_peripheral(pres: Presentation, pair: PeripheralPair,
                     max_cosets: int = CHECK_MAX_COSETS) -> PeripheralCheck:
    h1 = h1_invariants(pres)
    vec = abelianization_map(pres, orient=pair.meridian)
    gens = vec is not None and ab_image(pair.meridian, vec) == 1
    null = vec is not None and ab_image(pair.longitude, vec) == 0
    verdict = is_trivial_quotient(pres, [pair.meridian], max_cosets)
    return PeripheralCheck(h1, gens, null, verdict)


def _checked(pres: Presentation, pair: PeripheralPair, what: str):
    check = check_peripheral(pres, pair)
    if not check.ok:
        raise KnotError(f"peripheral check failed for {what}: {check}")
    return pres, pair


# -- torus knots ------------------------------------------------------------

TORUS_ALPHABET = Alphabet(("a", "b"))


def torus_meridian_exponents(p: int, q: int) -> tuple[int, int]:
    """``(r, s)`` with ``p s - q r = 1``, ``0 < s < q`` and ``0 < r < p``."""
    s = pow(p, -1, q)
    r = (p * s - 1) // q
    return r, s


def torus_presentation(p: int, q: int) -> tuple[Presentation, PeripheralPair]:
    """``<a, b | a^p b^-q>`` with meridian ``a^-r b^s`` and longitude ``a^p mu^-pq``."""
    validate_spec(Torus(p, q))
    al = TORUS_ALPHABET
    r, s = torus_meridian_exponents(p, q)
    mu = reduce([(0, -r), (1, s)], al)
    lam = multiply(reduce([(0, p)], al), power(mu, -p * q))
    pres = Presentation(al, (reduce([(0, p), (1, -q)], al),),
                        (("meridian", mu), ("longitude", lam)))
    return _checked(pres, PeripheralPair(mu, lam), f"torus({p},{q})")


@dataclass(frozen=True)
class TorusNormalForm:
    center: int
    syllables: tuple[tuple[int, int], ...]

    def is_identity(self) -> bool:
        return self.center == 0 and not self.syllables


def torus_normal_form(w: Word, p: int, q: int) -> TorusNormalForm:
    """Canonical form in ``<a, b | a^p = b^q>``.

    The center is generated by ``z = a^p = b^q`` and the quotient is the free
    product ``Z_p * Z_q``, so each element is uniquely ``z^c`` times an
    alternating product of ``a^i`` (``0 < i < p``) and ``b^j`` (``0 < j < q``).
    """
    if len(w.alphabet) != 2:
        raise KnotError("torus normal form needs a word over {a, b}")
    orders = (p, q)
    center = 0
    syl: list[list[int]] = []
    for g, e in w.letters:
        order = orders[g]
        if syl and syl[-1][0] == g:
            e += syl.pop()[1]
        c, rem = divmod(e, order)
        center += c
        if rem:
            syl.append([g, rem])
    return TorusNormalForm(center, tuple((g, e) for g, e in syl))


# -- cable knots ------------------------------------------------------------

def _prefixed(pres: Presentation, prefix: str, front: tuple[str, ...] = ()):
    """Alphabet ``front + prefix.<gens>`` and a relabeling function into it."""
    al = Alphabet(front + tuple(f"{prefix}.{g}" for g in pres.alphabet.symbols))
    offset = len(front)
    mapping = [offset + i for i in range(len(pres.alphabet))]
    return al, (lambda w: relabel(w, al, mapping))


def cable_presentation(m: int, n: int, companion: tuple[Presentation, PeripheralPair],
                       d: int = 0) -> tuple[Presentation, PeripheralPair]:
    """Amalgam of the cable space group with the companion group along ``C``.

    Gluing relators identify ``x1...xn`` with the companion meridian and the
    boundary longitude ``(x1...x_mbar) t`` with ``lambda_B mu_B^d``.
    """
    try:
        params = cs.make_params(m, n)
    except cs.CableError as exc:
        raise KnotError(str(exc)) from None
    cpres, cpair = companion
    front = tuple(f"x{i}" for i in range(1, n + 1)) + ("t",)
    al, move = _prefixed(cpres, "c", front)
    tgen = n

    def lift(a: cs.CableElement) -> Word:
        return cs.as_word(a, params, al)

    xs = [reduce([(i, 1)], al) for i in range(n)]
    rels = list(cs.a_presentation(params, al).relators)
    rels += [move(r) for r in cpres.relators]
    mu_b, lam_b = move(cpair.meridian), move(cpair.longitude)
    m1 = lift(cs.companion_meridian(params))
    lam_a = lift(cs.boundary_longitude(params))
    rels.append(multiply(m1, invert(mu_b)))
    rels.append(multiply(lam_a, invert(multiply(lam_b, power(mu_b, d)))))

    named = [("meridian", xs[0])]
    pres = Presentation(al, tuple(rels), tuple(named))
    # longitude t^n x1^-c, with c fixed so that it is null-homologous
    vec = abelianization_map(pres, orient=xs[0])
    if vec is None:
        raise KnotError(f"cable({m},{n}) presentation does not have H1 = Z")
    tn = reduce([(tgen, n)], al)
    c = ab_image(tn, vec)
    longitude = multiply(tn, reduce([(0, -c)], al))
    named.append(("longitude", longitude))
    for l in range(1, 5):
        named.append((f"killer.{l}", lift(cs.killer_element(l, params))))
    named += [(f"c.{k}", move(w)) for k, w in cpres.named]
    pres = Presentation(al, tuple(rels), tuple(named))
    return _checked(pres, PeripheralPair(xs[0], longitude), f"cable({m},{n})")


def killer_word(pres: Presentation, l: int) -> Word:
    """``x1^l x2^-(l-1)`` in a cable presentation."""
    if l < 1:
        raise KnotError(f"killer index must be >= 1, got {l}")
    al = pres.alphabet
    return reduce([(al.index("x1"), l), (al.index("x2"), -(l - 1))], al)


# -- connected sums ---------------------------------------------------------

def sum_presentation(parts) -> tuple[Presentation, PeripheralPair]:
    """Amalgamate the summand groups along their (identified) meridians."""
    parts = list(parts)
    if len(parts) < 2:
        raise KnotError("a connected sum needs at least two summands")
    symbols: list[str] = []
    for k, (pres, _) in enumerate(parts, 1):
        symbols += [f"p{k}.{g}" for g in pres.alphabet.symbols]
    al = Alphabet(tuple(symbols))
    rels: list[Word] = []
    named: list[tuple[str, Word]] = []
    merids, longs = [], []
    offset = 0
    for k, (pres, pair) in enumerate(parts, 1):
        mapping = [offset + i for i in range(len(pres.alphabet))]
        offset += len(pres.alphabet)
        move = lambda w, mp=mapping: relabel(w, al, mp)  # noqa: E731
        rels += [move(r) for r in pres.relators]
        merids.append(move(pair.meridian))
        longs.append(move(pair.longitude))
        named += [(f"p{k}.{label}", move(w)) for label, w in pres.named]
    rels += [multiply(merids[0], invert(mu)) for mu in merids[1:]]
    longitude = al.identity
    for lam in longs:
        longitude = multiply(longitude, lam)
    named = [("meridian", merids[0]), ("longitude", longitude)] + named
    pres = Presentation(al, tuple(rels), tuple(named))
    return _checked(pres, PeripheralPair(merids[0], longitude), "connected sum")


def build(spec: KnotSpec, d: int = 0) -> tuple[Presentation, PeripheralPair]:
    validate_spec(spec)
    if isinstance(spec, Torus):
        return torus_presentation(spec.p, spec.q)
    if isinstance(spec, Cable):
        return cable_presentation(spec.m, spec.n, build(spec.companion, d), d)
    return sum_presentation([build(part, d) for part in spec.parts])


# -- killer tests -----------------------------------------------------------

def killer_test(pres: Presentation, w: Word, max_cosets: Optional[int] = None,
                strategy: str = "felsch") -> QuotientVerdict:
    """Is ``w`` a killer of the group presented by ``pres``?

    Nonzero first homology of the augmented presentation refutes directly;
    otherwise coset enumeration tries to certify the trivial quotient.
    """
    h1 = h1_invariants(pres.with_relators([w]))
    if not h1.is_trivial:
        return QuotientVerdict("refuted", None, f"H1 of quotient is {h1}")
    return is_trivial_quotient(pres, [w], max_cosets, strategy=strategy)
