"""The cable space group ``A = F(x1..xn) x| Z``.

``t`` acts on the free factor by ``t xi t^-1 = x_sigma(i)`` with
``sigma(i) = i + m mod n``.  Every element has a unique normal form ``w t^z``
which is what :class:`CableElement` stores.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional

from .words import Alphabet, Word, WordError, format_word, invert, multiply, parse_word, reduce


class CableError(ValueError):
    pass


@dataclass(frozen=True)
class CableParams:
    m: int
    n: int
    sigma_shift: int
    s: int

    @property
    def alphabet(self) -> Alphabet:
        return x_alphabet(self.n)

    def sigma(self, i: int) -> int:
        return shift(i, 1, self)


_ALPHABETS: dict[int, Alphabet] = {}


def x_alphabet(n: int) -> Alphabet:
    if n not in _ALPHABETS:
        _ALPHABETS[n] = Alphabet(tuple(f"x{i}" for i in range(1, n + 1)))
    return _ALPHABETS[n]


def make_params(m: int, n: int) -> CableParams:
    if n < 2:
        raise CableError(f"need n >= 2, got n={n}")
    if gcd(m, n) != 1:
        raise CableError(f"m={m} and n={n} are not coprime")
    # s*m = 1 mod n picks the power of sigma that is the cycle (1 2 ... n)
    s = pow(m, -1, n)
    return CableParams(m=m, n=n, sigma_shift=m % n, s=s)


def shift(i: int, z: int, p: CableParams) -> int:
    """``sigma^z(i)`` on indices 1..n."""
    if not 1 <= i <= p.n:
        raise CableError(f"index {i} out of range 1..{p.n}")
    return (i - 1 + z * p.m) % p.n + 1


def shift_word(w: Word, z: int, p: CableParams) -> Word:
    """Apply ``sigma^z`` to every letter of ``w`` (conjugation by ``t^z``)."""
    step = (z * p.m) % p.n
    if step == 0:
        return w
    n = p.n
    # reindexing is a bijection on generators so no new cancellation can occur
    return Word(w.alphabet, tuple(((g + step) % n, e) for g, e in w.letters))


@dataclass(frozen=True)
class CableElement:
    w: Word
    z: int = 0

    def __str__(self):
        return format_element(self)


def element(p: CableParams, w: Optional[Word] = None, z: int = 0) -> CableElement:
    return CableElement(p.alphabet.identity if w is None else w, z)


def x(i: int, p: CableParams, e: int = 1) -> CableElement:
    return CableElement(reduce([(i - 1, e)], p.alphabet), 0)


def t(p: CableParams, z: int = 1) -> CableElement:
    return CableElement(p.alphabet.identity, z)


def identity(p: CableParams) -> CableElement:
    return CableElement(p.alphabet.identity, 0)


def _check(a: CableElement, p: CableParams) -> None:
    if a.w.alphabet != p.alphabet:
        raise CableError("element does not belong to this cable space")


def mul(a: CableElement, b: CableElement, p: CableParams) -> CableElement:
    """``(w1 t^z1)(w2 t^z2) = (w1 sigma^z1(w2)) t^(z1+z2)``."""
    _check(a, p)
    _check(b, p)
    return CableElement(multiply(a.w, shift_word(b.w, a.z, p)), a.z + b.z)


def inv(a: CableElement, p: CableParams) -> CableElement:
    _check(a, p)
    return CableElement(shift_word(invert(a.w), -a.z, p), -a.z)


def product(elements, p: CableParams) -> CableElement:
    out = identity(p)
    for a in elements:
        out = mul(out, a, p)
    return out


def power(a: CableElement, k: int, p: CableParams) -> CableElement:
    if k < 0:
        a, k = inv(a, p), -k
    out, base = identity(p), a
    while k:
        if k & 1:
            out = mul(out, base, p)
        base = mul(base, base, p)
        k >>= 1
    return out


def conj(a: CableElement, g: CableElement, p: CableParams) -> CableElement:
    """``g a g^-1``."""
    return mul(mul(g, a, p), inv(g, p), p)


def killer_element(l: int, p: CableParams) -> CableElement:
    """``g_l = x1^l x2^-(l-1)``; ``g_1`` is the meridian ``x1``."""
    if l < 1:
        raise CableError(f"killer index must be >= 1, got {l}")
    return CableElement(reduce([(0, l), (1, -(l - 1))], p.alphabet), 0)


def companion_meridian(p: CableParams) -> CableElement:
    """``m1 = x1 x2 ... xn``."""
    return CableElement(reduce([(i, 1) for i in range(p.n)], p.alphabet), 0)


def cable_meridian(p: CableParams) -> CableElement:
    return x(1, p)


def boundary_longitude(p: CableParams) -> CableElement:
    """Second generator of the boundary subgroup ``C``: ``(x1 ... x_mbar) t``.

    With ``mbar = m mod n`` this element commutes with ``m1`` because
    ``sigma(m1)`` is the rotation of ``m1`` by ``mbar`` letters, and
    its n-th power is ``m1^mbar t^n``.
    """
    mbar = p.sigma_shift
    return CableElement(reduce([(i, 1) for i in range(mbar)], p.alphabet), 1)


def ab_A(a: CableElement) -> tuple[int, int]:
    """Image in ``H1(A) = Z^2``: (total x-degree, t-degree)."""
    return sum(e for _, e in a.w.letters), a.z


@dataclass(frozen=True)
class KillerCertificate:
    params: CableParams
    l: int
    conjugators: tuple[CableElement, ...]
    target: CableElement


def claim1_certificate(l: int, p: CableParams) -> KillerCertificate:
    """Conjugators ``u_i = x1^-(l-1) t^(i s)`` with ``prod u_i g_l u_i^-1 = m1``."""
    if l < 1:
        raise CableError(f"killer index must be >= 1, got {l}")
    lead = x(1, p, -(l - 1)) if l > 1 else identity(p)
    conjugators = tuple(mul(lead, t(p, i * p.s), p) for i in range(p.n))
    return KillerCertificate(p, l, conjugators, companion_meridian(p))


@dataclass(frozen=True)
class CertificateCheck:
    accepted: bool
    residual: CableElement

    def __bool__(self):
        return self.accepted


def certificate_product(c: KillerCertificate) -> CableElement:
    p = c.params
    g = killer_element(c.l, p)
    return product((conj(g, u, p) for u in c.conjugators), p)


def verify_certificate(c: KillerCertificate) -> CertificateCheck:
    """Multiply out the conjugates in ``A`` and compare with the target.

    The residual is ``product * target^-1``; it is the identity exactly when
    the certificate is accepted.
    """
    p = c.params
    residual = mul(certificate_product(c), inv(c.target, p), p)
    ok = residual.w.is_identity() and residual.z == 0
    return CertificateCheck(ok, residual)


def lemma2_image(l: int, z2: int, eta: int, eps: int, p: CableParams) -> tuple[int, int, Word]:
    """Image core of ``g_l`` under the constrained automorphism family.

    Returns ``(i, j, x_i^(eps l) x_j^(-eps (l-1)))`` where ``i = sigma^z2(1)``
    and ``j = sigma^(z2 + eta s)(1)``.
    """
    if l < 1:
        raise CableError(f"killer index must be >= 1, got {l}")
    if eta not in (1, -1) or eps not in (1, -1):
        raise CableError("eta and eps must be +1 or -1")
    i = shift(1, z2, p)
    j = shift(1, z2 + eta * p.s, p)
    if i == j:
        raise CableError("degenerate image: i == j")
    core = reduce([(i - 1, eps * l), (j - 1, -eps * (l - 1))], p.alphabet)
    return i, j, core


# -- as a finite presentation --------------------------------------------

def a_alphabet(n: int) -> Alphabet:
    return Alphabet(x_alphabet(n).symbols + ("t",))


def as_word(a: CableElement, p: CableParams, alphabet: Optional[Alphabet] = None) -> Word:
    """Spell ``w t^z`` over ``x1..xn, t`` (or any alphabet starting that way)."""
    al = alphabet or a_alphabet(p.n)
    return reduce(list(a.w.letters) + [(p.n, a.z)], al)


def a_presentation(p: CableParams, alphabet: Optional[Alphabet] = None):
    """``<x1..xn, t | t xi t^-1 x_sigma(i)^-1>``."""
    from .fpres import Presentation

    al = alphabet or a_alphabet(p.n)
    rels = tuple(reduce([(p.n, 1), (i - 1, 1), (p.n, -1), (p.sigma(i) - 1, -1)], al)
                 for i in range(1, p.n + 1))
    return Presentation(al, rels)


# -- text formats ---------------------------------------------------------

def format_element(a: CableElement) -> str:
    return f"{format_word(a.w)} ; t^{a.z}"


def parse_element(text: str, p: CableParams) -> CableElement:
    """Parse ``<word> ; t^<z>``; a bare word is also accepted.

    The word part may mention ``t``: it is then multiplied out in ``A``.
    """
    word_part, sep, t_part = text.partition(";")
    z = 0
    if sep:
        tok = t_part.strip()
        if tok == "1":
            z = 0
        elif tok == "t":
            z = 1
        elif tok.startswith("t^"):
            try:
                z = int(tok[2:])
            except ValueError:
                raise CableError(f"malformed t-exponent {tok!r}") from None
        else:
            raise CableError(f"malformed t-part {tok!r}")
    ext = Alphabet(p.alphabet.symbols + ("t",))
    raw = parse_word(word_part, ext)
    out = identity(p)
    for g, e in raw.letters:
        out = mul(out, t(p, e) if g == p.n else x(g + 1, p, e), p)
    return mul(out, t(p, z), p)


def format_certificate(c: KillerCertificate) -> str:
    p = c.params
    lines = [f"cable {p.m} {p.n}", f"killer {c.l}", f"target {_elem_word(c.target, p)}"]
    lines += [f"conj {_elem_word(u, p)}" for u in c.conjugators]
    return "\n".join(lines) + "\n"


def _elem_word(a: CableElement, p: CableParams) -> str:
    # spelled as a single word over x1..xn, t
    parts = [] if a.w.is_identity() else [format_word(a.w)]
    if a.z:
        parts.append("t" if a.z == 1 else f"t^{a.z}")
    return " ".join(parts) or "1"


def parse_certificate(text: str) -> KillerCertificate:
    header: dict[str, str] = {}
    conj_lines: list[str] = []
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "conj":
            conj_lines.append(rest)
        elif key in ("cable", "killer", "target"):
            if key in header:
                raise CableError(f"line {lineno}: duplicate {key!r}")
            header[key] = rest
        else:
            raise CableError(f"line {lineno}: unknown directive {key!r}")
    for key in ("cable", "killer", "target"):
        if key not in header:
            raise CableError(f"certificate missing {key!r} line")
    try:
        m, n = (int(v) for v in header["cable"].split())
        l = int(header["killer"])
    except ValueError:
        raise CableError("malformed cable/killer line") from None
    p = make_params(m, n)
    try:
        target = parse_element(header["target"], p)
        conjugators = tuple(parse_element(s, p) for s in conj_lines)
    except WordError as exc:
        raise CableError(str(exc)) from None
    return KillerCertificate(p, l, conjugators, target)
