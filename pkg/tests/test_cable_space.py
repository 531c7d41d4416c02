from math import gcd

import pytest
from hypothesis import given, strategies as st

from cablekill import cable_space as cs
from cablekill.words import parse_word, reduce

from conftest import raw_words

GRID = [(m, n) for n in range(2, 7) for m in range(-7, 8) if gcd(m, n) == 1]


def rewrite(letters, m, n):
    """Normal form by pushing every t to the right one letter at a time.

    ``letters`` is a list of ("x", i, +-1) / ("t", +-1) tokens.
    """
    xs, z = [], 0
    for tok in letters:
        if tok[0] == "t":
            z += tok[1]
        else:
            _, i, e = tok
            # t^z x_i = x_{sigma^z(i)} t^z
            xs.append(((i - 1 + z * m) % n + 1, e))
    out = []
    for i, e in xs:
        if out and out[-1] == (i, -e):
            out.pop()
        else:
            out.append((i, e))
    return out, z


def tokens(a):
    out = []
    for g, e in a.w.letters:
        out += [("x", g + 1, 1 if e > 0 else -1)] * abs(e)
    out += [("t", 1 if a.z > 0 else -1)] * abs(a.z)
    return out


def as_pairs(a):
    out = []
    for g, e in a.w.letters:
        out += [(g + 1, 1 if e > 0 else -1)] * abs(e)
    return out, a.z


def elements(p):
    return st.tuples(raw_words(p.alphabet, max_size=5, max_exp=3), st.integers(-6, 6)).map(
        lambda r: cs.CableElement(reduce(r[0], p.alphabet), r[1]))


grid_params = st.sampled_from(GRID).map(lambda mn: cs.make_params(*mn))


class TestParams:
    def test_2_3(self):
        p = cs.make_params(2, 3)
        assert p.s == 2
        assert [p.sigma(i) for i in (1, 2, 3)] == [3, 1, 2]

    def test_3_2(self):
        p = cs.make_params(3, 2)
        assert p.s == 1
        assert [p.sigma(i) for i in (1, 2)] == [2, 1]

    @pytest.mark.parametrize("m, n", [(4, 6), (0, 3), (1, 1), (5, 0)])
    def test_errors(self, m, n):
        with pytest.raises(cs.CableError):
            cs.make_params(m, n)

    @pytest.mark.parametrize("m, n", GRID)
    def test_s_and_sigma_cycle(self, m, n):
        p = cs.make_params(m, n)
        assert 1 <= p.s <= n - 1
        assert (p.s * m) % n == 1
        # sigma^s is the cycle (1 2 ... n)
        assert [cs.shift(i, p.s, p) for i in range(1, n + 1)] == [i % n + 1 for i in range(1, n + 1)]
        assert all(cs.shift(i, n, p) == i for i in range(1, n + 1))
        assert cs.shift(1, -p.s, p) == n
        # sigma is an n-cycle
        orbit, i = [], 1
        for _ in range(n):
            orbit.append(i)
            i = p.sigma(i)
        assert sorted(orbit) == list(range(1, n + 1))

    def test_shift_examples(self):
        p = cs.make_params(2, 3)
        assert cs.shift(1, 1, p) == 3
        assert cs.shift(1, -2, p) == 3
        with pytest.raises(cs.CableError):
            cs.shift(4, 1, p)


class TestMultiplication:
    def test_relation(self):
        p = cs.make_params(2, 3)
        assert cs.conj(cs.x(1, p), cs.t(p), p) == cs.x(3, p)

    def test_t_s_conjugation(self):
        p = cs.make_params(2, 3)
        assert cs.conj(cs.x(1, p), cs.t(p, p.s), p) == cs.x(2, p)

    @pytest.mark.parametrize("m, n", GRID)
    def test_relations_exhaustive(self, m, n):
        p = cs.make_params(m, n)
        for i in range(1, n + 1):
            assert cs.conj(cs.x(i, p), cs.t(p), p) == cs.x(p.sigma(i), p)

    @given(grid_params.flatmap(lambda p: st.tuples(st.just(p), elements(p), elements(p))))
    def test_matches_rewriting_oracle(self, args):
        p, a, b = args
        got = cs.mul(a, b, p)
        assert as_pairs(got) == rewrite(tokens(a) + tokens(b), p.m, p.n)

    @given(grid_params.flatmap(lambda p: st.tuples(st.just(p), elements(p), elements(p), elements(p))))
    def test_group_laws(self, args):
        p, a, b, c = args
        assert cs.mul(cs.mul(a, b, p), c, p) == cs.mul(a, cs.mul(b, c, p), p)
        assert cs.inv(cs.inv(a, p), p) == a
        assert cs.mul(a, cs.inv(a, p), p) == cs.identity(p)
        tn = cs.t(p, p.n)
        assert cs.mul(tn, a, p) == cs.mul(a, tn, p)
        assert cs.ab_A(cs.mul(a, b, p)) == tuple(u + v for u, v in zip(cs.ab_A(a), cs.ab_A(b)))

    def test_params_mismatch(self):
        p, q = cs.make_params(1, 2), cs.make_params(1, 3)
        with pytest.raises(cs.CableError):
            cs.mul(cs.x(1, p), cs.x(1, q), p)


class TestDistinguished:
    def test_killer_examples(self):
        p = cs.make_params(2, 3)
        assert cs.killer_element(1, p) == cs.cable_meridian(p) == cs.x(1, p)
        assert cs.killer_element(3, p).w == parse_word("x1^3 x2^-2", p.alphabet)
        with pytest.raises(cs.CableError):
            cs.killer_element(0, p)

    @pytest.mark.parametrize("m, n", GRID)
    def test_killer_as_t_expansion(self, m, n):
        p = cs.make_params(m, n)
        x2 = cs.conj(cs.x(1, p), cs.t(p, p.s), p)
        for l in range(1, 6):
            expansion = cs.mul(cs.power(cs.x(1, p), l, p), cs.power(x2, -(l - 1), p), p)
            assert expansion == cs.killer_element(l, p)

    def test_companion_meridian(self):
        for n in (2, 3):
            p = cs.make_params(1, n)
            m1 = cs.companion_meridian(p)
            assert str(m1.w) == " ".join(f"x{i}" for i in range(1, n + 1))
            assert cs.ab_A(m1) == (n, 0)

    def test_boundary_longitude_1_2(self):
        p = cs.make_params(1, 2)
        lam = cs.boundary_longitude(p)
        assert lam == cs.mul(cs.x(1, p), cs.t(p), p)
        assert cs.power(lam, 2, p) == cs.mul(cs.companion_meridian(p), cs.t(p, 2), p)

    @pytest.mark.parametrize("m, n", GRID)
    def test_peripheral_identities(self, m, n):
        p = cs.make_params(m, n)
        lam, m1 = cs.boundary_longitude(p), cs.companion_meridian(p)
        assert cs.mul(lam, m1, p) == cs.mul(m1, lam, p)
        fiber = cs.mul(cs.power(m1, p.sigma_shift, p), cs.t(p, n), p)
        assert cs.power(lam, n, p) == fiber
        assert cs.ab_A(lam) == (p.sigma_shift, 1)

    def test_ab_A_killers(self):
        p = cs.make_params(3, 5)
        assert all(cs.ab_A(cs.killer_element(l, p)) == (1, 0) for l in range(1, 101))


class TestCertificates:
    def test_1_2_l2_by_hand(self):
        p = cs.make_params(1, 2)
        c = cs.claim1_certificate(2, p)
        assert [cs.format_element(u) for u in c.conjugators] == ["x1^-1 ; t^0", "x1^-1 ; t^1"]
        g = cs.killer_element(2, p)
        parts = [cs.conj(g, u, p) for u in c.conjugators]
        assert str(parts[0].w) == "x1 x2^-1 x1" and str(parts[1].w) == "x1^-1 x2^2"
        assert cs.verify_certificate(c).accepted

    def test_l1_conjugators_are_t_powers(self):
        p = cs.make_params(2, 5)
        c = cs.claim1_certificate(1, p)
        assert [u.z for u in c.conjugators] == [i * p.s for i in range(5)]
        assert all(u.w.is_identity() for u in c.conjugators)
        parts = [cs.conj(cs.killer_element(1, p), u, p) for u in c.conjugators]
        assert [str(a.w) for a in parts] == [f"x{i}" for i in range(1, 6)]

    @pytest.mark.parametrize("m, n", GRID)
    def test_grid(self, m, n):
        p = cs.make_params(m, n)
        for l in range(1, 6):
            assert cs.verify_certificate(cs.claim1_certificate(l, p))

    def test_perturbed_rejected(self):
        p = cs.make_params(2, 3)
        c = cs.claim1_certificate(3, p)
        bad = cs.KillerCertificate(p, 3, (cs.t(p),) + c.conjugators[1:], c.target)
        check = cs.verify_certificate(bad)
        assert not check.accepted
        assert not (check.residual.w.is_identity() and check.residual.z == 0)

    def test_reversed_rejected(self):
        p = cs.make_params(2, 3)
        c = cs.claim1_certificate(2, p)
        rev = cs.KillerCertificate(p, 2, c.conjugators[::-1], c.target)
        assert not cs.verify_certificate(rev).accepted

    def test_file_roundtrip(self):
        p = cs.make_params(-3, 5)
        c = cs.claim1_certificate(4, p)
        text = cs.format_certificate(c)
        assert text.splitlines()[0] == "cable -3 5"
        assert cs.parse_certificate(text) == c

    def test_file_errors(self):
        with pytest.raises(cs.CableError):
            cs.parse_certificate("cable 2 3\ntarget x1 x2 x3\n")
        with pytest.raises(cs.CableError):
            cs.parse_certificate("cable 2 4\nkiller 1\ntarget x1\n")
        with pytest.raises(cs.CableError):
            cs.parse_certificate("cable 2 3\nkiller 1\ntarget x7\n")


class TestConstrainedImage:
    def test_examples(self):
        p = cs.make_params(2, 5)
        assert cs.lemma2_image(3, 0, 1, 1, p)[:2] == (1, 2)
        assert cs.lemma2_image(3, 0, -1, 1, p)[:2] == (1, 5)
        i, j, core = cs.lemma2_image(1, 2, 1, -1, p)
        assert core == reduce([(i - 1, -1)], p.alphabet)

    @pytest.mark.parametrize("m, n", GRID)
    def test_i_neq_j(self, m, n):
        p = cs.make_params(m, n)
        for z2 in range(n):
            for eta in (1, -1):
                i, j, core = cs.lemma2_image(4, z2, eta, 1, p)
                assert i != j
                assert str(core) == f"x{i}^4 x{j}^-3"


class TestElementSyntax:
    def test_parse_and_format(self):
        p = cs.make_params(2, 3)
        a = cs.parse_element("x1^2 x2^-1 ; t^3", p)
        assert cs.format_element(a) == "x1^2 x2^-1 ; t^3"
        assert cs.parse_element("t x1 t^-1", p) == cs.x(3, p)
        assert cs.parse_element("1 ; t^0", p) == cs.identity(p)

    def test_bad(self):
        p = cs.make_params(2, 3)
        with pytest.raises(cs.CableError):
            cs.parse_element("x1 ; s^2", p)
