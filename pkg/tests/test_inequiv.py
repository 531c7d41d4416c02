from math import gcd

import pytest
from hypothesis import given, strategies as st

from cablekill import cable_space as cs
from cablekill import inequiv as iq
from cablekill.words import conjugate

GRID = [(m, n) for n in range(2, 7) for m in range(-7, 8) if gcd(m, n) == 1]

params = st.sampled_from(GRID).map(lambda mn: cs.make_params(*mn))


def test_case_count_and_format():
    p = cs.make_params(2, 3)
    v = iq.inequivalence_verdict(2, 3, p)
    assert len(v.report.cases) == 4 * p.n
    text = iq.format_report(v)
    lines = text.splitlines()
    assert lines[0].startswith("case z2=0 eta=+1 eps=+1 i=1 j=")
    assert all(line.endswith("-> not") for line in lines[:-1])
    assert lines[-1] == "verdict certified-inequivalent (certified modulo the rigidity reduction)"


def test_vacuous_j_for_meridian():
    p = cs.make_params(1, 2)
    v = iq.inequivalence_verdict(2, 1, p)
    assert "j=vacuous" in iq.format_report(v)
    assert v.inequivalent


@given(params, st.integers(1, 6), st.integers(1, 6))
def test_conjugacy_solutions_pass_abelian_test(p, k, l):
    report = iq.conjugacy_obstruction(k, l, p)
    abelian = iq.abelian_obstruction(k, l, p)
    gk = cs.killer_element(k, p).w
    for case in report.solutions:
        assert (case.i, None if l == 1 else case.j, case.eps) in abelian
        assert conjugate(cs.lemma2_image(l, *case.triple, p)[2], case.witness) == gk


@given(params, st.integers(1, 6), st.integers(1, 6))
def test_off_diagonal_has_no_solution(p, k, l):
    if k == l:
        return
    v = iq.inequivalence_verdict(k, l, p)
    assert v.report.no_solution and v.inequivalent


@given(params, st.integers(1, 6))
def test_diagonal_contains_identity_case(p, l):
    report = iq.conjugacy_obstruction(l, l, p)
    assert (0, 1, 1) in [c.triple for c in report.solutions]
    assert iq.inequivalence_verdict(l, l, p).status == "equivalent-candidate"


@given(params, st.integers(1, 6))
def test_cases_never_degenerate(p, l):
    for case in iq.conjugacy_obstruction(1, l, p).cases:
        assert case.i != case.j


@pytest.mark.parametrize("m, n", GRID)
def test_lattice_exclusion_matches_search(m, n):
    p = cs.make_params(m, n)
    for k in range(1, 6):
        xdeg, tdeg = cs.ab_A(cs.killer_element(k, p))
        # (n, 0) and (mbar, 1) span the image of C; search a window of combinations
        member = any(a * n + b * p.sigma_shift == xdeg and b == tdeg
                     for a in range(-20, 21) for b in range(-20, 21))
        assert iq.peripheral_lattice_excludes(k, p) == (not member)
        assert iq.peripheral_lattice_excludes(k, p)


def test_abelian_solutions_small():
    p = cs.make_params(2, 3)
    assert iq.abelian_obstruction(2, 3, p) == []
    assert (1, 2, 1) in iq.abelian_obstruction(2, 2, p)
    assert iq.abelian_obstruction(1, 1, p) == [(1, None, 1)]
