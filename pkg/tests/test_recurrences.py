import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from conftest import deltas, orderings
from szegoq import ordering as O
from szegoq import recurrences as R
from szegoq import schur
from szegoq.errors import DomainError, QuasiDefiniteUnsupported, ZeroSchurParameterInDegenerateCase
from szegoq.laurent import LaurentPoly

CASES = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]


def lp(d):
    return LaurentPoly.from_dict(d)


def test_szego_monic_small():
    s = schur.lebesgue(3)
    pair = R.szego_monic(s, 3)
    assert pair.rho == lp({3: 1}) and pair.rho_star == lp({0: 1})
    q = 0.5
    rq = math.sqrt(q)
    rho2 = R.szego_monic(schur.rogers_szego(q, 2), 2).rho
    assert rho2.max_diff(lp({2: 1, 1: -rq * (1 + q), 0: q})) < 1e-15
    zero = R.szego_monic(s, 0)
    assert zero.rho == zero.rho_star == lp({0: 1})


def test_szego_matches_oracle(rng):
    d = 0.8 * np.exp(1j * rng.uniform(0, 6, 9)) * rng.uniform(0, 1, 9)
    rho, rs = oracle.szego_coeffs(d)
    mine, mine_s = R.szego_family(schur.explicit(d), 9)
    for k in range(10):
        assert mine[k].max_diff(LaurentPoly(0, rho[k])) < 1e-14
        assert mine_s[k].max_diff(LaurentPoly(0, rs[k])) < 1e-14


def test_orthonormal_leading():
    s = schur.rogers_szego(0.5, 1)
    phi1 = R.szego_orthonormal(s, 1)
    assert phi1.coeff(1) == pytest.approx(math.sqrt(2))
    assert phi1.coeff(0) == pytest.approx(-1.0)
    with pytest.raises(QuasiDefiniteUnsupported):
        R.szego_orthonormal(schur.explicit([1.5], quasi_definite=True), 1)


def test_correspondence_examples():
    q = 0.3
    s = schur.rogers_szego(q, 4)
    c = O.balanced("ceil_half", 4)
    assert R.laurent_from_szego(s, c, 1).max_diff(lp({0: -math.sqrt(q), -1: 1})) < 1e-15
    rq = math.sqrt(q)
    assert R.laurent_from_szego(s, c, 2).max_diff(lp({1: 1, 0: -rq * (1 + q), -1: q})) < 1e-15
    for n in range(5):
        assert R.laurent_from_szego(s, O.poly(4), n) == R.szego_monic(s, n).rho


def test_substar_duality_examples():
    s = schur.rogers_szego(0.5, 12)
    assert R.substar_duality_check(s, O.balanced("floor_half", 12), 12)
    assert R.substar_duality_check(s, O.poly(8), 8)
    assert R.substar_duality_check(s, O.poly(8), 0)


@given(deltas(min_size=2, max_size=12), st.data())
def test_three_term_equals_correspondence(d, data):
    s = schur.explicit(d)
    g = O.from_steps(data.draw(orderings(len(d))))
    for variant in (R.MONIC, R.ORTHONORMAL):
        a = R.three_term_family(s, g, len(d), variant)
        b = R.laurent_family(s, g, len(d), variant)
        assert R.families_max_diff(a, b) < 1e-12


@pytest.mark.parametrize("case", CASES)
def test_each_case(case):
    # an ordering whose steps at n=4 (s(4), s(3), s(2)) hit the requested case
    s4, s3, s2 = case
    g = O.from_steps((1, s2, s3, s4))
    s = schur.explicit([0.3 + 0.2j, -0.4 + 0.1j, 0.25j, 0.5 - 0.3j])
    a = R.three_term_general(s, g, 4)
    assert a.max_diff(R.laurent_from_szego(s, g, 4)) < 1e-13


@pytest.mark.parametrize("case", CASES)
def test_condensed_matches_explicit(case, rng):
    dn, dn1 = rng.normal(size=2) + 1j * rng.normal(size=2)
    cc = R.condensed_coeffs(case, dn, dn1)
    alpha, beta, e1, gamma, e2 = R.explicit_case(case, dn, dn1)
    assert (cc.e1, cc.e2) == (e1, e2)
    np.testing.assert_allclose([cc.alpha, cc.beta, cc.gamma], [alpha, beta, gamma], rtol=1e-13)


def test_case_010_floor_half():
    s = schur.rogers_szego(0.5, 2)
    g = O.balanced("floor_half", 2)
    assert R.three_term_general(s, g, 2).max_diff(R.laurent_from_szego(s, g, 2)) < 1e-13


def test_degenerate_case_raises():
    s = schur.explicit([0.0, 0.3])
    with pytest.raises(ZeroSchurParameterInDegenerateCase):
        R.three_term_general(s, O.poly(2), 2)
    # s(0) = 0 != s(1) = 1 so delta_1 = 0 is harmless at n=2 here
    R.three_term_general(s, O.parse("10"), 2)


def test_initial_condition_K1():
    s = schur.explicit([0.3 - 0.4j])
    phi1 = R.three_term_general(s, O.parse("1"), 1)
    assert phi1.max_diff(lp({0: 0.3 + 0.4j, -1: 1})) < 1e-15


def test_without_orthogonality_examples():
    phi, F = R.recurrence_without_orthogonality([0.5, -0.3 + 0.4j, 0.2], O.balanced("floor_half", 3), 3)
    assert R.szego_shape_residual([0.5, -0.3 + 0.4j, 0.2], O.balanced("floor_half", 3), 3) < 1e-13
    assert F.lo >= 0 and F.hi <= 3
    # quasi-definite parameters: recursion still runs
    dq = [0.5, 1.5]
    g = O.balanced("ceil_half", 2)
    R.recurrence_without_orthogonality(dq, g, 2)
    assert R.szego_shape_residual(dq, g, 2) < 1e-13


def test_without_orthogonality_zero_delta_floor():
    g = O.balanced("floor_half", 1)
    phi, F = R.recurrence_without_orthogonality([0.0], g, 1)
    assert F == lp({1: 1})


@given(st.data())
def test_without_orthogonality_quasi(data):
    n = data.draw(st.integers(2, 10))
    mags = data.draw(st.lists(st.floats(0.1, 3.0).filter(lambda x: abs(x - 1) > 0.05), min_size=n, max_size=n))
    ang = data.draw(st.lists(st.floats(0, 6.28), min_size=n, max_size=n))
    d = np.array(mags) * np.exp(1j * np.array(ang))
    g = O.from_steps(data.draw(orderings(n)))
    assert R.szego_shape_residual(d, g, n) < 1e-12 * max(1.0, np.prod(1 + np.abs(d)) ** 2)


def test_monicity_and_trailing(rng):
    d = 0.7 * np.exp(1j * rng.uniform(0, 6, 10))
    s = schur.explicit(d)
    g = O.from_steps(rng.integers(0, 2, 10))
    for n, phi in enumerate(R.three_term_family(s, g, 10)):
        if n == 0:
            continue
        lead, trail = R.leading_trailing(phi, g, n)
        assert abs(lead - 1) < 1e-13
        want = s.d(n) if g.s(n) == 0 else np.conj(s.d(n))
        assert abs(trail - want) < 1e-13


def test_orthonormal_leading_positive(rng):
    s = schur.explicit(0.6 * np.exp(1j * rng.uniform(0, 6, 8)))
    for g in (O.balanced("floor_half", 8), O.balanced("ceil_half", 8)):
        for n, chi in enumerate(R.three_term_family(s, g, 8, R.ORTHONORMAL)):
            lead, _ = R.leading_trailing(chi, g, n)
            assert abs(lead.imag) < 1e-14 and lead.real > 0


def test_q_binomial():
    assert R.q_binomial(2, 1, 0.5) == pytest.approx(1.5)
    assert R.q_binomial(3, 1, 0.5) == pytest.approx(1.75)
    assert R.q_binomial(5, 0, 0.3) == 1
    with pytest.raises(DomainError):
        R.q_binomial(2, 3, 0.5)
    with pytest.raises(DomainError):
        R.q_binomial(2, 1, 1.5)


@pytest.mark.parametrize("q", [0.1, 0.25, 0.5, 0.75, 0.9])
def test_rs_explicit_routes(q):
    s = schur.rogers_szego(q, 20)
    c = O.balanced("ceil_half", 20)
    fam = R.three_term_family(s, c, 20)
    for n in range(21):
        e = R.rs_laurent_explicit(q, n)
        assert e.max_diff(fam[n]) < 1e-12
        assert e.max_diff(R.rs_laurent_binomial(q, n)) < 1e-12


@pytest.mark.parametrize("q", [0.1, 0.5, 0.9])
def test_rs_zero_moduli(q):
    for k in range(1, 7):
        np.testing.assert_allclose(np.abs(R.rs_laurent_explicit(q, 2 * k).roots()), math.sqrt(q), atol=1e-8)
        np.testing.assert_allclose(np.abs(R.rs_laurent_explicit(q, 2 * k + 1).roots()), 1 / math.sqrt(q), atol=1e-8)


def test_favard_examples():
    rep = R.favard_verify(schur.rogers_szego(0.5, 8).delta, O.balanced("floor_half", 8), 8)
    assert rep.passed
    assert R.favard_verify(np.zeros(8), O.balanced("ceil_half", 8), 8).max_offdiag < 1e-14
    with pytest.raises(DomainError):
        R.favard_verify(np.zeros(3), O.poly(3), 3, mu0=-1)


@given(deltas(min_size=6, max_size=6, radius=0.9), st.data())
def test_favard_random(d, data):
    g = O.from_steps(data.draw(orderings(6)))
    try:
        rep = R.favard_verify(d, g, 6)
    except ZeroSchurParameterInDegenerateCase:
        return
    assert rep.passed, rep
