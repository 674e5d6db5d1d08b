import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from conftest import random_delta, unit
from szegoq import measures as ms
from szegoq import ordering as O
from szegoq import quadrature as Q
from szegoq import schur
from szegoq.errors import DomainError, MomentRangeExceeded, NonUnimodularU
from szegoq.laurent import LaurentPoly


def check_invariants(rule, mu0=1.0):
    assert np.max(np.abs(np.abs(rule.nodes) - 1)) < 1e-10
    ang = np.sort(rule.angles)
    gaps = np.diff(np.concatenate([ang, [ang[0] + 2 * math.pi]]))
    assert np.min(gaps) > 1e-9
    assert np.all(rule.weights > 0)
    assert abs(rule.weights.sum() - mu0) < 1e-10


def test_para_orthogonal_examples(rng):
    assert Q.para_orthogonal(schur.lebesgue(4), 4, 1.0) == LaurentPoly.from_dict({4: 1, 0: 1})
    u = np.exp(0.3j)
    assert Q.para_orthogonal(schur.lebesgue(1), 1, u).max_diff(LaurentPoly.from_dict({1: 1, 0: u})) < 1e-16
    with pytest.raises(NonUnimodularU):
        Q.para_orthogonal(schur.lebesgue(2), 2, 0.5)
    for n in range(1, 11):
        s = schur.explicit(random_delta(rng, n))
        u = np.exp(1j * rng.uniform(0, 6.3))
        tau = Q.tau_from_u(s, n, u)
        assert abs(abs(tau) - 1) < 1e-13
        assert Q.u_from_tau(s, n, tau) == pytest.approx(u, abs=1e-13)
        assert Q.para_orthogonal_tau(s, n, tau).max_diff(Q.para_orthogonal(s, n, u)) < 1e-12


def test_para_laurent_examples(rng):
    r = Q.para_laurent(schur.lebesgue(2), O.balanced("floor_half", 2), 2, 1.0)
    np.testing.assert_allclose(np.sort_complex(r.roots()), [-1j, 1j], atol=1e-12)
    u = np.exp(2j)
    r1 = Q.para_laurent(schur.explicit([0.3 + 0.1j]), O.balanced("ceil_half", 1), 1, u)
    assert abs(r1.roots()[0] + u) < 1e-12
    with pytest.raises(DomainError):
        Q.para_laurent(schur.lebesgue(3), O.poly(3), 2)
    for n in range(1, 13):
        s = schur.explicit(random_delta(rng, n))
        u = np.exp(1j * rng.uniform(0, 6.3))
        for kind in ("floor_half", "ceil_half"):
            a = np.sort_complex(Q.para_laurent(s, O.balanced(kind, n), n, u).roots())
            b = np.sort_complex(Q.para_orthogonal(s, n, u).roots())
            assert np.max(np.abs(a - b)) < 1e-10


def test_table3_examples():
    s = schur.rogers_szego(0.5, 10)
    for rule in (Q.rule_via_hessenberg(s, 10), Q.rule_via_cmv(s, 10)):
        j = np.argmin(np.abs(rule.nodes - complex(0.965879, 0.258994)))
        assert abs(rule.nodes[j] - complex(0.965879, 0.258994)) < 1e-4
        assert abs(rule.weights[j] - 0.239274) < 1e-4
        j = np.argmin(np.abs(rule.nodes - complex(-0.842988, 0.537932)))
        assert abs(rule.weights[j] - 0.00312009) < 1e-4


def test_table8_minus_one():
    rule = Q.rule_via_cmv(schur.rogers_szego(0.5, 11), 11)
    assert abs(rule.nodes[-1] + 1) < 1e-12
    assert abs(rule.weights[-1] - 0.00105402) < 1e-6


def test_lebesgue_rules():
    for n in (3, 5, 8):
        for method in Q.ROUTES:
            rule = Q.compute_rule(schur.lebesgue(n), n, 1.0, method)
            np.testing.assert_allclose(rule.nodes**n, -1, atol=1e-12)
            np.testing.assert_allclose(rule.weights, 1 / n, atol=1e-12)


def test_table2_roots_route():
    rule = Q.rule_via_roots(schur.rogers_szego(0.25, 10), n=10)
    j = np.argmin(np.abs(rule.nodes - complex(0.959239, 0.282596)))
    assert abs(rule.weights[j] - 0.188665) < 1e-4
    a, b = Q.match_rules(rule, Q.rule_via_cmv(schur.rogers_szego(0.25, 10), 10))
    assert a < 1e-12 and b < 1e-12


@pytest.mark.parametrize("kind", ["floor_half", "ceil_half"])
def test_dual_weight_formulas(rng, kind):
    for n in range(1, 13):
        s = schur.explicit(random_delta(rng, n, 0.8))
        g = O.balanced(kind, n)
        z = Q.rule_via_cmv(s, n, np.exp(1j)).nodes
        w1 = Q.christoffel_weights(s, g, n, z)
        w2 = Q.derivative_weights(s, g, n, z)
        np.testing.assert_allclose(w2, w1, rtol=1e-9)


def test_derivative_formula_any_point_and_ordering(rng):
    # Christoffel-Darboux on the circle: holds off the nodes too, and for any ordering
    s = schur.explicit(random_delta(rng, 8, 0.7))
    z = np.exp(1j * rng.uniform(-3, 3, 20))
    ref = Q.christoffel_weights(s, O.poly(8), 8, z)
    for steps in ((0,) * 8, (1, 1, 0, 1, 0, 0, 1, 1), (1,) * 8):
        g = O.from_steps(steps)
        np.testing.assert_allclose(Q.christoffel_weights(s, g, 8, z), ref, rtol=1e-12)
        np.testing.assert_allclose(Q.derivative_weights(s, g, 8, z), ref, rtol=1e-9)


@given(st.integers(1, 32), st.integers(0, 2**32 - 1), unit)
def test_three_route_agreement(n, seed, u):
    s = schur.explicit(random_delta(np.random.default_rng(seed), n))
    rules = [Q.compute_rule(s, n, u, m) for m in Q.ROUTES]
    for r in rules:
        check_invariants(r)
    for r in rules[1:]:
        dz, dw = Q.match_rules(rules[0], r)
        assert dz <= 1e-9 and dw <= 1e-8


@given(st.integers(1, 24), st.integers(0, 2**32 - 1), unit)
def test_against_numpy_oracle(n, seed, u):
    d = random_delta(np.random.default_rng(seed), n)
    z, w = oracle.rule(d[: n - 1], u)
    rule = Q.rule_via_cmv(schur.explicit(d), n, u)
    ref = Q.QuadratureRule(z, w, u, "oracle", n)
    dz, dw = Q.match_rules(rule, ref)
    assert dz < 1e-10 and dw < 1e-10


@pytest.mark.parametrize("q", [0.1, 0.25, 0.5, 0.75, 0.9])
def test_apply_and_exactness(q):
    n = 10
    s = schur.rogers_szego(q, n)
    m = ms.moments_numeric(ms.rogers_szego_measure(q), n)
    rule = Q.rule_via_cmv(s, n)
    assert Q.apply(rule, lambda z: np.ones_like(z)) == pytest.approx(1.0, abs=1e-13)
    for k in range(-(n - 1), n):
        assert abs(Q.apply(rule, lambda z: z**k) - q ** (k * k / 2)) < 1e-9
    rep = Q.verify_exactness(rule, m)
    assert rep.passed and rep.max_error < 1e-9
    assert Q.moment_gap(rule, m, n) > 1e-6


def test_apply_scalar_function():
    rule = Q.rule_via_cmv(schur.lebesgue(4), 4)
    assert Q.apply(rule, lambda z: 2.0) == pytest.approx(2.0)


def test_verify_exactness_controls():
    s = schur.lebesgue(6)
    rule = Q.rule_via_cmv(s, 6)
    assert Q.verify_exactness(rule, ms.lebesgue_moments(6), tol=1e-12).passed
    w = rule.weights.copy()
    w[0] += 1e-6
    bad = Q.QuadratureRule(rule.nodes, w, rule.u, rule.route, rule.n)
    assert not Q.verify_exactness(bad, ms.lebesgue_moments(6)).passed
    with pytest.raises(MomentRangeExceeded):
        Q.verify_exactness(rule, ms.lebesgue_moments(3))


def test_u_family_sweep(rng):
    n = 9
    s = schur.explicit(random_delta(rng, n, 0.8))
    m = ms.moments_from_schur(s, n - 1)
    for t in range(16):
        u = np.exp(2j * math.pi * t / 16)
        rule = Q.rule_via_cmv(s, n, u)
        check_invariants(rule)
        assert Q.verify_exactness(rule, m).passed


@pytest.mark.parametrize("q", [0.1, 0.5, 0.9])
def test_u_family_sweep_rs(q):
    n = 10
    s = schur.rogers_szego(q, n)
    m = ms.moments_numeric(ms.rogers_szego_measure(q), n)
    for t in range(16):
        rule = Q.compute_rule(s, n, np.exp(2j * math.pi * t / 16), "roots")
        assert Q.verify_exactness(rule, m).passed


@pytest.mark.parametrize("q", [0.25, 0.75])
def test_conjugate_pair_weights(q):
    for n in (10, 11):
        rule = Q.rule_via_cmv(schur.rogers_szego(q, n), n)
        for z, w in zip(rule.nodes, rule.weights):
            j = np.argmin(np.abs(rule.nodes - np.conj(z)))
            assert abs(rule.weights[j] - w) < 1e-10


def test_mu0_scaling():
    s = schur.rogers_szego(0.5, 8)
    a, b = Q.rule_via_cmv(s, 8), Q.rule_via_cmv(s, 8, mu0=2.5)
    np.testing.assert_allclose(b.weights, 2.5 * a.weights)
    r = Q.rule_via_roots(s, n=8, mu0=2.5)
    np.testing.assert_allclose(r.weights, b.weights, rtol=1e-12)


def test_serialization():
    rule = Q.rule_via_cmv(schur.rogers_szego(0.5, 5), 5, np.exp(0.5j))
    back = Q.QuadratureRule.from_json(rule.to_json())
    assert Q.match_rules(rule, back) == (pytest.approx(0, abs=1e-14), pytest.approx(0, abs=1e-14))
    assert back.to_json() == rule.to_json()
    csv = rule.to_csv().splitlines()
    assert csv[0] == "node_re,node_im,weight" and len(csv) == 6
    assert np.all(np.diff(rule.angles) > 0)


def test_unknown_method():
    with pytest.raises(DomainError):
        Q.compute_rule(schur.lebesgue(3), 3, 1.0, "gauss")
