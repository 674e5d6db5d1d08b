"""Szego quadrature rules on the unit circle.

An n-node rule with parameter ``u`` (|u| = 1) has as nodes the zeros of the
para-orthogonal polynomial ``P_n(z, u) = z rho_{n-1} + u rho_{n-1}^*`` and is
exact on span{z^j : |j| <= n-1}. Three routes compute it:

* ``hessenberg``: eigen-decomposition of the unitary Hessenberg truncation;
* ``cmv``: eigen-decomposition of the five-diagonal CMV truncation;
* ``roots``: polished roots of P_n with Christoffel weights, cross-checked
  against the derivative weight formula.

The eigen routes take weights ``mu0 * |first eigenvector component|^2``.
"""

from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import opmatrix
from .eigen import eigen_full
from .errors import DomainError, IndexOutOfRange, RootPolishDiverged, WeightFormulaMismatch
from .laurent import LaurentPoly
from .ordering import GeneratingSequence, balanced
from .recurrences import ORTHONORMAL, laurent_from_szego, szego_family
from .schur import SchurSequence

ROUTES = ("hessenberg", "cmv", "roots")
WEIGHT_XCHECK_TOL = 1e-9
EPS = np.finfo(float).eps


def _angle(z: np.ndarray) -> np.ndarray:
    a = np.angle(z)
    # keep -1 at +pi so the order lives in (-pi, pi]
    return np.where(a <= -math.pi + 1e-12, math.pi, a)


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    nodes: np.ndarray = field(repr=False)
    weights: np.ndarray = field(repr=False)
    u: complex
    route: str
    n: int
    mu0: float = 1.0

    def __post_init__(self):
        z = np.asarray(self.nodes, dtype=complex).ravel()
        w = np.asarray(self.weights, dtype=float).ravel()
        if z.shape != w.shape:
            raise DomainError("nodes and weights differ in length")
        order = np.argsort(_angle(z), kind="stable")
        z, w = z[order], w[order]
        z.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "nodes", z)
        object.__setattr__(self, "weights", w)

    @property
    def angles(self) -> np.ndarray:
        return _angle(self.nodes)

    def __len__(self) -> int:
        return len(self.nodes)

    def to_dict(self, digits: int = 15) -> dict:
        def f(x: float) -> float:
            return float(f"{x:.{digits}g}") + 0.0  # drop signed zeros

        return {
            "n": self.n,
            "u": [f(self.u.real), f(self.u.imag)],
            "route": self.route,
            "nodes": [[f(z.real), f(z.imag)] for z in self.nodes],
            "weights": [f(w) for w in self.weights],
        }

    def to_json(self, digits: int = 15) -> str:
        return json.dumps(self.to_dict(digits))

    @classmethod
    def from_json(cls, s: str) -> QuadratureRule:
        d = json.loads(s)
        return cls(
            np.array([complex(a, b) for a, b in d["nodes"]]),
            np.array(d["weights"], dtype=float),
            complex(*d["u"]),
            d["route"],
            int(d["n"]),
        )

    def to_csv(self, digits: int = 9) -> str:
        buf = io.StringIO()
        buf.write("node_re,node_im,weight\n")
        for z, w in zip(self.nodes, self.weights):
            buf.write(f"{z.real + 0.0:.{digits}g},{z.imag + 0.0:.{digits}g},{w:.{digits}g}\n")
        return buf.getvalue()


# -- para-orthogonal polynomials ---------------------------------------------


def para_orthogonal(s: SchurSequence, n: int, u: complex = 1.0) -> LaurentPoly:
    """P_n(z, u) = z rho_{n-1} + u rho_{n-1}^*; monic of degree n."""
    u = opmatrix.check_unimodular(u)
    if n < 1:
        raise DomainError("n >= 1 required")
    rho, rstar = szego_family(s, n - 1)
    return rho[-1].shift_exp(1) + rstar[-1].scale(u)


def tau_from_u(s: SchurSequence, n: int, u: complex) -> complex:
    """tau_n with C_n (rho_n + tau_n rho_n^*) = P_n(z, u), C_n = 1/(1 + tau_n conj(delta_n))."""
    u = opmatrix.check_unimodular(u)
    d = s.d(n)
    return (u - d) / (1.0 - u * np.conj(d))


def u_from_tau(s: SchurSequence, n: int, tau: complex) -> complex:
    d = s.d(n)
    return (d + tau) / (1.0 + tau * np.conj(d))


def para_orthogonal_tau(s: SchurSequence, n: int, tau: complex) -> LaurentPoly:
    """C_n (rho_n + tau rho_n^*) for a unimodular ``tau``."""
    opmatrix.check_unimodular(tau)
    rho, rstar = szego_family(s, n)
    c = 1.0 / (1.0 + tau * np.conj(s.d(n)))
    return (rho[n] + rstar[n].scale(tau)).scale(c)


def para_laurent(s: SchurSequence, ord: GeneratingSequence, n: int, u: complex = 1.0) -> LaurentPoly:
    """R_n = eta_n chi_n + tau_n chi_{n-1} with tau_n = u - delta_n, conjugated when s(n) = 1.

    Shares its zeros with P_n(z, u) whenever s(n) != s(n-1) (always for the
    balanced orderings) or n = 1.
    """
    u = opmatrix.check_unimodular(u)
    if n < 1:
        raise DomainError("n >= 1 required")
    if n > 1 and ord.s(n) == ord.s(n - 1):
        raise DomainError(f"para_laurent needs s(n) != s(n-1); ordering has s({n}) = s({n - 1})")
    tau = u - s.d(n)
    if ord.s(n) == 1:
        tau = np.conj(tau)
    chi_n = laurent_from_szego(s, ord, n, ORTHONORMAL)
    chi_m = laurent_from_szego(s, ord, n - 1, ORTHONORMAL)
    return chi_n.scale(s.eta(n)) + chi_m.scale(tau)


# -- stable evaluation on sample points ---------------------------------------


def _szego_values(d: np.ndarray, z: np.ndarray, orthonormal: bool, deriv: bool):
    """Values (and z-derivatives) of phi_k, phi_k^* for k = 0..len(d) at ``z``."""
    m = len(d)
    P = np.ones((m + 1, z.size), dtype=complex)
    S = np.ones((m + 1, z.size), dtype=complex)
    dP = np.zeros_like(P)
    dS = np.zeros_like(S)
    for k in range(1, m + 1):
        dk = d[k - 1]
        c = 1.0 / math.sqrt(1.0 - abs(dk) ** 2) if orthonormal else 1.0
        zp = z * P[k - 1]
        P[k] = (zp + dk * S[k - 1]) * c
        S[k] = (np.conj(dk) * zp + S[k - 1]) * c
        if deriv:
            dzp = P[k - 1] + z * dP[k - 1]
            dP[k] = (dzp + dk * dS[k - 1]) * c
            dS[k] = (np.conj(dk) * dzp + dS[k - 1]) * c
    return P, S, dP, dS


def _magnitude_bounds(d: np.ndarray) -> tuple[float, float]:
    """Absolute-value majorants of phi_n and phi_n' on the circle.

    The recursion run on |delta_k| bounds every intermediate quantity, so
    (n * eps) times these is a running bound on the rounding error.
    """
    mp = ms = 1.0
    dmp = dms = 0.0
    for dk in np.abs(d):
        c = 1.0 / math.sqrt(1.0 - dk * dk)
        mp, ms, dmp, dms = (
            c * (mp + dk * ms),
            c * (dk * mp + ms),
            c * (mp + dmp + dk * dms),
            c * (dk * (mp + dmp) + dms),
        )
    return max(mp, ms), max(dmp, dms)


def laurent_values(
    s: SchurSequence, ord: GeneratingSequence, n: int, z, deriv: bool = False, delta_n=None
):
    """chi_0(z)..chi_n(z) (rows), optionally with chi_n'(z).

    chi_k is phi_k / z^p(k) or phi_k^* / z^p(k); evaluating through the Szego
    recursion avoids cancellation in large Laurent coefficients. ``delta_n``
    overrides the last parameter (handy when only delta_1..delta_{n-1} exist).
    """
    z = np.asarray(z, dtype=complex).ravel()
    if n > ord.N:
        raise IndexOutOfRange(f"ordering has N={ord.N}, degree {n} requested")
    if delta_n is None:
        d = np.array([s.d(k) for k in range(1, n + 1)], dtype=complex)
    else:
        d = np.concatenate([s.delta[: n - 1], [delta_n]])
    P, S, dP, dS = _szego_values(d, z, True, deriv)
    chi = np.empty_like(P)
    for k in range(n + 1):
        base = S[k] if ord.s(k) == 1 else P[k]
        chi[k] = base * z ** (-ord.p(k))
    if not deriv:
        return chi
    p = ord.p(n)
    g, dg = (S[n], dS[n]) if ord.s(n) == 1 else (P[n], dP[n])
    dchi = dg * z ** (-p) - p * g * z ** (-p - 1)
    return chi, dchi


def christoffel_weights(s: SchurSequence, ord: GeneratingSequence, n: int, z, mu0: float = 1.0):
    """mu0 / sum_{k<n} |chi_k(z)|^2."""
    chi = laurent_values(s, ord, n - 1, z)
    return mu0 / np.sum(np.abs(chi) ** 2, axis=0)


def derivative_weights(
    s: SchurSequence, ord: GeneratingSequence, n: int, z, mu0: float = 1.0, with_error: bool = False
):
    """mu0 (-1)^s(n) / (2 Re[z chi_n' conj(chi_n)] + (p(n) - q(n)) |chi_n|^2).

    The identity holds at every point of the circle whatever delta_n is, so
    delta_n = 0 stands in when the sequence stops at n - 1. With
    ``with_error`` a running bound on the relative rounding error of each
    weight is returned as well; it grows like prod (1+|delta_k|)/eta_k and
    limits how closely this formula can match the Christoffel sum.
    """
    z = np.asarray(z, dtype=complex).ravel()
    dn = s.d(n) if s.N >= n else 0.0
    chi, dchi = laurent_values(s, ord, n, z, deriv=True, delta_n=dn)
    cn = chi[n]
    den = 2.0 * np.real(z * dchi * np.conj(cn)) + (ord.p(n) - ord.q(n)) * np.abs(cn) ** 2
    w = mu0 * (-1) ** ord.s(n) / den
    if not with_error:
        return w
    d = np.concatenate([s.delta[: n - 1], [dn]])
    mg, mdg = _magnitude_bounds(d)
    p = ord.p(n)
    g = np.abs(cn)
    dg = np.abs(dchi) + p * g
    err_g, err_dg = 4 * n * EPS * mg, 4 * n * EPS * (mdg + p * mg)
    err_den = 2 * (dg * err_g + g * err_dg) + 2 * n * g * err_g + 4 * n * EPS * np.abs(den)
    return w, err_den / np.abs(den)


# -- routes -------------------------------------------------------------------


def _eigen_rule(M: opmatrix.OperatorMatrix, u, route: str, n: int, mu0: float) -> QuadratureRule:
    r = eigen_full(M)
    z = r.values / np.abs(r.values)
    return QuadratureRule(z, mu0 * np.abs(r.first_components) ** 2, complex(u), route, n, mu0)


def rule_via_hessenberg(s: SchurSequence, n: int, u: complex = 1.0, mu0: float = 1.0) -> QuadratureRule:
    u = opmatrix.check_unimodular(u)
    return _eigen_rule(opmatrix.hessenberg_truncated_u(s, n, u), u, "hessenberg", n, mu0)


def rule_via_cmv(s: SchurSequence, n: int, u: complex = 1.0, mu0: float = 1.0) -> QuadratureRule:
    u = opmatrix.check_unimodular(u)
    return _eigen_rule(opmatrix.cmv_truncated_u(s, n, u), u, "cmv", n, mu0)


def _p_values(d: np.ndarray, u: complex, z: np.ndarray):
    """P_n(z, u) and its derivative via the monic recursion on delta_1..delta_{n-1}."""
    P, S, dP, dS = _szego_values(d, z, False, True)
    val = z * P[-1] + u * S[-1]
    der = P[-1] + z * dP[-1] + u * dS[-1]
    return val, der


def polish_roots(s: SchurSequence, n: int, u: complex, z0: np.ndarray, maxit: int = 50) -> np.ndarray:
    """Newton on P_n(z, u) with projection onto |z| = 1 after every step."""
    d = np.asarray(s.delta[: n - 1], dtype=complex)
    z = np.asarray(z0, dtype=complex).copy()
    z = np.where(z == 0, 1.0, z)
    z /= np.abs(z)
    start = z.copy()
    for _ in range(maxit):
        val, der = _p_values(d, u, z)
        if np.any(der == 0):
            raise RootPolishDiverged("zero derivative during Newton polish")
        step = val / der
        z = z - step
        z /= np.abs(z)
        if np.max(np.abs(step)) < 1e-15:
            break
    else:
        if np.max(np.abs(step)) > 1e-10:
            raise RootPolishDiverged(f"Newton polish stalled, last step {np.max(np.abs(step)):.2e}")
    if n > 1:
        ang = np.sort(np.angle(z))
        gaps = np.diff(np.concatenate([ang, [ang[0] + 2 * math.pi]]))
        if np.min(gaps) < 1e-9:
            raise RootPolishDiverged("polished roots collapsed onto each other")
    if np.max(np.abs(z - start)) > 1e-2:
        raise RootPolishDiverged("polished roots drifted far from the companion estimates")
    return z


def rule_via_roots(
    s: SchurSequence,
    ord: GeneratingSequence | None = None,
    n: int | None = None,
    u: complex = 1.0,
    mu0: float = 1.0,
    xcheck_tol: float = WEIGHT_XCHECK_TOL,
) -> QuadratureRule:
    """Roots of P_n(z, u) with Christoffel weights (default ordering: floor_half)."""
    if n is None:
        raise DomainError("rule size n is required")
    u = opmatrix.check_unimodular(u)
    if ord is None:
        ord = balanced("floor_half", n)
    if n > s.N + 1:
        raise IndexOutOfRange(f"{n}-node rule needs delta_1..delta_{n - 1}, have N={s.N}")
    z = polish_roots(s, n, u, para_orthogonal(s, n, u).roots())
    w = christoffel_weights(s, ord, n, z, mu0)
    w2, rel_err = derivative_weights(s, ord, n, z, mu0, with_error=True)
    # the recursion behind the derivative formula can amplify rounding;
    # only demand agreement down to its running error bound
    tol = np.maximum(xcheck_tol, rel_err)
    bad = np.abs(w - w2) > tol * np.maximum(1.0, np.abs(w))
    if np.any(bad):
        j = int(np.argmax(bad))
        raise WeightFormulaMismatch(
            f"weight formulas disagree at node {z[j]:.6f}: {w[j]:.12g} vs {w2[j]:.12g}"
        )
    return QuadratureRule(z, w, u, "roots", n, mu0)


def compute_rule(
    s: SchurSequence,
    n: int,
    u: complex = 1.0,
    method: str = "cmv",
    ord: GeneratingSequence | None = None,
    mu0: float = 1.0,
) -> QuadratureRule:
    if method == "hessenberg":
        return rule_via_hessenberg(s, n, u, mu0)
    if method == "cmv":
        return rule_via_cmv(s, n, u, mu0)
    if method == "roots":
        return rule_via_roots(s, ord, n, u, mu0)
    raise DomainError(f"unknown method {method!r}; choose one of {ROUTES}")


# -- use ------------------------------------------------------------------------


def apply(rule: QuadratureRule, f: Callable) -> complex:
    """sum_j lambda_j f(z_j)."""
    try:
        vals = np.asarray(f(rule.nodes), dtype=complex)
        if vals.shape != rule.nodes.shape:
            raise ValueError
    except (TypeError, ValueError):
        vals = np.array([f(z) for z in rule.nodes], dtype=complex)
    return complex(rule.weights @ vals)


def monomial_integrals(rule: QuadratureRule, K: int) -> np.ndarray:
    """I_n(z^k) for k = -K..K."""
    k = np.arange(-K, K + 1)
    return (rule.nodes[None, :] ** k[:, None]) @ rule.weights


@dataclass(frozen=True)
class ExactnessReport:
    n: int
    max_error: float
    worst_k: int
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tol


def verify_exactness(rule: QuadratureRule, moments, tol: float = 1e-9) -> ExactnessReport:
    """Compare I_n(z^k) with int z^k dmu = mu_{-k} for |k| <= n - 1."""
    from .errors import MomentRangeExceeded

    K = rule.n - 1
    if moments.K < K:
        raise MomentRangeExceeded(f"exactness check needs |k| <= {K}, table covers {moments.K}")
    ks = np.arange(-K, K + 1)
    got = monomial_integrals(rule, K)
    want = np.array([moments[-k] for k in ks])
    err = np.abs(got - want)
    j = int(np.argmax(err))
    return ExactnessReport(rule.n, float(err[j]), int(ks[j]), tol)


def moment_gap(rule: QuadratureRule, moments, k: int) -> float:
    """|I_n(z^k) - mu_{-k}|; nonzero at k = n for a generic measure."""
    return abs(apply(rule, lambda z: z**k) - moments[-k])


def match_rules(a: QuadratureRule, b: QuadratureRule) -> tuple[float, float]:
    """(max node distance, max weight difference) after pairing nearest angles."""
    if len(a) != len(b):
        raise DomainError("rules differ in size")
    used = np.zeros(len(b), dtype=bool)
    dn = dw = 0.0
    for z, w in zip(a.nodes, a.weights):
        dist = np.where(used, np.inf, np.abs(b.nodes - z))
        j = int(np.argmin(dist))
        used[j] = True
        dn = max(dn, float(dist[j]))
        dw = max(dw, abs(w - b.weights[j]))
    return dn, dw
