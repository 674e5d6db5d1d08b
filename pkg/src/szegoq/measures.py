"""Measures on the unit circle, their moments, and the moment pairing.

Conventions: ``dmu = omega(theta) dtheta / (2 pi)``, so mu_0 = 1 for the
probability normalization, and

    mu_k = (1/2pi) int exp(-i k theta) omega(theta) dtheta,
    <f, g> = int f conj(g) dmu,   <z^a, z^b> = mu_{b-a},
    int z^j dmu = mu_{-j}.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError, MomentRangeExceeded, NoConvergence
from .laurent import LaurentPoly
from .schur import SchurSequence


# -- moment tables ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class MomentTable:
    """mu_0..mu_K; negative indices come from mu_{-k} = conj(mu_k)."""

    mu: np.ndarray = field(repr=False)
    source: str = "exact"

    def __post_init__(self):
        m = np.array(self.mu, dtype=complex).ravel()
        if m.size == 0:
            raise DomainError("moment table needs at least mu_0")
        m.setflags(write=False)
        object.__setattr__(self, "mu", m)

    @property
    def K(self) -> int:
        return len(self.mu) - 1

    @property
    def mu0(self) -> float:
        return float(self.mu[0].real)

    def __getitem__(self, k: int) -> complex:
        k = int(k)
        if abs(k) > self.K:
            raise MomentRangeExceeded(f"mu_{k} requested, table covers |k| <= {self.K}")
        v = self.mu[abs(k)]
        return complex(v if k >= 0 else np.conj(v))

    def full(self, K: int | None = None) -> np.ndarray:
        """mu_{-K}..mu_K as an array."""
        K = self.K if K is None else K
        if K > self.K:
            raise MomentRangeExceeded(f"need |k| <= {K}, table covers {self.K}")
        pos = self.mu[: K + 1]
        return np.concatenate([np.conj(pos[:0:-1]), pos])

    def toeplitz(self, m: int) -> np.ndarray:
        """Gram matrix ``T[a, b] = <z^a, z^b> = mu_{b-a}`` for a, b < m."""
        idx = np.arange(m)
        diff = idx[None, :] - idx[:, None]
        return self.full(m - 1)[diff + (m - 1)]

    def toeplitz_minors_positive(self, upto: int = 8) -> bool:
        upto = min(upto, self.K + 1)
        return all(np.linalg.det(self.toeplitz(m)).real > 0 for m in range(1, upto + 1))

    def max_diff(self, other: MomentTable, K: int | None = None) -> float:
        K = min(self.K, other.K) if K is None else K
        return float(np.max(np.abs(self.mu[: K + 1] - other.mu[: K + 1])))

    def to_dict(self) -> dict:
        return {"K": self.K, "mu": [[float(c.real), float(c.imag)] for c in self.mu]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, s: str) -> MomentTable:
        d = json.loads(s)
        mu = [complex(re, im) for re, im in d["mu"]]
        if len(mu) != int(d["K"]) + 1:
            raise DomainError("moment JSON: K does not match the length of mu")
        return cls(np.array(mu), "json")


def lebesgue_moments(K: int, mu0: float = 1.0) -> MomentTable:
    m = np.zeros(K + 1, dtype=complex)
    m[0] = mu0
    return MomentTable(m, "exact")


def rs_moments_closed(q: float, K: int) -> MomentTable:
    """mu_k = q^(k^2/2): a regression value checked against the numeric oracle."""
    k = np.arange(K + 1)
    return MomentTable(np.exp(0.5 * k**2 * math.log(q)).astype(complex), "closed_form")


# -- Rogers-Szego weight ---------------------------------------------------


def theta_terms(q: float) -> int:
    """Images taken on each side of the wrapped Gaussian.

    The max of ceil(4/sqrt(log(1/q))) + 2 and a bound that pushes the first
    omitted image below 1e-16 relative for every theta in [-pi, pi]; the
    first expression alone is too small once log(1/q) is large.
    """
    sig2 = math.log(1.0 / q)
    a = math.ceil(4.0 / math.sqrt(sig2)) + 2
    b = math.ceil((math.sqrt(74.0 * sig2) + math.pi) / (2 * math.pi)) + 1
    return max(a, b)


def rs_weight(theta, q: float, terms: int | None = None):
    """Wrapped-Gaussian density; averages to 1 over [-pi, pi] against dtheta/2pi."""
    if not 0.0 < q < 1.0:
        raise DomainError(f"q must lie in (0, 1), got {q}")
    if terms is None:
        terms = theta_terms(q)
    if terms < 1:
        raise DomainError("terms >= 1 required")
    th = np.asarray(theta, dtype=float)
    sig2 = math.log(1.0 / q)
    j = np.arange(-terms, terms + 1)
    x = th[..., None] - 2 * math.pi * j
    val = np.exp(-(x**2) / (2 * sig2)).sum(axis=-1) * (2 * math.pi / math.sqrt(2 * math.pi * sig2))
    return val[()] if val.ndim == 0 else val


# -- measures and numeric moments -----------------------------------------


@dataclass(frozen=True)
class Measure:
    kind: str  # "lebesgue" | "rogers_szego"
    q: float | None = None

    def __post_init__(self):
        if self.kind == "rogers_szego":
            if self.q is None or not 0.0 < self.q < 1.0:
                raise DomainError(f"Rogers-Szego measure needs 0 < q < 1, got {self.q}")
        elif self.kind != "lebesgue":
            raise DomainError(f"unknown measure {self.kind!r}")

    def weight(self, theta):
        if self.kind == "lebesgue":
            return np.ones_like(np.asarray(theta, dtype=float))
        return rs_weight(theta, self.q)

    def schur(self, N: int) -> SchurSequence:
        from . import schur

        return schur.lebesgue(N) if self.kind == "lebesgue" else schur.rogers_szego(self.q, N)

    def __str__(self) -> str:
        return "lebesgue" if self.kind == "lebesgue" else f"rogers_szego(q={self.q})"


LEBESGUE = Measure("lebesgue")


def rogers_szego_measure(q: float) -> Measure:
    return Measure("rogers_szego", q)


def _trapezoid_moments(measure: Measure, K: int, M: int) -> np.ndarray:
    th = -math.pi + 2 * math.pi * np.arange(M) / M
    w = measure.weight(th)
    k = np.arange(K + 1)
    return (np.exp(-1j * np.outer(k, th)) @ w) / M


def moments_numeric(
    measure: Measure, K: int, tol: float = 1e-14, max_points: int = 1 << 16
) -> MomentTable:
    """Periodic trapezoid rule, grid doubled until successive sweeps agree to ``tol``."""
    if K < 0:
        raise DomainError("K >= 0 required")
    M = 64
    while M < 4 * (K + 1):
        M *= 2
    prev = _trapezoid_moments(measure, K, M)
    while True:
        M *= 2
        if M > max_points:
            raise NoConvergence(f"moments did not settle to {tol} with {max_points} points")
        cur = _trapezoid_moments(measure, K, M)
        if np.max(np.abs(cur - prev)) < tol:
            cur[0] = cur[0].real
            return MomentTable(cur, f"numeric({tol:g})")
        prev = cur


def moments_from_schur(s: SchurSequence, K: int, mu0: float = 1.0) -> MomentTable:
    """Moments recovered from an exact (K+1)-node rule built from delta_1..delta_K.

    The rule integrates z^j exactly for |j| <= K, so mu_k = I(z^-k).
    """
    from .quadrature import rule_via_cmv

    if K < 0:
        raise DomainError("K >= 0 required")
    if K > s.N:
        raise MomentRangeExceeded(f"moments up to {K} need delta_1..delta_{K}, have N={s.N}")
    if K == 0:
        return MomentTable(np.array([mu0], dtype=complex), "schur_bootstrap")
    rule = rule_via_cmv(s, K + 1, 1.0, mu0=mu0)
    k = np.arange(K + 1)
    mu = (rule.nodes[None, :] ** (-k[:, None])) @ rule.weights
    mu[0] = mu0
    return MomentTable(mu, "schur_bootstrap")


# -- pairing ----------------------------------------------------------------


def functional(f: LaurentPoly, m: MomentTable) -> complex:
    """int f dmu = sum_j f_j mu_{-j}."""
    if f.is_zero():
        return 0j
    if max(abs(f.lo), abs(f.hi)) > m.K:
        raise MomentRangeExceeded(f"exponents {f.lo}..{f.hi} exceed moment range {m.K}")
    full = m.full()
    j = np.arange(f.lo, f.hi + 1)
    return complex(f.coeffs @ full[m.K - j])


def inner_product(f: LaurentPoly, g: LaurentPoly, m: MomentTable) -> complex:
    """<f, g> = sum c_a conj(d_b) mu_{b-a}."""
    if f.is_zero() or g.is_zero():
        return 0j
    return functional(f * g.substar(), m)


def gram_matrix(family: Sequence[LaurentPoly], m: MomentTable) -> np.ndarray:
    n = len(family)
    G = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i, n):
            G[i, j] = inner_product(family[i], family[j], m)
            G[j, i] = np.conj(G[i, j])
    return G


def inner_product_on_grid(f: LaurentPoly, g: LaurentPoly, measure: Measure, points: int | None = None) -> complex:
    """<f, g> by the periodic trapezoid rule on the measure's weight.

    Avoids the moment expansion, whose cancellation costs about
    eps * (sum |f_j|) * (sum |g_j|); here the loss is linear in those sums.
    """
    if f.is_zero() or g.is_zero():
        return 0j
    spread = max(abs(f.lo), abs(f.hi)) + max(abs(g.lo), abs(g.hi))
    M = points or max(256, 1 << int(math.ceil(math.log2(4 * (spread + 1)))))
    th = -math.pi + 2 * math.pi * np.arange(M) / M
    z = np.exp(1j * th)
    return complex(np.sum(measure.weight(th) * f.eval(z) * np.conj(g.eval(z))) / M)


def gram_matrix_on_grid(family: Sequence[LaurentPoly], measure: Measure, points: int | None = None) -> np.ndarray:
    spread = 2 * max(max(abs(p.lo), abs(p.hi)) for p in family)
    M = points or max(256, 1 << int(math.ceil(math.log2(4 * (spread + 1)))))
    th = -math.pi + 2 * math.pi * np.arange(M) / M
    z = np.exp(1j * th)
    V = np.array([p.eval(z) if not p.is_zero() else np.zeros(M, complex) for p in family])
    return (V * measure.weight(th)) @ V.conj().T / M
