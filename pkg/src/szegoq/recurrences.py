"""Recurrences for Szego polynomials and orthogonal Laurent polynomials.

Routes implemented here:

* forward Szego recursion for the monic ``rho_n`` and reversed ``rho_n^*``;
* the correspondence that turns Szego polynomials into orthogonal Laurent
  polynomials for an arbitrary ordering (``rho_n / z^p(n)`` or
  ``rho_n^* / z^p(n)`` depending on the last step);
* the general three-term recurrence in z and 1/z, valid for any ordering
  provided ``delta_{n-1} != 0`` whenever ``s(n-2) == s(n-1)``;
* the explicit Rogers-Szego Laurent polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import (
    DomainError,
    IndexOutOfRange,
    QuasiDefiniteUnsupported,
    ZeroSchurParameterInDegenerateCase,
)
from .laurent import ONE, Z, LaurentPoly
from .ordering import GeneratingSequence
from .schur import SchurSequence, explicit

MONIC = "monic"
ORTHONORMAL = "orthonormal"


@dataclass(frozen=True)
class SzegoPair:
    rho: LaurentPoly
    rho_star: LaurentPoly
    norm_sq: float


# -- Szego recursion -------------------------------------------------------


def szego_family(s: SchurSequence, n: int) -> tuple[list[LaurentPoly], list[LaurentPoly]]:
    """Monic ``rho_0..rho_n`` and ``rho_0^*..rho_n^*``."""
    if n < 0 or n > s.N:
        raise IndexOutOfRange(f"degree {n} needs delta_1..delta_{n}, have N={s.N}")
    rho, rstar = [ONE], [ONE]
    for k in range(1, n + 1):
        d = s.d(k)
        zr = rho[-1].shift_exp(1)
        rho.append(zr + rstar[-1].scale(d))
        rstar.append(zr.scale(np.conj(d)) + rstar[-1])
    return rho, rstar


def szego_monic(s: SchurSequence, n: int) -> SzegoPair:
    rho, rstar = szego_family(s, n)
    return SzegoPair(rho[n], rstar[n], s.norm_sq(n))


def _require_positive(s: SchurSequence, n: int):
    if np.any(np.abs(s.delta[:n]) >= 1):
        raise QuasiDefiniteUnsupported("orthonormal polynomials need |delta_k| < 1")


def szego_orthonormal(s: SchurSequence, n: int) -> LaurentPoly:
    """``phi_n = rho_n / sqrt(e_n)``, leading coefficient positive."""
    _require_positive(s, n)
    pair = szego_monic(s, n)
    return pair.rho.scale(1.0 / math.sqrt(pair.norm_sq))


def szego_orthonormal_family(s: SchurSequence, n: int):
    """Orthonormal ``phi_k`` and ``phi_k^*`` for ``k = 0..n``."""
    _require_positive(s, n)
    rho, rstar = szego_family(s, n)
    e = np.concatenate([[1.0], np.cumprod(1.0 - np.abs(s.delta[:n]) ** 2)])
    inv = 1.0 / np.sqrt(e)
    return [r.scale(c) for r, c in zip(rho, inv)], [r.scale(c) for r, c in zip(rstar, inv)]


# -- Laurent <-> Szego correspondence -------------------------------------


def laurent_family(
    s: SchurSequence, ord: GeneratingSequence, n: int, variant: str = MONIC
) -> list[LaurentPoly]:
    """Orthogonal Laurent polynomials ``0..n`` for ``ord`` via the Szego family."""
    if n > ord.N:
        raise IndexOutOfRange(f"ordering has only {ord.N} steps, degree {n} requested")
    if variant == MONIC:
        rho, rstar = szego_family(s, n)
    elif variant == ORTHONORMAL:
        rho, rstar = szego_orthonormal_family(s, n)
    else:
        raise DomainError(f"unknown variant {variant!r}")
    out = []
    for k in range(n + 1):
        base = rstar[k] if ord.s(k) == 1 else rho[k]
        out.append(base.shift_exp(-ord.p(k)))
    return out


def laurent_from_szego(
    s: SchurSequence, ord: GeneratingSequence, n: int, variant: str = MONIC
) -> LaurentPoly:
    return laurent_family(s, ord, n, variant)[n]


def substar_duality_check(
    s: SchurSequence, ord: GeneratingSequence, n: int, tol: float = 1e-12
) -> bool:
    """Family for the flipped ordering equals the substar of the family for ``ord``."""
    dual = ord.flipped()
    for variant in (MONIC, ORTHONORMAL):
        a = laurent_family(s, ord, n, variant)
        b = laurent_family(s, dual, n, variant)
        if any(x.substar().max_diff(y) > tol for x, y in zip(a, b)):
            return False
    return True


# -- general three-term recurrence -----------------------------------------


def _pw(x: complex, k: int) -> complex:
    return 1.0 if k == 0 else (x if k == 1 else 1.0 / x)


@dataclass(frozen=True)
class GeneralRecurrenceCoeffs:
    """Coefficients of

        phi_n = (A B + C z^e1) phi_{n-1} + sign D E lam_{n-1} z^e2 phi_{n-2}

    ``lam_{n-1}`` is ``eta_{n-1}^2`` in the monic form and is replaced by
    ``eta_{n-1}`` (with ``eta_n`` multiplying the left side) in the
    orthonormal form.
    """

    A: complex
    B: complex
    C: complex
    D: complex
    E: complex
    sign: int
    e1: int
    e2: int

    @property
    def alpha(self) -> complex:
        return self.A * self.B

    @property
    def beta(self) -> complex:
        return self.C

    @property
    def gamma(self) -> complex:
        return self.sign * self.D * self.E


def condensed_coeffs(
    steps: tuple[int, int, int], d_n: complex, d_n1: complex
) -> GeneralRecurrenceCoeffs:
    """A_n..E_n from the case formulas indexed by (s(n), s(n-1), s(n-2))."""
    sn, sn1, sn2 = steps
    cd1 = np.conj(d_n1)
    if sn != sn1:
        A = 1.0
    elif sn2 == 0:
        A = _pw(d_n1, 2 * sn - 1)
    else:
        A = _pw(cd1, 1 - 2 * sn)
    B = d_n if sn == 0 else np.conj(d_n)
    if sn == sn1:
        C = 1.0
    elif sn2 == 0:
        C = _pw(d_n1, sn1 - sn)
    else:
        C = _pw(cd1, sn - sn1)
    if sn1 == sn == 0:
        D = d_n
    elif sn1 == sn == 1:
        D = np.conj(d_n)
    else:
        D = 1.0
    if sn2 == sn1 == 0:
        E = 1.0 / d_n1
    elif sn2 == sn1 == 1:
        E = 1.0 / cd1
    else:
        E = 1.0
    sign = -1 if (1 + sn2 - sn1) % 2 else 1
    return GeneralRecurrenceCoeffs(A, B, C, D, E, sign, 1 - 2 * sn, 1 - sn - sn2)


def explicit_case(
    steps: tuple[int, int, int], d_n: complex, d_n1: complex
) -> tuple[complex, complex, int, complex, int]:
    """``(alpha, beta, e1, gamma, e2)`` written out for each of the eight cases.

    phi_n = (alpha + beta z^e1) phi_{n-1} + gamma lam_{n-1} z^e2 phi_{n-2}
    """
    c, c1 = np.conj(d_n), np.conj(d_n1)
    table = {
        (0, 0, 0): lambda: (d_n / d_n1, 1.0, 1, -d_n / d_n1, 1),
        (0, 0, 1): lambda: (d_n * c1, 1.0, 1, d_n, 0),
        (0, 1, 0): lambda: (d_n, d_n1, 1, 1.0, 1),
        (0, 1, 1): lambda: (d_n, 1.0 / c1, 1, -1.0 / c1, 0),
        (1, 0, 0): lambda: (c, 1.0 / d_n1, -1, -1.0 / d_n1, 0),
        (1, 0, 1): lambda: (c, c1, -1, 1.0, -1),
        (1, 1, 0): lambda: (c * d_n1, 1.0, -1, c, 0),
        (1, 1, 1): lambda: (c / c1, 1.0, -1, -c / c1, -1),
    }
    return table[steps]()


def _step_coeffs(s: SchurSequence, ord: GeneratingSequence, n: int):
    steps = (ord.s(n), ord.s(n - 1), ord.s(n - 2))
    d_n, d_n1 = s.d(n), s.d(n - 1)
    if steps[1] == steps[2] and d_n1 == 0:
        raise ZeroSchurParameterInDegenerateCase(
            f"s({n - 2}) == s({n - 1}) needs delta_{n - 1} != 0"
        )
    alpha, beta, e1, gamma, e2 = explicit_case(steps, d_n, d_n1)
    if __debug__:
        cc = condensed_coeffs(steps, d_n, d_n1)
        assert (cc.e1, cc.e2) == (e1, e2), (steps, cc, e1, e2)
        for x, y in ((cc.alpha, alpha), (cc.beta, beta), (cc.gamma, gamma)):
            assert abs(x - y) <= 1e-12 * max(1.0, abs(y)), (steps, cc, alpha, beta, gamma)
    return alpha, beta, e1, gamma, e2


def _initial(s: SchurSequence, ord: GeneratingSequence) -> LaurentPoly:
    K1 = s.d(1) if ord.s(1) == 0 else np.conj(s.d(1))
    return LaurentPoly.const(K1) + LaurentPoly.monomial(1 - 2 * ord.s(1))


def three_term_family(
    s: SchurSequence, ord: GeneratingSequence, n: int, variant: str = MONIC
) -> list[LaurentPoly]:
    """``0..n`` computed only from the three-term recurrence."""
    if n > min(s.N, ord.N):
        raise IndexOutOfRange(f"degree {n} exceeds N (Schur N={s.N}, ordering N={ord.N})")
    if variant == ORTHONORMAL:
        _require_positive(s, n)
    elif variant != MONIC:
        raise DomainError(f"unknown variant {variant!r}")
    out = [ONE]
    if n == 0:
        return out
    phi1 = _initial(s, ord)
    if variant == ORTHONORMAL:
        phi1 = phi1.scale(1.0 / s.eta(1))
    out.append(phi1)
    for m in range(2, n + 1):
        alpha, beta, e1, gamma, e2 = _step_coeffs(s, ord, m)
        prev, prev2 = out[-1], out[-2]
        new = prev.scale(alpha) + prev.shift_exp(e1).scale(beta)
        if variant == MONIC:
            new = new + prev2.shift_exp(e2).scale(gamma * s.lam(m - 1))
        else:
            new = (new + prev2.shift_exp(e2).scale(gamma * s.eta(m - 1))).scale(1.0 / s.eta(m))
        out.append(new)
    return out


def three_term_general(
    s: SchurSequence, ord: GeneratingSequence, n: int, variant: str = MONIC
) -> LaurentPoly:
    return three_term_family(s, ord, n, variant)[n]


# -- recurrence on arbitrary parameters ------------------------------------


def _as_sequence(delta) -> SchurSequence:
    if isinstance(delta, SchurSequence):
        return delta
    return explicit(delta, quasi_definite=True)


def recurrence_without_orthogonality(delta, ord: GeneratingSequence, n: int):
    """Run the three-term recurrence on ``delta`` (only ``|delta_k| != 1`` needed).

    Returns ``(phi_n, F_n)`` where ``phi_n = N_n / z^p(n)`` and ``F_n`` is
    ``N_n`` if ``s(n) = 0`` or its reversal of degree n if ``s(n) = 1``.
    """
    s = _as_sequence(delta)
    phi = three_term_family(s, ord, n, MONIC)
    return phi[n], _F_from_phi(phi[n], ord, n)


def _F_from_phi(phi: LaurentPoly, ord: GeneratingSequence, n: int) -> LaurentPoly:
    N_n = phi.shift_exp(ord.p(n))
    return N_n.reversed(n) if ord.s(n) == 1 else N_n


def szego_shape_residual(delta, ord: GeneratingSequence, n: int) -> float:
    """Max coefficient residual of ``F_m = z F_{m-1} + delta_m F_{m-1}^*`` (and the
    reversed companion) over ``m = 1..n``, with F built from the three-term route."""
    s = _as_sequence(delta)
    phi = three_term_family(s, ord, n, MONIC)
    F = [_F_from_phi(phi[m], ord, m) for m in range(n + 1)]
    worst = 0.0
    for m in range(1, n + 1):
        d = s.d(m)
        Fs_prev = F[m - 1].reversed(m - 1)
        zF = F[m - 1].shift_exp(1)
        worst = max(
            worst,
            F[m].max_diff(zF + Fs_prev.scale(d)),
            F[m].reversed(m).max_diff(zF.scale(np.conj(d)) + Fs_prev),
        )
    return worst


# -- Favard check -----------------------------------------------------------


@dataclass(frozen=True)
class FavardReport:
    n_max: int
    max_offdiag: float
    min_diag: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_offdiag <= self.tol and self.min_diag > 0


def favard_verify(
    delta, ord: GeneratingSequence, n_max: int, mu0: float = 1.0, tol: float = 1e-10
) -> FavardReport:
    """Reconstruct the moment functional from ``delta`` and check the recurrence
    family is orthogonal (positive-definite branch: ``|delta| < 1``, ``mu0 > 0``)."""
    from .measures import gram_matrix, moments_from_schur

    s = _as_sequence(delta)
    if mu0 <= 0:
        raise DomainError("the testable Favard branch needs mu0 > 0")
    _require_positive(s, n_max)
    m = moments_from_schur(s, n_max, mu0=mu0)
    G = gram_matrix(three_term_family(s, ord, n_max, MONIC), m)
    off = G - np.diag(np.diag(G))
    return FavardReport(n_max, float(np.max(np.abs(off))), float(np.min(np.diag(G).real)), tol)


# -- Rogers-Szego closed forms ---------------------------------------------


def q_binomial(n: int, j: int, q: float) -> float:
    if not 0 < q < 1:
        raise DomainError("q must lie in (0, 1)")
    if not 0 <= j <= n:
        raise DomainError(f"need 0 <= j <= n, got n={n}, j={j}")
    num = math.prod(1.0 - q**i for i in range(n - j + 1, n + 1))
    den = math.prod(1.0 - q**i for i in range(1, j + 1))
    return num / den


@lru_cache(maxsize=256)
def _rs_coeffs(q: float, n: int) -> tuple[int, tuple[float, ...]]:
    rq = math.exp(0.5 * math.log(q))
    k = n // 2
    if n % 2 == 0:
        a = {k: 1.0}
        for j in range(k - 1, -k - 1, -1):
            a[j] = -a[j + 1] * rq * (1 - q ** (k + j + 1)) / (1 - q ** (k - j))
        return -k, tuple(a[j] for j in range(-k, k + 1))
    b = {-(k + 1): 1.0}
    for j in range(-(k + 1), k):
        b[j + 1] = -b[j] * rq * (1 - q ** (k - j)) / (1 - q ** (k + j + 2))
    return -(k + 1), tuple(b[j] for j in range(-(k + 1), k + 1))


def rs_laurent_explicit(q: float, n: int) -> LaurentPoly:
    """Monic Rogers-Szego Laurent polynomial for the ordering p(n) = floor((n+1)/2)."""
    if not 0 < q < 1:
        raise DomainError("q must lie in (0, 1)")
    if n < 0:
        raise DomainError("n >= 0 required")
    lo, c = _rs_coeffs(float(q), int(n))
    return LaurentPoly(lo, np.array(c, dtype=complex))


def rs_laurent_binomial(q: float, n: int) -> LaurentPoly:
    """Same polynomial summed term by term from q-binomial coefficients."""
    rq = math.exp(0.5 * math.log(q))
    k = n // 2
    terms = {}
    if n % 2 == 0:
        for j in range(-k, k + 1):
            terms[j] = (-1) ** (j + k) * q_binomial(2 * k, j + k, q) * rq ** (k - j)
    else:
        for j in range(-(k + 1), k + 1):
            terms[j] = (-1) ** (j + k + 1) * q_binomial(2 * k + 1, k - j, q) * rq ** (j + k + 1)
    return LaurentPoly.from_dict(terms)


def leading_trailing(phi: LaurentPoly, ord: GeneratingSequence, n: int) -> tuple[complex, complex]:
    """(leading, trailing) coefficients with respect to the ordering.

    Leading sits at z^q(n) when s(n) = 0 and at z^-p(n) when s(n) = 1; the
    trailing coefficient is the one at the other end of the window.
    """
    lo, hi = ord.window(n)
    if ord.s(n) == 0:
        return phi.coeff(hi), phi.coeff(lo)
    return phi.coeff(lo), phi.coeff(hi)


def families_max_diff(a: Sequence[LaurentPoly], b: Sequence[LaurentPoly]) -> float:
    return max(x.max_diff(y) for x, y in zip(a, b))
