"""Matrix representations of multiplication by z.

All matrices are dense and 0-based; ``delta_0 = 1``. Row r holds the
expansion of ``z chi_r`` in the orthonormal basis, so entry ``[r, c]`` is
``<z chi_r, chi_c>``.
"""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import BandViolation, DomainError, IndexOutOfRange, InsufficientLookahead, NonUnimodularU
from .ordering import GeneratingSequence, band_widths
from .schur import SchurSequence

UNIT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    entries: np.ndarray = field(repr=False)
    kind: str

    def __post_init__(self):
        a = np.array(self.entries, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DomainError(f"operator matrix must be square, got {a.shape}")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.array(self.entries, dtype=dtype)

    def __matmul__(self, other: OperatorMatrix) -> np.ndarray:
        return self.entries @ np.asarray(other)

    def transpose(self, kind: str | None = None) -> OperatorMatrix:
        return OperatorMatrix(self.entries.T, kind or f"{self.kind}_T")

    def adjoint(self, kind: str | None = None) -> OperatorMatrix:
        return OperatorMatrix(self.entries.conj().T, kind or f"{self.kind}_H")

    def unitarity_defect(self) -> float:
        a = self.entries
        return float(np.max(np.abs(a @ a.conj().T - np.eye(self.n))))

    def nonzero_offsets(self, tol: float = 1e-13) -> list[int]:
        """Offsets ``c - r`` of diagonals holding at least one entry above ``tol``."""
        r, c = np.nonzero(np.abs(self.entries) > tol)
        return sorted(set((c - r).tolist()))

    def diagonal_count(self, tol: float = 1e-13) -> int:
        offs = self.nonzero_offsets(tol)
        return 0 if not offs else offs[-1] - offs[0] + 1

    def max_diff(self, other) -> float:
        return float(np.max(np.abs(self.entries - np.asarray(other))))

    # io ------------------------------------------------------------------
    def to_dict(self, digits: int = 15) -> dict:
        def f(x: float) -> float:
            return float(f"{x:.{digits}g}") + 0.0  # drop signed zeros

        return {
            "n": self.n,
            "kind": self.kind,
            "entries": [[[f(z.real), f(z.imag)] for z in row] for row in self.entries],
        }

    def to_json(self, digits: int = 15) -> str:
        return json.dumps(self.to_dict(digits))

    @classmethod
    def from_json(cls, s: str) -> OperatorMatrix:
        d = json.loads(s)
        a = np.array([[complex(re, im) for re, im in row] for row in d["entries"]])
        if a.shape != (d["n"], d["n"]):
            raise DomainError("matrix JSON: n does not match entries")
        return cls(a, d["kind"])

    def to_csv(self, digits: int = 9) -> str:
        buf = io.StringIO()
        buf.write(",".join(f"c{j}_re,c{j}_im" for j in range(self.n)) + "\n")
        for row in self.entries:
            buf.write(",".join(f"{z.real + 0.0:.{digits}g},{z.imag + 0.0:.{digits}g}" for z in row) + "\n")
        return buf.getvalue()


def check_unimodular(u: complex) -> complex:
    u = complex(u)
    if abs(abs(u) - 1.0) > UNIT_TOL:
        raise NonUnimodularU(f"|u| = {abs(u):.17g}, expected 1")
    return u / abs(u)


def _need(s: SchurSequence, n: int, have: int):
    if n < 1:
        raise DomainError("matrix size n >= 1 required")
    if have > s.N:
        raise IndexOutOfRange(f"size {n} needs delta_1..delta_{have}, sequence has N={s.N}")


# -- Hessenberg --------------------------------------------------------------


def _hessenberg_from(d: np.ndarray, eta: np.ndarray) -> np.ndarray:
    """``d`` holds delta_1..delta_n, ``eta`` holds eta_1..eta_{n-1}."""
    n = len(d)
    dd = np.concatenate([[1.0], d])  # dd[i] = delta_i
    ee = np.concatenate([[1.0], eta])  # ee[k] = eta_k
    H = np.zeros((n, n), dtype=complex)
    for i in range(n):
        prod = 1.0
        for j in range(i, -1, -1):
            H[i, j] = -np.conj(dd[j]) * dd[i + 1] * prod
            prod *= ee[j] if j >= 1 else 0.0
        if i + 1 < n:
            H[i, i + 1] = ee[i + 1]
    return H


def hessenberg(s: SchurSequence, n: int) -> OperatorMatrix:
    """Leading n x n block of the Hessenberg representation (uses delta_1..delta_n)."""
    _need(s, n, n)
    return OperatorMatrix(_hessenberg_from(s.delta[:n], s.etas()[: n - 1]), "hessenberg")


def hessenberg_truncated_u(s: SchurSequence, n: int, u: complex = 1.0) -> OperatorMatrix:
    """Unitary truncation U_n: delta_n replaced by the unimodular ``u``."""
    u = check_unimodular(u)
    _need(s, n, n - 1)
    d = np.concatenate([s.delta[: n - 1], [u]])
    return OperatorMatrix(_hessenberg_from(d, s.etas()[: n - 1]), "hessenberg_u")


# -- CMV ---------------------------------------------------------------------


def _cmv_factors_from(d: np.ndarray, eta: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Truncated factors; block Theta_k occupies rows/cols k-1, k.

    ``d`` holds delta_1..delta_n, ``eta`` eta_1..eta_{n-1}. Theta_n straddles
    the boundary and keeps only its top-left entry -delta_n.
    """
    n = len(d)
    L = np.zeros((n, n), dtype=complex)
    M = np.zeros((n, n), dtype=complex)
    L[0, 0] = 1.0
    for k in range(1, n + 1):
        F = L if k % 2 == 0 else M
        a = k - 1
        F[a, a] = -d[k - 1]
        if k < n:
            F[a, a + 1] = F[a + 1, a] = eta[k - 1]
            F[a + 1, a + 1] = np.conj(d[k - 1])
    return L, M


def cmv_factor(s: SchurSequence, n: int) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Tridiagonal block factors L (with the leading 1) and M, ``cmv = L @ M``."""
    _need(s, n, n)
    L, M = _cmv_factors_from(s.delta[:n], s.etas()[: n - 1])
    return OperatorMatrix(L, "cmv_factor_L"), OperatorMatrix(M, "cmv_factor_M")


def _cmv_from(d, eta) -> np.ndarray:
    L, M = _cmv_factors_from(d, eta)
    return L @ M


def cmv(s: SchurSequence, n: int) -> OperatorMatrix:
    _need(s, n, n)
    return OperatorMatrix(_cmv_from(s.delta[:n], s.etas()[: n - 1]), "cmv")


def cmv_truncated_u(s: SchurSequence, n: int, u: complex = 1.0) -> OperatorMatrix:
    """C_n(delta_1, ..., delta_{n-1}, u); unitary."""
    u = check_unimodular(u)
    _need(s, n, n - 1)
    d = np.concatenate([s.delta[: n - 1], [u]])
    return OperatorMatrix(_cmv_from(d, s.etas()[: n - 1]), "cmv_u")


def cmv_transpose_for_ceil_ordering(s: SchurSequence, n: int) -> OperatorMatrix:
    """Representation under p(n) = floor((n+1)/2): the transpose of :func:`cmv`."""
    return cmv(s, n).transpose("cmv_transpose")


def cmv_adjoint(s: SchurSequence, n: int) -> OperatorMatrix:
    """Multiplication by 1/z under p(n) = floor(n/2): the conjugate transpose of :func:`cmv`."""
    return cmv(s, n).adjoint("cmv_adjoint")


# -- arbitrary ordering --------------------------------------------------------


def band_limits(ord: GeneratingSequence, n: int) -> list[tuple[int, int]]:
    """Allowed column range ``(r - t, r + k)`` of each row r < n (clipped to the matrix)."""
    out = []
    for r in range(n):
        try:
            k, t = band_widths(ord, r)
        except InsufficientLookahead:
            k, t = n, r
        out.append((max(0, r - t), min(n - 1, r + k)))
    return out


def banded_general(
    s: SchurSequence,
    ord: GeneratingSequence,
    n: int,
    moments=None,
    band_tol: float = 1e-12,
) -> OperatorMatrix:
    """Entries ``<z chi_r, chi_c>`` for any ordering.

    With a ``moments`` table both Laurent polynomials are expanded and paired
    monomial by monomial. Without one, the pairing runs through the exact
    (n+1)-node rule built from delta_1..delta_n: the same functional as the
    bootstrapped moments, but evaluated on node values, which sidesteps the
    cancellation among large Laurent coefficients. Entries outside the
    predicted band must vanish to ``band_tol`` relative to the size of the
    pairing sum; they are then set to exactly zero.
    """
    from .measures import inner_product
    from .recurrences import ORTHONORMAL, laurent_family

    if n < 1:
        raise DomainError("matrix size n >= 1 required")
    chi = laurent_family(s, ord, n - 1, ORTHONORMAL)
    l1 = [float(np.sum(np.abs(c.coeffs))) for c in chi]
    if moments is None:
        from .quadrature import laurent_values, rule_via_cmv

        _need(s, n, n)
        rule = rule_via_cmv(s, n + 1, 1.0)
        V = laurent_values(s, ord, n - 1, rule.nodes)
        A = (V * (rule.weights * rule.nodes)) @ V.conj().T
        mu_max = 1.0
    else:
        zchi = [c.shift_exp(1) for c in chi]
        mu_max = float(np.max(np.abs(moments.mu)))
        A = np.zeros((n, n), dtype=complex)
        for r in range(n):
            for c in range(n):
                A[r, c] = inner_product(zchi[r], chi[c], moments)
    limits = band_limits(ord, n)
    for r, (lo, hi) in enumerate(limits):
        for c in list(range(lo)) + list(range(hi + 1, n)):
            scale = max(1.0, l1[r] * l1[c] * mu_max)
            if abs(A[r, c]) > band_tol * scale:
                raise BandViolation(
                    f"entry ({r}, {c}) = {A[r, c]:.3e} lies outside the band [{lo}, {hi}]"
                )
            A[r, c] = 0.0
    return OperatorMatrix(A, "banded_general")


def build(kind: str, s: SchurSequence, n: int, u: complex = 1.0, ord=None) -> OperatorMatrix:
    """Dispatch by kind name (used by the command line)."""
    if kind == "hessenberg":
        return hessenberg(s, n)
    if kind == "hessenberg_u":
        return hessenberg_truncated_u(s, n, u)
    if kind == "cmv":
        return cmv(s, n)
    if kind == "cmv_u":
        return cmv_truncated_u(s, n, u)
    if kind == "cmv_transpose":
        return cmv_transpose_for_ceil_ordering(s, n)
    if kind == "cmv_adjoint":
        return cmv_adjoint(s, n)
    if kind == "banded_general":
        if ord is None:
            raise DomainError("banded_general needs an ordering")
        return banded_general(s, ord, n)
    raise DomainError(f"unknown matrix kind {kind!r}")


KINDS = ("hessenberg", "hessenberg_u", "cmv", "cmv_u", "cmv_transpose", "cmv_adjoint", "banded_general")
