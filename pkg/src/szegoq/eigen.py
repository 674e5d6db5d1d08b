"""Dense complex eigensolver: Householder to Hessenberg, shifted QR to Schur
form, eigenvectors by back-substitution.

Sized for the small unitary matrices built in :mod:`szegoq.opmatrix`;
numpy's LAPACK wrapper is used only as an independent oracle in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoConvergence

DEFLATE_TOL = 1e-14
SWEEPS_PER_DIM = 30
EXCEPTIONAL_EVERY = 10


@dataclass(frozen=True)
class EigenResult:
    values: np.ndarray
    first_components: np.ndarray
    residuals: np.ndarray
    vectors: np.ndarray | None = None

    @property
    def n(self) -> int:
        return len(self.values)


def _as_array(M) -> np.ndarray:
    a = getattr(M, "entries", M)
    a = np.array(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DomainError(f"need a nonempty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise DomainError("matrix has non-finite entries")
    return a


def is_hessenberg(a: np.ndarray) -> bool:
    return not np.any(np.tril(a, -2))


def hessenberg_reduce(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(H, Q)`` with ``a = Q H Q^H``, H upper Hessenberg."""
    H = np.array(a, dtype=complex)
    n = H.shape[0]
    Q = np.eye(n, dtype=complex)
    if is_hessenberg(H):
        return H, Q
    for k in range(n - 2):
        x = H[k + 1 :, k].copy()
        nx = np.linalg.norm(x)
        if nx == 0.0 or np.linalg.norm(x[1:]) == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x
        v[0] += phase * nx
        v /= np.linalg.norm(v)
        H[k + 1 :, :] -= 2.0 * np.outer(v, v.conj() @ H[k + 1 :, :])
        H[:, k + 1 :] -= 2.0 * np.outer(H[:, k + 1 :] @ v, v.conj())
        Q[:, k + 1 :] -= 2.0 * np.outer(Q[:, k + 1 :] @ v, v.conj())
        H[k + 2 :, k] = 0.0
    return H, Q


def _givens(x: complex, y: complex) -> tuple[float, complex]:
    """(c, s) with [[c, s], [-conj(s), c]] @ [x, y] = [r, 0]."""
    if y == 0:
        return 1.0, 0j
    if x == 0:
        return 0.0, 1.0 + 0j
    ax = abs(x)
    r = np.hypot(ax, abs(y))
    return ax / r, (x / ax) * np.conj(y) / r


def _wilkinson(a, b, c, d) -> complex:
    half = 0.5 * (a - d)
    disc = np.sqrt(half * half + b * c)
    m1, m2 = d + half + disc, d + half - disc  # (a+d)/2 +- disc
    # closer to the trailing entry
    return m1 if abs(m1 - d) <= abs(m2 - d) else m2


def schur_form(a, want_q: bool = True) -> tuple[np.ndarray, np.ndarray]:
    """Complex Schur form ``a = Q T Q^H`` by single-shift implicit QR."""
    H, Q = hessenberg_reduce(_as_array(a))
    n = H.shape[0]
    scale = max(np.max(np.abs(H)), np.finfo(float).tiny)
    floor = np.finfo(float).eps * scale
    hi = n - 1
    its = total = 0
    max_total = SWEEPS_PER_DIM * n
    while hi > 0:
        l = hi
        while l > 0:
            off = abs(H[l, l - 1])
            if off <= DEFLATE_TOL * (abs(H[l - 1, l - 1]) + abs(H[l, l])) or off <= floor:
                H[l, l - 1] = 0.0
                break
            l -= 1
        if l == hi:
            hi -= 1
            its = 0
            continue
        its += 1
        total += 1
        if total > max_total:
            raise NoConvergence(f"QR iteration did not converge in {max_total} sweeps (n={n})")
        if its % EXCEPTIONAL_EVERY == 0:
            mu = H[hi, hi] + 0.75 * abs(H[hi, hi - 1]) * np.exp(1j * its)
        else:
            mu = _wilkinson(H[hi - 1, hi - 1], H[hi - 1, hi], H[hi, hi - 1], H[hi, hi])
        x, y = H[l, l] - mu, H[l + 1, l]
        for k in range(l, hi):
            if k > l:
                x, y = H[k, k - 1], H[k + 1, k - 1]
            c, s = _givens(x, y)
            G = np.array([[c, s], [-np.conj(s), c]])
            c0 = k - 1 if k > l else l
            H[k : k + 2, c0:] = G @ H[k : k + 2, c0:]
            r1 = min(k + 3, hi + 1)
            H[:r1, k : k + 2] = H[:r1, k : k + 2] @ G.conj().T
            if want_q:
                Q[:, k : k + 2] = Q[:, k : k + 2] @ G.conj().T
            if k > l:
                H[k + 1, k - 1] = 0.0
    return np.triu(H), Q


def _triangular_vectors(T: np.ndarray) -> np.ndarray:
    n = T.shape[0]
    Y = np.zeros((n, n), dtype=complex)
    small = np.finfo(float).eps * max(np.max(np.abs(T)), np.finfo(float).tiny)
    for k in range(n):
        lam = T[k, k]
        Y[k, k] = 1.0
        for i in range(k - 1, -1, -1):
            den = T[i, i] - lam
            if abs(den) < small:
                den = small
            Y[i, k] = -(T[i, i + 1 : k + 1] @ Y[i + 1 : k + 1, k]) / den
    return Y


def eigen_full(M) -> EigenResult:
    """All eigenvalues with first components of unit-norm eigenvectors."""
    A = _as_array(M)
    T, Q = schur_form(A)
    V = Q @ _triangular_vectors(T)
    V /= np.linalg.norm(V, axis=0)
    vals = np.diag(T).copy()
    res = np.linalg.norm(A @ V - V * vals, axis=0)
    return EigenResult(vals, V[0, :].copy(), res, V)


def eigenvalues(M) -> np.ndarray:
    T, _ = schur_form(M, want_q=False)
    return np.diag(T).copy()
