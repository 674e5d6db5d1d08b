"""Independent reference computations: plain numpy, no package code."""

import numpy as np


def szego_coeffs(delta):
    """Monic rho_n, rho_n^* as ascending coefficient arrays."""
    rho, rs = [np.array([1 + 0j])], [np.array([1 + 0j])]
    for d in delta:
        zr = np.concatenate([[0], rho[-1]])
        s0 = np.concatenate([rs[-1], [0]])
        rho.append(zr + d * s0)
        rs.append(np.conj(d) * zr + s0)
    return rho, rs


def cmv_u(delta_head, u):
    """C_n with delta_n -> u, from the infinite L M factorization cut to n x n."""
    d = list(delta_head) + [u]
    n = len(d)
    N = n + 2
    dd = d + [0.0] * 3
    L = np.zeros((N, N), complex)
    M = np.zeros((N, N), complex)
    L[0, 0] = 1
    for k in range(1, N):
        dk = dd[k - 1]
        eta = np.sqrt(max(0.0, 1 - abs(dk) ** 2))
        F = L if k % 2 == 0 else M
        F[k - 1, k - 1] = -dk
        if k < N:
            F[k - 1, k] = F[k, k - 1] = eta
            F[k, k] = np.conj(dk)
    return (L @ M)[:n, :n]


def rule(delta_head, u, mu0=1.0):
    """Nodes (sorted by angle) and weights from numpy.linalg.eig of C_n."""
    w, V = np.linalg.eig(cmv_u(delta_head, u))
    V = V / np.linalg.norm(V, axis=0)
    wt = mu0 * np.abs(V[0]) ** 2
    o = np.argsort(np.angle(w))
    return w[o], wt[o]


def rs_delta(q, n):
    return np.array([(-1) ** k * q ** (k / 2) for k in range(1, n + 1)], dtype=complex)
