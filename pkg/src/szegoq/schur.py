"""Schur (Verblunsky) parameter sequences.

Indexing is 1-based for delta to match the recurrences: ``delta(0) == 1``
is implicit and never stored, ``delta(n)`` for ``1 <= n <= N`` is the
stored data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import DomainError, IndexOutOfRange, QuasiDefiniteUnsupported, ValidationError


@dataclass(frozen=True, eq=False)
class SchurSequence:
    """Parameters delta_1..delta_N plus a provenance tag.

    ``quasi_definite=True`` relaxes the check ``|delta| < 1`` to
    ``|delta| != 1``; such sequences still drive the recurrences but have no
    positive measure behind them.
    """

    delta: np.ndarray = field(repr=False)
    source: str = "explicit"
    quasi_definite: bool = False

    def __post_init__(self):
        d = np.array(self.delta, dtype=complex).ravel()
        d.setflags(write=False)
        object.__setattr__(self, "delta", d)
        mods = np.abs(d)
        if self.quasi_definite:
            if np.any(mods == 1.0):
                raise DomainError("quasi-definite Schur parameters need |delta_n| != 1")
        elif np.any(mods >= 1.0):
            bad = int(np.argmax(mods >= 1.0)) + 1
            raise DomainError(f"|delta_{bad}| >= 1; pass quasi_definite=True to allow it")

    @property
    def N(self) -> int:
        return len(self.delta)

    def d(self, n: int) -> complex:
        """delta_n with delta_0 = 1."""
        if n == 0:
            return 1.0 + 0j
        if not 1 <= n <= self.N:
            raise IndexOutOfRange(f"delta_{n} requested, sequence has N={self.N}")
        return complex(self.delta[n - 1])

    def lam(self, n: int) -> float:
        """1 - |delta_n|^2 (negative allowed in quasi-definite mode)."""
        return 1.0 - abs(self.d(n)) ** 2

    def eta(self, n: int) -> float:
        if n == 0:
            raise IndexOutOfRange("eta_n is defined for n >= 1")
        lam = self.lam(n)
        if lam <= 0:
            raise QuasiDefiniteUnsupported(f"eta_{n} is not real for |delta_{n}| > 1")
        return math.sqrt(lam)

    def etas(self) -> np.ndarray:
        if self.quasi_definite and np.any(np.abs(self.delta) > 1):
            raise QuasiDefiniteUnsupported("eta is not real for |delta| > 1")
        return np.sqrt(1.0 - np.abs(self.delta) ** 2)

    def norm_sq(self, n: int) -> float:
        """e_n = prod_{k<=n} (1 - |delta_k|^2) = <rho_n, rho_n> for mu_0 = 1."""
        if n < 0 or n > self.N:
            raise IndexOutOfRange(f"e_{n} requested, sequence has N={self.N}")
        return float(np.prod(1.0 - np.abs(self.delta[:n]) ** 2))

    def truncate(self, N: int) -> SchurSequence:
        if N > self.N:
            raise IndexOutOfRange(f"cannot extend N={self.N} to {N}")
        return SchurSequence(self.delta[:N], self.source, self.quasi_definite)

    def is_real(self) -> bool:
        return bool(np.all(self.delta.imag == 0))

    def __len__(self) -> int:
        return self.N

    def __repr__(self) -> str:
        return f"SchurSequence(N={self.N}, source={self.source!r})"

    # serialization ----------------------------------------------------
    def to_text(self) -> str:
        lines = [f"# Schur parameters delta_1..delta_{self.N} ({self.source})"]
        lines += [f"{c.real:.17g},{c.imag:.17g}" for c in self.delta]
        return "\n".join(lines) + "\n"


def explicit(delta: Iterable[complex], quasi_definite: bool = False) -> SchurSequence:
    return SchurSequence(np.asarray(list(delta), dtype=complex), "explicit", quasi_definite)


def rogers_szego(q: float, N: int) -> SchurSequence:
    """delta_n = (-1)^n q^(n/2), with q^(n/2) taken as exp(n/2 log q)."""
    if not 0.0 < q < 1.0:
        raise DomainError(f"Rogers-Szego needs 0 < q < 1, got {q}")
    n = np.arange(1, N + 1)
    d = (-1.0) ** n * np.exp(0.5 * n * math.log(q))
    return SchurSequence(d.astype(complex), f"rogers_szego({q!r})")


def lebesgue(N: int) -> SchurSequence:
    if N < 1:
        raise DomainError("N >= 1 required")
    return SchurSequence(np.zeros(N, dtype=complex), "lebesgue")


def parse_schur_text(text: str, quasi_definite: bool = False) -> SchurSequence:
    """Parse the text format: one ``re,im`` line per delta_n from n=1, '#' comments."""
    vals = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2:
            raise ValidationError(f"line {lineno}: expected 're,im', got {raw!r}")
        try:
            vals.append(complex(float(parts[0]), float(parts[1])))
        except ValueError as exc:
            raise ValidationError(f"line {lineno}: {exc}") from None
    if not vals:
        raise ValidationError("no Schur parameters found")
    return SchurSequence(np.array(vals), "explicit", quasi_definite)


def read_schur_file(path: str | Path, quasi_definite: bool = False) -> SchurSequence:
    return parse_schur_text(Path(path).read_text(encoding="utf-8"), quasi_definite)
