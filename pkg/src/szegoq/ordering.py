"""Generating sequences: orderings of the Laurent space.

An ordering is stored as its steps ``s(1..N)`` with ``s(n) = p(n) - p(n-1)``;
``s(0) = 0`` and ``p(-1) = p(0) = 0`` are implicit. The n-th subspace is
spanned by ``z**j`` for ``-p(n) <= j <= q(n)``, ``q(n) = n - p(n)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError, IndexOutOfRange, InsufficientLookahead

ALIASES = ("balanced0", "balanced1", "poly")


@dataclass(frozen=True)
class GeneratingSequence:
    steps: tuple[int, ...]

    def __post_init__(self):
        steps = tuple(int(x) for x in self.steps)
        if any(x not in (0, 1) for x in steps):
            raise DomainError("steps must be 0 or 1")
        object.__setattr__(self, "steps", steps)

    @property
    def N(self) -> int:
        return len(self.steps)

    def s(self, n: int) -> int:
        if n <= 0:
            return 0
        if n > self.N:
            raise IndexOutOfRange(f"s({n}) requested, ordering has N={self.N}")
        return self.steps[n - 1]

    def p(self, n: int) -> int:
        if n < 0:
            return 0
        if n > self.N:
            raise IndexOutOfRange(f"p({n}) requested, ordering has N={self.N}")
        return sum(self.steps[:n])

    def q(self, n: int) -> int:
        return n - self.p(n)

    def lam(self, n: int) -> int:
        """p(n) - p(n-2), in {0, 1, 2}."""
        return self.p(n) - self.p(n - 2)

    def window(self, n: int) -> tuple[int, int]:
        """Exponent range ``(-p(n), q(n))`` of the n-th subspace."""
        return -self.p(n), self.q(n)

    def flipped(self) -> GeneratingSequence:
        """Ordering generated by q(n) (0 and 1 exchanged)."""
        return GeneratingSequence(tuple(1 - x for x in self.steps))

    def prefix(self, N: int) -> GeneratingSequence:
        if N > self.N:
            raise IndexOutOfRange(f"cannot extend N={self.N} to {N}")
        return GeneratingSequence(self.steps[:N])

    def is_alternating(self) -> bool:
        return all(a != b for a, b in zip(self.steps, self.steps[1:]))

    def to_string(self) -> str:
        return "".join(str(x) for x in self.steps)

    def __str__(self) -> str:
        return self.to_string()


def balanced(kind: str, N: int) -> GeneratingSequence:
    """``floor_half``: p(n) = floor(n/2); ``ceil_half``: p(n) = floor((n+1)/2)."""
    if N < 1:
        raise DomainError("N >= 1 required")
    if kind == "floor_half":
        first = 0
    elif kind == "ceil_half":
        first = 1
    else:
        raise DomainError(f"unknown balanced kind {kind!r}")
    return GeneratingSequence(tuple((first + i) % 2 for i in range(N)))


def poly(N: int) -> GeneratingSequence:
    return GeneratingSequence((0,) * N)


def from_steps(steps: Sequence[int]) -> GeneratingSequence:
    return GeneratingSequence(tuple(steps))


def parse(spec: str, N: int | None = None) -> GeneratingSequence:
    """Parse ``"0101..."`` or an alias (``balanced0``, ``balanced1``, ``poly``).

    Aliases need ``N``. An explicit step string longer than ``N`` is cut to
    ``N``; a shorter one is an error.
    """
    spec = spec.strip()
    if spec in ALIASES:
        if N is None:
            raise DomainError(f"ordering alias {spec!r} needs a length")
        if spec == "balanced0":
            return balanced("floor_half", N)
        if spec == "balanced1":
            return balanced("ceil_half", N)
        return poly(N)
    if not spec or any(ch not in "01" for ch in spec):
        raise DomainError(f"ordering must be a 0/1 string or one of {ALIASES}, got {spec!r}")
    g = GeneratingSequence(tuple(int(ch) for ch in spec))
    if N is not None:
        if g.N < N:
            raise DomainError(f"ordering {spec!r} has {g.N} steps, {N} needed")
        g = g.prefix(N)
    return g


def band_widths(ord: GeneratingSequence, n: int) -> tuple[int, int]:
    """Reach ``(k, t)`` of ``z chi_n`` in the orthonormal basis.

    ``z chi_n`` lies in span{chi_{n-t}, ..., chi_{n+k}}. ``k = 1`` if
    ``s(n+1) = 0``, otherwise the first ``k`` with ``s(n+k) = 0``; ``t = 1`` if
    ``s(n-1) = 1``, otherwise the first ``t`` with ``s(n-t) = 1``. The lower
    reach is capped at chi_0, so ``t <= n``.
    """
    return _reach(ord, n, up_stop=0, down_stop=1)


def inverse_band_widths(ord: GeneratingSequence, n: int) -> tuple[int, int]:
    """Reach of ``chi_n / z``: the rule of :func:`band_widths` with 0 and 1 exchanged."""
    return _reach(ord, n, up_stop=1, down_stop=0)


def _reach(ord: GeneratingSequence, n: int, up_stop: int, down_stop: int) -> tuple[int, int]:
    if n < 0:
        raise IndexOutOfRange("n >= 0 required")
    k = 1
    while True:
        if n + k > ord.N:
            raise InsufficientLookahead(
                f"reach of row {n} needs s({n + k}); ordering has N={ord.N}"
            )
        if ord.s(n + k) == up_stop:
            break
        k += 1
    t = 1
    while n - t >= 1 and ord.s(n - t) != down_stop:
        t += 1
    if n - t < 1:
        # ran into s(0) without closing the pattern; reach stops at chi_0
        t = n
    return k, t


def is_minimal_five_diagonal(ord: GeneratingSequence) -> bool:
    """True iff the steps alternate strictly (one of the two balanced orderings)."""
    if ord.N < 4:
        raise DomainError("need at least 4 steps to decide five-diagonality")
    return ord.is_alternating()
