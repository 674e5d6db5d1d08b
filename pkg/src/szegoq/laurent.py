"""Laurent polynomials stored as a dense coefficient window.

A :class:`LaurentPoly` holds complex coefficients for the exponents
``lo, lo+1, ..., hi`` with nonzero end coefficients (exact-zero trimming
only). The zero polynomial has an empty window.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, EvalAtZero


def _trim(lo: int, coeffs: np.ndarray) -> tuple[int, np.ndarray]:
    nz = np.flatnonzero(coeffs)
    if nz.size == 0:
        return 0, np.zeros(0, dtype=complex)
    return lo + int(nz[0]), coeffs[nz[0] : nz[-1] + 1]


@dataclass(frozen=True, eq=False)
class LaurentPoly:
    lo: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        lo, c = _trim(int(self.lo), c)
        c.setflags(write=False)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "coeffs", c)

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls(0, [])

    @classmethod
    def const(cls, c: complex) -> LaurentPoly:
        return cls(0, [c])

    @classmethod
    def monomial(cls, k: int, c: complex = 1.0) -> LaurentPoly:
        return cls(k, [c])

    @classmethod
    def from_dict(cls, terms: dict[int, complex]) -> LaurentPoly:
        if not terms:
            return cls.zero()
        lo, hi = min(terms), max(terms)
        c = np.zeros(hi - lo + 1, dtype=complex)
        for k, v in terms.items():
            c[k - lo] += v
        return cls(lo, c)

    # window -----------------------------------------------------------
    @property
    def hi(self) -> int:
        return self.lo + len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    def coeff(self, k: int) -> complex:
        i = k - self.lo
        if 0 <= i < len(self.coeffs):
            return complex(self.coeffs[i])
        return 0j

    def window(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients for exponents ``lo..hi`` (zero padded)."""
        out = np.zeros(hi - lo + 1, dtype=complex)
        if self.is_zero():
            return out
        a, b = max(lo, self.lo), min(hi, self.hi)
        if a <= b:
            out[a - lo : b - lo + 1] = self.coeffs[a - self.lo : b - self.lo + 1]
        return out

    def terms(self) -> dict[int, complex]:
        return {self.lo + i: complex(c) for i, c in enumerate(self.coeffs) if c != 0}

    # algebra ----------------------------------------------------------
    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        return LaurentPoly(lo, self.window(lo, hi) + other.window(lo, hi))

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.lo, -self.coeffs)

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            if self.is_zero() or other.is_zero():
                return LaurentPoly.zero()
            return LaurentPoly(self.lo + other.lo, np.convolve(self.coeffs, other.coeffs))
        if np.isscalar(other):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, c) -> LaurentPoly:
        return self.scale(1.0 / c)

    def scale(self, c: complex) -> LaurentPoly:
        return LaurentPoly(self.lo, self.coeffs * c)

    def shift_exp(self, k: int) -> LaurentPoly:
        """Multiply by ``z**k``."""
        if self.is_zero():
            return self
        return LaurentPoly(self.lo + k, self.coeffs)

    def substar(self) -> LaurentPoly:
        """``conj(f(1/conj(z)))``: exponent j -> -j, coefficients conjugated."""
        if self.is_zero():
            return self
        return LaurentPoly(-self.hi, np.conj(self.coeffs[::-1]))

    def reversed(self, n: int) -> LaurentPoly:
        """Reversed polynomial ``z**n * f_*(z)`` of an ordinary polynomial of degree <= n."""
        if self.is_zero():
            return self
        if self.lo < 0:
            raise DomainError("reversed() needs an ordinary polynomial (no negative powers)")
        if self.hi > n:
            raise DomainError(f"degree {self.hi} exceeds n={n}")
        return self.substar().shift_exp(n)

    def derivative(self) -> LaurentPoly:
        if self.is_zero():
            return self
        k = np.arange(self.lo, self.hi + 1)
        return LaurentPoly(self.lo - 1, self.coeffs * k)

    def conj(self) -> LaurentPoly:
        """Coefficient-wise conjugate (``conj(f(conj(z)))``)."""
        return LaurentPoly(self.lo, np.conj(self.coeffs))

    # evaluation -------------------------------------------------------
    def __call__(self, z):
        return self.eval(z)

    def eval(self, z):
        """Evaluate at scalar or array ``z``; Horner separately on the z and 1/z parts."""
        z = np.asarray(z, dtype=complex)
        if self.is_zero():
            return np.zeros_like(z)[()]
        c = self.coeffs
        if self.lo < 0 and np.any(z == 0):
            raise EvalAtZero("Laurent polynomial with negative powers evaluated at 0")
        # nonnegative part: exponents max(lo,0)..hi
        pos = np.zeros_like(z)
        if self.hi >= 0:
            start = max(self.lo, 0)
            for a in c[::-1][: self.hi - start + 1]:
                pos = pos * z + a
            if start > 0:
                pos = pos * z**start
        neg = np.zeros_like(z)
        if self.lo < 0:
            w = 1.0 / z
            top = min(self.hi, -1)
            # exponents lo..top, Horner in w from the lowest exponent
            for a in c[: top - self.lo + 1]:
                neg = neg * w + a
            neg = neg * w ** (-top)
        out = pos + neg
        return out[()] if out.ndim == 0 else out

    def roots(self) -> np.ndarray:
        """Nonzero roots, from the ordinary polynomial ``z**(-lo) f(z)``."""
        if len(self.coeffs) <= 1:
            return np.zeros(0, dtype=complex)
        from .eigen import eigenvalues

        c = self.coeffs
        m = len(c) - 1
        comp = np.zeros((m, m), dtype=complex)
        comp[0, :] = -c[-2::-1] / c[-1]
        comp[1:, :-1] = np.eye(m - 1)
        return eigenvalues(comp)

    # comparison / io --------------------------------------------------
    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.lo == other.lo and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash((self.lo, self.coeffs.tobytes()))

    def max_diff(self, other: LaurentPoly) -> float:
        """Largest coefficient-wise absolute difference."""
        if self.is_zero() and other.is_zero():
            return 0.0
        lo = min(p.lo for p in (self, other) if not p.is_zero())
        hi = max(p.hi for p in (self, other) if not p.is_zero())
        return float(np.max(np.abs(self.window(lo, hi) - other.window(lo, hi))))

    def __repr__(self) -> str:
        if self.is_zero():
            return "LaurentPoly(0)"
        parts = [f"({c:.6g})z^{self.lo + i}" for i, c in enumerate(self.coeffs) if c != 0]
        return "LaurentPoly(" + " + ".join(parts) + ")"

    def to_dict(self) -> dict:
        return {"lo": self.lo, "coeffs": [[float(c.real), float(c.imag)] for c in self.coeffs]}

    @classmethod
    def from_json_dict(cls, d: dict) -> LaurentPoly:
        return cls(int(d["lo"]), [complex(re, im) for re, im in d["coeffs"]])

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, s: str) -> LaurentPoly:
        return cls.from_json_dict(json.loads(s))


Z = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1.0)
