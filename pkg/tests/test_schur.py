import math

import numpy as np
import pytest

from szegoq import schur
from szegoq.errors import DomainError, IndexOutOfRange, QuasiDefiniteUnsupported, ValidationError


def test_rogers_szego_values():
    s = schur.rogers_szego(0.5, 4)
    assert s.d(1) == pytest.approx(-math.sqrt(0.5))
    assert s.d(2) == pytest.approx(0.5)
    assert s.d(0) == 1
    np.testing.assert_allclose([s.norm_sq(n) for n in range(5)],
                               np.cumprod([1, 0.5, 0.75, 0.875, 0.9375]))


def test_bounds():
    with pytest.raises(DomainError):
        schur.explicit([0.5, 1.0])
    with pytest.raises(DomainError):
        schur.rogers_szego(1.0, 3)
    with pytest.raises(IndexOutOfRange):
        schur.lebesgue(3).d(4)


def test_quasi_definite():
    s = schur.explicit([0.5, 1.5], quasi_definite=True)
    assert s.lam(2) == pytest.approx(-1.25)
    with pytest.raises(QuasiDefiniteUnsupported):
        s.eta(2)
    with pytest.raises(DomainError):
        schur.explicit([1.0], quasi_definite=True)


def test_text_roundtrip(tmp_path):
    s = schur.explicit([0.25 - 0.5j, -0.125, 1e-3j])
    p = tmp_path / "d.csv"
    p.write_text(s.to_text())
    back = schur.read_schur_file(p)
    np.testing.assert_array_equal(back.delta, s.delta)
    with pytest.raises(ValidationError):
        schur.parse_schur_text("0.1\n")
    with pytest.raises(ValidationError):
        schur.parse_schur_text("# nothing\n")
