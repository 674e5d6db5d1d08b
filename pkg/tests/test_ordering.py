import pytest
from hypothesis import given
from hypothesis import strategies as st

from szegoq import ordering as O
from szegoq.errors import DomainError, IndexOutOfRange, InsufficientLookahead

EXAMPLE = "0101100110011"


def test_balanced_windows():
    f, c = O.balanced("floor_half", 6), O.balanced("ceil_half", 6)
    assert [f.p(n) for n in range(7)] == [n // 2 for n in range(7)]
    assert [c.p(n) for n in range(7)] == [(n + 1) // 2 for n in range(7)]
    assert f.window(3) == (-1, 2)
    assert c.window(3) == (-2, 1)


def test_poly_and_parse():
    assert O.poly(5).p(5) == 0
    assert O.parse("balanced1", 4).steps == (1, 0, 1, 0)
    assert O.parse("0110", 3).steps == (0, 1, 1)
    with pytest.raises(DomainError):
        O.parse("balanced0")
    with pytest.raises(DomainError):
        O.parse("012")
    with pytest.raises(DomainError):
        O.parse("01", 5)


def test_s_indexing():
    g = O.parse("011")
    assert g.s(0) == 0 and g.s(-3) == 0
    assert g.lam(3) == 2
    with pytest.raises(IndexOutOfRange):
        g.s(4)


def test_band_widths_example_sequence():
    g = O.parse(EXAMPLE)
    ks = [O.band_widths(g, n)[0] for n in range(2, 11)]
    ts = [O.band_widths(g, n)[1] for n in range(2, 11)]
    assert ts == [2, 1, 2, 1, 1, 2, 3, 1, 1]
    assert ks == [1, 3, 2, 1, 1, 3, 2, 1, 1]


def test_band_widths_balanced():
    g = O.balanced("floor_half", 12)
    for n in range(2, 11):
        k, t = O.band_widths(g, n)
        assert k in (1, 2) and t in (1, 2)


def test_lookahead_error():
    with pytest.raises(InsufficientLookahead):
        O.band_widths(O.parse("0111"), 2)


@given(st.lists(st.integers(0, 1), min_size=4, max_size=16))
def test_inverse_rule_is_flip(steps):
    g = O.from_steps(steps + [0, 1, 0, 1])
    for n in range(len(steps)):
        assert O.inverse_band_widths(g, n) == O.band_widths(g.flipped(), n)


@given(st.lists(st.integers(0, 1), min_size=4, max_size=16))
def test_minimal_iff_alternating(steps):
    g = O.from_steps(steps)
    assert O.is_minimal_five_diagonal(g) == all(a != b for a, b in zip(steps, steps[1:]))


def test_minimal_needs_length():
    with pytest.raises(DomainError):
        O.is_minimal_five_diagonal(O.parse("010"))
