"""Exact-arithmetic layer: frozen values and algebraic properties.

Expected values below were derived by hand (conjugate products, small
inverses) or cross-checked against sympy, which serves as the independent
oracle for rank computations.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterwp.exact import (
    ExactMatrix,
    GaussianParseError,
    GaussianRational,
    format_gaussian,
    parse_gaussian,
    rank,
)

G = GaussianRational
IUNIT = G(0, 1)

small_fractions = st.fractions(min_value=-30, max_value=30, max_denominator=12)
gaussians = st.builds(G, small_fractions, small_fractions)
nonzero_gaussians = gaussians.filter(bool)


# ---------------------------------------------------------------------------
# field arithmetic, frozen cases
# ---------------------------------------------------------------------------

def test_conjugate_pair_product():
    # (1/2 + 1/2 i)(1/2 - 1/2 i) = 1/4 + 1/4 = 1/2
    a = G(Fraction(1, 2), Fraction(1, 2))
    assert a * a.conjugate() == G(Fraction(1, 2))


def test_i_squared_is_minus_one():
    assert IUNIT * IUNIT == G(-1)


def test_inverse_of_minus_i():
    # (-i) * i = 1, so 1/(-i) = i
    assert (-IUNIT).inverse() == IUNIT
    assert G(1) / (-IUNIT) == IUNIT


def test_division_frozen():
    # (3+2i)/(1-i) = (3+2i)(1+i)/2 = (1+5i)/2
    q = G(3, 2) / G(1, -1)
    assert q == G(Fraction(1, 2), Fraction(5, 2))


def test_powers_frozen():
    one_plus_i = G(1, 1)
    assert one_plus_i ** 4 == G(-4)            # ((1+i)^2)^2 = (2i)^2
    assert one_plus_i ** -2 == G(0, Fraction(-1, 2))  # 1/(2i) = -i/2
    assert one_plus_i ** 0 == G(1)


def test_zero_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        G(0).inverse()
    with pytest.raises(ZeroDivisionError):
        G(1) / G(0)


def test_int_and_fraction_coercion():
    assert G(2) + 1 == G(3)
    assert 1 - G(0, 1) == G(1, -1)
    assert Fraction(1, 2) * G(4, 2) == G(2, 1)
    assert G(1) / 2 == G(Fraction(1, 2))
    assert 2 / G(0, 1) == G(0, -2)


# ---------------------------------------------------------------------------
# field axioms (randomized)
# ---------------------------------------------------------------------------

@given(gaussians, gaussians, gaussians)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + (-a) == G(0)


@given(nonzero_gaussians)
def test_multiplicative_inverse(a):
    assert a * a.inverse() == G(1)


@given(gaussians, gaussians)
def test_conjugation(a, b):
    assert a.conjugate().conjugate() == a
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    assert (a + b).conjugate() == a.conjugate() + b.conjugate()


# ---------------------------------------------------------------------------
# literal grammar
# ---------------------------------------------------------------------------

PARSE_CASES = [
    ("3", G(3)),
    ("-7", G(-7)),
    ("-1/2", G(Fraction(-1, 2))),
    ("1/2+1/2i", G(Fraction(1, 2), Fraction(1, 2))),
    ("1/2-1/2i", G(Fraction(1, 2), Fraction(-1, 2))),
    ("i", IUNIT),
    ("-i", -IUNIT),
    ("+i", IUNIT),
    ("2i", G(0, 2)),
    ("-3/4i", G(0, Fraction(-3, 4))),
    ("0-2i", G(0, -2)),
    ("3+i", G(3, 1)),
    ("3-i", G(3, -1)),
    ("0+1i", IUNIT),
]


@pytest.mark.parametrize("text,value", PARSE_CASES)
def test_parse_gaussian(text, value):
    assert parse_gaussian(text) == value


FORMAT_CASES = [
    (G(3), "3"),
    (G(Fraction(-1, 2)), "-1/2"),
    (G(0), "0"),
    (IUNIT, "i"),
    (-IUNIT, "-i"),
    (G(0, 2), "0+2i"),
    (G(0, Fraction(-2, 3)), "0-2/3i"),
    (G(3, 1), "3+1i"),
    (G(Fraction(1, 2), Fraction(-5, 2)), "1/2-5/2i"),
]


@pytest.mark.parametrize("value,text", FORMAT_CASES)
def test_format_gaussian(value, text):
    assert format_gaussian(value) == text
    assert str(value) == text


@given(gaussians)
def test_literal_round_trip(z):
    assert parse_gaussian(format_gaussian(z)) == z


@pytest.mark.parametrize("bad", ["", "1.5", "i2", "1+", "--1", "1/0", "1//2",
                                 "i+1", "1 + i", "2x", "1+ii"])
def test_parse_gaussian_rejects(bad):
    with pytest.raises(GaussianParseError):
        parse_gaussian(bad)


# ---------------------------------------------------------------------------
# exact rank
# ---------------------------------------------------------------------------

def test_rank_frozen_jacobian_rows():
    # Gradient rows of the three exchange relations of the hexagon example
    # at its deep point: rows one and three coincide, row two is independent.
    m = ExactMatrix.from_rows([
        [0, -1, 0, 0, 0, 0],
        [-1, 0, -1, 0, -1, 0],
        [0, -1, 0, 0, 0, 0],
    ])
    assert rank(m) == 2


def test_rank_complex_dependence():
    # second row is i times the first
    m = ExactMatrix.from_rows([[G(1), IUNIT], [IUNIT, G(-1)]])
    assert rank(m) == 1


def test_rank_edge_cases():
    assert rank(ExactMatrix.from_rows([[0, 0], [0, 0]])) == 0
    eye = ExactMatrix.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert rank(eye) == 3
    assert rank(ExactMatrix.from_rows([[0, 2, 5]])) == 1


small_ints = st.integers(min_value=-4, max_value=4)
small_entries = st.builds(G, st.builds(Fraction, small_ints), st.builds(Fraction, small_ints))


@st.composite
def small_matrices(draw):
    nrows = draw(st.integers(min_value=1, max_value=4))
    ncols = draw(st.integers(min_value=1, max_value=4))
    rows = draw(st.lists(st.lists(small_entries, min_size=ncols, max_size=ncols),
                         min_size=nrows, max_size=nrows))
    return ExactMatrix.from_rows(rows)


@given(small_matrices())
def test_rank_transpose_invariant(m):
    assert rank(m) == rank(m.transpose())


@given(small_matrices())
@settings(deadline=None)
def test_rank_matches_sympy(m):
    import sympy

    sm = sympy.Matrix(m.nrows, m.ncols, lambda i, j: (
        sympy.Rational(m.entry(i, j).re) + sympy.I * sympy.Rational(m.entry(i, j).im)
    ))
    assert rank(m) == sm.rank()


@given(small_matrices(), st.randoms(use_true_random=False))
def test_rank_invariant_under_row_ops(m, rng):
    rows = [list(m.row(i)) for i in range(m.nrows)]
    i = rng.randrange(m.nrows)
    j = rng.randrange(m.nrows)
    rows[i], rows[j] = rows[j], rows[i]
    k = rng.randrange(m.nrows)
    rows[k] = [G(3) * x for x in rows[k]]
    assert rank(ExactMatrix.from_rows(rows)) == rank(m)
